#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "quadrica/brauer.hpp"
#include "quadrica/funfield.hpp"
#include "quadrica/poly.hpp"
#include "quadrica/ratfn.hpp"

namespace quadrica {

using Permutation = std::array<int, 4>;

/// Degrees of the four diagonal entries. On P1xP1 `d` holds the degrees in
/// (x0, x1) and `e` the degrees in (y0, y1); on P2 `e` is all zero.
struct BundleType {
    SurfaceKind kind = SurfaceKind::P2;
    std::array<int, 4> d{}, e{};

    /// "d0,d1,d2,d3" or "d0:e0,d1:e1,d2:e2,d3:e3".
    std::string to_string() const;
    bool parities_ok() const noexcept;
    /// Nondecreasing in (d_i, e_i) lexicographically.
    bool is_ordered() const noexcept;
    BundleType sorted() const;
    int total_d() const noexcept { return d[0] + d[1] + d[2] + d[3]; }

    friend bool operator==(const BundleType&, const BundleType&) = default;
};

/// Parses either format; the presence of ':' selects P1xP1. Throws
/// DomainError on malformed text or negative degrees.
BundleType parse_type(std::string_view text);

/// Four nonzero diagonal entries over a surface. Homogeneous forms have
/// (bi)homogeneous entries in the surface coordinates; affine forms live on
/// the chart and never mention a boundary coordinate.
class DiagForm {
public:
    static DiagForm make(std::array<Poly, 4> entries, SurfaceKind kind);
    static DiagForm affine(std::array<Poly, 4> entries, SurfaceKind kind);
    /// Entries separated by ';'.
    static DiagForm parse(std::string_view text, SurfaceKind kind, bool affine);

    const std::array<Poly, 4>& entries() const noexcept { return entries_; }
    const Poly& entry(std::size_t i) const { return entries_.at(i); }
    SurfaceKind kind() const noexcept { return kind_; }
    const SurfaceModel& surface() const { return SurfaceModel::of(kind_); }
    bool is_affine() const noexcept { return affine_; }

    /// "<a, b, c, d>".
    std::string to_string() const;
    std::vector<std::string> entry_strings() const;

    friend bool operator==(const DiagForm& a, const DiagForm& b) {
        return a.kind_ == b.kind_ && a.affine_ == b.affine_ && a.entries_ == b.entries_;
    }

private:
    DiagForm(std::array<Poly, 4> entries, SurfaceKind kind, bool affine)
        : entries_(std::move(entries)), kind_(kind), affine_(affine) {}

    std::array<Poly, 4> entries_;
    SurfaceKind kind_;
    bool affine_;
};

struct TypeOf {
    BundleType type;
    /// type.d[j] is the degree of entry permutation[j].
    Permutation permutation;
};

TypeOf type_of(const DiagForm& f);

/// gcd of the four entries; constant exactly for weak bundles.
Poly common_factor(const DiagForm& f);
bool is_weak_bundle(const DiagForm& f);

/// Dehomogenization at the chart. Affine input is returned unchanged.
DiagForm generic_fiber(const DiagForm& f);

/// Class of the product of the entries of the generic fiber.
SquareClass discriminant(const DiagForm& f);

struct CliffordReport {
    /// Invariant of the form itself.
    BrauerClass value;
    /// Invariant of the form scaled by `scale`: (a,b) + (ab,d).
    BrauerClass normalized;
    RatFn scale;
    /// Normal form <1, a, b, abd> of the scaled form, modulo squares.
    RatFn a, b, d;
};

/// Defined on the generic fiber; homogeneous input is dehomogenized first.
CliffordReport clifford_invariant(const DiagForm& f);

struct Move {
    enum class Kind { Scale, AbsorbSquares, Reorder, MultiplyEntry };

    Kind kind;
    std::optional<Poly> poly;
    std::size_t index = 0;
    Permutation perm{0, 1, 2, 3};

    static Move scale(Poly lambda);
    static Move absorb_squares();
    /// result[j] = source[perm[j]].
    static Move reorder(Permutation perm);
    /// Multiplies one entry by a monic monomial with even exponents in the
    /// chart coordinates; boundary exponents are free.
    static Move multiply_entry(std::size_t i, Poly monomial);

    std::string to_string() const;
};

DiagForm apply_move(const DiagForm& f, const Move& m);

struct SimilarityWitness {
    RatFn scale;
    /// scale * source[permutation[j]] = units[j] * square_factors[j]^2 * target[j].
    std::array<Poly, 4> square_factors;
    std::array<Rational, 4> units;
    Permutation permutation;
    /// <y', x', x'y', F(x', y', 1)> in the chart coordinates.
    DiagForm target;
    /// Chart coordinates (x', y').
    std::array<std::string, 2> chart_vars;

    bool verify(const DiagForm& source) const;
};

/// The canonical chart form <y, x, xy, F(x, y, 1)> (P2) or its analogue in
/// (x1, y1) (P1xP1).
DiagForm hpt_target(SurfaceKind kind);

/// Searches scalings by square-free products of entry factors, square
/// absorption and the 24 reorderings for an exact match with `hpt_target`.
/// Deterministic: candidates are tried in a fixed order and the first hit
/// wins. Throws UnsupportedError when an entry cannot be factored or has
/// too many distinct factors.
std::optional<SimilarityWitness> normalize_to_hpt(const DiagForm& f);

/// The canonical plane quadric x^2+y^2+z^2-2(xy+xz+yz) and its bidegree
/// (2,2) analogue on P1xP1.
Poly hpt_quadric(SurfaceKind kind);

}  // namespace quadrica
