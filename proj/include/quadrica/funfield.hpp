#pragma once

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "quadrica/poly.hpp"
#include "quadrica/ratfn.hpp"
#include "quadrica/upoly.hpp"

namespace quadrica {

enum class SurfaceKind { P2, P1xP1 };

/// One of the two base surfaces with its coordinates and affine chart.
///
/// P2: coordinates (x, y, z), chart z = 1, boundary {z = 0}.
/// P1xP1: coordinates (x0, x1, y0, y1), chart x0 = y0 = 1, boundary
/// {x0 = 0} and {y0 = 0}.
class SurfaceModel {
public:
    static const SurfaceModel& p2();
    static const SurfaceModel& p1xp1();
    static const SurfaceModel& of(SurfaceKind kind);

    SurfaceKind kind() const noexcept { return kind_; }
    const VarList& vars() const noexcept { return vars_; }
    /// "p2" or "p1xp1".
    const char* tag() const noexcept;

    /// Variable blocks of the grading and the boundary variable of each.
    const std::vector<std::vector<std::size_t>>& blocks() const noexcept { return blocks_; }
    const std::vector<std::size_t>& boundary_vars() const noexcept { return boundary_; }
    Grading grading() const;

    /// Substitution that dehomogenizes into the affine chart.
    std::map<std::string, Poly> chart_bindings() const;
    std::vector<Poly> boundary_divisors() const;
    bool is_boundary_var(std::size_t v) const noexcept;

    Poly parse(std::string_view text) const;

private:
    SurfaceModel(SurfaceKind kind, VarList vars, std::vector<std::vector<std::size_t>> blocks,
                 std::vector<std::size_t> boundary);

    SurfaceKind kind_;
    VarList vars_;
    std::vector<std::vector<std::size_t>> blocks_;
    std::vector<std::size_t> boundary_;
};

/// Irreducible (bi)homogeneous curve on a surface, stored primitive with
/// positive leading coefficient.
class PrimeDivisor {
public:
    PrimeDivisor(SurfaceKind surface, const Poly& poly);

    SurfaceKind surface_kind() const noexcept { return kind_; }
    const SurfaceModel& surface() const { return SurfaceModel::of(kind_); }
    const Poly& poly() const noexcept { return poly_; }
    /// Degree per grading block.
    const std::vector<int>& degrees() const noexcept { return degrees_; }
    /// "{x=0}"-style label.
    std::string to_string() const;

    friend bool operator==(const PrimeDivisor& a, const PrimeDivisor& b) {
        return a.kind_ == b.kind_ && a.poly_ == b.poly_;
    }
    friend bool operator<(const PrimeDivisor& a, const PrimeDivisor& b) { return a.poly_ < b.poly_; }

private:
    SurfaceKind kind_;
    Poly poly_;
    std::vector<int> degrees_;
};

/// Element of K*/(K*)^2 with constants treated as squares: the set of
/// irreducible factors of odd multiplicity.
struct SquareClass {
    std::set<Poly> support;

    bool trivial() const noexcept { return support.empty(); }
    /// Product of the support (1 for the trivial class).
    Poly representative(const VarList& vars) const;
    std::string to_string() const;

    friend bool operator==(const SquareClass& a, const SquareClass& b) { return a.support == b.support; }
};

SquareClass square_class(const RatFn& f);
SquareClass multiply_classes(const SquareClass& a, const SquareClass& b);

/// Square class on a parametrized rational curve: the monic odd part of a
/// univariate polynomial in the parameter t.
struct CurveClass {
    UPoly odd;

    bool trivial() const noexcept { return odd.degree() <= 0; }
    std::string to_string() const;

    friend bool operator==(const CurveClass& a, const CurveClass& b) { return a.odd == b.odd; }
};

CurveClass multiply_curve_classes(const CurveClass& a, const CurveClass& b);

/// Degree-0 ratio of (bi)homogeneous polynomials in surface coordinates.
/// Not reduced.
struct FormRatio {
    Poly num, den;
};

/// Affine chart functions are homogenized; functions that already involve
/// boundary coordinates must be degree-0 ratios.
FormRatio to_form_ratio(const RatFn& f, SurfaceKind surface);

int valuation(const FormRatio& f, const Poly& pi);

/// Rational parametrization: one univariate polynomial per surface
/// coordinate.
struct CurveParam {
    PrimeDivisor curve;
    std::vector<UPoly> coords;
    /// Integer point the conic was projected from, in the plane
    /// coordinates of its chart model; empty for lines and rulings.
    std::vector<long> base_point;

    std::string to_string() const;
};

/// Lines, rulings, and curves whose chart model is a conic with a rational
/// point of height at most `kConicSearchBound`. Throws UnsupportedError
/// otherwise. Memoized.
inline constexpr int kConicSearchBound = 100;
CurveParam parametrize(const PrimeDivisor& c);

/// f(param(t)) as a univariate fraction.
struct UFraction {
    UPoly num, den;

    std::string to_string() const;
};

UFraction restrict_unit(const FormRatio& f, const PrimeDivisor& c);
UFraction restrict_unit(const RatFn& f, const PrimeDivisor& c);

bool is_square_on_curve(const FormRatio& f, const PrimeDivisor& c);
bool is_square_on_curve(const RatFn& f, const PrimeDivisor& c);

/// f * (L/pi)^v with v = valuation(f, pi), where L is a coordinate monomial
/// of the same (bi)degree as pi that pi does not divide. A unit along c.
FormRatio unit_part(const FormRatio& f, const PrimeDivisor& c, int v);

/// Class of a unit along c on the curve.
CurveClass curve_class(const FormRatio& unit, const PrimeDivisor& c);

struct HenselReport {
    int valuation = 0;
    bool square = false;
    /// The unit part restricted to the curve: for a coordinate line, the
    /// polynomial ratio with that coordinate set to zero (and the chart
    /// coordinates set to one); otherwise the restriction in t.
    std::string witness;

    bool passed() const noexcept { return valuation % 2 == 0 && square; }
};

HenselReport hensel_report(const RatFn& d, const PrimeDivisor& c);
bool hensel_square_test(const RatFn& d, const PrimeDivisor& c);

/// Composition of a polynomial in surface coordinates with a
/// parametrization.
UPoly compose(const Poly& p, const std::vector<UPoly>& coords);

}  // namespace quadrica
