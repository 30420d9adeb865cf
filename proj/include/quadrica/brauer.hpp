#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "quadrica/funfield.hpp"
#include "quadrica/ratfn.hpp"

namespace quadrica {

/// Formal sum of symbols (a, b) with F2 coefficients. Entries are functions
/// in the surface coordinates (affine chart functions or degree-0 ratios).
class BrauerClass {
public:
    using Symbol = std::pair<RatFn, RatFn>;

    BrauerClass() = default;

    const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
    bool empty() const noexcept { return symbols_.empty(); }
    /// Adds one symbol, cancelling an identical stored copy.
    void toggle(const RatFn& a, const RatFn& b);

    /// "(a,b)+(c,d)" or "0".
    std::string to_string() const;

private:
    std::vector<Symbol> symbols_;
};

BrauerClass symbol(const RatFn& a, const RatFn& b);
BrauerClass add_classes(const BrauerClass& u, const BrauerClass& v);

/// Tame residue along c: the product over symbols (f, g) of the class of
/// (-1)^(mn) f^n / g^m restricted to c, with m = v(f), n = v(g). The sign
/// is a square over the complex numbers and is dropped.
CurveClass tame_residue(const BrauerClass& u, const PrimeDivisor& c);

/// Nontrivial residues keyed by divisor.
struct ResidueProfile {
    std::map<PrimeDivisor, CurveClass> entries;

    bool empty() const noexcept { return entries.empty(); }
    std::vector<PrimeDivisor> divisors() const;
};

/// Irreducible factors of all homogenized symbol entries plus the chart
/// boundary, sorted.
std::vector<PrimeDivisor> candidate_divisors(const BrauerClass& u, const SurfaceModel& s);

ResidueProfile residue_profile(const BrauerClass& u, const SurfaceModel& s);
bool is_unramified_over_C(const BrauerClass& u, const SurfaceModel& s);

/// Equality in the 2-torsion of the Brauer group of K, decided by the
/// residue profile of u + v (the unramified part vanishes on both models).
bool classes_equal(const BrauerClass& u, const BrauerClass& v, const SurfaceModel& s);

}  // namespace quadrica
