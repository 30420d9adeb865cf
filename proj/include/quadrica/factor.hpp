#pragma once

#include <span>
#include <utility>
#include <vector>

#include "quadrica/poly.hpp"

namespace quadrica {

/// p = unit * prod(factor^multiplicity). Factors are absolutely irreducible,
/// primitive with integer coefficients and positive leading coefficient, and
/// sorted by the polynomial order.
struct FactoredPoly {
    Rational unit;
    std::vector<std::pair<Poly, unsigned>> factors;

    Poly recombine(const VarList& vars) const;
};

/// Greatest common divisor, normalized with `Poly::primitive`. The gcd of two
/// zero polynomials is zero; a constant gcd is returned as 1.
Poly gcd(const Poly& a, const Poly& b);

/// gcd of a list with at least one nonzero entry.
Poly gcd_all(std::span<const Poly> ps);

/// Square-free decomposition: pairwise coprime square-free primitive parts and
/// their multiplicities. Constants are dropped.
std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& p);

/// Complete factorization into absolutely irreducible factors.
///
/// Supported class: products of variables, rational linear forms, and
/// absolutely irreducible polynomials that become of degree at most two after
/// dehomogenizing every grading they are homogeneous for (conics in the
/// plane, bidegree (2,2) curves whose affine chart is a conic, ...). Anything
/// else throws UnsupportedError; so do factors that are irreducible over the
/// rationals but split over the complex numbers. Results are memoized.
FactoredPoly factor(const Poly& p);

/// True when `p` is a single absolutely irreducible factor (up to a unit).
bool is_irreducible(const Poly& p);

/// Largest k with pi^k | p. `p` nonzero, `pi` nonconstant.
unsigned multiplicity(const Poly& p, const Poly& pi);

/// Coefficients of p viewed as a polynomial in `var` (index k holds the
/// coefficient of var^k; none of them involve `var`).
std::vector<Poly> coefficients_in(const Poly& p, std::size_t var);

/// Multiplies each term by a power of `var` so that the total degree in
/// `block` becomes `degree`.
Poly homogenize(const Poly& p, std::span<const std::size_t> block, std::size_t var, int degree);

}  // namespace quadrica
