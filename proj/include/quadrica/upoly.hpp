#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quadrica/poly.hpp"

namespace quadrica {

/// Dense univariate polynomial over the rationals, used for functions on
/// parametrized curves. Coefficients are stored low degree first with no
/// trailing zeros.
class UPoly {
public:
    UPoly() = default;
    explicit UPoly(std::vector<Rational> coeffs);
    static UPoly constant(const Rational& c);
    static UPoly identity();

    int degree() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    const std::vector<Rational>& coeffs() const noexcept { return c_; }
    Rational coeff(int i) const;
    const Rational& leading_coefficient() const;

    UPoly operator-() const;
    friend UPoly operator+(const UPoly& a, const UPoly& b);
    friend UPoly operator-(const UPoly& a, const UPoly& b);
    friend UPoly operator*(const UPoly& a, const UPoly& b);
    friend bool operator==(const UPoly& a, const UPoly& b) { return a.c_ == b.c_; }
    friend bool operator<(const UPoly& a, const UPoly& b);

    UPoly scaled(const Rational& k) const;
    UPoly pow(unsigned n) const;
    UPoly derivative() const;
    UPoly monic() const;
    Rational evaluate(const Rational& t) const;
    /// Quotient and remainder.
    std::pair<UPoly, UPoly> divmod(const UPoly& d) const;

    std::string to_string(const std::string& var = "t") const;

private:
    void trim();
    std::vector<Rational> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
UPoly gcd(UPoly a, UPoly b);

/// Yun's algorithm: monic pairwise coprime square-free parts with their
/// multiplicities. The input must be nonzero.
std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& p);

/// Monic product of the square-free parts of odd multiplicity. Two nonzero
/// polynomials have the same class modulo squares and nonzero constants
/// exactly when their odd parts agree.
UPoly odd_part(const UPoly& p);

/// Distinct rational roots, ascending.
std::vector<Rational> rational_roots(const UPoly& p);

}  // namespace quadrica
