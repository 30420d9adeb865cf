#pragma once

// Shared fixtures and random generators for the unit and acceptance suites.

#include <random>
#include <string_view>

#include "quadrica/parse.hpp"
#include "quadrica/poly.hpp"
#include "quadrica/ratfn.hpp"

namespace quadrica::testing {

inline const VarList& p2_vars() {
    static const VarList v{"x", "y", "z"};
    return v;
}

inline const VarList& p1p1_vars() {
    static const VarList v{"x0", "x1", "y0", "y1"};
    return v;
}

inline Poly px(std::string_view s) { return parse_poly(s, p2_vars()); }
inline Poly p1(std::string_view s) { return parse_poly(s, p1p1_vars()); }
inline RatFn rx(std::string_view s) { return parse_ratfn(s, p2_vars()); }
inline RatFn r1(std::string_view s) { return parse_ratfn(s, p1p1_vars()); }

/// x^2+y^2+z^2-2(xy+xz+yz), written out independently of the library's own
/// constant.
inline Poly hpt_quadric() { return px("x^2+y^2+z^2-2*x*y-2*x*z-2*y*z"); }
inline Poly hpt_affine() { return px("x^2+y^2+1-2*x*y-2*x-2*y"); }
inline Poly bidegree_quadric() {
    return p1("x1^2*y0^2+x0^2*y1^2+x0^2*y0^2-2*x1*y1*x0*y0-2*x1*x0*y0^2-2*y1*y0*x0^2");
}

/// Small dense-ish random polynomial: up to four terms, exponents <= 2,
/// coefficients in [-3, 3].
inline Poly random_poly(std::mt19937& rng, const VarList& vars) {
    std::uniform_int_distribution<int> nterms(1, 4), expo(0, 2), coef(-3, 3);
    Poly p(vars);
    int n = nterms(rng);
    for (int i = 0; i < n; ++i) {
        Monomial m(vars.size());
        for (auto& e : m) e = static_cast<Exponent>(expo(rng));
        p += Poly::monomial(vars, m, coef(rng));
    }
    return p;
}

/// Random nonzero product of variables, the HPT quadric and a constant; all
/// within the factorization class.
inline Poly random_p2_product(std::mt19937& rng, bool allow_constant = true) {
    static const char* atoms[] = {"x", "y", "z", "x^2+y^2+z^2-2*x*y-2*x*z-2*y*z", "x-y", "y-z"};
    std::uniform_int_distribution<int> pick(0, 5), expo(0, 2), cst(1, 6);
    Poly p = px(allow_constant ? std::to_string(cst(rng)) : "1");
    for (int i = 0; i < 3; ++i) p *= px(atoms[pick(rng)]).pow(static_cast<unsigned>(expo(rng)));
    return p;
}

/// Random product of chart variables and the affine HPT quadric over P2.
inline Poly random_affine_p2_product(std::mt19937& rng) {
    static const char* atoms[] = {"x", "y", "x^2+y^2+1-2*x*y-2*x-2*y", "x-1", "y+1"};
    std::uniform_int_distribution<int> pick(0, 4), expo(0, 2);
    Poly p = px("1");
    for (int i = 0; i < 3; ++i) p *= px(atoms[pick(rng)]).pow(static_cast<unsigned>(expo(rng)));
    return p;
}

inline Poly random_p1p1_product(std::mt19937& rng) {
    static const char* atoms[] = {"x0", "x1", "y0", "y1",
                                  "x1^2*y0^2+x0^2*y1^2+x0^2*y0^2-2*x1*y1*x0*y0-2*x1*x0*y0^2-2*y1*y0*x0^2"};
    std::uniform_int_distribution<int> pick(0, 4), expo(0, 2);
    Poly p = p1("1");
    for (int i = 0; i < 3; ++i) p *= p1(atoms[pick(rng)]).pow(static_cast<unsigned>(expo(rng)));
    return p;
}

}  // namespace quadrica::testing
