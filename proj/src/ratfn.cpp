#include "quadrica/ratfn.hpp"

#include "quadrica/error.hpp"
#include "quadrica/factor.hpp"
#include "quadrica/parse.hpp"

namespace quadrica {

RatFn::RatFn(Poly num) : RatFn(std::move(num), Poly::constant(num.vars(), 1)) {}

RatFn::RatFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw DomainError("rational function with zero denominator");
    if (!(num_.vars() == den_.vars())) throw DomainError("variable-list mismatch");
    if (num_.is_zero()) {
        den_ = Poly::constant(num_.vars(), 1);
        return;
    }
    if (!den_.is_constant()) {
        Poly g = gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *num_.divide_exact(g);
            den_ = *den_.divide_exact(g);
        }
    }
    Poly p = den_.primitive();
    Rational k = p.leading_coefficient() / den_.leading_coefficient();
    num_ = num_.scaled(k);
    den_ = std::move(p);
}

RatFn RatFn::inverse() const {
    if (is_zero()) throw DomainError("inverse of zero");
    return RatFn(den_, num_);
}

RatFn RatFn::pow(int n) const {
    if (n < 0) return inverse().pow(-n);
    return RatFn(num_.pow(static_cast<unsigned>(n)), den_.pow(static_cast<unsigned>(n)));
}

RatFn operator*(const RatFn& a, const RatFn& b) { return RatFn(a.num_ * b.num_, a.den_ * b.den_); }

RatFn operator/(const RatFn& a, const RatFn& b) { return a * b.inverse(); }

RatFn RatFn::substitute(const std::map<std::string, Poly>& bindings) const {
    return RatFn(num_.substitute(bindings), den_.substitute(bindings));
}

std::string RatFn::to_string() const {
    if (den_.is_constant() && den_.constant_value() == 1) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
}

int valuation(const RatFn& f, const Poly& pi) {
    if (f.is_zero()) throw DomainError("valuation of zero");
    if (!is_irreducible(pi)) throw DomainError("valuation along a reducible or constant polynomial: " + pi.to_string());
    return static_cast<int>(multiplicity(f.num(), pi)) - static_cast<int>(multiplicity(f.den(), pi));
}

RatFn parse_ratfn(std::string_view text, const VarList& vars) {
    // Split at a top-level '/' that is followed by '(' so that "x/2" stays a
    // polynomial.
    int depth = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == '/' && depth == 0) {
            std::size_t j = i + 1;
            while (j < text.size() && text[j] == ' ') ++j;
            if (j < text.size() && text[j] == '(') {
                Poly den = parse_poly(text.substr(i + 1), vars);
                if (den.is_zero()) throw ParseError(i + 1, "zero denominator");
                return RatFn(parse_poly(text.substr(0, i), vars), den);
            }
        }
    }
    return RatFn(parse_poly(text, vars));
}

}  // namespace quadrica
