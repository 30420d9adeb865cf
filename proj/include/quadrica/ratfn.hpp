#pragma once

#include <string>

#include "quadrica/poly.hpp"

namespace quadrica {

/// Element of Q(vars): a reduced fraction. The denominator is primitive with
/// positive leading coefficient, so equal functions compare equal.
class RatFn {
public:
    RatFn(Poly num);
    RatFn(Poly num, Poly den);

    const Poly& num() const noexcept { return num_; }
    const Poly& den() const noexcept { return den_; }
    const VarList& vars() const noexcept { return num_.vars(); }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_constant() const noexcept { return num_.is_constant() && den_.is_constant(); }

    RatFn inverse() const;
    RatFn pow(int n) const;
    friend RatFn operator*(const RatFn& a, const RatFn& b);
    friend RatFn operator/(const RatFn& a, const RatFn& b);
    friend bool operator==(const RatFn& a, const RatFn& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
    friend bool operator<(const RatFn& a, const RatFn& b) {
        if (a.num_ < b.num_) return true;
        if (b.num_ < a.num_) return false;
        return a.den_ < b.den_;
    }

    RatFn substitute(const std::map<std::string, Poly>& bindings) const;

    /// "num" or "(num)/(den)".
    std::string to_string() const;

private:
    Poly num_, den_;
};

/// Order of vanishing of `f` along the irreducible polynomial `pi`:
/// multiplicity in the numerator minus multiplicity in the denominator.
/// Throws DomainError for f = 0 and for reducible or constant `pi`.
int valuation(const RatFn& f, const Poly& pi);

/// Parses "expr" or "(expr)/(expr)".
RatFn parse_ratfn(std::string_view text, const VarList& vars);

}  // namespace quadrica
