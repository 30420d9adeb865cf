#include "quadrica/upoly.hpp"

#include <algorithm>
#include <sstream>

#include "quadrica/error.hpp"

namespace quadrica {

UPoly::UPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

UPoly UPoly::constant(const Rational& c) { return UPoly({c}); }

UPoly UPoly::identity() { return UPoly({Rational(0), Rational(1)}); }

void UPoly::trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Rational UPoly::coeff(int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Rational(0);
}

const Rational& UPoly::leading_coefficient() const {
    if (c_.empty()) throw DomainError("zero polynomial has no leading coefficient");
    return c_.back();
}

UPoly UPoly::operator-() const { return scaled(-1); }

UPoly operator+(const UPoly& a, const UPoly& b) {
    std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(static_cast<int>(i)) + b.coeff(static_cast<int>(i));
    return UPoly(std::move(r));
}

UPoly operator-(const UPoly& a, const UPoly& b) { return a + (-b); }

UPoly operator*(const UPoly& a, const UPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return UPoly(std::move(r));
}

bool operator<(const UPoly& a, const UPoly& b) {
    if (a.c_.size() != b.c_.size()) return a.c_.size() < b.c_.size();
    for (std::size_t i = a.c_.size(); i-- > 0;)
        if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
    return false;
}

UPoly UPoly::scaled(const Rational& k) const {
    std::vector<Rational> r = c_;
    for (auto& x : r) x *= k;
    return UPoly(std::move(r));
}

UPoly UPoly::pow(unsigned n) const {
    UPoly r = constant(1), b = *this;
    while (n) {
        if (n & 1u) r = r * b;
        n >>= 1;
        if (n) b = b * b;
    }
    return r;
}

UPoly UPoly::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return UPoly(std::move(r));
}

UPoly UPoly::monic() const {
    if (c_.empty()) return {};
    return scaled(1 / leading_coefficient());
}

Rational UPoly::evaluate(const Rational& t) const {
    Rational acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * t + c_[i];
    return acc;
}

std::pair<UPoly, UPoly> UPoly::divmod(const UPoly& d) const {
    if (d.is_zero()) throw DomainError("division by the zero polynomial");
    if (degree() < d.degree()) return {UPoly{}, *this};
    std::vector<Rational> q(c_.size() - d.c_.size() + 1);
    std::vector<Rational> r = c_;
    const Rational& lc = d.leading_coefficient();
    for (std::size_t k = q.size(); k-- > 0;) {
        Rational f = r[k + d.c_.size() - 1] / lc;
        q[k] = f;
        if (f == 0) continue;
        for (std::size_t j = 0; j < d.c_.size(); ++j) r[k + j] -= f * d.c_[j];
    }
    return {UPoly(std::move(q)), UPoly(std::move(r))};
}

std::string UPoly::to_string(const std::string& var) const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = c_.size(); i-- > 0;) {
        const Rational& c = c_[i];
        if (c == 0) continue;
        Rational a = abs(c);
        if (c < 0)
            os << '-';
        else if (!first)
            os << '+';
        first = false;
        if (i == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str() << '*';
        os << var;
        if (i > 1) os << '^' << i;
    }
    return os.str();
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        UPoly r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

std::vector<std::pair<UPoly, unsigned>> squarefree_decomposition(const UPoly& p) {
    if (p.is_zero()) throw DomainError("square-free decomposition of zero");
    std::vector<std::pair<UPoly, unsigned>> out;
    UPoly f = p.monic();
    if (f.is_constant()) return out;
    UPoly fp = f.derivative();
    UPoly a = gcd(f, fp);
    UPoly b = f.divmod(a).first;
    UPoly c = fp.divmod(a).first;
    UPoly d = c - b.derivative();
    for (unsigned i = 1; !b.is_constant(); ++i) {
        UPoly g = gcd(b, d);
        b = b.divmod(g).first;
        c = d.divmod(g).first;
        d = c - b.derivative();
        if (!g.is_constant()) out.emplace_back(g.monic(), i);
    }
    return out;
}

UPoly odd_part(const UPoly& p) {
    UPoly r = UPoly::constant(1);
    for (const auto& [f, m] : squarefree_decomposition(p))
        if (m % 2 == 1) r = r * f;
    return r;
}

namespace {
std::vector<mpz_class> positive_divisors(mpz_class n) {
    n = abs(n);
    if (n > mpz_class("1000000000000"))
        throw UnsupportedError("rational root search: coefficient too large to enumerate divisors");
    std::vector<mpz_class> small, large;
    for (mpz_class d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}
}  // namespace

std::vector<Rational> rational_roots(const UPoly& p) {
    if (p.is_zero()) throw DomainError("roots of the zero polynomial");
    std::vector<Rational> roots;
    // Scale to integer coefficients and strip the root at zero.
    mpz_class den = 1;
    for (const auto& c : p.coeffs()) den = lcm(den, c.get_den());
    std::vector<mpz_class> z;
    for (const auto& c : p.coeffs()) z.push_back(Rational(c * den).get_num());
    std::size_t shift = 0;
    while (shift < z.size() && z[shift] == 0) ++shift;
    if (shift > 0) roots.emplace_back(0);
    z.erase(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(shift));
    if (z.size() > 1) {
        std::vector<Rational> q(z.begin(), z.end());
        UPoly reduced(q);
        for (const auto& num : positive_divisors(z.front())) {
            for (const auto& dd : positive_divisors(z.back())) {
                for (int sign : {1, -1}) {
                    Rational r(mpz_class(num * sign), dd);
                    r.canonicalize();
                    if (reduced.evaluate(r) == 0 &&
                        std::find(roots.begin(), roots.end(), r) == roots.end())
                        roots.push_back(r);
                }
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

}  // namespace quadrica
