#include "quadrica/poly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "quadrica/error.hpp"

namespace quadrica {

VarList::VarList(std::vector<std::string> names)
    : names_(std::make_shared<const std::vector<std::string>>(std::move(names))) {}

VarList::VarList(std::initializer_list<std::string> names)
    : VarList(std::vector<std::string>(names)) {}

std::optional<std::size_t> VarList::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_->size(); ++i)
        if ((*names_)[i] == name) return i;
    return std::nullopt;
}

bool GrlexGreater::operator()(const Monomial& a, const Monomial& b) const noexcept {
    std::uint64_t da = 0, db = 0;
    for (auto e : a) da += e;
    for (auto e : b) db += e;
    if (da != db) return da > db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

Exponent checked_add(Exponent a, Exponent b) {
    std::uint64_t s = std::uint64_t{a} + b;
    if (s > kMaxExponent) throw DomainError("exponent overflow");
    return static_cast<Exponent>(s);
}

Monomial unit_monomial(std::size_t nvars, std::size_t var, Exponent e) {
    Monomial m(nvars, 0);
    m[var] = e;
    return m;
}

Poly::Poly(VarList vars) : vars_(std::move(vars)) {}

Poly Poly::constant(VarList vars, const Rational& c) {
    Poly p(vars);
    p.add_term(Monomial(vars.size(), 0), c);
    return p;
}

Poly Poly::variable(VarList vars, std::string_view name) {
    auto idx = vars.index_of(name);
    if (!idx) throw DomainError("unknown variable '" + std::string(name) + "'");
    Poly p(vars);
    p.add_term(unit_monomial(vars.size(), *idx, 1), 1);
    return p;
}

Poly Poly::monomial(VarList vars, Monomial exps, const Rational& c) {
    if (exps.size() != vars.size()) throw DomainError("monomial length mismatch");
    Poly p(vars);
    p.add_term(exps, c);
    return p;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

bool Poly::is_constant() const noexcept {
    if (terms_.empty()) return true;
    if (terms_.size() > 1) return false;
    const auto& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](Exponent e) { return e == 0; });
}

Rational Poly::constant_value() const {
    if (!is_constant()) throw DomainError("polynomial is not constant");
    return terms_.empty() ? Rational(0) : terms_.begin()->second;
}

int Poly::total_degree() const noexcept {
    if (terms_.empty()) return -1;
    const auto& m = terms_.begin()->first;
    return static_cast<int>(std::accumulate(m.begin(), m.end(), std::uint64_t{0}));
}

Exponent Poly::degree_in(std::size_t var) const noexcept {
    Exponent d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
}

bool Poly::depends_on(std::size_t var) const noexcept { return degree_in(var) > 0; }

std::vector<std::size_t> Poly::active_vars() const {
    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < vars_.size(); ++v)
        if (depends_on(v)) out.push_back(v);
    return out;
}

const Monomial& Poly::leading_monomial() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
    return terms_.begin()->first;
}

const Rational& Poly::leading_coefficient() const {
    if (terms_.empty()) throw DomainError("zero polynomial has no leading term");
    return terms_.begin()->second;
}

namespace {
void require_same_vars(const Poly& a, const Poly& b) {
    if (!(a.vars() == b.vars())) throw DomainError("variable-list mismatch");
}
}  // namespace

Poly Poly::operator-() const {
    Poly r(*this);
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    require_same_vars(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    require_same_vars(*this, o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    require_same_vars(a, b);
    Poly r(a.vars_);
    Monomial m(a.vars_.size());
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = checked_add(ma[i], mb[i]);
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly Poly::scaled(const Rational& c) const {
    if (c == 0) return Poly(vars_);
    Poly r(*this);
    for (auto& [m, v] : r.terms_) v *= c;
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly result = constant(vars_, 1);
    Poly base = *this;
    while (n) {
        if (n & 1u) result *= base;
        n >>= 1;
        if (n) base *= base;
    }
    return result;
}

std::optional<Poly> Poly::divide_exact(const Poly& d) const {
    require_same_vars(*this, d);
    if (d.is_zero()) throw DomainError("division by the zero polynomial");
    Poly q(vars_);
    Poly r(*this);
    const Monomial& ld = d.leading_monomial();
    const Rational& lc = d.leading_coefficient();
    Monomial t(vars_.size());
    while (!r.is_zero()) {
        const Monomial& lr = r.leading_monomial();
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (lr[i] < ld[i]) return std::nullopt;
            t[i] = lr[i] - ld[i];
        }
        Rational c = r.leading_coefficient() / lc;
        Poly step = monomial(vars_, t, c);
        q.add_term(t, c);
        r -= step * d;
    }
    return q;
}

Poly Poly::derivative(std::size_t var) const {
    Poly r(vars_);
    for (const auto& [m, c] : terms_) {
        if (m[var] == 0) continue;
        Monomial n = m;
        --n[var];
        r.add_term(n, c * m[var]);
    }
    return r;
}

Poly Poly::substitute(const std::map<std::string, Poly>& bindings) const {
    std::vector<const Poly*> bound(vars_.size(), nullptr);
    for (const auto& [name, value] : bindings) {
        auto idx = vars_.index_of(name);
        if (!idx) throw DomainError("binding for unknown variable '" + name + "'");
        require_same_vars(*this, value);
        bound[*idx] = &value;
    }
    // Cache powers of each bound value; exponents are small in practice.
    std::vector<std::vector<Poly>> powers(vars_.size());
    auto power_of = [&](std::size_t v, Exponent e) -> const Poly& {
        auto& cache = powers[v];
        if (cache.empty()) cache.push_back(constant(vars_, 1));
        while (cache.size() <= e) cache.push_back(cache.back() * *bound[v]);
        return cache[e];
    };
    Poly r(vars_);
    for (const auto& [m, c] : terms_) {
        Monomial kept = m;
        Poly term = constant(vars_, c);
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (!bound[v] || m[v] == 0) continue;
            kept[v] = 0;
            term *= power_of(v, m[v]);
        }
        r += term * monomial(vars_, kept);
    }
    return r;
}

Rational Poly::evaluate(std::span<const Rational> point) const {
    if (point.size() != vars_.size()) throw DomainError("evaluation point has wrong length");
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t v = 0; v < m.size(); ++v)
            for (Exponent k = 0; k < m[v]; ++k) t *= point[v];
        sum += t;
    }
    return sum;
}

Rational Poly::content() const {
    if (terms_.empty()) return 0;
    mpz_class num = 0, den = 1;
    for (const auto& [m, c] : terms_) {
        mpz_class cn = abs(c.get_num());
        num = gcd(num, cn);
        den = lcm(den, c.get_den());
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

Poly Poly::primitive() const {
    if (terms_.empty()) return *this;
    Rational c = content();
    if (leading_coefficient() < 0) c = -c;
    Poly r(*this);
    for (auto& [m, v] : r.terms_) {
        v /= c;
        v.canonicalize();
    }
    return r;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool constant_term = std::all_of(m.begin(), m.end(), [](Exponent e) { return e == 0; });
        Rational a = abs(c);
        if (c < 0)
            os << '-';
        else if (!first)
            os << '+';
        first = false;
        bool need_star = false;
        if (a != 1 || constant_term) {
            os << a.get_str();
            need_star = true;
        }
        for (std::size_t v = 0; v < m.size(); ++v) {
            if (m[v] == 0) continue;
            if (need_star) os << '*';
            os << vars_.name(v);
            if (m[v] > 1) os << '^' << m[v];
            need_star = true;
        }
    }
    return os.str();
}

bool operator==(const Poly& a, const Poly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
}

bool operator<(const Poly& a, const Poly& b) {
    GrlexGreater gt;
    auto ia = a.terms_.begin(), ib = b.terms_.begin();
    for (; ia != a.terms_.end() && ib != b.terms_.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return gt(ia->first, ib->first);
        if (ia->second != ib->second) return ia->second < ib->second;
    }
    return ia == a.terms_.end() && ib != b.terms_.end();
}

Grading Grading::total(const VarList& vars) { return Grading{{vars.names()}}; }

Grading Grading::bidegree(std::vector<std::string> a, std::vector<std::string> b) {
    return Grading{{std::move(a), std::move(b)}};
}

std::optional<int> homogeneous_degree(const Poly& p, std::span<const std::size_t> vars) {
    std::optional<int> deg;
    for (const auto& [m, c] : p.terms()) {
        int d = 0;
        for (auto v : vars) d += static_cast<int>(m[v]);
        if (deg && *deg != d) return std::nullopt;
        deg = d;
    }
    return deg;
}

std::optional<std::vector<int>> degree_profile(const Poly& p, const Grading& g) {
    if (p.is_zero()) throw DomainError("degree of the zero polynomial");
    std::vector<int> out;
    for (const auto& block : g.blocks) {
        std::vector<std::size_t> idx;
        for (const auto& name : block) {
            auto i = p.vars().index_of(name);
            if (!i) throw DomainError("grading names unknown variable '" + name + "'");
            idx.push_back(*i);
        }
        auto d = homogeneous_degree(p, idx);
        if (!d) return std::nullopt;
        out.push_back(*d);
    }
    return out;
}

}  // namespace quadrica
