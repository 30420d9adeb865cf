#include "quadrica/factor.hpp"

#include <algorithm>
#include <limits>
#include <mutex>
#include <unordered_map>

#include "quadrica/error.hpp"
#include "quadrica/upoly.hpp"

namespace quadrica {

Poly FactoredPoly::recombine(const VarList& vars) const {
    Poly r = Poly::constant(vars, unit);
    for (const auto& [f, m] : factors) r *= f.pow(m);
    return r;
}

std::vector<Poly> coefficients_in(const Poly& p, std::size_t var) {
    std::vector<Poly> out(p.degree_in(var) + 1, Poly(p.vars()));
    for (const auto& [m, c] : p.terms()) {
        Monomial rest = m;
        rest[var] = 0;
        out[m[var]] += Poly::monomial(p.vars(), rest, c);
    }
    return out;
}

Poly homogenize(const Poly& p, std::span<const std::size_t> block, std::size_t var, int degree) {
    Poly r(p.vars());
    for (const auto& [m, c] : p.terms()) {
        int d = 0;
        for (auto v : block) d += static_cast<int>(m[v]);
        if (d > degree) throw DomainError("homogenize: target degree below term degree");
        Monomial n = m;
        n[var] = checked_add(n[var], static_cast<Exponent>(degree - d));
        r += Poly::monomial(p.vars(), n, c);
    }
    return r;
}

namespace {

Poly exact(const Poly& a, const Poly& b) {
    auto q = a.divide_exact(b);
    if (!q) throw Error("internal: expected exact division of " + a.to_string() + " by " + b.to_string());
    return *q;
}

Poly one(const VarList& vars) { return Poly::constant(vars, 1); }

Poly leading_coefficient_in(const Poly& p, std::size_t v) {
    return coefficients_in(p, v).back();
}

Poly content_in(const Poly& p, std::size_t v) {
    Poly g(p.vars());
    for (const auto& c : coefficients_in(p, v)) {
        if (c.is_zero()) continue;
        g = gcd(g, c);
        if (g.is_constant()) break;
    }
    return g;
}

Poly pseudo_remainder(const Poly& a, const Poly& b, std::size_t v) {
    const int db = static_cast<int>(b.degree_in(v));
    const Poly lb = leading_coefficient_in(b, v);
    Poly r = a;
    int e = static_cast<int>(a.degree_in(v)) - db + 1;
    while (!r.is_zero() && static_cast<int>(r.degree_in(v)) >= db) {
        const int dr = static_cast<int>(r.degree_in(v));
        Poly s = leading_coefficient_in(r, v) *
                 Poly::monomial(r.vars(), unit_monomial(r.vars().size(), v, static_cast<Exponent>(dr - db)));
        r = lb * r - s * b;
        --e;
    }
    if (e > 0) r *= lb.pow(static_cast<unsigned>(e));
    return r;
}

Poly primitive_part_in(const Poly& p, std::size_t v) { return exact(p, content_in(p, v)); }

}  // namespace

Poly gcd(const Poly& a, const Poly& b) {
    if (!(a.vars() == b.vars())) throw DomainError("variable-list mismatch");
    if (a.is_zero()) return b.primitive();
    if (b.is_zero()) return a.primitive();
    if (a.is_constant() || b.is_constant()) return one(a.vars());

    std::size_t v = 0;
    while (!a.depends_on(v) && !b.depends_on(v)) ++v;
    if (!a.depends_on(v)) return gcd(a, content_in(b, v));
    if (!b.depends_on(v)) return gcd(content_in(a, v), b);

    Poly ca = content_in(a, v), cb = content_in(b, v);
    Poly g_content = gcd(ca, cb);
    Poly pa = exact(a, ca).primitive(), pb = exact(b, cb).primitive();
    if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
    while (!pb.is_zero()) {
        Poly r = pseudo_remainder(pa, pb, v);
        pa = std::move(pb);
        // Dropping the numeric content keeps coefficient growth in check.
        pb = r.is_zero() ? r : primitive_part_in(r.primitive(), v).primitive();
    }
    Poly g = primitive_part_in(pa, v) * g_content;
    return g.is_constant() ? one(a.vars()) : g.primitive();
}

Poly gcd_all(std::span<const Poly> ps) {
    if (ps.empty()) throw DomainError("gcd of an empty list");
    Poly g(ps.front().vars());
    for (const auto& p : ps) {
        g = gcd(g, p);
        if (!g.is_zero() && g.is_constant()) break;
    }
    if (g.is_zero()) throw DomainError("gcd of all-zero polynomials");
    return g;
}

std::vector<std::pair<Poly, unsigned>> squarefree_decomposition(const Poly& p) {
    if (p.is_zero()) throw DomainError("square-free decomposition of zero");
    std::vector<std::pair<Poly, unsigned>> out;
    if (p.is_constant()) return out;
    const auto active = p.active_vars();
    const std::size_t v = active.front();

    Poly c = content_in(p, v);
    out = squarefree_decomposition(c);
    Poly f = exact(p, c);

    // Yun's algorithm in Q[others][v]; f is primitive in v.
    Poly fp = f.derivative(v);
    Poly a = gcd(f, fp);
    Poly b = exact(f, a);
    Poly d = exact(fp, a) - b.derivative(v);
    for (unsigned i = 1; !b.is_constant(); ++i) {
        Poly g = gcd(b, d);
        b = exact(b, g);
        d = exact(d, g) - b.derivative(v);
        if (!g.is_constant()) out.emplace_back(g.primitive(), i);
    }
    return out;
}

unsigned multiplicity(const Poly& p, const Poly& pi) {
    if (p.is_zero()) throw DomainError("multiplicity in the zero polynomial");
    if (pi.is_constant()) throw DomainError("multiplicity of a constant");
    unsigned k = 0;
    Poly r = p;
    while (auto q = r.divide_exact(pi)) {
        r = std::move(*q);
        ++k;
    }
    return k;
}

namespace {

// Absolute irreducibility of a polynomial of total degree two: the
// (homogenized) Gram matrix must have rank at least three.
bool quadric_is_absolutely_irreducible(const Poly& r) {
    const auto active = r.active_vars();
    const std::size_t n = active.size() + 1;  // last slot homogenizes
    std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n, 0));
    auto slot = [&](std::size_t var) {
        return static_cast<std::size_t>(std::find(active.begin(), active.end(), var) - active.begin());
    };
    for (const auto& [m, c] : r.terms()) {
        std::vector<std::size_t> idx;
        for (auto v : active)
            for (Exponent k = 0; k < m[v]; ++k) idx.push_back(slot(v));
        while (idx.size() < 2) idx.push_back(n - 1);
        if (idx[0] == idx[1]) {
            g[idx[0]][idx[0]] += c;
        } else {
            g[idx[0]][idx[1]] += c / 2;
            g[idx[1]][idx[0]] += c / 2;
        }
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < n; ++col) {
        std::size_t piv = rank;
        while (piv < n && g[piv][col] == 0) ++piv;
        if (piv == n) continue;
        std::swap(g[piv], g[rank]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == rank || g[i][col] == 0) continue;
            Rational f = g[i][col] / g[rank][col];
            for (std::size_t j = col; j < n; ++j) g[i][j] -= f * g[rank][j];
        }
        ++rank;
    }
    return rank >= 3;
}

UPoly specialize_to_univariate(const Poly& p, std::size_t v, const std::vector<Rational>& point) {
    std::vector<Rational> coeffs;
    for (const auto& c : coefficients_in(p, v)) coeffs.push_back(c.evaluate(point));
    return UPoly(std::move(coeffs));
}

// Finds one rational linear factor v - L(others) of the square-free,
// content-free polynomial s, or nullopt.
std::optional<Poly> find_linear_factor(const Poly& s, std::size_t v) {
    const VarList& vars = s.vars();
    const std::size_t nv = vars.size();
    std::vector<std::size_t> others;
    for (auto w : s.active_vars())
        if (w != v) others.push_back(w);
    const Poly lc = leading_coefficient_in(s, v);

    // Base point P0 and neighbours P0 + e_i keeping the v-degree intact.
    std::vector<Rational> base(nv, 0);
    bool found_base = false;
    for (int trial = 0; trial < 64 && !found_base; ++trial) {
        for (std::size_t i = 0; i < others.size(); ++i)
            base[others[i]] = Rational((trial * 7 + static_cast<int>(i) * 3) % 11 - 5);
        found_base = lc.evaluate(base) != 0;
        for (std::size_t i = 0; found_base && i < others.size(); ++i) {
            auto pt = base;
            pt[others[i]] += 1;
            found_base = lc.evaluate(pt) != 0;
        }
    }
    if (!found_base) throw UnsupportedError("factor: no admissible specialization point");

    std::vector<std::vector<Rational>> roots;
    roots.push_back(rational_roots(specialize_to_univariate(s, v, base)));
    for (std::size_t i = 0; i < others.size(); ++i) {
        auto pt = base;
        pt[others[i]] += 1;
        roots.push_back(rational_roots(specialize_to_univariate(s, v, pt)));
    }
    for (const auto& r : roots)
        if (r.empty()) return std::nullopt;

    std::vector<std::size_t> pick(roots.size(), 0);
    for (;;) {
        Poly L = Poly::constant(vars, roots[0][pick[0]]);
        for (std::size_t i = 0; i < others.size(); ++i) {
            Rational slope = roots[i + 1][pick[i + 1]] - roots[0][pick[0]];
            L += Poly::monomial(vars, unit_monomial(nv, others[i], 1), slope);
            L -= Poly::constant(vars, slope * base[others[i]]);
        }
        Poly ell = Poly::variable(vars, vars.name(v)) - L;
        if (s.divide_exact(ell)) return ell.primitive();
        std::size_t k = 0;
        while (k < pick.size() && ++pick[k] == roots[k].size()) pick[k++] = 0;
        if (k == pick.size()) return std::nullopt;
    }
}

std::vector<Poly> split_squarefree(const Poly& s);

// s is homogeneous in `block` (of positive degree) and not divisible by var.
std::vector<Poly> split_by_dehomogenizing(const Poly& s, const std::vector<std::size_t>& block, std::size_t var) {
    const int deg = *homogeneous_degree(s, block);
    Poly affine = s.substitute({{s.vars().name(var), one(s.vars())}});
    std::vector<Poly> out;
    for (const auto& f : split_squarefree(affine.primitive())) {
        int fd = 0;
        for (const auto& [m, c] : f.terms()) {
            int t = 0;
            for (auto b : block) t += static_cast<int>(m[b]);
            fd = std::max(fd, t);
        }
        out.push_back(homogenize(f, block, var, fd).primitive());
    }
    Poly check = one(s.vars());
    for (const auto& f : out) check *= f;
    int total = 0;
    for (const auto& f : out) total += *homogeneous_degree(f, block);
    if (total != deg || !s.divide_exact(check) || !check.divide_exact(s))
        throw Error("internal: dehomogenized factorization does not recombine for " + s.to_string());
    return out;
}

std::vector<Poly> split_squarefree(const Poly& s) {
    if (s.is_constant()) return {};
    const VarList& vars = s.vars();
    const auto active = s.active_vars();

    if (active.size() == 1) {
        const std::size_t v = active.front();
        std::vector<Poly> out;
        Poly rest = s;
        for (const auto& r : rational_roots(specialize_to_univariate(s, v, std::vector<Rational>(vars.size(), 0)))) {
            Poly ell = Poly::variable(vars, vars.name(v)) - Poly::constant(vars, r);
            rest = exact(rest, ell);
            out.push_back(ell.primitive());
        }
        if (!rest.is_constant())
            throw UnsupportedError("factor: " + s.to_string() + " has a factor that is not absolutely irreducible");
        return out;
    }

    // Exploit any grading the polynomial is homogeneous for. Which chart
    // exposes a low-degree model depends on the polynomial, so every
    // (block, variable) choice is tried before giving up.
    const std::size_t na = active.size();
    std::optional<UnsupportedError> last_error;
    for (std::size_t size = 2; size <= na; ++size) {
        for (std::uint32_t mask = 0; mask < (1u << na); ++mask) {
            if (static_cast<std::size_t>(__builtin_popcount(mask)) != size) continue;
            std::vector<std::size_t> block;
            for (std::size_t i = 0; i < na; ++i)
                if (mask & (1u << i)) block.push_back(active[i]);
            auto d = homogeneous_degree(s, block);
            if (!d || *d == 0) continue;
            for (auto var : block) {
                try {
                    return split_by_dehomogenizing(s, block, var);
                } catch (const UnsupportedError& e) {
                    last_error = e;
                }
            }
        }
    }
    if (last_error) throw *last_error;

    const std::size_t v = active.front();
    Poly c = content_in(s, v);
    if (!c.is_constant()) {
        auto out = split_squarefree(c.primitive());
        auto rest = split_squarefree(exact(s, c).primitive());
        out.insert(out.end(), rest.begin(), rest.end());
        return out;
    }

    std::vector<Poly> out;
    Poly rest = s;
    while (rest.degree_in(v) > 0) {
        auto ell = find_linear_factor(rest, v);
        if (!ell) break;
        rest = exact(rest, *ell);
        out.push_back(*ell);
    }
    if (rest.is_constant()) return out;
    if (rest.total_degree() == 1) {
        out.push_back(rest.primitive());
        return out;
    }
    if (rest.active_vars().size() < active.size()) {
        auto more = split_squarefree(rest.primitive());
        out.insert(out.end(), more.begin(), more.end());
        return out;
    }
    if (rest.total_degree() == 2 && quadric_is_absolutely_irreducible(rest)) {
        out.push_back(rest.primitive());
        return out;
    }
    throw UnsupportedError("factor: cannot certify the factorization of " + rest.to_string() +
                           " (outside the supported class)");
}

FactoredPoly factor_uncached(const Poly& p) {
    const VarList& vars = p.vars();
    FactoredPoly out;
    Poly rest = p;
    for (std::size_t v = 0; v < vars.size(); ++v) {
        Exponent e = std::numeric_limits<Exponent>::max();
        for (const auto& [m, c] : rest.terms()) e = std::min(e, m[v]);
        if (e == 0) continue;
        rest = exact(rest, Poly::monomial(vars, unit_monomial(vars.size(), v, e)));
        out.factors.emplace_back(Poly::variable(vars, vars.name(v)), e);
    }
    for (const auto& [part, mult] : squarefree_decomposition(rest))
        for (auto& f : split_squarefree(part)) out.factors.emplace_back(std::move(f), mult);

    std::sort(out.factors.begin(), out.factors.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < out.factors.size(); ++i)
        if (out.factors[i].first == out.factors[i - 1].first)
            throw Error("internal: repeated factor " + out.factors[i].first.to_string());

    Poly prod = one(vars);
    for (const auto& [f, m] : out.factors) prod *= f.pow(m);
    out.unit = p.leading_coefficient() / prod.leading_coefficient();
    if (!(prod.scaled(out.unit) == p)) throw Error("internal: factorization does not recombine for " + p.to_string());
    return out;
}

}  // namespace

FactoredPoly factor(const Poly& p) {
    if (p.is_zero()) throw DomainError("factor of the zero polynomial");
    static std::mutex mu;
    static std::unordered_map<std::string, FactoredPoly> cache;
    std::string key;
    for (const auto& n : p.vars().names()) key += n + ",";
    key += "|" + p.to_string();
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    FactoredPoly f = factor_uncached(p);
    std::lock_guard lock(mu);
    if (cache.size() > 200000) cache.clear();
    cache.emplace(std::move(key), f);
    return f;
}

bool is_irreducible(const Poly& p) {
    if (p.is_constant()) return false;
    auto f = factor(p);
    return f.factors.size() == 1 && f.factors.front().second == 1;
}

}  // namespace quadrica
