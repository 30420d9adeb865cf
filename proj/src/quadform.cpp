#include "quadrica/quadform.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>
#include <set>

#include "quadrica/error.hpp"
#include "quadrica/factor.hpp"
#include "quadrica/parse.hpp"

namespace quadrica {

namespace {

int parse_int(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || p != s.data() + s.size() || v < 0)
        throw DomainError("invalid degree '" + std::string(s) + "'");
    return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

void check_vars(const Poly& p, const SurfaceModel& s) {
    if (!(p.vars() == s.vars())) throw DomainError("entry " + p.to_string() + " is not over the surface coordinates");
}

RatFn as_fn(const Poly& p) { return RatFn(p); }

bool is_const_class(const SquareClass& c) { return c.trivial(); }

}  // namespace

std::string BundleType::to_string() const {
    std::string s;
    for (int i = 0; i < 4; ++i) {
        if (i) s += ',';
        s += std::to_string(d[i]);
        if (kind == SurfaceKind::P1xP1) s += ':' + std::to_string(e[i]);
    }
    return s;
}

bool BundleType::parities_ok() const noexcept {
    for (int i = 1; i < 4; ++i)
        if ((d[i] - d[0]) % 2 != 0 || (e[i] - e[0]) % 2 != 0) return false;
    return true;
}

bool BundleType::is_ordered() const noexcept {
    for (int i = 0; i + 1 < 4; ++i)
        if (std::pair(d[i], e[i]) > std::pair(d[i + 1], e[i + 1])) return false;
    return true;
}

BundleType BundleType::sorted() const {
    std::array<std::pair<int, int>, 4> p;
    for (int i = 0; i < 4; ++i) p[i] = {d[i], e[i]};
    std::sort(p.begin(), p.end());
    BundleType t{kind, {}, {}};
    for (int i = 0; i < 4; ++i) std::tie(t.d[i], t.e[i]) = p[i];
    return t;
}

BundleType parse_type(std::string_view text) {
    auto parts = split(text, ',');
    if (parts.size() != 4) throw DomainError("a type has four entries: '" + std::string(text) + "'");
    BundleType t;
    t.kind = text.find(':') == std::string_view::npos ? SurfaceKind::P2 : SurfaceKind::P1xP1;
    for (int i = 0; i < 4; ++i) {
        auto part = parts[static_cast<std::size_t>(i)];
        auto colon = part.find(':');
        if (t.kind == SurfaceKind::P2) {
            t.d[i] = parse_int(part);
        } else {
            if (colon == std::string_view::npos) throw DomainError("expected d:e in '" + std::string(part) + "'");
            t.d[i] = parse_int(part.substr(0, colon));
            t.e[i] = parse_int(part.substr(colon + 1));
        }
    }
    return t;
}

DiagForm DiagForm::make(std::array<Poly, 4> entries, SurfaceKind kind) {
    const auto& s = SurfaceModel::of(kind);
    for (const auto& p : entries) {
        check_vars(p, s);
        if (p.is_zero()) throw DomainError("weak bundle requires a_ii nonzero");
        if (!degree_profile(p, s.grading())) throw DomainError("entry " + p.to_string() + " is not homogeneous");
    }
    return DiagForm(std::move(entries), kind, false);
}

DiagForm DiagForm::affine(std::array<Poly, 4> entries, SurfaceKind kind) {
    const auto& s = SurfaceModel::of(kind);
    for (const auto& p : entries) {
        check_vars(p, s);
        if (p.is_zero()) throw DomainError("weak bundle requires a_ii nonzero");
        for (auto v : s.boundary_vars())
            if (p.depends_on(v)) throw DomainError("affine entry " + p.to_string() + " uses " + s.vars().name(v));
    }
    return DiagForm(std::move(entries), kind, true);
}

DiagForm DiagForm::parse(std::string_view text, SurfaceKind kind, bool affine) {
    auto parts = split(text, ';');
    if (parts.size() != 4) throw DomainError("a diagonal form has four entries separated by ';'");
    std::array<Poly, 4> e{Poly(SurfaceModel::of(kind).vars()), Poly(SurfaceModel::of(kind).vars()),
                          Poly(SurfaceModel::of(kind).vars()), Poly(SurfaceModel::of(kind).vars())};
    std::size_t offset = 0;
    for (std::size_t i = 0; i < 4; ++i) {
        try {
            e[i] = SurfaceModel::of(kind).parse(parts[i]);
        } catch (const ParseError& err) {
            std::string msg = err.what();
            auto colon = msg.find(": ");
            throw ParseError(offset + err.position(), colon == std::string::npos ? msg : msg.substr(colon + 2));
        }
        offset += parts[i].size() + 1;
    }
    return affine ? DiagForm::affine(std::move(e), kind) : DiagForm::make(std::move(e), kind);
}

std::string DiagForm::to_string() const {
    std::string s = "<";
    for (std::size_t i = 0; i < 4; ++i) s += (i ? ", " : "") + entries_[i].to_string();
    return s + ">";
}

std::vector<std::string> DiagForm::entry_strings() const {
    std::vector<std::string> out;
    for (const auto& p : entries_) out.push_back(p.to_string());
    return out;
}

TypeOf type_of(const DiagForm& f) {
    if (f.is_affine()) throw DomainError("type_of needs a homogeneous form");
    std::array<std::pair<int, int>, 4> deg;
    for (std::size_t i = 0; i < 4; ++i) {
        auto prof = *degree_profile(f.entry(i), f.surface().grading());
        deg[i] = {prof[0], prof.size() > 1 ? prof[1] : 0};
    }
    TypeOf out;
    std::iota(out.permutation.begin(), out.permutation.end(), 0);
    std::stable_sort(out.permutation.begin(), out.permutation.end(),
                     [&](int a, int b) { return deg[static_cast<std::size_t>(a)] < deg[static_cast<std::size_t>(b)]; });
    out.type.kind = f.kind();
    for (int j = 0; j < 4; ++j) {
        auto [d, e] = deg[static_cast<std::size_t>(out.permutation[static_cast<std::size_t>(j)])];
        out.type.d[j] = d;
        out.type.e[j] = e;
    }
    return out;
}

Poly common_factor(const DiagForm& f) {
    return gcd_all(std::span<const Poly>(f.entries().data(), 4));
}

bool is_weak_bundle(const DiagForm& f) { return common_factor(f).is_constant(); }

DiagForm generic_fiber(const DiagForm& f) {
    if (f.is_affine()) return f;
    auto b = f.surface().chart_bindings();
    std::array<Poly, 4> e = f.entries();
    for (auto& p : e) {
        p = p.substitute(b);
        if (p.is_zero()) throw Error("internal: entry vanishes on the chart");
    }
    return DiagForm::affine(std::move(e), f.kind());
}

SquareClass discriminant(const DiagForm& f) {
    DiagForm g = generic_fiber(f);
    SquareClass c;
    for (const auto& p : g.entries()) c = multiply_classes(c, square_class(as_fn(p)));
    return c;
}

CliffordReport clifford_invariant(const DiagForm& f) {
    DiagForm g = generic_fiber(f);
    const VarList& vars = g.surface().vars();
    std::array<SquareClass, 4> c;
    for (std::size_t i = 0; i < 4; ++i) c[i] = square_class(as_fn(g.entry(i)));

    SquareClass ca = multiply_classes(c[0], c[1]);
    SquareClass cb = multiply_classes(c[0], c[2]);
    SquareClass cd = discriminant(g);
    if (!(multiply_classes(c[0], c[3]) == multiply_classes(multiply_classes(ca, cb), cd)))
        throw DomainError("form does not match the normal form <1, a, b, abd>");
    SquareClass cab = multiply_classes(ca, cb);

    auto rep = [&](const SquareClass& s) { return as_fn(s.representative(vars)); };
    CliffordReport r{BrauerClass(), BrauerClass(), as_fn(g.entry(0)), rep(ca), rep(cb), rep(cd)};
    if (!is_const_class(ca) && !is_const_class(cb)) r.normalized.toggle(r.a, r.b);
    if (!is_const_class(cab) && !is_const_class(cd)) r.normalized.toggle(rep(cab), r.d);
    r.value = r.normalized;
    if (!is_const_class(c[0]) && !is_const_class(cd)) r.value.toggle(rep(c[0]), r.d);
    return r;
}

Move Move::scale(Poly lambda) {
    Move m{Kind::Scale, std::move(lambda)};
    return m;
}

Move Move::absorb_squares() { return Move{Kind::AbsorbSquares, std::nullopt}; }

Move Move::reorder(Permutation perm) {
    Move m{Kind::Reorder, std::nullopt};
    m.perm = perm;
    return m;
}

Move Move::multiply_entry(std::size_t i, Poly monomial) {
    Move m{Kind::MultiplyEntry, std::move(monomial)};
    m.index = i;
    return m;
}

std::string Move::to_string() const {
    switch (kind) {
        case Kind::Scale: return "scale(" + poly->to_string() + ")";
        case Kind::AbsorbSquares: return "absorb_squares";
        case Kind::Reorder:
            return "reorder(" + std::to_string(perm[0]) + "," + std::to_string(perm[1]) + "," +
                   std::to_string(perm[2]) + "," + std::to_string(perm[3]) + ")";
        case Kind::MultiplyEntry:
            return "multiply_entry(" + std::to_string(index) + ", " + poly->to_string() + ")";
    }
    return {};
}

namespace {

Poly odd_part(const Poly& p) {
    Poly r = Poly::constant(p.vars(), 1);
    if (p.is_constant()) return r;
    for (const auto& [g, m] : factor(p).factors)
        if (m % 2) r *= g;
    return r;
}

DiagForm rebuild(const DiagForm& f, std::array<Poly, 4> e) {
    return f.is_affine() ? DiagForm::affine(std::move(e), f.kind()) : DiagForm::make(std::move(e), f.kind());
}

}  // namespace

DiagForm apply_move(const DiagForm& f, const Move& m) {
    std::array<Poly, 4> e = f.entries();
    switch (m.kind) {
        case Move::Kind::Scale:
            if (!m.poly || m.poly->is_zero()) throw DomainError("scale by zero");
            for (auto& p : e) p = *m.poly * p;
            break;
        case Move::Kind::AbsorbSquares:
            for (auto& p : e) p = odd_part(p);
            break;
        case Move::Kind::Reorder: {
            Permutation s = m.perm;
            std::sort(s.begin(), s.end());
            if (s != Permutation{0, 1, 2, 3}) throw DomainError("reorder needs a permutation of 0..3");
            for (std::size_t j = 0; j < 4; ++j) e[j] = f.entry(static_cast<std::size_t>(m.perm[j]));
            break;
        }
        case Move::Kind::MultiplyEntry: {
            if (m.index >= 4) throw DomainError("entry index out of range");
            const Poly& mono = *m.poly;
            if (mono.term_count() != 1 || mono.leading_coefficient() != 1)
                throw DomainError("multiply_entry needs a monic monomial");
            const auto& s = f.surface();
            const auto& exps = mono.leading_monomial();
            for (std::size_t v = 0; v < exps.size(); ++v) {
                bool boundary = s.is_boundary_var(v) && !f.is_affine();
                if (!boundary && exps[v] % 2)
                    throw DomainError("illegal move: odd power of " + s.vars().name(v));
            }
            e[m.index] = mono * e[m.index];
            break;
        }
    }
    return rebuild(f, std::move(e));
}

Poly hpt_quadric(SurfaceKind kind) {
    if (kind == SurfaceKind::P2) return SurfaceModel::p2().parse("x^2+y^2+z^2-2*x*y-2*x*z-2*y*z");
    return SurfaceModel::p1xp1().parse("x1^2*y0^2+x0^2*y1^2+x0^2*y0^2-2*x0*x1*y0*y1-2*x0*x1*y0^2-2*x0^2*y0*y1");
}

DiagForm hpt_target(SurfaceKind kind) {
    const auto& s = SurfaceModel::of(kind);
    const bool p2 = kind == SurfaceKind::P2;
    Poly x = s.parse(p2 ? "x" : "x1"), y = s.parse(p2 ? "y" : "y1");
    Poly f = hpt_quadric(kind).substitute(s.chart_bindings());
    return DiagForm::affine({y, x, x * y, f}, kind);
}

bool SimilarityWitness::verify(const DiagForm& source) const {
    DiagForm g = generic_fiber(source);
    for (std::size_t j = 0; j < 4; ++j) {
        RatFn lhs = scale * RatFn(g.entry(static_cast<std::size_t>(permutation[j])));
        Poly rhs = square_factors[j].pow(2) * target.entry(j);
        if (!(lhs == RatFn(rhs.scaled(units[j])))) return false;
    }
    return true;
}

std::optional<SimilarityWitness> normalize_to_hpt(const DiagForm& f) {
    constexpr std::size_t kMaxFactors = 10;
    DiagForm g = generic_fiber(f);
    const VarList& vars = g.surface().vars();

    std::vector<Poly> primes;
    std::array<std::map<Poly, unsigned>, 4> mult;
    std::array<Rational, 4> unit;
    for (std::size_t j = 0; j < 4; ++j) {
        FactoredPoly fp = factor(g.entry(j));
        unit[j] = fp.unit;
        for (const auto& [p, m] : fp.factors) {
            mult[j][p] = m;
            if (std::find(primes.begin(), primes.end(), p) == primes.end()) primes.push_back(p);
        }
    }
    std::sort(primes.begin(), primes.end());
    if (primes.size() > kMaxFactors) throw UnsupportedError("too many distinct factors in " + g.to_string());
    const std::size_t n = primes.size();

    std::vector<std::uint32_t> masks;
    std::set<std::uint32_t> seen;
    for (std::size_t j = 0; j < 4; ++j) {
        std::uint32_t m = 0;
        for (std::size_t k = 0; k < n; ++k) {
            auto it = mult[j].find(primes[k]);
            if (it != mult[j].end() && it->second % 2) m |= 1u << k;
        }
        if (seen.insert(m).second) masks.push_back(m);
    }
    for (std::uint32_t m = 0; m < (1u << n); ++m)
        if (seen.insert(m).second) masks.push_back(m);

    const DiagForm target = hpt_target(g.kind());
    const bool p2 = g.kind() == SurfaceKind::P2;

    for (auto mask : masks) {
        Poly lambda = Poly::constant(vars, 1);
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (1u << k)) lambda *= primes[k];
        std::array<Poly, 4> odd{lambda, lambda, lambda, lambda}, sq = odd;
        for (std::size_t j = 0; j < 4; ++j) {
            odd[j] = sq[j] = Poly::constant(vars, 1);
            for (std::size_t k = 0; k < n; ++k) {
                auto it = mult[j].find(primes[k]);
                unsigned m = (it == mult[j].end() ? 0u : it->second) + ((mask >> k) & 1u);
                if (m % 2) odd[j] *= primes[k];
                sq[j] *= primes[k].pow(m / 2);
            }
        }
        Permutation perm{0, 1, 2, 3};
        do {
            bool ok = true;
            for (std::size_t j = 0; j < 4 && ok; ++j) ok = odd[static_cast<std::size_t>(perm[j])] == target.entry(j);
            if (!ok) continue;
            std::array<Poly, 4> squares = sq;
            std::array<Rational, 4> units;
            for (std::size_t j = 0; j < 4; ++j) {
                auto src = static_cast<std::size_t>(perm[j]);
                squares[j] = sq[src];
                units[j] = unit[src];
            }
            SimilarityWitness w{RatFn(lambda), squares, units, perm, target, {p2 ? "x" : "x1", p2 ? "y" : "y1"}};
            if (!w.verify(g)) throw Error("internal: similarity witness does not verify");
            return w;
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
}

}  // namespace quadrica
