#include "quadrica/funfield.hpp"

#include <array>
#include <cstdlib>
#include <mutex>
#include <unordered_map>

#include "quadrica/error.hpp"
#include "quadrica/factor.hpp"
#include "quadrica/kernels/conic_scan.hpp"
#include "quadrica/parse.hpp"

namespace quadrica {

SurfaceModel::SurfaceModel(SurfaceKind kind, VarList vars, std::vector<std::vector<std::size_t>> blocks,
                           std::vector<std::size_t> boundary)
    : kind_(kind), vars_(std::move(vars)), blocks_(std::move(blocks)), boundary_(std::move(boundary)) {}

const SurfaceModel& SurfaceModel::p2() {
    static const SurfaceModel m(SurfaceKind::P2, VarList{"x", "y", "z"}, {{0, 1, 2}}, {2});
    return m;
}

const SurfaceModel& SurfaceModel::p1xp1() {
    static const SurfaceModel m(SurfaceKind::P1xP1, VarList{"x0", "x1", "y0", "y1"}, {{0, 1}, {2, 3}}, {0, 2});
    return m;
}

const SurfaceModel& SurfaceModel::of(SurfaceKind kind) { return kind == SurfaceKind::P2 ? p2() : p1xp1(); }

const char* SurfaceModel::tag() const noexcept { return kind_ == SurfaceKind::P2 ? "p2" : "p1xp1"; }

Grading SurfaceModel::grading() const {
    Grading g;
    for (const auto& b : blocks_) {
        std::vector<std::string> names;
        for (auto v : b) names.push_back(vars_.name(v));
        g.blocks.push_back(std::move(names));
    }
    return g;
}

std::map<std::string, Poly> SurfaceModel::chart_bindings() const {
    std::map<std::string, Poly> b;
    for (auto v : boundary_) b.emplace(vars_.name(v), Poly::constant(vars_, 1));
    return b;
}

std::vector<Poly> SurfaceModel::boundary_divisors() const {
    std::vector<Poly> out;
    for (auto v : boundary_) out.push_back(Poly::variable(vars_, vars_.name(v)));
    return out;
}

bool SurfaceModel::is_boundary_var(std::size_t v) const noexcept {
    for (auto b : boundary_)
        if (b == v) return true;
    return false;
}

Poly SurfaceModel::parse(std::string_view text) const { return parse_poly(text, vars_); }

// ---------------------------------------------------------------------------

PrimeDivisor::PrimeDivisor(SurfaceKind surface, const Poly& poly) : kind_(surface), poly_(poly.primitive()) {
    const SurfaceModel& s = SurfaceModel::of(surface);
    if (!(poly.vars() == s.vars())) throw DomainError("prime divisor over the wrong coordinates");
    if (poly_.is_constant()) throw DomainError("prime divisor needs a nonconstant polynomial");
    auto prof = degree_profile(poly_, s.grading());
    if (!prof) throw DomainError("prime divisor must be (bi)homogeneous: " + poly_.to_string());
    degrees_ = *prof;
    if (!is_irreducible(poly_)) throw DomainError("prime divisor must be irreducible: " + poly_.to_string());
}

std::string PrimeDivisor::to_string() const { return "{" + poly_.to_string() + "=0}"; }

// ---------------------------------------------------------------------------

Poly SquareClass::representative(const VarList& vars) const {
    Poly r = Poly::constant(vars, 1);
    for (const auto& p : support) r *= p;
    return r;
}

std::string SquareClass::to_string() const {
    if (support.empty()) return "1";
    std::string s;
    for (const auto& p : support) {
        if (!s.empty()) s += ", ";
        s += p.to_string();
    }
    return "{" + s + "}";
}

SquareClass square_class(const RatFn& f) {
    if (f.is_zero()) throw DomainError("square class of zero");
    SquareClass out;
    for (const Poly* p : {&f.num(), &f.den()}) {
        if (p->is_constant()) continue;
        for (const auto& [g, m] : factor(*p).factors) {
            if (m % 2 == 0) continue;
            if (!out.support.erase(g)) out.support.insert(g);
        }
    }
    return out;
}

SquareClass multiply_classes(const SquareClass& a, const SquareClass& b) {
    SquareClass out = a;
    for (const auto& p : b.support)
        if (!out.support.erase(p)) out.support.insert(p);
    return out;
}

std::string CurveClass::to_string() const { return trivial() ? "1" : "[" + odd.to_string() + "]"; }

CurveClass multiply_curve_classes(const CurveClass& a, const CurveClass& b) { return {odd_part(a.odd * b.odd)}; }

std::string UFraction::to_string() const {
    if (den == UPoly::constant(1)) return num.to_string();
    return "(" + num.to_string() + ")/(" + den.to_string() + ")";
}

// ---------------------------------------------------------------------------

FormRatio to_form_ratio(const RatFn& f, SurfaceKind surface) {
    const SurfaceModel& s = SurfaceModel::of(surface);
    if (!(f.vars() == s.vars())) throw DomainError("function over the wrong coordinates");
    if (f.is_zero()) throw DomainError("zero function");
    bool uses_boundary = false;
    for (auto b : s.boundary_vars())
        if (f.num().depends_on(b) || f.den().depends_on(b)) uses_boundary = true;

    if (uses_boundary) {
        auto pn = degree_profile(f.num(), s.grading());
        auto pd = degree_profile(f.den(), s.grading());
        if (!pn || !pd || *pn != *pd)
            throw DomainError("not a degree-0 ratio of forms: " + f.to_string());
        return {f.num(), f.den()};
    }
    Poly num = f.num(), den = f.den();
    for (std::size_t i = 0; i < s.blocks().size(); ++i) {
        const auto& block = s.blocks()[i];
        const std::size_t w = s.boundary_vars()[i];
        auto block_degree = [&](const Poly& p) {
            int d = 0;
            for (const auto& [m, c] : p.terms()) {
                int t = 0;
                for (auto v : block) t += static_cast<int>(m[v]);
                d = std::max(d, t);
            }
            return d;
        };
        int dn = block_degree(num), dd = block_degree(den);
        int top = std::max(dn, dd);
        num = homogenize(num, block, w, top);
        den = homogenize(den, block, w, top);
    }
    return {num, den};
}

int valuation(const FormRatio& f, const Poly& pi) {
    return static_cast<int>(multiplicity(f.num, pi)) - static_cast<int>(multiplicity(f.den, pi));
}

// ---------------------------------------------------------------------------

UPoly compose(const Poly& p, const std::vector<UPoly>& coords) {
    if (coords.size() != p.vars().size()) throw DomainError("compose: wrong number of coordinates");
    std::vector<std::vector<UPoly>> powers(coords.size());
    auto power = [&](std::size_t v, Exponent e) -> const UPoly& {
        auto& pw = powers[v];
        if (pw.empty()) pw.push_back(UPoly::constant(1));
        while (pw.size() <= e) pw.push_back(pw.back() * coords[v]);
        return pw[e];
    };
    UPoly r;
    for (const auto& [m, c] : p.terms()) {
        UPoly t = UPoly::constant(c);
        for (std::size_t v = 0; v < m.size(); ++v)
            if (m[v]) t = t * power(v, m[v]);
        r = r + t;
    }
    return r;
}

namespace {

std::vector<int> zigzag(int h) {
    std::vector<int> out{0};
    for (int k = 1; k <= h; ++k) {
        out.push_back(k);
        out.push_back(-k);
    }
    return out;
}

Rational coeff_at(const Poly& q, const std::array<std::size_t, 3>& idx, int i, int j) {
    Monomial m(q.vars().size(), 0);
    m[idx[i]] += 1;
    m[idx[j]] += 1;
    auto it = q.terms().find(m);
    return it == q.terms().end() ? Rational(0) : it->second;
}

// Integer point of height <= bound on the conic q(X, Y, W) = 0, where the
// three coordinates are the variables at `idx`.
std::optional<std::array<long, 3>> conic_point(const Poly& q, const std::array<std::size_t, 3>& idx) {
    const Poly p = q.primitive();
    // Coefficients of X^2, Y^2, W^2, XY, XW, YW.
    mpz_class cxx = coeff_at(p, idx, 0, 0).get_num(), cyy = coeff_at(p, idx, 1, 1).get_num(),
              cww = coeff_at(p, idx, 2, 2).get_num(), cxy = coeff_at(p, idx, 0, 1).get_num(),
              cxw = coeff_at(p, idx, 0, 2).get_num(), cyw = coeff_at(p, idx, 1, 2).get_num();
    const mpz_class limit = mpz_class(1) << 31;
    bool small = true;
    for (const auto* c : {&cxx, &cyy, &cww, &cxy, &cxw, &cyw})
        if (abs(*c) > limit) small = false;

    const kernels::ConicScanFn scan = kernels::conic_scan();
    for (int h = 1; h <= kConicSearchBound; ++h) {
        const std::vector<int> full = zigzag(h);
        std::vector<double> full_d(full.begin(), full.end());
        const std::vector<int> rim{h, -h};
        const std::vector<double> rim_d{double(h), double(-h)};
        for (int w : full) {
            for (int y : full) {
                const bool on_rim = std::max(std::abs(y), std::abs(w)) == h;
                const std::vector<int>& xs = on_rim ? full : rim;
                std::ptrdiff_t hit = -1;
                if (small) {
                    const std::vector<double>& xd = on_rim ? full_d : rim_d;
                    const double A = cxx.get_d();
                    const double B = cxy.get_d() * y + cxw.get_d() * w;
                    const double C = cyy.get_d() * y * y + cww.get_d() * w * w + cyw.get_d() * y * w;
                    hit = scan(xd.data(), xd.size(), A, B, C);
                } else {
                    for (std::size_t i = 0; i < xs.size() && hit < 0; ++i) {
                        mpz_class x = xs[i];
                        mpz_class v = cxx * x * x + cyy * y * y + cww * w * w + cxy * x * y + cxw * x * w + cyw * y * w;
                        if (v == 0) hit = static_cast<std::ptrdiff_t>(i);
                    }
                }
                if (hit >= 0) return std::array<long, 3>{xs[static_cast<std::size_t>(hit)], y, w};
            }
        }
    }
    return std::nullopt;
}

// Parametrization of a line or conic in the plane spanned by the variables
// at `idx`; q is homogeneous of degree 1 or 2 in them.
std::array<UPoly, 3> plane_param(const Poly& q, const std::array<std::size_t, 3>& idx, int degree,
                                 std::vector<long>& base) {
    const UPoly t = UPoly::identity();
    if (degree == 1) {
        std::array<Rational, 3> a;
        for (int i = 0; i < 3; ++i) {
            Monomial m(q.vars().size(), 0);
            m[idx[i]] = 1;
            auto it = q.terms().find(m);
            a[i] = it == q.terms().end() ? Rational(0) : it->second;
        }
        int k = a[0] != 0 ? 0 : a[1] != 0 ? 1 : 2;
        int i = k == 0 ? 1 : 0, j = k == 2 ? 1 : 2;
        std::array<UPoly, 3> out;
        out[i] = t;
        out[j] = UPoly::constant(1);
        out[k] = (t.scaled(a[i]) + UPoly::constant(a[j])).scaled(Rational(-1) / a[k]);
        return out;
    }
    auto pt = conic_point(q, idx);
    if (!pt)
        throw UnsupportedError("no rational point of height <= " + std::to_string(kConicSearchBound) + " on " +
                               q.to_string());
    base.assign(pt->begin(), pt->end());
    std::array<Rational, 3> p{(*pt)[0], (*pt)[1], (*pt)[2]};
    Rational M[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M[i][j] = i == j ? coeff_at(q, idx, i, i) : coeff_at(q, idx, i, j) / 2;
    int k = p[0] != 0 ? 0 : p[1] != 0 ? 1 : 2;
    int i = k == 0 ? 1 : 0, j = k == 2 ? 1 : 2;
    // v = t e_i + e_j; point = Q(v) p - 2 B(p, v) v.
    UPoly qv({M[j][j], 2 * M[i][j], M[i][i]});
    Rational mp_i = 0, mp_j = 0;
    for (int l = 0; l < 3; ++l) {
        mp_i += M[i][l] * p[l];
        mp_j += M[j][l] * p[l];
    }
    UPoly bpv({mp_j, mp_i});
    std::array<UPoly, 3> out;
    for (int l = 0; l < 3; ++l) out[l] = qv.scaled(p[l]);
    out[i] = out[i] - (bpv * t).scaled(2);
    out[j] = out[j] - bpv.scaled(2);
    return out;
}

bool nonconstant(const std::vector<UPoly>& c, const std::vector<std::vector<std::size_t>>& blocks) {
    for (const auto& b : blocks)
        for (std::size_t a = 0; a < b.size(); ++a)
            for (std::size_t d = a + 1; d < b.size(); ++d) {
                const UPoly& u = c[b[a]];
                const UPoly& v = c[b[d]];
                if (!(u * v.derivative() - v * u.derivative()).is_zero()) return true;
            }
    return false;
}

CurveParam parametrize_uncached(const PrimeDivisor& c) {
    const SurfaceModel& s = c.surface();
    const Poly& pi = c.poly();
    std::vector<UPoly> coords(s.vars().size());
    std::vector<long> base;
    if (s.kind() == SurfaceKind::P2) {
        int deg = c.degrees()[0];
        if (deg > 2) throw UnsupportedError("cannot parametrize the plane curve " + pi.to_string());
        auto pc = plane_param(pi, {0, 1, 2}, deg, base);
        for (int i = 0; i < 3; ++i) coords[i] = pc[i];
    } else {
        int a = c.degrees()[0], b = c.degrees()[1];
        const UPoly t = UPoly::identity();
        if ((a == 1 && b == 0) || (a == 0 && b == 1)) {
            // Ruling: one factor is a fixed point (-c1 : c0), the other moves.
            const std::size_t fixed0 = a == 1 ? 0 : 2, moving0 = a == 1 ? 2 : 0;
            auto lin = [&](std::size_t v) {
                auto it = pi.terms().find(unit_monomial(4, v, 1));
                return it == pi.terms().end() ? Rational(0) : it->second;
            };
            coords[fixed0] = UPoly::constant(-lin(fixed0 + 1));
            coords[fixed0 + 1] = UPoly::constant(lin(fixed0));
            coords[moving0] = UPoly::constant(1);
            coords[moving0 + 1] = t;
        } else {
            Poly chart = pi.substitute(s.chart_bindings());
            int deg = chart.total_degree();
            if (deg < 1 || deg > 2) throw UnsupportedError("cannot parametrize the curve " + pi.to_string());
            std::array<std::size_t, 3> idx{1, 3, 0};
            Poly plane = homogenize(chart, idx, 0, deg);
            auto pc = plane_param(plane, idx, deg, base);
            coords[0] = pc[2];
            coords[1] = pc[0];
            coords[2] = pc[2];
            coords[3] = pc[1];
        }
    }
    if (!compose(pi, coords).is_zero()) throw Error("internal: parametrization misses " + pi.to_string());
    if (!nonconstant(coords, s.blocks())) throw Error("internal: constant parametrization of " + pi.to_string());
    return CurveParam{c, std::move(coords), std::move(base)};
}

}  // namespace

std::string CurveParam::to_string() const {
    const SurfaceModel& s = curve.surface();
    auto show = [&](std::size_t i) { return coords[i].to_string(); };
    if (s.kind() == SurfaceKind::P2) return "(" + show(0) + " : " + show(1) + " : " + show(2) + ")";
    return "((" + show(0) + " : " + show(1) + "), (" + show(2) + " : " + show(3) + "))";
}

CurveParam parametrize(const PrimeDivisor& c) {
    static std::mutex mu;
    static std::unordered_map<std::string, CurveParam> cache;
    std::string key = std::string(c.surface().tag()) + "|" + c.poly().to_string();
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(key); it != cache.end()) return it->second;
    }
    CurveParam p = parametrize_uncached(c);
    std::lock_guard lock(mu);
    cache.emplace(std::move(key), p);
    return p;
}

// ---------------------------------------------------------------------------

namespace {

Poly strip(const Poly& p, const Poly& pi, unsigned k) {
    Poly r = p;
    for (unsigned i = 0; i < k; ++i) r = *r.divide_exact(pi);
    return r;
}

// Coordinate monomial of the same (bi)degree as pi, not divisible by pi.
Poly companion_monomial(const PrimeDivisor& c) {
    const SurfaceModel& s = c.surface();
    Monomial m(s.vars().size(), 0);
    for (std::size_t b = 0; b < s.blocks().size(); ++b) {
        int deg = c.degrees()[b];
        if (deg == 0) continue;
        for (auto v : s.blocks()[b]) {
            if (c.poly() == Poly::variable(s.vars(), s.vars().name(v))) continue;
            m[v] = static_cast<Exponent>(deg);
            break;
        }
    }
    return Poly::monomial(s.vars(), m);
}

std::optional<std::size_t> coordinate_of(const PrimeDivisor& c) {
    const Poly& pi = c.poly();
    if (pi.term_count() != 1 || pi.total_degree() != 1) return std::nullopt;
    const Monomial& m = pi.leading_monomial();
    for (std::size_t v = 0; v < m.size(); ++v)
        if (m[v]) return v;
    return std::nullopt;
}

}  // namespace

FormRatio unit_part(const FormRatio& f, const PrimeDivisor& c, int v) {
    const Poly& pi = c.poly();
    unsigned mn = multiplicity(f.num, pi), md = multiplicity(f.den, pi);
    if (static_cast<int>(mn) - static_cast<int>(md) != v) throw DomainError("unit_part: valuation mismatch");
    Poly num = strip(f.num, pi, mn), den = strip(f.den, pi, md);
    if (v != 0) {
        Poly l = companion_monomial(c).pow(static_cast<unsigned>(std::abs(v)));
        if (v > 0)
            num *= l;
        else
            den *= l;
    }
    return {num, den};
}

CurveClass curve_class(const FormRatio& unit, const PrimeDivisor& c) {
    UFraction r = restrict_unit(unit, c);
    return {odd_part(r.num * r.den)};
}

UFraction restrict_unit(const FormRatio& f, const PrimeDivisor& c) {
    if (valuation(f, c.poly()) != 0)
        throw DomainError("function is not a unit along " + c.to_string());
    const Poly& pi = c.poly();
    Poly num = strip(f.num, pi, multiplicity(f.num, pi));
    Poly den = strip(f.den, pi, multiplicity(f.den, pi));
    CurveParam p = parametrize(c);
    UPoly n = compose(num, p.coords), d = compose(den, p.coords);
    if (n.is_zero() || d.is_zero()) throw Error("internal: restriction vanishes along " + c.to_string());
    UPoly g = gcd(n, d);
    n = n.divmod(g).first;
    d = d.divmod(g).first;
    Rational lc = d.leading_coefficient();
    return {n.scaled(1 / lc), d.scaled(1 / lc)};
}

UFraction restrict_unit(const RatFn& f, const PrimeDivisor& c) {
    return restrict_unit(to_form_ratio(f, c.surface_kind()), c);
}

bool is_square_on_curve(const FormRatio& f, const PrimeDivisor& c) {
    UFraction r = restrict_unit(f, c);
    return odd_part(r.num * r.den).degree() <= 0;
}

bool is_square_on_curve(const RatFn& f, const PrimeDivisor& c) {
    return is_square_on_curve(to_form_ratio(f, c.surface_kind()), c);
}

HenselReport hensel_report(const RatFn& d, const PrimeDivisor& c) {
    const SurfaceModel& s = c.surface();
    FormRatio f = to_form_ratio(d, c.surface_kind());
    HenselReport r;
    r.valuation = valuation(f, c.poly());
    if (r.valuation % 2 != 0) {
        r.witness = "odd valuation";
        return r;
    }
    FormRatio u = unit_part(f, c, r.valuation);
    r.square = curve_class(u, c).trivial();
    if (auto w = coordinate_of(c)) {
        const Poly& pi = c.poly();
        Poly num = strip(f.num, pi, multiplicity(f.num, pi));
        Poly den = strip(f.den, pi, multiplicity(f.den, pi));
        std::map<std::string, Poly> b{{s.vars().name(*w), Poly::constant(s.vars(), 0)}};
        for (auto bv : s.boundary_vars())
            if (bv != *w) b.emplace(s.vars().name(bv), Poly::constant(s.vars(), 1));
        r.witness = RatFn(num.substitute(b), den.substitute(b)).to_string();
    } else {
        r.witness = restrict_unit(u, c).to_string();
    }
    return r;
}

bool hensel_square_test(const RatFn& d, const PrimeDivisor& c) { return hensel_report(d, c).passed(); }

}  // namespace quadrica
