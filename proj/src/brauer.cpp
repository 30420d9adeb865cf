#include "quadrica/brauer.hpp"

#include <algorithm>
#include <set>

#include "quadrica/error.hpp"
#include "quadrica/factor.hpp"

namespace quadrica {

void BrauerClass::toggle(const RatFn& a, const RatFn& b) {
    if (a.is_zero() || b.is_zero()) throw DomainError("symbol with a zero entry");
    auto it = std::find_if(symbols_.begin(), symbols_.end(),
                           [&](const Symbol& s) { return s.first == a && s.second == b; });
    if (it != symbols_.end())
        symbols_.erase(it);
    else
        symbols_.emplace_back(a, b);
}

std::string BrauerClass::to_string() const {
    if (symbols_.empty()) return "0";
    std::string s;
    for (const auto& [a, b] : symbols_) {
        if (!s.empty()) s += "+";
        s += "(" + a.to_string() + "," + b.to_string() + ")";
    }
    return s;
}

BrauerClass symbol(const RatFn& a, const RatFn& b) {
    BrauerClass u;
    u.toggle(a, b);
    return u;
}

BrauerClass add_classes(const BrauerClass& u, const BrauerClass& v) {
    BrauerClass out = u;
    for (const auto& [a, b] : v.symbols()) out.toggle(a, b);
    return out;
}

CurveClass tame_residue(const BrauerClass& u, const PrimeDivisor& c) {
    CurveClass acc{UPoly::constant(1)};
    const Poly& pi = c.poly();
    for (const auto& [a, b] : u.symbols()) {
        FormRatio f = to_form_ratio(a, c.surface_kind());
        FormRatio g = to_form_ratio(b, c.surface_kind());
        int m = valuation(f, pi), n = valuation(g, pi);
        if (m == 0 && n == 0) continue;
        // f = t^m u_f, g = t^n u_g for a uniformizer t, so the residue is
        // u_f^n / u_g^m and only the parities of m and n matter.
        if (n % 2 != 0) acc = multiply_curve_classes(acc, curve_class(unit_part(f, c, m), c));
        if (m % 2 != 0) acc = multiply_curve_classes(acc, curve_class(unit_part(g, c, n), c));
    }
    return acc;
}

std::vector<PrimeDivisor> ResidueProfile::divisors() const {
    std::vector<PrimeDivisor> out;
    for (const auto& [d, r] : entries) out.push_back(d);
    return out;
}

std::vector<PrimeDivisor> candidate_divisors(const BrauerClass& u, const SurfaceModel& s) {
    std::set<Poly> polys;
    for (const auto& p : s.boundary_divisors()) polys.insert(p);
    for (const auto& [a, b] : u.symbols()) {
        for (const RatFn* e : {&a, &b}) {
            FormRatio f = to_form_ratio(*e, s.kind());
            for (const Poly* p : {&f.num, &f.den}) {
                if (p->is_constant()) continue;
                for (const auto& [g, m] : factor(*p).factors) polys.insert(g);
            }
        }
    }
    std::vector<PrimeDivisor> out;
    for (const auto& p : polys) out.emplace_back(s.kind(), p);
    std::sort(out.begin(), out.end());
    return out;
}

ResidueProfile residue_profile(const BrauerClass& u, const SurfaceModel& s) {
    ResidueProfile prof;
    if (u.empty()) return prof;
    for (const auto& c : candidate_divisors(u, s)) {
        CurveClass r = tame_residue(u, c);
        if (!r.trivial()) prof.entries.emplace(c, r);
    }
    return prof;
}

bool is_unramified_over_C(const BrauerClass& u, const SurfaceModel& s) { return residue_profile(u, s).empty(); }

bool classes_equal(const BrauerClass& u, const BrauerClass& v, const SurfaceModel& s) {
    return is_unramified_over_C(add_classes(u, v), s);
}

}  // namespace quadrica
