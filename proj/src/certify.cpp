#include "quadrica/certify.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <set>

#include "quadrica/error.hpp"

namespace quadrica {

namespace {

constexpr std::array<std::pair<Rule, const char*>, 21> kRuleNames{{
    {Rule::SumAtMostFour, "sum-at-most-4"},
    {Rule::TwoZeroDegrees, "two-zero-degrees"},
    {Rule::OpenType, "open-type"},
    {Rule::Hpt, "hpt"},
    {Rule::PlaneQ1, "plane-q1"},
    {Rule::PlaneQ2, "plane-q2"},
    {Rule::PlaneQ3, "plane-q3"},
    {Rule::D2Zero, "d2-zero"},
    {Rule::ConstantBlock, "constant-block"},
    {Rule::EZero, "e-zero"},
    {Rule::A1, "A1"},
    {Rule::A2, "A2"},
    {Rule::A3, "A3"},
    {Rule::A4, "A4"},
    {Rule::B1, "B1"},
    {Rule::B2, "B2"},
    {Rule::C1, "C1"},
    {Rule::C2, "C2"},
    {Rule::Q1, "Q1"},
    {Rule::Q2, "Q2"},
    {Rule::OutOfScope, "out-of-scope"},
}};

constexpr std::array<std::pair<Outcome, const char*>, 4> kOutcomeNames{{
    {Outcome::Rational, "Rational"},
    {Outcome::NotStablyRational, "NotStablyRational"},
    {Outcome::Open, "Open"},
    {Outcome::Unknown, "Unknown"},
}};

void require_parities(const BundleType& t) {
    if (!t.parities_ok()) throw DomainError("degrees of type " + t.to_string() + " do not share a parity");
}

void require_kind(const BundleType& t, SurfaceKind k) {
    if (t.kind != k) throw DomainError("type " + t.to_string() + " does not match the surface");
}

Poly monomial(const SurfaceModel& s, std::initializer_list<int> exps) {
    Monomial m;
    for (int e : exps) {
        if (e < 0) throw DomainError("negative exponent in degeneration");
        m.push_back(static_cast<Exponent>(e));
    }
    return Poly::monomial(s.vars(), std::move(m));
}

bool cond_second_1(const BundleType& t) {
    return t.d[1] >= 1 && t.d[3] >= 2 && t.e[1] + t.e[2] >= 1 && t.e[3] >= 3;
}

bool cond_second_2(const BundleType& t) {
    return t.d[1] >= 1 && t.d[3] >= 2 && t.e[0] >= 1 && t.e[1] + t.e[2] >= 1 && t.e[2] >= 2;
}

std::optional<Rule> second_corollary_rule(const BundleType& t) {
    if (cond_second_1(t)) return Rule::Q1;
    if (cond_second_2(t)) return Rule::Q2;
    return std::nullopt;
}

bool first_corollary_applies(const BundleType& t) { return t.d[3] >= 3 && t.e[3] >= 3; }

std::optional<Rule> first_corollary_rational(const BundleType& t) {
    if (t.d[2] == 0) return Rule::D2Zero;
    if (t.d[1] == 0 && t.e[1] == 0 && t.e[0] == 0) return Rule::ConstantBlock;
    if (t.e[0] == 0 && t.e[1] == 0 && t.e[2] == 0) return Rule::EZero;
    return std::nullopt;
}

Rule first_corollary_case(const BundleType& t) {
    const bool d_even = t.d[0] % 2 == 0, e_even = t.e[0] % 2 == 0;
    if (t.e[1] >= 1) {
        if (d_even) return e_even ? Rule::A1 : Rule::A3;
        return e_even ? Rule::A2 : Rule::A4;
    }
    if (t.e[0] >= 1) return d_even ? Rule::B1 : Rule::B2;
    return d_even ? Rule::C1 : Rule::C2;
}

// One block of the boundary-power search: per entry, the extra degree D_j
// splits as boundary^a * chart^(2k). Neither variable may divide every entry.
struct BlockChoice {
    std::array<int, 4> boundary{}, chart{};
    int cost = std::numeric_limits<int>::max();
};

std::optional<BlockChoice> best_block(const std::array<int, 4>& extra, const std::array<int, 4>& base_chart) {
    for (int v : extra)
        if (v < 0) return std::nullopt;
    std::optional<BlockChoice> best;
    std::array<int, 4> k{};
    while (true) {
        BlockChoice c;
        c.cost = 0;
        bool b_free = false, c_free = false;
        for (std::size_t j = 0; j < 4; ++j) {
            c.boundary[j] = extra[j] - 2 * k[j];
            c.chart[j] = base_chart[j] + 2 * k[j];
            c.cost += c.boundary[j];
            b_free |= c.boundary[j] == 0;
            c_free |= c.chart[j] == 0;
        }
        if (b_free && c_free && (!best || c.cost < best->cost)) best = c;
        std::size_t j = 0;
        while (j < 4 && ++k[j] > extra[j] / 2) k[j++] = 0;
        if (j == 4) break;
    }
    return best;
}

DiagForm second_corollary_form(const BundleType& t, Rule rule) {
    const auto& s = SurfaceModel::p1xp1();
    // Base entries as (x1 exponent, y1 exponent, carries h).
    struct Base { int x1, y1; bool h; };
    const std::array<Base, 4> base = rule == Rule::Q1
        ? std::array<Base, 4>{{{0, 0, false}, {1, 0, false}, {1, 1, false}, {0, 1, true}}}
        : std::array<Base, 4>{{{0, 1, false}, {1, 0, false}, {1, 1, false}, {0, 0, true}}};
    const Poly h = hpt_quadric(SurfaceKind::P1xP1);

    std::optional<std::pair<BlockChoice, BlockChoice>> best;
    Permutation best_perm{}, perm{0, 1, 2, 3};
    do {
        std::array<int, 4> ex{}, ey{}, bx{}, by{};
        for (std::size_t j = 0; j < 4; ++j) {
            const Base& b = base[static_cast<std::size_t>(perm[j])];
            bx[j] = b.x1;
            by[j] = b.y1;
            ex[j] = t.d[j] - b.x1 - (b.h ? 2 : 0);
            ey[j] = t.e[j] - b.y1 - (b.h ? 2 : 0);
        }
        auto cx = best_block(ex, bx);
        auto cy = cx ? best_block(ey, by) : std::nullopt;
        if (!cx || !cy) continue;
        if (!best || cx->cost + cy->cost < best->first.cost + best->second.cost) {
            best = std::pair(*cx, *cy);
            best_perm = perm;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!best) throw DomainError("no coprime form of type " + t.to_string() + " from rule " + to_string(rule));

    std::array<Poly, 4> e{h, h, h, h};
    for (std::size_t j = 0; j < 4; ++j) {
        const auto& [cx, cy] = *best;
        e[j] = monomial(s, {cx.boundary[j], cx.chart[j], cy.boundary[j], cy.chart[j]});
        if (base[static_cast<std::size_t>(best_perm[j])].h) e[j] *= h;
    }
    return DiagForm::make(std::move(e), SurfaceKind::P1xP1);
}

[[noreturn]] void link_failed(const std::string& link, const BundleType& t) {
    throw Error("certificate link failed (" + link + ") for type " + t.to_string());
}

BrauerClass alpha_for(const SimilarityWitness& w, const SurfaceModel& s) {
    return symbol(RatFn(s.parse(w.chart_vars[0])), RatFn(s.parse(w.chart_vars[1])));
}

}  // namespace

const char* to_string(Outcome o) {
    for (const auto& [k, v] : kOutcomeNames)
        if (k == o) return v;
    return "?";
}

const char* to_string(Rule r) {
    for (const auto& [k, v] : kRuleNames)
        if (k == r) return v;
    return "?";
}

Outcome parse_outcome(const std::string& s) {
    for (const auto& [k, v] : kOutcomeNames)
        if (s == v) return k;
    throw DomainError("unknown outcome '" + s + "'");
}

Rule parse_rule(const std::string& s) {
    for (const auto& [k, v] : kRuleNames)
        if (s == v) return k;
    throw DomainError("unknown rule '" + s + "'");
}

const char* to_string(PirutkaReport::Overall o) {
    switch (o) {
        case PirutkaReport::Overall::Pass: return "pass";
        case PirutkaReport::Overall::Fail: return "fail";
        case PirutkaReport::Overall::Inconclusive: return "inconclusive";
    }
    return "?";
}

PirutkaReport pirutka_check(const DiagForm& fiber_in, const BrauerClass& alpha) {
    DiagForm fiber = generic_fiber(fiber_in);
    const auto& s = fiber.surface();
    const BrauerClass beta = clifford_invariant(fiber).value;
    RatFn d(discriminant(fiber).representative(s.vars()));

    std::set<PrimeDivisor> divisors;
    for (const auto* u : {&alpha, &beta})
        for (auto& c : candidate_divisors(*u, s)) divisors.insert(c);

    PirutkaReport r;
    bool failed = false, errored = false;
    for (const auto& c : divisors) {
        PirutkaEntry e{c, {}, {}, false, {}, false, {}};
        try {
            e.alpha_residue = tame_residue(alpha, c);
            e.beta_residue = tame_residue(beta, c);
            if (e.alpha_residue.trivial() && e.beta_residue.trivial()) continue;
            e.match = e.alpha_residue == e.beta_residue;
            e.hensel = hensel_report(d, c);
            e.passed = e.alpha_residue.trivial() || (e.match && e.hensel.passed());
            failed |= !e.passed;
        } catch (const UnsupportedError& err) {
            e.error = err.what();
            errored = true;
        }
        r.entries.push_back(std::move(e));
    }
    r.overall = failed ? PirutkaReport::Overall::Fail
                       : errored ? PirutkaReport::Overall::Inconclusive : PirutkaReport::Overall::Pass;
    return r;
}

ArasonResult arason_nontriviality(const DiagForm& fiber, const BrauerClass& alpha) {
    ArasonResult r;
    r.d_nontrivial = !discriminant(fiber).trivial();
    auto prof = residue_profile(alpha, fiber.surface());
    r.alpha_nonzero = !prof.empty();
    if (r.alpha_nonzero) r.witness = prof.entries.begin()->first;
    if (!r.d_nontrivial)
        r.reason = "discriminant is a square: the kernel of the pullback is {1, beta}";
    else if (!r.alpha_nonzero)
        r.reason = "alpha has no nontrivial residue";
    else
        r.reason = "discriminant nontrivial and alpha ramified along " + r.witness->to_string();
    return r;
}

namespace {

Verdict decide_p2(const BundleType& input);
Verdict decide_p1xp1(const BundleType& t);

}  // namespace

std::optional<Rule> degeneration_rule(const BundleType& t) {
    Verdict v = t.kind == SurfaceKind::P2 ? decide_p2(t) : decide_p1xp1(t);
    if (v.outcome != Outcome::NotStablyRational) return std::nullopt;
    return v.rule;
}

namespace {

Verdict decide_p2(const BundleType& input) {
    require_kind(input, SurfaceKind::P2);
    require_parities(input);
    Verdict v;
    v.type = input.sorted();
    if (!input.is_ordered()) v.notes.push_back("input reordered to " + v.type.to_string());
    const auto& d = v.type.d;
    const int sum = v.type.total_d();
    if (sum <= 4) {
        v.outcome = Outcome::Rational;
        v.rule = Rule::SumAtMostFour;
    } else if (d[0] == 0 && d[1] == 0) {
        v.outcome = Outcome::Rational;
        v.rule = Rule::TwoZeroDegrees;
    } else if (sum == 6) {
        if (v.type.to_string() != "1,1,1,3" && v.type.to_string() != "0,2,2,2")
            throw Error("internal: unexpected degree-6 type " + v.type.to_string());
        v.outcome = Outcome::Open;
        v.rule = Rule::OpenType;
    } else {
        v.outcome = Outcome::NotStablyRational;
        if (d == std::array<int, 4>{2, 2, 2, 2})
            v.rule = Rule::Hpt;
        else if (d[0] % 2 == 0)
            v.rule = Rule::PlaneQ2;
        else
            v.rule = d[2] >= 3 ? Rule::PlaneQ1 : Rule::PlaneQ3;
    }
    return v;
}

Verdict decide_p1xp1(const BundleType& t) {
    require_kind(t, SurfaceKind::P1xP1);
    require_parities(t);
    if (!t.is_ordered()) throw DomainError("type " + t.to_string() + " is not lexicographically ordered");
    Verdict v;
    v.type = t;
    auto second = second_corollary_rule(t);
    if (first_corollary_applies(t)) {
        if (auto r = first_corollary_rational(t)) {
            v.outcome = Outcome::Rational;
            v.rule = *r;
            return v;
        }
        v.outcome = Outcome::NotStablyRational;
        v.rule = first_corollary_case(t);
        if (second) v.notes.push_back(std::string("rule ") + to_string(*second) + " also applies");
    } else if (second) {
        // The designated base form first, then the other one.
        const Rule other = *second == Rule::Q1 ? Rule::Q2 : Rule::Q1;
        for (Rule r : {*second, other}) {
            try {
                second_corollary_form(t, r);
            } catch (const DomainError&) {
                continue;
            }
            v.outcome = Outcome::NotStablyRational;
            v.rule = r;
            break;
        }
        if (v.outcome != Outcome::NotStablyRational) {
            v.outcome = Outcome::Unknown;
            v.rule = Rule::OutOfScope;
            v.notes.push_back("second corollary hypotheses hold but no coprime degeneration of this type exists "
                              "from either base form");
        } else if (v.rule == Rule::Q1 && cond_second_2(t)) {
            v.notes.push_back("rule Q2 also applies");
        }
    } else {
        v.outcome = Outcome::Unknown;
        v.rule = Rule::OutOfScope;
    }
    return v;
}

Verdict with_certificate(Verdict v) {
    if (v.outcome == Outcome::NotStablyRational) v.certificate = build_certificate(v.type, v.rule);
    return v;
}

}  // namespace

Verdict verdict_p2(const BundleType& t) { return with_certificate(decide_p2(t)); }

Verdict verdict_p1xp1(const BundleType& t) { return with_certificate(decide_p1xp1(t)); }

Verdict verdict(const BundleType& t) {
    return t.kind == SurfaceKind::P2 ? verdict_p2(t) : verdict_p1xp1(t);
}

DiagForm construct_degeneration_p2(const BundleType& t) {
    require_kind(t, SurfaceKind::P2);
    require_parities(t);
    const auto& s = SurfaceModel::p2();
    const auto& d = t.d;
    const Poly F = hpt_quadric(SurfaceKind::P2);
    if (!t.is_ordered()) throw DomainError("type " + t.to_string() + " is not ordered");
    if (d == std::array<int, 4>{2, 2, 2, 2})
        return DiagForm::make({monomial(s, {0, 1, 1}), monomial(s, {1, 0, 1}), monomial(s, {1, 1, 0}), F},
                              SurfaceKind::P2);
    if (t.total_d() < 8 || d[1] < 1 || d[3] < 3)
        throw DomainError("type " + t.to_string() + " has no plane degeneration");
    if (d[0] % 2 == 0)
        return DiagForm::make({monomial(s, {0, 0, d[0]}), monomial(s, {1, 0, d[1] - 1}),
                               monomial(s, {d[2] - 1, 1, 0}), monomial(s, {0, 1, d[3] - 3}) * F},
                              SurfaceKind::P2);
    if (d[2] >= 3)
        return DiagForm::make({monomial(s, {0, 0, d[0]}), monomial(s, {d[1], 0, 0}),
                               monomial(s, {1, 1, d[2] - 2}), monomial(s, {0, 1, d[3] - 3}) * F},
                              SurfaceKind::P2);
    if (d[3] - 4 < 1) throw Error("internal: exponent d3-4 must be positive on this branch");
    return DiagForm::make({monomial(s, {0, 0, d[0]}), monomial(s, {d[1], 0, 0}), monomial(s, {0, 1, d[2] - 1}),
                           monomial(s, {1, 1, d[3] - 4}) * F},
                          SurfaceKind::P2);
}

DiagForm construct_degeneration_p1xp1(const BundleType& t, Rule rule) {
    require_kind(t, SurfaceKind::P1xP1);
    require_parities(t);
    if (!t.is_ordered()) throw DomainError("type " + t.to_string() + " is not ordered");
    if (rule == Rule::Q1 || rule == Rule::Q2) return second_corollary_form(t, rule);

    const auto& s = SurfaceModel::p1xp1();
    const auto& d = t.d;
    const auto& e = t.e;
    // Exponent order: x0, x1, y0, y1.
    auto m = [&](int a, int b, int c, int dd) { return monomial(s, {a, b, c, dd}); };
    Poly last = m(d[3] - 3, 1, e[3] - 3, 1) * hpt_quadric(SurfaceKind::P1xP1);
    std::array<Poly, 3> first{last, last, last};
    switch (rule) {
        case Rule::A1: first = {m(0, d[0], 0, e[0]), m(d[1], 0, e[1] - 1, 1), m(d[2] - 1, 1, e[2], 0)}; break;
        case Rule::A2: first = {m(d[0], 0, 0, e[0]), m(d[1], 0, e[1] - 1, 1), m(0, d[2], e[2], 0)}; break;
        case Rule::A3: first = {m(0, d[0], e[0], 0), m(d[1], 0, 0, e[1]), m(d[2] - 1, 1, e[2], 0)}; break;
        case Rule::A4: first = {m(d[0], 0, e[0], 0), m(d[1], 0, 0, e[1]), m(0, d[2], e[2], 0)}; break;
        case Rule::B1: first = {m(0, d[0], e[0] - 1, 1), m(d[1], 0, 0, 0), m(d[2] - 1, 1, e[2], 0)}; break;
        case Rule::B2: first = {m(d[0], 0, e[0] - 1, 1), m(d[1], 0, 0, 0), m(0, d[2], e[2], 0)}; break;
        case Rule::C1: first = {m(0, d[0], 0, 0), m(d[1] - 1, 1, 0, 0), m(d[2], 0, e[2] - 1, 1)}; break;
        case Rule::C2: first = {m(d[0], 0, 0, 0), m(0, d[1], 0, 0), m(d[2], 0, e[2] - 1, 1)}; break;
        default: throw DomainError(std::string("rule ") + to_string(rule) + " has no degeneration");
    }
    return DiagForm::make({first[0], first[1], first[2], last}, SurfaceKind::P1xP1);
}

DiagForm construct_degeneration(const BundleType& t, Rule rule) {
    if (t.kind == SurfaceKind::P2) {
        if (rule != Rule::Hpt && rule != Rule::PlaneQ1 && rule != Rule::PlaneQ2 && rule != Rule::PlaneQ3)
            throw DomainError(std::string("rule ") + to_string(rule) + " has no plane degeneration");
        return construct_degeneration_p2(t);
    }
    return construct_degeneration_p1xp1(t, rule);
}

Certificate build_certificate(const BundleType& t) {
    auto rule = degeneration_rule(t);
    if (!rule) throw DomainError("type " + t.to_string() + " is not in a certifiable branch");
    return build_certificate(t, *rule);
}

Certificate build_certificate(const BundleType& t, Rule rule) {
    DiagForm deg = construct_degeneration(t, rule);
    if (!(type_of(deg).type == t)) link_failed("type of degeneration", t);
    Poly g = common_factor(deg);
    if (!g.is_constant()) link_failed("weak bundle", t);
    DiagForm fiber = generic_fiber(deg);
    auto w = normalize_to_hpt(fiber);
    if (!w) link_failed("similarity to the canonical fiber", t);
    BrauerClass alpha = alpha_for(*w, fiber.surface());
    SquareClass disc = discriminant(fiber);
    if (disc.trivial()) link_failed("discriminant", t);
    ArasonResult ar = arason_nontriviality(fiber, alpha);
    if (!ar.holds()) link_failed("alpha nonzero", t);
    BrauerClass cl = clifford_invariant(fiber).value;
    PirutkaReport pr = pirutka_check(fiber, alpha);
    if (pr.overall != PirutkaReport::Overall::Pass) link_failed("residue and Hensel comparison", t);
    ResidueProfile prof = residue_profile(alpha, fiber.surface());

    std::vector<std::string> chain{
        std::string("degeneration ") + to_string(rule) + ": " + deg.to_string() + " of type " + t.to_string(),
        "entries coprime: weak quadric surface bundle",
        "generic fiber " + fiber.to_string() + " is similar to " + w->target.to_string() + " via scale " +
            w->scale.to_string(),
        std::string("base fact ") + kBaseFactTag + ": alpha = " + alpha.to_string() +
            " is unramified and nonzero over the canonical fiber",
        "discriminant " + disc.to_string() + " is nontrivial, so pulling alpha back to the fiber is injective",
        "alpha ramifies along " + ar.witness->to_string(),
        "residues match the Clifford invariant and the discriminant passes the Hensel test at every ramified divisor",
        "not stably rational: the degeneration carries a nonzero unramified class",
    };

    return Certificate{
        .input_type = t,
        .rule = rule,
        .degeneration = deg,
        .weak_bundle = true,
        .gcd = g,
        .fiber = fiber,
        .similarity = *w,
        .discriminant = disc,
        .alpha = alpha,
        .alpha_residues = prof,
        .clifford = cl,
        .pirutka = pr,
        .arason = ar,
        .conclusion = chain,
    };
}

namespace {

bool same_entry(const PirutkaEntry& a, const PirutkaEntry& b) {
    return a.divisor == b.divisor && a.alpha_residue == b.alpha_residue && a.beta_residue == b.beta_residue &&
           a.match == b.match && a.hensel.valuation == b.hensel.valuation && a.hensel.square == b.hensel.square &&
           a.hensel.witness == b.hensel.witness && a.passed == b.passed && a.error == b.error;
}

}  // namespace

ReplayResult replay(const Certificate& c) {
    ReplayResult r;
    auto expect = [&](bool ok, const char* what) {
        if (!ok) r.mismatches.emplace_back(what);
    };
    try {
        expect(c.schema == kCertSchema, "schema");
        expect(construct_degeneration(c.input_type, c.rule) == c.degeneration, "degeneration");
        expect(type_of(c.degeneration).type == c.input_type, "type");
        Poly g = common_factor(c.degeneration);
        expect(g == c.gcd, "gcd");
        expect(g.is_constant() == c.weak_bundle, "weak_bundle");
        expect(generic_fiber(c.degeneration) == c.fiber, "fiber");
        expect(c.similarity.target == hpt_target(c.fiber.kind()), "similarity.target");
        expect(c.similarity.verify(c.fiber), "similarity");
        expect(discriminant(c.fiber) == c.discriminant, "discriminant");
        expect(c.alpha.symbols() == alpha_for(c.similarity, c.fiber.surface()).symbols(), "alpha");
        expect(residue_profile(c.alpha, c.fiber.surface()).entries == c.alpha_residues.entries, "alpha_residues");
        expect(clifford_invariant(c.fiber).value.symbols() == c.clifford.symbols(), "clifford");
        PirutkaReport pr = pirutka_check(c.fiber, c.alpha);
        expect(pr.overall == c.pirutka.overall, "pirutka.overall");
        bool entries_ok = pr.entries.size() == c.pirutka.entries.size();
        for (std::size_t i = 0; entries_ok && i < pr.entries.size(); ++i)
            entries_ok = same_entry(pr.entries[i], c.pirutka.entries[i]);
        expect(entries_ok, "pirutka.entries");
        ArasonResult ar = arason_nontriviality(c.fiber, c.alpha);
        expect(ar.d_nontrivial == c.arason.d_nontrivial, "arason.d_nontrivial");
        expect(ar.alpha_nonzero == c.arason.alpha_nonzero, "arason.alpha_nonzero");
        expect(ar.witness == c.arason.witness, "arason.witness");
    } catch (const Error& e) {
        r.mismatches.push_back(std::string("replay error: ") + e.what());
    }
    return r;
}

}  // namespace quadrica
