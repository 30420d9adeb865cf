#include <doctest.h>

#include <algorithm>

#include "quadrica/certificate_json.hpp"
#include "quadrica/certify.hpp"
#include "quadrica/error.hpp"
#include "test_support.hpp"

using namespace quadrica;
using namespace quadrica::testing;

namespace {

constexpr auto KP2 = SurfaceKind::P2;
constexpr auto KP1 = SurfaceKind::P1xP1;
const char* F = "x^2+y^2+z^2-2*x*y-2*x*z-2*y*z";
const char* Fc = "x^2+y^2+1-2*x*y-2*x-2*y";

std::string times(const std::string& a, const std::string& b) { return "(" + a + ")*(" + b + ")"; }

DiagForm p2_form(const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
    return DiagForm::make({px(a), px(b), px(c), px(d)}, KP2);
}

std::vector<BundleType> p2_types(int bound) {
    std::vector<BundleType> out;
    for (int a = 0; a <= bound; ++a)
        for (int b = a; b <= bound; ++b)
            for (int c = b; c <= bound; ++c)
                for (int d = c; d <= bound; ++d) {
                    BundleType t{KP2, {a, b, c, d}, {}};
                    if (t.parities_ok()) out.push_back(t);
                }
    return out;
}

std::vector<BundleType> p1_types(int bound) {
    std::vector<std::pair<int, int>> pairs;
    for (int d = 0; d <= bound; ++d)
        for (int e = 0; e <= bound; ++e) pairs.emplace_back(d, e);
    std::vector<BundleType> out;
    for (auto p0 : pairs)
        for (auto p1 : pairs)
            for (auto p2 : pairs)
                for (auto p3 : pairs) {
                    if (!(p0 <= p1 && p1 <= p2 && p2 <= p3)) continue;
                    BundleType t{KP1, {p0.first, p1.first, p2.first, p3.first},
                                 {p0.second, p1.second, p2.second, p3.second}};
                    if (t.parities_ok()) out.push_back(t);
                }
    return out;
}

// Plane verdicts restated directly from the rationality criteria.
Outcome expected_p2(const BundleType& t) {
    const auto& d = t.d;
    int sum = d[0] + d[1] + d[2] + d[3];
    if (sum <= 4 || (d[0] == 0 && d[1] == 0)) return Outcome::Rational;
    if (d == std::array<int, 4>{1, 1, 1, 3} || d == std::array<int, 4>{0, 2, 2, 2}) return Outcome::Open;
    return Outcome::NotStablyRational;
}

}  // namespace

TEST_CASE("verdict_p2 examples") {
    auto v = verdict_p2(parse_type("2,2,2,2"));
    CHECK(v.outcome == Outcome::NotStablyRational);
    CHECK(v.rule == Rule::Hpt);
    CHECK(v.certificate.has_value());
    CHECK(verdict_p2(parse_type("0,0,2,4")).outcome == Outcome::Rational);
    CHECK(verdict_p2(parse_type("0,0,2,4")).rule == Rule::TwoZeroDegrees);
    CHECK(verdict_p2(parse_type("1,1,1,3")).outcome == Outcome::Open);
    CHECK(verdict_p2(parse_type("0,2,2,2")).outcome == Outcome::Open);
    CHECK(verdict_p2(parse_type("0,0,0,0")).rule == Rule::SumAtMostFour);
    CHECK(verdict_p2(parse_type("1,1,1,1")).outcome == Outcome::Rational);
    auto u = verdict_p2(parse_type("2,0,2,2"));
    CHECK(u.outcome == Outcome::Open);
    CHECK(u.type.to_string() == "0,2,2,2");
    CHECK(u.notes.size() == 1);
    CHECK_THROWS_AS(verdict_p2(parse_type("1,2,2,2")), DomainError);
    CHECK_THROWS_AS(verdict_p2(parse_type("1:1,1:1,1:1,3:3")), DomainError);
}

TEST_CASE("construct_degeneration_p2") {
    CHECK(construct_degeneration_p2(parse_type("2,2,2,2")) == p2_form("y*z", "x*z", "x*y", F));
    CHECK(construct_degeneration_p2(parse_type("0,2,2,4")) == p2_form("1", "x*z", "x*y", times("y*z", F)));
    CHECK(construct_degeneration_p2(parse_type("1,1,3,3")) == p2_form("z", "x", "x*y*z", times("y", F)));
    CHECK(construct_degeneration_p2(parse_type("1,1,1,5")) == p2_form("z", "x", "y", times("x*y*z", F)));
    CHECK_THROWS_AS(construct_degeneration_p2(parse_type("1,1,1,3")), DomainError);
    CHECK_THROWS_AS(construct_degeneration_p2(parse_type("0,0,2,6")), DomainError);
}

TEST_CASE("verdict_p1xp1 examples") {
    auto v = verdict_p1xp1(parse_type("1:1,1:1,1:1,3:3"));
    CHECK(v.outcome == Outcome::NotStablyRational);
    CHECK(v.rule == Rule::A4);
    Poly h = bidegree_quadric();
    CHECK(v.certificate->degeneration ==
          DiagForm::make({p1("x0*y0"), p1("x0*y1"), p1("x1*y0"), p1("x1*y1") * h}, KP1));
    CHECK(verdict_p1xp1(parse_type("0:0,0:2,0:2,4:4")).rule == Rule::D2Zero);
    CHECK(verdict_p1xp1(parse_type("0:0,0:0,2:2,4:4")).rule == Rule::ConstantBlock);
    CHECK(verdict_p1xp1(parse_type("1:0,1:0,1:0,3:4")).rule == Rule::EZero);
    auto u = verdict_p1xp1(parse_type("1:0,1:0,1:2,1:2"));
    CHECK(u.outcome == Outcome::Unknown);
    CHECK_FALSE(u.certificate.has_value());
    CHECK_THROWS_AS(verdict_p1xp1(parse_type("2:0,2:1,2:2,4:3")), DomainError);
    CHECK_THROWS_AS(verdict_p1xp1(parse_type("2:2,2:0,2:2,4:4")), DomainError);
}

TEST_CASE("P1xP1 constructors") {
    Poly h = bidegree_quadric();
    auto b1 = construct_degeneration_p1xp1(parse_type("0:2,2:0,2:2,4:4"), Rule::B1);
    CHECK(b1 == DiagForm::make({p1("y0*y1"), p1("x0^2"), p1("x0*x1*y0^2"), p1("x0*y0*x1*y1") * h}, KP1));
    CHECK(verdict_p1xp1(parse_type("0:2,2:0,2:2,4:4")).rule == Rule::B1);
    CHECK_THROWS_AS(construct_degeneration_p1xp1(parse_type("0:0,2:0,2:2,4:4"), Rule::B1), DomainError);
    CHECK_THROWS_AS(construct_degeneration_p1xp1(parse_type("1:1,1:1,1:1,3:3"), Rule::Hpt), DomainError);
    // Only the second corollary covers this type (d3 = 2).
    auto q1 = verdict_p1xp1(parse_type("0:1,2:1,2:1,2:3"));
    CHECK(q1.outcome == Outcome::NotStablyRational);
    CHECK(q1.rule == Rule::Q1);
    // The second corollary's hypotheses hold, but the h entry needs a slot of
    // bidegree at least (2,2) and the two e = 0 slots cannot both be filled.
    auto gap = verdict_p1xp1(parse_type("0:2,2:0,2:2,4:0"));
    CHECK(gap.outcome == Outcome::Unknown);
    CHECK(gap.notes.size() == 1);
}

TEST_CASE("pirutka_check examples") {
    auto hpt = DiagForm::affine({px("y"), px("x"), px("x*y"), px(Fc)}, KP2);
    auto alpha = symbol(RatFn(px("x")), RatFn(px("y")));
    auto r = pirutka_check(hpt, alpha);
    CHECK(r.overall == PirutkaReport::Overall::Pass);
    REQUIRE(r.entries.size() == 3);
    std::vector<std::string> labels, witnesses;
    for (const auto& e : r.entries) {
        labels.push_back(e.divisor.to_string());
        witnesses.push_back(e.hensel.witness);
        CHECK(e.match);
        CHECK(e.hensel.passed());
    }
    std::sort(labels.begin(), labels.end());
    CHECK(labels == std::vector<std::string>{"{x=0}", "{y=0}", "{z=0}"});
    CHECK(std::find(witnesses.begin(), witnesses.end(), px("(y-1)^2").to_string()) != witnesses.end());
    CHECK(std::find(witnesses.begin(), witnesses.end(), px("(x-1)^2").to_string()) != witnesses.end());
    CHECK(std::find(witnesses.begin(), witnesses.end(), px("(x-y)^2").to_string()) != witnesses.end());

    CHECK(pirutka_check(hpt, BrauerClass()).overall == PirutkaReport::Overall::Pass);

    auto split = DiagForm::affine({px("1"), px("x"), px("y"), px("x*y")}, KP2);
    auto s = pirutka_check(split, alpha);
    CHECK_FALSE(s.entries.empty());
    for (const auto& e : s.entries) CHECK(e.passed == (e.alpha_residue.trivial() || (e.match && e.hensel.passed())));
}

TEST_CASE("arason_nontriviality examples") {
    auto hpt = DiagForm::affine({px("y"), px("x"), px("x*y"), px(Fc)}, KP2);
    auto alpha = symbol(RatFn(px("x")), RatFn(px("y")));
    auto r = arason_nontriviality(hpt, alpha);
    CHECK(r.holds());
    REQUIRE(r.witness);
    CHECK(r.witness->to_string() == "{x=0}");
    CHECK_FALSE(arason_nontriviality(hpt, BrauerClass()).holds());
    auto split = arason_nontriviality(DiagForm::affine({px("1"), px("x"), px("y"), px("x*y")}, KP2), alpha);
    CHECK_FALSE(split.holds());
    CHECK_FALSE(split.d_nontrivial);
}

TEST_CASE("build_certificate") {
    auto c = build_certificate(parse_type("0,2,2,4"));
    CHECK(c.rule == Rule::PlaneQ2);
    CHECK(c.similarity.scale == RatFn(px("y")));
    CHECK(c.weak_bundle);
    CHECK(c.base_fact == std::string("canonical-fiber-class"));
    CHECK(c.schema == std::string("quadrica-cert/1"));
    CHECK(replay(c).ok());
    CHECK_THROWS_AS(build_certificate(parse_type("1,1,1,3")), DomainError);
    auto p = build_certificate(parse_type("1:1,1:1,1:1,3:3"));
    CHECK(p.alpha.to_string() == "(x1,y1)");
    CHECK(replay(p).ok());
}

TEST_CASE("certificate JSON round trip and tampering") {
    for (const char* ty : {"2,2,2,2", "1,1,3,3", "1,1,1,5", "1:1,1:1,1:1,3:3", "0:1,2:1,2:1,2:3"}) {
        auto c = build_certificate(parse_type(ty));
        std::string text = emit_certificate(c);
        Certificate back = parse_certificate(text);
        CHECK(emit_certificate(back) == text);
        CHECK(back.degeneration == c.degeneration);
        CHECK(back.similarity.permutation == c.similarity.permutation);
        CHECK(back.alpha_residues.entries == c.alpha_residues.entries);
        CHECK(replay(back).ok());
        CHECK(certificate_digest(back) == certificate_digest(c));
    }
    auto c = build_certificate(parse_type("2,2,2,2"));
    auto j = certificate_to_json(c);
    j["weak_bundle_check"]["weak_bundle"] = false;
    CHECK_FALSE(replay(certificate_from_json(j)).ok());
    auto k = certificate_to_json(c);
    k["pirutka_report"]["entries"][0]["match"] = false;
    CHECK_FALSE(replay(certificate_from_json(k)).ok());
    CHECK_THROWS_AS(parse_certificate("{\"schema\":\"other\"}"), DomainError);
    CHECK_THROWS_AS(parse_certificate("not json"), DomainError);
    CHECK(fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cull);
}

TEST_CASE("property: plane constructor soundness up to 8") {
    int checked = 0;
    for (const auto& t : p2_types(8)) {
        auto rule = degeneration_rule(t);
        if (!rule) continue;
        auto f = construct_degeneration(t, *rule);
        CHECK(type_of(f).type == t);
        CHECK(is_weak_bundle(f));
        CHECK(normalize_to_hpt(generic_fiber(f)).has_value());
        ++checked;
    }
    CHECK(checked > 50);
}

TEST_CASE("property: P1xP1 constructor soundness up to 4") {
    int checked = 0;
    for (const auto& t : p1_types(4)) {
        auto rule = degeneration_rule(t);
        if (!rule) continue;
        auto f = construct_degeneration(t, *rule);
        CHECK(type_of(f).type == t);
        CHECK(is_weak_bundle(f));
        CHECK(normalize_to_hpt(generic_fiber(f)).has_value());
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("property: plane verdicts match the criteria and replay") {
    for (const auto& t : p2_types(8)) {
        auto v = verdict(t);
        CHECK(v.outcome == expected_p2(t));
        CHECK(v.certificate.has_value() == (v.outcome == Outcome::NotStablyRational));
        if (v.certificate) CHECK(replay(*v.certificate).ok());
        CHECK(verdict_to_json(verdict(t)).dump() == verdict_to_json(v).dump());
    }
}

TEST_CASE("property: plane dispatch completeness and exponent safety up to 12") {
    for (const auto& t : p2_types(12)) {
        const auto& d = t.d;
        if (t.total_d() >= 8 && d[1] >= 1 && d[3] < 3) CHECK(d == std::array<int, 4>{2, 2, 2, 2});
        if (t.total_d() >= 8 && d[1] >= 1 && d[0] % 2 == 1 && d[2] == 1) CHECK(d[3] - 4 >= 1);
    }
}
