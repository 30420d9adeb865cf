#include <doctest.h>

#include <random>
#include <set>

#include "quadrica/brauer.hpp"
#include "quadrica/error.hpp"
#include "test_support.hpp"

using namespace quadrica;
using namespace quadrica::testing;

namespace {

const SurfaceModel& P2 = SurfaceModel::p2();
const SurfaceModel& P1 = SurfaceModel::p1xp1();

PrimeDivisor p2_div(std::string_view s) { return PrimeDivisor(SurfaceKind::P2, px(s)); }

RatFn X() { return RatFn(px("x")); }
RatFn Y() { return RatFn(px("y")); }
RatFn Fa() { return RatFn(hpt_affine()); }

std::set<Poly> profile_polys(const ResidueProfile& p) {
    std::set<Poly> out;
    for (const auto& d : p.divisors()) out.insert(d.poly());
    return out;
}

// Random function built from the chart atoms x, y, F(x,y,1), x - y.
RatFn random_fn(std::mt19937& rng) {
    static const char* atoms[] = {"x", "y", "x^2+y^2+1-2*x*y-2*x-2*y", "x-y", "3"};
    std::uniform_int_distribution<int> pick(0, 4), expo(0, 3);
    Poly n = px("1"), d = px("1");
    for (int i = 0; i < 2; ++i) {
        n *= px(atoms[pick(rng)]).pow(static_cast<unsigned>(expo(rng)));
        d *= px(atoms[pick(rng)]).pow(static_cast<unsigned>(expo(rng) % 2));
    }
    return RatFn(n, d);
}

}  // namespace

TEST_CASE("symbol and add_classes") {
    auto a = symbol(X(), Y());
    CHECK(a.symbols().size() == 1);
    CHECK(add_classes(a, a).empty());
    CHECK(add_classes(a, BrauerClass()).symbols() == a.symbols());
    auto two = add_classes(a, symbol(Y(), Fa()));
    CHECK(two.symbols().size() == 2);
    CHECK_THROWS_AS(symbol(RatFn(px("0")), Y()), DomainError);
}

TEST_CASE("tame residues of (x,y)") {
    auto a = symbol(X(), Y());
    // m = 1, n = 0 at {x=0}: residue y restricted, i.e. t.
    CHECK(tame_residue(a, p2_div("x")).odd == UPoly::identity());
    CHECK_FALSE(tame_residue(a, p2_div("y")).trivial());
    // m = n = -1 at {z=0}: residue Y/X restricted to the line at infinity.
    CHECK_FALSE(tame_residue(a, p2_div("z")).trivial());
    CHECK(tame_residue(symbol(Y(), Fa()), p2_div("x")).trivial());
}

TEST_CASE("residue_profile examples") {
    CHECK(profile_polys(residue_profile(symbol(X(), Y()), P2)) == std::set<Poly>{px("x"), px("y"), px("z")});
    CHECK(residue_profile(BrauerClass(), P2).empty());
    // (y,F) is unramified everywhere: at {y=0} and {z=0} the residues are
    // (x-1)^2 and (X-Y)^2 patterns, and along {F=0} the residue y/z is a
    // square because F = (x-y-z)^2 - 4yz.
    CHECK(px("(x-y-z)^2-4*y*z") == hpt_quadric());
    CHECK(residue_profile(symbol(Y(), Fa()), P2).empty());
    CHECK(tame_residue(symbol(Y(), Fa()), p2_div("x^2+y^2+z^2-2*x*y-2*x*z-2*y*z")).trivial());
}

TEST_CASE("unramified and equality examples") {
    CHECK_FALSE(is_unramified_over_C(symbol(X(), Y()), P2));
    CHECK(is_unramified_over_C(BrauerClass(), P2));
    CHECK(is_unramified_over_C(symbol(X(), X()), P2));
    CHECK(classes_equal(symbol(X(), Y()), symbol(Y(), X()), P2));
    CHECK(classes_equal(symbol(X() * Y(), X()), symbol(Y(), X()), P2));
    CHECK_FALSE(classes_equal(symbol(X(), Y()), BrauerClass(), P2));
}

TEST_CASE("P1xP1: (x1,y1) ramifies along all four rulings") {
    auto a = symbol(r1("x1"), r1("y1"));
    auto prof = residue_profile(a, P1);
    CHECK(profile_polys(prof) == std::set<Poly>{p1("x0"), p1("x1"), p1("y0"), p1("y1")});
}

TEST_CASE("property: residue bilinearity in the first slot") {
    std::mt19937 rng(1001);
    const std::vector<PrimeDivisor> curves{p2_div("x"), p2_div("y"), p2_div("z"), p2_div("x-y"),
                                           p2_div("x^2+y^2+z^2-2*x*y-2*x*z-2*y*z")};
    for (int i = 0; i < 200; ++i) {
        RatFn f = random_fn(rng), g = random_fn(rng), h = random_fn(rng);
        const auto& c = curves[static_cast<std::size_t>(i) % curves.size()];
        CHECK(tame_residue(symbol(f * g, h), c) ==
              multiply_curve_classes(tame_residue(symbol(f, h), c), tame_residue(symbol(g, h), c)));
    }
}

TEST_CASE("property: (f,-f) is unramified") {
    std::mt19937 rng(1002);
    for (int i = 0; i < 200; ++i) {
        RatFn f = random_fn(rng);
        CHECK(residue_profile(symbol(f, f * RatFn(px("-1"))), P2).empty());
    }
}

TEST_CASE("property: symbols are symmetric") {
    std::mt19937 rng(1003);
    for (int i = 0; i < 200; ++i) {
        RatFn a = random_fn(rng), b = random_fn(rng);
        CHECK(classes_equal(symbol(a, b), symbol(b, a), P2));
    }
}

TEST_CASE("property: residues vanish off the support") {
    std::mt19937 rng(1004);
    const std::vector<PrimeDivisor> off{p2_div("x+y-z"), p2_div("x+2*y"), p2_div("x^2+y^2-z^2")};
    for (int i = 0; i < 200; ++i) {
        auto u = add_classes(symbol(random_fn(rng), random_fn(rng)), symbol(random_fn(rng), random_fn(rng)));
        for (const auto& c : off) CHECK(tame_residue(u, c).trivial());
    }
}

TEST_CASE("property: classes_equal is an equivalence relation") {
    std::mt19937 rng(1005);
    for (int i = 0; i < 60; ++i) {
        RatFn a = random_fn(rng), b = random_fn(rng), c = random_fn(rng);
        auto u = symbol(a, b), v = symbol(b, a), w = add_classes(symbol(a, c), symbol(a, b * c));
        w = add_classes(w, symbol(a, c * c));
        CHECK(classes_equal(u, u, P2));
        CHECK(classes_equal(u, v, P2) == classes_equal(v, u, P2));
        if (classes_equal(u, v, P2) && classes_equal(v, w, P2)) CHECK(classes_equal(u, w, P2));
    }
}
