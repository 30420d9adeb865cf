#include <doctest.h>

#include <random>

#include "quadrica/error.hpp"
#include "quadrica/factor.hpp"
#include "quadrica/funfield.hpp"
#include "test_support.hpp"

using namespace quadrica;
using namespace quadrica::testing;

namespace {

PrimeDivisor p2_div(std::string_view s) { return PrimeDivisor(SurfaceKind::P2, px(s)); }
PrimeDivisor p1_div(std::string_view s) { return PrimeDivisor(SurfaceKind::P1xP1, p1(s)); }

UPoly u(std::initializer_list<int> c) {
    std::vector<Rational> v;
    for (int x : c) v.emplace_back(x);
    return UPoly(v);
}

const UPoly t = UPoly::identity();

std::string term(int c, const char* v) { return (c < 0 ? "" : "+") + std::to_string(c) + "*" + v; }

}  // namespace

TEST_CASE("square_class examples") {
    auto c = square_class(RatFn(px("x^2*y^2") * hpt_quadric()));
    CHECK(c.support == std::set<Poly>{hpt_quadric()});
    CHECK(square_class(RatFn(px("7"))).trivial());
    CHECK(square_class(RatFn(px("x*y"))).support == std::set<Poly>{px("x"), px("y")});
    CHECK(square_class(rx("(x)/(y)")).support == std::set<Poly>{px("x"), px("y")});
    CHECK_THROWS_AS(square_class(RatFn(px("0"))), DomainError);
}

TEST_CASE("multiply_classes examples") {
    SquareClass x{{px("x")}}, y{{px("y")}}, f{{hpt_quadric()}};
    CHECK(multiply_classes(x, y).support == std::set<Poly>{px("x"), px("y")});
    CHECK(multiply_classes(f, f).trivial());
    SquareClass xy{{px("x"), px("y")}}, yf{{px("y"), hpt_quadric()}};
    CHECK(multiply_classes(xy, yf).support == std::set<Poly>{px("x"), hpt_quadric()});
}

TEST_CASE("parametrize: coordinate lines of P2") {
    auto lx = parametrize(p2_div("x"));
    CHECK(lx.coords == std::vector<UPoly>{UPoly(), t, u({1})});
    auto lz = parametrize(p2_div("z"));
    CHECK(lz.coords == std::vector<UPoly>{t, u({1}), UPoly()});
    auto ly = parametrize(p2_div("y"));
    CHECK(ly.coords == std::vector<UPoly>{t, UPoly(), u({1})});
}

TEST_CASE("parametrize: the conic F through (1,1,0)") {
    // F(1,1,0) = 1 + 1 + 0 - 2(1 + 0 + 0) = 0.
    CHECK(hpt_quadric().evaluate(std::vector<Rational>{1, 1, 0}) == 0);
    auto c = parametrize(p2_div("x^2+y^2+z^2-2*x*y-2*x*z-2*y*z"));
    CHECK(c.base_point == std::vector<long>{1, 1, 0});
    CHECK(compose(hpt_quadric(), c.coords).is_zero());
}

TEST_CASE("parametrize: P1xP1 rulings and h") {
    auto r = parametrize(p1_div("x0"));
    CHECK(r.coords == std::vector<UPoly>{UPoly(), u({1}), u({1}), t});
    auto s = parametrize(p1_div("y0"));
    CHECK(s.coords == std::vector<UPoly>{u({1}), t, UPoly(), u({1})});
    auto h = parametrize(PrimeDivisor(SurfaceKind::P1xP1, bidegree_quadric()));
    CHECK(compose(bidegree_quadric(), h.coords).is_zero());
    auto d = parametrize(p1_div("x0*y1-x1*y0"));
    CHECK(compose(p1("x0*y1-x1*y0"), d.coords).is_zero());
}

TEST_CASE("parametrize: unsupported curves are reported") {
    // A conic with no rational point at all.
    CHECK_THROWS_AS(parametrize(p2_div("x^2+y^2+3*z^2")), UnsupportedError);
    CHECK_THROWS_AS(PrimeDivisor(SurfaceKind::P2, px("x+y^2")), DomainError);
    CHECK_THROWS_AS(PrimeDivisor(SurfaceKind::P2, px("x*y")), DomainError);
}

TEST_CASE("restrict_unit and is_square_on_curve") {
    auto x0 = p2_div("x");
    CHECK(restrict_unit(RatFn(px("y")), x0).num == t);
    CHECK_FALSE(is_square_on_curve(RatFn(px("y")), x0));
    auto r = restrict_unit(RatFn(hpt_affine()), x0);
    CHECK(r.num == (t - u({1})).pow(2));
    CHECK(is_square_on_curve(RatFn(hpt_affine()), x0));
    CHECK(restrict_unit(RatFn(px("1")), p2_div("z")).num == u({1}));
    // F(X, Y, 0) = (X - Y)^2, taken against Y^2 to get a degree-0 ratio.
    CHECK(hpt_quadric().substitute({{"z", px("0")}}) == px("(x-y)^2"));
    CHECK(is_square_on_curve(rx("(x^2-2*x*y+y^2)/(y^2)"), p2_div("z")));
    CHECK_THROWS_AS(restrict_unit(RatFn(px("x")), x0), DomainError);
}

TEST_CASE("hensel_square_test examples") {
    CHECK(hensel_square_test(RatFn(hpt_affine()), p2_div("x")));
    CHECK_FALSE(hensel_square_test(RatFn(px("x")), p2_div("x")));
    auto rep = hensel_report(RatFn(hpt_affine()), p2_div("z"));
    CHECK(rep.valuation == -2);
    CHECK(rep.passed());
    CHECK(rep.witness == px("(x-y)^2").to_string());
    CHECK(hensel_report(RatFn(hpt_affine()), p2_div("x")).witness == px("(y-1)^2").to_string());
    CHECK(hensel_report(RatFn(hpt_affine()), p2_div("y")).witness == px("(x-1)^2").to_string());
    // y is a unit along {x=0} but restricts to t, not a square.
    CHECK_FALSE(hensel_square_test(RatFn(px("y")), p2_div("x")));
}

TEST_CASE("property: square_class is multiplicative and kills squares") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 200; ++i) {
        RatFn f(random_p2_product(rng), random_p2_product(rng));
        RatFn g(random_p2_product(rng), random_p2_product(rng));
        CHECK(square_class(f * g) == multiply_classes(square_class(f), square_class(g)));
        CHECK(square_class(f * f).trivial());
    }
}

TEST_CASE("property: squares of units are squares on curves") {
    std::mt19937 rng(5150);
    const std::vector<PrimeDivisor> curves{p2_div("x"), p2_div("y"), p2_div("z"), p2_div("x-y"),
                                           p2_div("x^2+y^2+z^2-2*x*y-2*x*z-2*y*z")};
    int tested = 0;
    for (int i = 0; i < 400; ++i) {
        RatFn f(random_affine_p2_product(rng), random_affine_p2_product(rng));
        for (const auto& c : curves) {
            FormRatio fr = to_form_ratio(f, SurfaceKind::P2);
            if (valuation(fr, c.poly()) != 0) continue;
            CHECK(is_square_on_curve(f * f, c));
            ++tested;
        }
    }
    CHECK(tested >= 200);
}

TEST_CASE("property: hensel test is stable under square multiples") {
    std::mt19937 rng(8080);
    const std::vector<PrimeDivisor> curves{p2_div("x"), p2_div("y"), p2_div("z"),
                                           p2_div("x^2+y^2+z^2-2*x*y-2*x*z-2*y*z")};
    for (int i = 0; i < 200; ++i) {
        RatFn d(random_affine_p2_product(rng), random_affine_p2_product(rng));
        RatFn unit(random_affine_p2_product(rng));
        const auto& c = curves[static_cast<std::size_t>(i) % curves.size()];
        if (valuation(to_form_ratio(unit, SurfaceKind::P2), c.poly()) != 0) continue;
        CHECK(hensel_square_test(d * unit * unit, c) == hensel_square_test(d, c));
    }
}

TEST_CASE("property: parametrizations lie on their curves") {
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> co(-5, 5), pt(-4, 4);
    for (int i = 0; i < 100; ++i) {
        int a = co(rng), b = co(rng), c = co(rng);
        if (a == 0 && b == 0 && c == 0) continue;
        Poly line = px("0" + term(a, "x") + term(b, "y") + term(c, "z"));
        auto p = parametrize(PrimeDivisor(SurfaceKind::P2, line));
        CHECK(compose(p.curve.poly(), p.coords).is_zero());
    }
    for (int i = 0; i < 60; ++i) {
        // Conic through a random integer point: x^2 + a y^2 - b z^2 with the
        // constant b chosen so (p, q, 1) lies on it, when that is a valid
        // smooth conic.
        int p = pt(rng), q = pt(rng), a = co(rng);
        if (a == 0) continue;
        int b = p * p + a * q * q;
        if (b == 0) continue;
        Poly conic = px("x^2" + term(a, "y^2") + term(-b, "z^2"));
        if (!is_irreducible(conic)) continue;
        auto par = parametrize(PrimeDivisor(SurfaceKind::P2, conic));
        CHECK(compose(par.curve.poly(), par.coords).is_zero());
    }
}
