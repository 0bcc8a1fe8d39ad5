#include "doctest.h"

#include "stabkit/curve.hpp"
#include "stabkit/error.hpp"

#include "support.hpp"

using namespace stabkit;
using testing::Rng;

TEST_CASE("standard charge") {
    CHECK(z_standard({0, 1}) == QComplex(-1));
    CHECK(z_standard({1, 0}) == QComplex(0, 1));
    CHECK(z_standard({2, 3}) == QComplex(-3, 2));
    auto std_charge = CurveCharge::standard();
    for (long long r = -3; r <= 3; ++r)
        for (long long d = -3; d <= 3; ++d) CHECK(std_charge({r, d}) == z_standard({r, d}));
    CHECK_THROWS_AS(CurveCharge::create({1, 2, 2, 4}), Error);
}

TEST_CASE("slope and phase dictionary") {
    CHECK(*slope_phase(0).exact_value() == Rational(1, 2));
    CHECK(*slope_phase(-1).exact_value() == Rational(1, 4));
    CHECK(*slope_phase(1).exact_value() == Rational(3, 4));
    CHECK(phase_slope(slope_phase(Rational(7, 3))) == Rational(7, 3));
    CHECK(phase_slope(Phase::of_value(Rational(1, 4))) == -1);
    CHECK_THROWS_AS(phase_slope(Phase::of_value(1)), Error);
    Rng rng(31);
    for (int i = 0; i < 500; ++i) {
        Rational a = rng.rational(30, 7), b = rng.rational(30, 7);
        if (a == b) continue;
        // larger slope, larger phase for this normalization of Z
        CHECK((a < b) == (slope_phase(a) < slope_phase(b)));
        CHECK(phase_slope(slope_phase(a)) == a);
    }
}

TEST_CASE("slope order agrees with the phase order of positive rank classes") {
    Rng rng(32);
    auto zc = CurveCharge::standard();
    for (int i = 0; i < 500; ++i) {
        CurveClass e{rng.uniform(1, 9), rng.uniform(-20, 20)}, f{rng.uniform(1, 9), rng.uniform(-20, 20)};
        Rational mu_e = make_rational(e.d, e.r), mu_f = make_rational(f.d, f.r);
        CHECK((mu_f < mu_e) == (Phase::in_heart(zc(f)) < Phase::in_heart(zc(e))));
    }
}

TEST_CASE("orbit decomposition") {
    CHECK(gl_orbit_decompose(CurveCharge::standard()) == Mat2::identity());
    Mat2 twice{0, -2, 2, 0};
    CHECK(gl_orbit_decompose(CurveCharge::create(twice)) == Mat2::scalar(Rational(1, 2)));
    try {
        gl_orbit_decompose(CurveCharge::create({0, -1, -1, 0}));
        FAIL("expected an orientation error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::domain);
    }
    Rng rng(33);
    int tested = 0;
    while (tested < 100) {
        Mat2 m{rng.rational(9, 4), rng.rational(9, 4), rng.rational(9, 4), rng.rational(9, 4)};
        if (sgn(m.det()) == 0) continue;
        auto zc = CurveCharge::create(m);
        if (sgn(m.det()) < 0) {
            CHECK_THROWS_AS(gl_orbit_decompose(zc), Error);
            continue;
        }
        CHECK(gl_orbit_recompose(gl_orbit_decompose(zc)) == zc);
        ++tested;
    }
}

TEST_CASE("phase order") {
    auto rep = phase_order_check(CurveCharge::standard(), -10, 10);
    CHECK(rep.ok);
    CHECK(*rep.point_phase.exact_value() == 1);
    CHECK(rep.line_phases.size() == 21);
    for (const auto& [d, ph] : rep.line_phases) {
        CHECK(Phase::of_value(0) < ph);
        CHECK(ph < Phase::of_value(1));
    }
    CHECK_THROWS_AS(phase_order_check(CurveCharge::create({0, -1, -1, 0}), 0, 1), Error);
    Rng rng(34);
    for (int i = 0; i < 50; ++i) {
        Mat2 m{rng.rational(9, 4), rng.rational(9, 4), rng.rational(9, 4), rng.rational(9, 4)};
        if (sgn(m.det()) <= 0) continue;
        CHECK(phase_order_check(CurveCharge::create(m), -6, 6).ok);
    }
}

TEST_CASE("HN polygon") {
    auto poly = hn_polygon({{0, 1}, {1, 0}}, CurveCharge::standard());
    REQUIRE(poly.vertices.size() == 3);
    CHECK(poly.vertices[0] == QComplex(0));
    CHECK(poly.vertices[1] == QComplex(-1));
    CHECK(poly.vertices[2] == QComplex(-1, 1));
    CHECK(*poly.factors[0].phase.exact_value() == 1);
    CHECK(*poly.factors[1].phase.exact_value() == Rational(1, 2));

    CHECK(hn_polygon({{1, 2}}, CurveCharge::standard()).vertices.size() == 2);
    auto merged = hn_polygon({{1, 1}, {2, 2}}, CurveCharge::standard());
    CHECK(merged.factors.size() == 1);
    CHECK(merged.factors[0].cls == CurveClass{3, 3});
    CHECK_THROWS_AS(hn_polygon({{{0, 0}, QComplex(0)}}), Error);

    Rng rng(35);
    for (int i = 0; i < 100; ++i) {
        std::vector<CurveClass> parts;
        QComplex total;
        for (int k = 0; k < 5; ++k) {
            CurveClass c{rng.uniform(0, 4), rng.uniform(-5, 5)};
            if (c.r == 0 && c.d <= 0) c.d = 1;
            parts.push_back(c);
            total = total + z_standard(c);
        }
        auto p = hn_polygon(parts, CurveCharge::standard());
        CHECK(p.vertices.back() == total);
        for (size_t k = 1; k < p.factors.size(); ++k) CHECK(p.factors[k - 1].phase > p.factors[k].phase);
    }
}

TEST_CASE("curve discreteness") {
    CHECK(curve_discreteness(CurveCharge::standard()));
    CHECK(curve_discreteness(CurveCharge::create({Rational(1, 3), -1, 1, 0})));
    // Z(E) = i·(deg - φ·rk) with φ irrational, represented by a rational stand-in
    CHECK_FALSE(curve_discreteness(CurveCharge::approximating({0, 0, Rational(-141421, 100000), 1})));
}
