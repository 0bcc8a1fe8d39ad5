#include "doctest.h"

#include "stabkit/error.hpp"
#include "stabkit/k3.hpp"

#include "support.hpp"

using namespace stabkit;
using testing::Rng;

namespace {

K3CentralCharge charge_h2(const Rational& b, const Rational& t) {
    return K3CentralCharge::create(testing::lattice_h2(), {b}, {t});
}

ComplexMukaiVector mix(const Mat2& m, const ComplexMukaiVector& om) {
    return {m.a * om.re + m.b * om.im, m.c * om.re + m.d * om.im};
}

// Random ω of positive square on one of the test lattices.
QVec random_omega(Rng& rng, const NSLattice& lat) {
    while (true) {
        QVec w = rng.qvec(lat.rank(), 6, 3);
        if (sgn(lat.dot(w, w)) > 0 && sgn(lat.dot(w, lat.ample_ref())) > 0) return w;
    }
}

} // namespace

TEST_CASE("central charge examples") {
    Rational t(5, 3);
    auto zc = charge_h2(0, t);
    CHECK(central_charge(zc, {0, {0}, 1}) == QComplex(-1));
    CHECK(central_charge(zc, {1, {0}, 1}) == QComplex(t * t - 1));
    CHECK(central_charge(zc, {0, {1}, 0}) == QComplex(0, 2 * t));
    CHECK_THROWS_AS(K3CentralCharge::create(testing::lattice_h2(), {0}, {0}), Error);
}

TEST_CASE("central charge properties on three lattices") {
    Rng rng(21);
    for (const auto& lat : {testing::lattice_h2(), testing::lattice_diag2(), testing::lattice_hyperbolic()})
        for (int i = 0; i < 200; ++i) {
            QVec B = rng.qvec(lat.rank(), 8, 5);
            auto zc = K3CentralCharge::create(lat, B, random_omega(rng, lat));
            CHECK(central_charge(zc, {0, IVec(lat.rank(), 0), 1}) == QComplex(-1));
            auto v = rng.mukai(lat.rank(), 9);
            auto z = central_charge(zc, v);
            // direct expansion of the formula
            Rational r = make_rational(v.r);
            QVec l = to_qvec(v.l);
            Rational re = lat.dot(B, l) - make_rational(v.s) - r * (lat.dot(B, B) - lat.dot(zc.omega(), zc.omega())) / 2;
            Rational im = lat.dot(zc.omega(), l) - r * zc.beta();
            CHECK(z == QComplex(re, im));
            QMukaiVector claim4{0, zc.omega(), zc.beta()};
            CHECK(mukai_pairing(claim4, QMukaiVector::from(v), lat) == z.im);
            if (v.r != 0) CHECK(realpart_identity_check(zc, v));
        }
}

TEST_CASE("phase of central charges") {
    CHECK(*phase({-1, 0}).exact_value() == 1);
    CHECK(*phase({0, 1}).exact_value() == Rational(1, 2));
    CHECK(*phase({1, 1}).exact_value() == Rational(1, 4));
    CHECK_THROWS_AS(phase({0, 0}), Error);
    CHECK_THROWS_AS(phase({2, 0}), Error);
}

TEST_CASE("spherical guard examples") {
    auto ok = spherical_guard(charge_h2(0, 2), DeltaBox::cube(2));
    CHECK(ok.ok);
    CHECK_FALSE(ok.truncated);
    auto half = spherical_guard(charge_h2(0, Rational(1, 2)), DeltaBox::cube(2));
    CHECK_FALSE(half.ok);
    CHECK(*half.violation == MukaiVector{1, {0}, 1});
    CHECK(half.value == QComplex(Rational(-3, 4)));
    auto one = spherical_guard(charge_h2(0, 1), DeltaBox::cube(2));
    CHECK_FALSE(one.ok);
    CHECK(*one.violation == MukaiVector{1, {0}, 1});
    CHECK(one.value == QComplex(0));
    auto rank2 = spherical_guard(K3CentralCharge::create(testing::lattice_diag2(), {0, 0}, {2, 1}), DeltaBox::cube(2));
    CHECK(rank2.truncated);
}

TEST_CASE("rank one guard certificate agrees with a wide brute force") {
    Rng rng(8);
    auto lat = testing::lattice_h2();
    for (int i = 0; i < 150; ++i) {
        Rational b = rng.rational(6, 4), t = make_rational(rng.uniform(1, 12), rng.uniform(1, 8));
        auto zc = charge_h2(b, t);
        auto guard = spherical_guard(zc, DeltaBox::cube(0));
        bool brute_violation = false;
        for (const auto& d : enumerate_delta(lat, DeltaBox::cube(40)).classes) {
            if (d.r <= 0) continue;
            auto z = central_charge(zc, d);
            if (sgn(z.im) == 0 && sgn(z.re) <= 0) brute_violation = true;
        }
        CHECK(guard.ok == !brute_violation);
    }
}

TEST_CASE("discreteness") {
    CHECK(discreteness_check(charge_h2(0, 1), 1));
    CHECK(discreteness_check(charge_h2(Rational(1, 2), 1), 2));
    CHECK_FALSE(discreteness_check(charge_h2(0, Rational(1, 3)), 2));
    CHECK_THROWS_AS(discreteness_check(charge_h2(0, 1), 0), Error);
}

TEST_CASE("real part identity") {
    CHECK(realpart_identity_check(charge_h2(0, 3), {1, {0}, 1}));
    CHECK(realpart_identity_check(charge_h2(0, 1), {2, {1}, 0}));
    CHECK_THROWS_AS(realpart_identity_check(charge_h2(0, 1), {0, {1}, 0}), Error);
    auto zc = charge_h2(Rational(1, 3), Rational(7, 4));
    for (long long r = -4; r <= 4; ++r)
        for (long long m = -4; m <= 4; ++m)
            for (long long s = -4; s <= 4; ++s)
                if (r != 0) CHECK(realpart_identity_check(zc, {r, {m}, s}));
}

TEST_CASE("torsion side") {
    auto zc = charge_h2(0, 1);
    CHECK(torsion_side({1, {1}, 0}, zc) == TorsionSide::T);
    CHECK(torsion_side({1, {0}, 0}, zc) == TorsionSide::F);
    CHECK(torsion_side({1, {-1}, 0}, zc) == TorsionSide::F);
    CHECK_THROWS_AS(torsion_side({0, {1}, 0}, zc), Error);
}

TEST_CASE("heart image check") {
    auto report = heart_image_check(charge_h2(0, 2), DeltaBox::cube(4));
    CHECK(report.violations.empty());
    CHECK(report.classes_checked > 0);
    CHECK(central_charge(charge_h2(0, 2), {0, {0}, 1}) == QComplex(-1));
    try {
        heart_image_check(charge_h2(0, Rational(1, 2)), DeltaBox::cube(4));
        FAIL("expected a guard violation");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::guard_violation);
    }
}

TEST_CASE("heart image check is clean whenever the guard passes") {
    Rng rng(13);
    for (const auto& lat : {testing::lattice_h2(), testing::lattice_diag2()})
        for (int i = 0; i < 15; ++i) {
            auto zc = K3CentralCharge::create(lat, rng.qvec(lat.rank(), 4, 3), random_omega(rng, lat));
            DeltaBox box = DeltaBox::cube(lat.rank() == 1 ? 5 : 3);
            if (!spherical_guard(zc, box).ok) continue;
            CHECK(heart_image_check(zc, box).violations.empty());
        }
}

TEST_CASE("claim 4 extraction") {
    auto lat = testing::lattice_h2();
    auto a = claim4_extract(exp_class({0}, {Rational(3, 2)}, lat), lat);
    CHECK(a.scale == 1);
    CHECK(a.omega == QVec{Rational(3, 2)});
    CHECK(a.beta == 0);
    auto b = claim4_extract(exp_class({1}, {1}, lat).times({3, 0}), lat);
    CHECK(b.scale == 3);
    CHECK(b.omega == QVec{1});
    CHECK(b.beta == 2);
    CHECK_THROWS_AS(claim4_extract(exp_class({0}, {1}, lat).conj(), lat), Error);
    CHECK_THROWS_AS(claim4_extract(exp_class({0}, {1}, lat).times({0, 1}), lat), Error);
    auto d2 = testing::lattice_diag2();
    CHECK_THROWS_AS(claim4_extract(exp_class({0, 0}, {2, 1}, d2), d2), Error);
    CHECK_NOTHROW(claim4_extract(exp_class({0, 0}, {2, -1}, d2), d2));
}

TEST_CASE("normalization to exp form") {
    auto lat = testing::lattice_h2();
    auto id = normalize_to_exp_form(exp_class({Rational(1, 2)}, {2}, lat), lat);
    CHECK(*id.matrix() == Mat2::identity());
    CHECK(id.B == QVec{Rational(1, 2)});
    CHECK(*id.omega() == QVec{2});

    Rational t(3, 2);
    auto rot = normalize_to_exp_form(exp_class({0}, {t}, lat).times({0, 1}), lat);
    CHECK(*rot.matrix() == Mat2{0, 1, -1, 0});
    CHECK(rot.B == QVec{0});
    CHECK(*rot.omega() == QVec{t});

    ComplexMukaiVector indefinite{{0, {0}, 1}, {1, {0}, 0}};
    CHECK_THROWS_AS(normalize_to_exp_form(indefinite, lat), Error);

    Rng rng(17);
    for (const auto& l : {testing::lattice_h2(), testing::lattice_diag2(), testing::lattice_hyperbolic()})
        for (int i = 0; i < 100; ++i) {
            QVec B = rng.qvec(l.rank(), 6, 4), w = random_omega(rng, l);
            Mat2 m{rng.rational(5, 3), rng.rational(5, 3), rng.rational(5, 3), rng.rational(5, 3)};
            if (sgn(m.det()) <= 0) continue;
            auto om = mix(m.inverse(), exp_class(B, w, l));
            auto form = normalize_to_exp_form(om, l);
            REQUIRE(form.is_rational());
            CHECK(*form.matrix() == m);
            CHECK(form.B == B);
            CHECK(*form.omega() == w);
        }
    // irrational normalization: scale the imaginary part by 2
    auto e = exp_class({0}, {1}, lat);
    auto skew = normalize_to_exp_form({e.re, Rational(2) * e.im}, lat);
    CHECK(skew.is_rational());
    CHECK(*skew.omega() == QVec{1});
    auto irr = normalize_to_exp_form({e.re, e.re + e.im}, lat);
    CHECK(irr.omega_squared(lat) == 2);
}

TEST_CASE("quadratic roots") {
    auto r = real_roots(-2, 0, 1);
    REQUIRE(r.size() == 2);
    CHECK(r[0] == -surd_sqrt(2));
    CHECK(r[1] == surd_sqrt(2));
    CHECK(real_roots(1, 0, 1).empty());
    CHECK(real_roots(1, -2, 1) == std::vector<Surd>{Surd(Rational(1))});
    CHECK(real_roots(3, 2, 0) == std::vector<Surd>{Surd(Rational(-3, 2))});
    CHECK(real_roots(1, 0, 0).empty());
}

TEST_CASE("wall scan examples") {
    auto lat = testing::lattice_h2();
    AffinePath path{{0}, {0}, {0}, {1}};
    for (long long bound = 1; bound <= 6; ++bound) {
        auto scan = wall_scan(lat, path, Rational(1, 2), 2, DeltaBox::cube(bound));
        REQUIRE(scan.walls.size() == 1);
        CHECK(scan.walls[0].t == Surd(Rational(1)));
        CHECK(scan.walls[0].witness == MukaiVector{1, {0}, 1});
        CHECK(scan.walls[0].kind == Wall::Kind::A);
        CHECK_FALSE(scan.truncated);
    }
    auto d2 = testing::lattice_diag2();
    auto c = wall_scan(d2, {{0, 0}, {0, 0}, {1, 0}, {0, 1}}, -1, 1, DeltaBox::cube(3));
    REQUIRE(c.walls.size() == 1);
    CHECK(c.walls[0].kind == Wall::Kind::C);
    CHECK(c.walls[0].t == Surd(Rational(0)));
    CHECK(c.walls[0].witness == MukaiVector{0, {0, 1}, 0});
    CHECK(c.walls[0].k == 0);
    CHECK(c.truncated);

    auto none = wall_scan(lat, path, Rational(1, 2), 2, DeltaBox::cube(-1));
    CHECK(none.walls.size() == 1); // the rank one certificate widens an empty box
    auto empty = wall_scan(NSLattice::create({{2, 0}, {0, -2}}, {1, 0}), {{0, 0}, {0, 0}, {1, 0}, {0, 1}}, -1, 1,
                           DeltaBox::cube(-1));
    CHECK(empty.walls.empty());

    CHECK_THROWS_AS(wall_scan(lat, path, 2, 1, DeltaBox::cube(1)), Error);
    CHECK_THROWS_AS(wall_scan(lat, path, -1, 1, DeltaBox::cube(1)), Error);
}

TEST_CASE("irrational walls and refinement invariance") {
    auto lat = testing::lattice_h2();
    Rng rng(23);
    for (int i = 0; i < 40; ++i) {
        AffinePath path{{rng.rational(4, 3)}, {rng.rational(2, 3)}, {make_rational(1, 4)}, {make_rational(rng.uniform(1, 4), 3)}};
        Rational t0 = 0, t1 = 3;
        auto whole = wall_scan(lat, path, t0, t1, DeltaBox::cube(2));
        std::vector<Wall> pieces;
        for (int k = 0; k < 3; ++k) {
            auto part = wall_scan(lat, path, qq(k), qq(k + 1), DeltaBox::cube(2));
            pieces.insert(pieces.end(), part.walls.begin(), part.walls.end());
        }
        pieces.erase(std::unique(pieces.begin(), pieces.end()), pieces.end());
        CHECK(pieces == whole.walls);
        for (const auto& w : whole.walls) {
            // exact re-verification at the surd parameter
            const auto& d = w.witness;
            QVec B0 = path.B0, B1 = path.B1, W0 = path.W0, W1 = path.W1;
            Rational g = 2, r = qq(d.r), m = qq(d.l[0]), s = qq(d.s);
            // Im = g·(W0 + tW1)·(m - r(B0 + tB1))
            Rational i0 = g * W0[0] * (m - r * B0[0]);
            Rational i1 = g * (W1[0] * (m - r * B0[0]) - W0[0] * r * B1[0]);
            Rational i2 = -g * W1[0] * r * B1[0];
            CHECK(Surd::eval_quadratic(i0, i1, i2, w.t).sign() == 0);
            // Re = g·b·m - s - r·g(b² - w²)/2
            Rational e0 = g * B0[0] * m - s - r * g * (B0[0] * B0[0] - W0[0] * W0[0]) / 2;
            Rational e1 = g * B1[0] * m - r * g * (B0[0] * B1[0] - W0[0] * W1[0]);
            Rational e2 = -r * g * (B1[0] * B1[0] - W1[0] * W1[0]) / 2;
            CHECK(Surd::eval_quadratic(e0, e1, e2, w.t).sign() <= 0);
        }
    }
    // on h² = 4 with B = 0, ω = t·h the class (1,0,1) has Re Z = 2t² - 1
    auto h4 = NSLattice::create({{4}}, {1});
    auto irr = wall_scan(h4, {{0}, {0}, {0}, {1}}, Rational(1, 4), 2, DeltaBox::cube(1));
    REQUIRE(irr.walls.size() == 1);
    CHECK(irr.walls[0].t == surd_sqrt(Rational(1, 2)));
    CHECK(irr.walls[0].t.to_string() == "1/2*sqrt(2)");
    CHECK_FALSE(irr.truncated);
}

TEST_CASE("chamber plot segments") {
    auto plot = chamber_plot(testing::lattice_h2(), -1, 1, Rational(1, 10), 2);
    bool found = false;
    for (const auto& s : plot.segments) {
        CHECK(square(s.witness, testing::lattice_h2()) == -2);
        if (s.witness == MukaiVector{1, {0}, 1}) {
            found = true;
            CHECK(s.t_top == Surd(Rational(1)));
        }
    }
    CHECK(found);
    CHECK_THROWS_AS(chamber_plot(testing::lattice_diag2(), -1, 1, 1, 2), Error);
}
