#include "doctest.h"

#include "stabkit/error.hpp"
#include "stabkit/numeric.hpp"
#include "stabkit/phase.hpp"

#include "support.hpp"

#include <cmath>

using namespace stabkit;

TEST_CASE("rational parsing and printing") {
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(parse_rational("-2")) == "-2");
    CHECK(to_string(parse_rational("0.25")) == "1/4");
    CHECK(to_string(parse_rational("-1.5")) == "-3/2");
    CHECK(to_string(parse_rational(" 7 / -14 ")) == "-1/2");
    CHECK_THROWS_AS(parse_rational("1/0"), Error);
    CHECK_THROWS_AS(parse_rational("abc"), Error);
    CHECK_THROWS_AS(parse_rational(""), Error);
}

TEST_CASE("surd signs agree with floating point away from ties") {
    testing::Rng rng(11);
    for (int i = 0; i < 2000; ++i) {
        Rational u = rng.rational(20, 7), b1 = rng.rational(20, 7), b2 = rng.rational(20, 7);
        Integer d1 = static_cast<long>(rng.uniform(0, 30)), d2 = static_cast<long>(rng.uniform(0, 30));
        long double val = u.get_d() + b1.get_d() * std::sqrt((long double)d1.get_d()) +
                          b2.get_d() * std::sqrt((long double)d2.get_d());
        if (std::fabs((double)val) < 1e-9) continue;
        CHECK(sign_of(u, b1, d1, b2, d2) == (val > 0 ? 1 : -1));
    }
    // exact ties
    CHECK(sign_of(0, 1, 8, -2, 2) == 0);
    CHECK(sign_of(-5, 1, 2, 1, 3) == -1);
    CHECK(sign_of(-3, 1, 2, 1, 2) == -1); // 2·sqrt(2) < 3
}

TEST_CASE("surds fold squares and order exactly") {
    Surd a(1, 1, 4);
    CHECK(a.is_rational());
    CHECK(a == Surd(Rational(3)));
    Surd r2 = surd_sqrt(2);
    CHECK(r2.to_string() == "sqrt(2)");
    CHECK(Surd(Rational(7, 5)) < r2);
    CHECK(r2 < Surd(Rational(71, 50)));
    CHECK(surd_sqrt(Rational(1, 2)) == Surd(0, Rational(1, 2), 2));
    CHECK(Surd::eval_quadratic(-2, 0, 1, r2).sign() == 0);
}

TEST_CASE("phase values on the heart") {
    CHECK(*Phase::in_heart({-1, 0}).exact_value() == 1);
    CHECK(*Phase::in_heart({0, 1}).exact_value() == Rational(1, 2));
    CHECK(*Phase::in_heart({1, 1}).exact_value() == Rational(1, 4));
    CHECK_THROWS_AS(Phase::in_heart({0, 0}), Error);
    CHECK_THROWS_AS(Phase::in_heart({1, 0}), Error);
    CHECK_THROWS_AS(Phase::in_heart({1, -1}), Error);
}

TEST_CASE("phase comparison matches atan2 and respects shifts") {
    testing::Rng rng(5);
    auto random_heart = [&] {
        while (true) {
            QComplex z{rng.rational(9, 5), rng.rational(9, 5)};
            if (!z.is_zero() && in_closed_upper_half_plane(z)) return z;
        }
    };
    for (int i = 0; i < 2000; ++i) {
        auto a = Phase::in_heart(random_heart());
        auto b = Phase::in_heart(random_heart());
        Rational sa = make_rational(rng.uniform(-8, 8), 4);
        Rational sb = make_rational(rng.uniform(-8, 8), 4);
        auto pa = a.plus(sa), pb = b.plus(sb);
        CHECK(compare_is_exact(pa, pb));
        long double diff = pa.approx() - pb.approx();
        if (std::fabs((double)diff) > 1e-12) CHECK(((pa <=> pb) < 0) == (diff < 0));
        auto gap = pa - pb;
        if (gap.exact) CHECK(std::fabs((double)(gap.approx - diff)) < 1e-12);
    }
    CHECK(Phase::of_value(Rational(3, 2)) == Phase::in_heart({0, 1}).plus(1));
    CHECK(*Phase::of_value(Rational(7, 4)).exact_value() == Rational(7, 4));
    CHECK(*(Phase::of_value(2) - Phase::in_heart({-1, 0})).exact == 1);
}

TEST_CASE("exact trigonometric tables agree with floating point") {
    for (long den : {2L, 3L, 4L, 6L, 8L, 12L})
        for (long k = 1; k < den; ++k) {
            Rational x = make_rational(k, den);
            auto c = exact_cot_pi(x);
            REQUIRE(c);
            double xv = x.get_d() * M_PI;
            CHECK(std::fabs(c->approx() - std::cos(xv) / std::sin(xv)) < 1e-12);
            auto s2 = exact_sin_squared_pi(x);
            REQUIRE(s2);
            CHECK(std::fabs(s2->approx() - std::sin(xv) * std::sin(xv)) < 1e-12);
        }
    CHECK_FALSE(exact_cot_pi(make_rational(1, 5)));
    CHECK(*exact_sin_squared_pi(make_rational(1, 8)) == Surd(make_rational(1, 2), make_rational(-1, 4), 2));
    CHECK(*exact_sin_squared_pi(make_rational(1, 6)) == Surd(make_rational(1, 4)));
    for (long k = -24; k <= 24; ++k) {
        Rational x = make_rational(k, 12);
        auto cs = exact_cos_sin_pi(x);
        bool expected = (k % 3 == 0) || (k % 2 == 0);
        CHECK(cs.has_value() == expected);
        if (!cs) continue;
        CHECK(std::fabs(cs->first.approx() - std::cos(x.get_d() * M_PI)) < 1e-12);
        CHECK(std::fabs(cs->second.approx() - std::sin(x.get_d() * M_PI)) < 1e-12);
    }
}

TEST_CASE("phase comparison is exact for eighth and twelfth shifts") {
    testing::Rng rng(6);
    auto random_heart = [&] {
        while (true) {
            QComplex z{rng.rational(9, 5), rng.rational(9, 5)};
            if (!z.is_zero() && in_closed_upper_half_plane(z)) return z;
        }
    };
    for (int i = 0; i < 3000; ++i) {
        auto a = Phase::in_heart(random_heart()).plus(make_rational(rng.uniform(-24, 24), 24));
        auto b = Phase::in_heart(random_heart()).plus(make_rational(rng.uniform(-24, 24), 24));
        long double diff = a.approx() - b.approx();
        if (std::fabs((double)diff) > 1e-12) CHECK(((a <=> b) < 0) == (diff < 0));
        CHECK(compare_is_exact(a, b) == (exact_cot_pi(abs(a.shift() - b.shift())).has_value() ||
                                          sgn(a.shift() - b.shift()) == 0 || abs(a.shift() - b.shift()) >= 1));
    }
    auto p = Phase::in_heart({3, 1});
    CHECK(p.plus(make_rational(1, 6)) > p);
    CHECK(Phase::of_value(make_rational(1, 2)).plus(make_rational(1, 8)) > Phase::of_value(make_rational(1, 2)));
    CHECK(Phase::of_value(make_rational(1, 4)).plus(make_rational(1, 4)) == Phase::of_value(make_rational(1, 2)));
}

TEST_CASE("phase addition") {
    testing::Rng rng(7);
    auto random_heart = [&] {
        while (true) {
            QComplex z{rng.rational(9, 5), rng.rational(9, 5)};
            if (!z.is_zero() && in_closed_upper_half_plane(z)) return z;
        }
    };
    for (int i = 0; i < 2000; ++i) {
        auto a = Phase::in_heart(random_heart()).plus(qq(rng.uniform(-2, 2)));
        auto b = Phase::in_heart(random_heart()).plus(make_rational(rng.uniform(-4, 4), 3));
        CHECK(std::fabs((double)((a + b).approx() - a.approx() - b.approx())) < 1e-12);
        CHECK(a + b == b + a);
    }
    CHECK(*(Phase::of_value(1) + Phase::of_value(1)).exact_value() == 2);
    CHECK(*(Phase::of_value(make_rational(3, 4)) + Phase::of_value(make_rational(1, 2))).exact_value() ==
          make_rational(5, 4));
}

TEST_CASE("rotation by eighths") {
    CHECK(rotate_eighths({1, 0}, 2) == QComplex(0, 2));
    CHECK(rotate_eighths({1, 0}, 4) == QComplex(-4, 0));
    CHECK(rotate_eighths({1, 0}, -2) == rotate_eighths({1, 0}, 6));
}

TEST_CASE("2x2 matrices") {
    Mat2 m = parse_mat2("1,2;3,4");
    CHECK(m.det() == -2);
    CHECK(m * m.inverse() == Mat2::identity());
    CHECK(to_string(m) == "1,2;3,4");
    CHECK_THROWS_AS(Mat2({1, 2, 2, 4}).inverse(), Error);
}
