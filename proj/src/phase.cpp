#include "stabkit/phase.hpp"

#include "stabkit/error.hpp"

#include <cmath>
#include <numbers>

namespace stabkit {

namespace {

// arg(z)/π for z ∈ H ∪ R_{<0}, exactly when it is a multiple of 1/4.
std::optional<Rational> exact_base(const QComplex& z) {
    if (sgn(z.im) == 0) return Rational(1);
    if (sgn(z.re) == 0) return Rational(1, 2);
    if (z.re == z.im) return Rational(1, 4);
    if (z.re == -z.im) return Rational(3, 4);
    return std::nullopt;
}

long double approx_base(const QComplex& z) {
    long double a = std::atan2(static_cast<long double>(z.im.get_d()), static_cast<long double>(z.re.get_d()));
    return a / std::numbers::pi_v<long double>;
}

bool quarter_multiple(const Rational& q, Integer& k4) {
    Rational four = q * 4;
    if (!is_integer(four)) return false;
    k4 = four.get_num();
    return true;
}

// Index k with x = k/den for den = 8 or 12, if any.
std::optional<std::pair<long, long>> table_index(const Rational& x) {
    for (long den : {12L, 8L}) {
        Rational k = x * den;
        if (is_integer(k)) return std::make_pair(k.get_num().get_si(), den);
    }
    return std::nullopt;
}

// Sign of θ/π + x, where θ ∈ (-π, π) is the angle from `from` to `to`,
// both nonzero and in H ∪ R_{<0}.
int gap_sign(const QComplex& from, const QComplex& to, const Rational& x) {
    if (x >= 1) return 1;
    if (x <= -1) return -1;
    Rational cr = cross(from, to);
    Rational dt = from.re * to.re + from.im * to.im;
    Rational y = -x;
    if (sgn(y) == 0) return sgn(cr);
    if (sgn(y) > 0 && sgn(cr) <= 0) return -1;
    if (sgn(y) < 0 && sgn(cr) >= 0) return 1;
    // reduce to comparing an angle in (0, π) with π|y| through the decreasing cot
    Rational cot_angle = sgn(y) > 0 ? Rational(dt / cr) : Rational(dt / -cr);
    Rational ay = abs(y);
    int s; // sign of cot(π|y|) - cot_angle
    if (auto c = exact_cot_pi(ay)) {
        auto ord = *c <=> Surd(cot_angle);
        s = ord < 0 ? -1 : (ord > 0 ? 1 : 0);
    } else {
        long double angle = std::atan2(static_cast<long double>(cr.get_d()), static_cast<long double>(dt.get_d())) / std::numbers::pi_v<long double>;
        if (sgn(y) < 0) angle = -angle;
        long double d = angle - static_cast<long double>(ay.get_d());
        // d > 0 means the angle exceeds π|y|, i.e. cot_angle < cot(π|y|)
        s = d > 0 ? 1 : (d < 0 ? -1 : 0);
    }
    return sgn(y) > 0 ? s : -s;
}

} // namespace

std::optional<Surd> exact_cot_pi(const Rational& x) {
    if (sgn(x) <= 0 || x >= 1) return std::nullopt;
    auto idx = table_index(x);
    if (!idx) return std::nullopt;
    auto [k, den] = *idx;
    if (den == 12) {
        switch (k) {
        case 1: return Surd(2, 1, 3);
        case 2: return Surd(0, 1, 3);
        case 3: return Surd(Rational(1));
        case 4: return Surd(0, Rational(1, 3), 3);
        case 5: return Surd(2, -1, 3);
        case 6: return Surd(Rational(0));
        case 7: return Surd(-2, 1, 3);
        case 8: return Surd(0, Rational(-1, 3), 3);
        case 9: return Surd(Rational(-1));
        case 10: return Surd(0, -1, 3);
        case 11: return Surd(-2, -1, 3);
        }
    } else {
        switch (k) {
        case 1: return Surd(1, 1, 2);
        case 3: return Surd(-1, 1, 2);
        case 5: return Surd(1, -1, 2);
        case 7: return Surd(-1, -1, 2);
        }
    }
    return std::nullopt;
}

std::optional<Surd> exact_sin_squared_pi(const Rational& x) {
    if (is_integer(x)) return Surd(Rational(0));
    Rational frac = x - Rational(floor(x));
    auto c = exact_cot_pi(frac);
    if (!c) return std::nullopt;
    // sin² = 1 / (1 + cot²)
    Rational u = 1 + c->a() * c->a() + c->b() * c->b() * Rational(c->d());
    Rational v = 2 * c->a() * c->b();
    Rational n = u * u - v * v * Rational(c->d());
    return Surd(u / n, -v / n, c->d());
}

std::optional<std::pair<Surd, Surd>> exact_cos_sin_pi(const Rational& x) {
    Rational m = x - 2 * Rational(floor(x / 2)); // x mod 2
    Rational k4 = m * 4, k6 = m * 6;
    if (is_integer(k4)) {
        static const int c4[8][2] = {{1, 0}, {1, 1}, {0, 1}, {-1, 1}, {-1, 0}, {-1, -1}, {0, -1}, {1, -1}};
        long k = k4.get_num().get_si();
        auto part = [&](int v) { return (k % 2 == 0) ? Surd(Rational(v)) : Surd(0, Rational(v, 2), 2); };
        return std::make_pair(part(c4[k][0]), part(c4[k][1]));
    }
    if (is_integer(k6)) {
        long k = k6.get_num().get_si();
        // cos, sin of kπ/6 for k = 0..11 as (rational part, sqrt(3) coefficient)
        static const Rational cs[12][4] = {
            {1, 0, 0, 0},
            {0, Rational(1, 2), Rational(1, 2), 0},
            {Rational(1, 2), 0, 0, Rational(1, 2)},
            {0, 0, 1, 0},
            {Rational(-1, 2), 0, 0, Rational(1, 2)},
            {0, Rational(-1, 2), Rational(1, 2), 0},
            {-1, 0, 0, 0},
            {0, Rational(-1, 2), Rational(-1, 2), 0},
            {Rational(-1, 2), 0, 0, Rational(-1, 2)},
            {0, 0, -1, 0},
            {Rational(1, 2), 0, 0, Rational(-1, 2)},
            {0, Rational(1, 2), Rational(-1, 2), 0},
        };
        const auto& e = cs[k];
        return std::make_pair(Surd(e[0], e[1], 3), Surd(e[2], e[3], 3));
    }
    return std::nullopt;
}

QComplex rotate_eighths(const QComplex& z, int k) {
    k %= 8;
    if (k < 0) k += 8;
    QComplex out = z;
    const QComplex step(1, 1);
    for (int i = 0; i < k; ++i) out = out * step;
    return out;
}

Phase Phase::of_direction(const QComplex& z) {
    if (z.is_zero()) fail(ErrorKind::domain, "phase of zero is undefined");
    if (in_closed_upper_half_plane(z)) return Phase(z, 0);
    return Phase(-z, -1);
}

Phase Phase::in_heart(const QComplex& z) {
    if (z.is_zero()) fail(ErrorKind::domain, "phase of zero is undefined");
    if (!in_closed_upper_half_plane(z))
        fail(ErrorKind::domain, "central charge " + stabkit::to_string(z) + " lies outside H ∪ R_{<0}");
    return Phase(z, 0);
}

Phase Phase::of_value(const Rational& value) {
    Integer k4;
    if (quarter_multiple(value, k4)) {
        // value = base + shift with base ∈ (0,1]: pick the canonical quarter direction.
        Rational v = value;
        Integer fl = floor(v);
        Rational frac = v - Rational(fl);
        if (sgn(frac) == 0) return Phase(QComplex(-1, 0), v - 1);
        int eighths = static_cast<int>(Rational(frac * 4).get_num().get_si());
        return Phase(rotate_eighths(QComplex(1, 0), eighths), Rational(fl));
    }
    return Phase(QComplex(-1, 0), value - 1);
}

long double Phase::approx() const { return approx_base(dir_) + static_cast<long double>(shift_.get_d()); }

std::optional<Rational> Phase::exact_value() const {
    auto b = exact_base(dir_);
    if (!b) return std::nullopt;
    return *b + shift_;
}

std::optional<QComplex> Phase::exact_direction() const {
    Integer k4;
    if (!quarter_multiple(shift_, k4)) return std::nullopt;
    Integer r = k4 % 8;
    if (r < 0) r += 8;
    return rotate_eighths(dir_, static_cast<int>(r.get_si()));
}

std::string Phase::to_string() const {
    if (auto v = exact_value()) return stabkit::to_string(*v);
    std::string out = "arg(" + stabkit::to_string(dir_) + ")/pi";
    if (sgn(shift_) > 0) out += "+" + stabkit::to_string(shift_);
    if (sgn(shift_) < 0) out += stabkit::to_string(shift_);
    return out;
}

bool compare_is_exact(const Phase& a, const Phase& b) {
    Rational x = a.shift_ - b.shift_;
    if (sgn(x) == 0 || abs(x) >= 1) return true;
    return exact_cot_pi(abs(x)).has_value();
}

std::strong_ordering operator<=>(const Phase& a, const Phase& b) {
    int s = gap_sign(b.dir_, a.dir_, a.shift_ - b.shift_);
    if (s < 0) return std::strong_ordering::less;
    if (s > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
}

Phase operator+(const Phase& a, const Phase& b) {
    QComplex prod = a.dir_ * b.dir_;
    if (in_closed_upper_half_plane(prod)) return Phase(prod, a.shift_ + b.shift_);
    return Phase(-prod, a.shift_ + b.shift_ + 1);
}

PhaseGap operator-(const Phase& a, const Phase& b) {
    PhaseGap gap;
    gap.approx = a.approx() - b.approx();
    if (sgn(cross(a.dir_, b.dir_)) == 0) {
        // both directions lie in H ∪ R_{<0}, so parallel means equal base phase
        gap.exact = a.shift_ - b.shift_;
    } else if (auto x = a.exact_value(), y = b.exact_value(); x && y) {
        gap.exact = *x - *y;
    }
    if (gap.exact) gap.approx = static_cast<long double>(gap.exact->get_d());
    return gap;
}

} // namespace stabkit
