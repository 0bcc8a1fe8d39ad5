#include "stabkit/group.hpp"

#include "stabkit/error.hpp"

#include <cmath>

namespace stabkit {

namespace {

const QComplex e1{1, 0};

// k with lo <= psi + 2k < lo + 2
long long lift_into_window(const Phase& psi, const Phase& lo) {
    auto k = static_cast<long long>(std::ceil((lo.approx() - psi.approx()) / 2));
    while (psi.plus(qq(2 * k)) < lo) ++k;
    while (psi.plus(qq(2 * k)) >= lo.plus(2)) --k;
    return k;
}

// n with n <= phi < n + 1
long long floor_of(const Phase& phi) {
    auto n = static_cast<long long>(std::floor(phi.approx()));
    while (Phase::of_value(qq(n)) > phi) --n;
    while (Phase::of_value(qq(n + 1)) <= phi) ++n;
    return n;
}

// n with n < phi <= n + 1
long long unit_interval_of(const Phase& phi) {
    long long n = floor_of(phi);
    return Phase::of_value(qq(n)) == phi ? n - 1 : n;
}

std::optional<QComplex> direction_of(const Phase& phi) {
    if (phi.shift().get_den() == 1) {
        bool odd = mpz_odd_p(phi.shift().get_num_mpz_t());
        return odd ? -phi.dir() : phi.dir();
    }
    return phi.exact_direction();
}

// The value 2k that f takes at a phase known to map into 2Z.
long long even_value(const Phase& phi) {
    auto k = static_cast<long long>(std::llround(phi.approx() / 2));
    if (!(phi == Phase::of_value(qq(2 * k)))) fail(ErrorKind::internal, "phase anchor lost its integrality");
    return k;
}

} // namespace

GLTildeElement GLTildeElement::create(const Mat2& m, const Phase& f0) {
    require(sgn(m.det()) > 0, "GL~ element needs det M > 0, got " + stabkit::to_string(m.det()));
    Phase psi = Phase::of_direction(m.apply(e1));
    auto k = static_cast<long long>(std::llround((f0.approx() - psi.approx()) / 2));
    require(psi.plus(qq(2 * k)) == f0, "anchor " + f0.to_string() + " is not a lift of the direction of M·(1,0), phase " +
                                       psi.to_string() + " mod 2");
    return {m, psi.plus(qq(2 * k))};
}

GLTildeElement GLTildeElement::identity() { return central_shift(0); }

GLTildeElement GLTildeElement::central_shift(long long k) { return create(Mat2::identity(), Phase::of_value(qq(2 * k))); }

GLTildeElement GLTildeElement::quarter_rotation() { return create({0, 1, -1, 0}, Phase::of_value(Rational(-1, 2))); }

GLTildeElement GLTildeElement::scaling(const Rational& lambda) {
    require(sgn(lambda) > 0, "scaling factor must be positive");
    return create(Mat2::scalar(lambda), Phase::of_value(0));
}

bool GLTildeElement::conformal() const { return m_.a == m_.d && m_.b == -m_.c; }

std::string GLTildeElement::to_string() const { return "(" + stabkit::to_string(m_) + ", f0=" + f0_.to_string() + ")"; }

Phase f_eval(const GLTildeElement& g, const Phase& phi) {
    if (g.conformal()) return phi + g.f0();
    auto u = direction_of(phi);
    if (!u) fail(ErrorKind::domain, "phase " + phi.to_string() + " has no exact direction for a non-conformal M");
    Phase psi = Phase::of_direction(g.matrix().apply(*u));
    Phase lo = g.f0().plus(qq(floor_of(phi)));
    return psi.plus(qq(2 * lift_into_window(psi, lo)));
}

GLTildeElement compose(const GLTildeElement& g1, const GLTildeElement& g2) {
    return GLTildeElement::create(g1.matrix() * g2.matrix(), f_eval(g1, g2.f0()));
}

GLTildeElement inverse(const GLTildeElement& g) {
    Mat2 inv = g.matrix().inverse();
    Phase psi0 = Phase::of_direction(inv.apply(e1));
    long long k = even_value(f_eval(g, psi0));
    return GLTildeElement::create(inv, psi0.plus(qq(-2 * k)));
}

CurveCharge act_on_charge(const GLTildeElement& g, const CurveCharge& z) {
    Mat2 m = g.matrix().inverse() * z.matrix();
    return z.irrational() ? CurveCharge::approximating(m) : CurveCharge::create(m);
}

ComplexMukaiVector act_on_charge(const GLTildeElement& g, const ComplexMukaiVector& om) {
    Mat2 m = g.matrix().inverse();
    return {m.a * om.re + m.b * om.im, m.c * om.re + m.d * om.im};
}

HeartAction act_on_heart_stability(const GLTildeElement& g, const QuiverStability& s, const Quiver& q) {
    require(static_cast<int>(s.charge.values().size()) == q.vertices(), "charge has the wrong number of values");
    if (s.shift.get_den() != 1)
        fail(ErrorKind::domain, "stability with shift " + to_string(s.shift) + " has no rational central charge");
    GLTildeElement inv = inverse(g);
    Mat2 m = g.matrix().inverse();
    bool odd = mpz_odd_p(s.shift.get_num_mpz_t());
    HeartAction out;
    for (int v = 0; v < q.vertices(); ++v) {
        const QComplex& z = s.charge.values()[v];
        out.charge.push_back(m.apply(odd ? -z : z));
        out.simple_phases.push_back(f_eval(inv, Phase::in_heart(z).plus(s.shift)));
    }
    long long n = unit_interval_of(out.simple_phases.front());
    for (const auto& phi : out.simple_phases)
        if (unit_interval_of(phi) != n) {
            out.note = "tilted heart — not representable as a single HeartCharge";
            return out;
        }
    std::vector<QComplex> values;
    for (const auto& z : out.charge) values.push_back(n % 2 != 0 ? -z : z);
    out.heart = QuiverStability{HeartCharge::create(values), qq(n)};
    return out;
}

QuiverStability rotate(const QuiverStability& s, const Rational& eps) { return {s.charge, s.shift + eps}; }

ComplexMukaiVector aut_act(const MukaiMap& iso, const ComplexMukaiVector& om, const NSLattice& lat) {
    require(is_mukai_isometry(iso, lat), "map is not a Mukai isometry");
    return {apply(iso, om.re, lat), apply(iso, om.im, lat)};
}

bool commute_check(const MukaiMap& iso, const GLTildeElement& g, const ComplexMukaiVector& om, const NSLattice& lat) {
    return aut_act(iso, act_on_charge(g, om), lat) == act_on_charge(g, aut_act(iso, om, lat));
}

} // namespace stabkit
