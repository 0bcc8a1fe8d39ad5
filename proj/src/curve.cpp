#include "stabkit/curve.hpp"

#include "stabkit/error.hpp"

#include <algorithm>

namespace stabkit {

namespace {

const Mat2 kStandard{0, -1, 1, 0};

} // namespace

CurveCharge CurveCharge::create(const Mat2& m) {
    require(sgn(m.det()) != 0, "curve charge matrix must be invertible");
    CurveCharge c;
    c.m_ = m;
    return c;
}

CurveCharge CurveCharge::standard() { return create(kStandard); }

CurveCharge CurveCharge::approximating(const Mat2& m) {
    CurveCharge c;
    c.m_ = m;
    c.irrational_ = true;
    return c;
}

QComplex CurveCharge::operator()(const CurveClass& c) const { return m_.apply({qq(c.r), qq(c.d)}); }

QComplex z_standard(const CurveClass& c) { return {qq(-c.d), qq(c.r)}; }

Phase slope_phase(const Rational& mu) { return Phase::in_heart({-mu, 1}); }

Rational phase_slope(const Phase& phi) {
    auto dir = phi.exact_direction();
    if (!dir) fail(ErrorKind::domain, "phase " + phi.to_string() + " has no exact direction");
    if (!(Phase::of_value(0) < phi && phi < Phase::of_value(1)))
        fail(ErrorKind::domain, "slopes are defined for phases in (0, 1)");
    return -dir->re / dir->im;
}

Mat2 gl_orbit_decompose(const CurveCharge& zc) {
    if (sgn(zc.matrix().det()) <= 0)
        fail(ErrorKind::domain, "charge reverses orientation (det " + to_string(zc.matrix().det()) +
                                    "); it is not in the orbit of the standard charge");
    return kStandard * zc.matrix().inverse();
}

CurveCharge gl_orbit_recompose(const Mat2& M) {
    require(sgn(M.det()) > 0, "group element must have positive determinant");
    return CurveCharge::create(M.inverse() * kStandard);
}

PhaseOrderReport phase_order_check(const CurveCharge& zc, long long d_lo, long long d_hi) {
    require(d_lo <= d_hi, "empty degree range");
    gl_orbit_decompose(zc);
    PhaseOrderReport out;
    out.point_phase = Phase::of_direction(zc({0, 1}));
    const Phase& px = out.point_phase;
    for (long long d = d_lo; d <= d_hi; ++d) {
        Phase pl = Phase::of_direction(zc({1, d}));
        while (pl >= px) pl = pl.plus(-2);
        while (pl.plus(2) < px) pl = pl.plus(2);
        bool inside = px.plus(-1) < pl;
        out.line_phases.emplace_back(d, pl);
        if (!inside && out.ok) {
            out.ok = false;
            out.failure = d;
        }
    }
    return out;
}

HNPolygon hn_polygon(const std::vector<std::pair<CurveClass, QComplex>>& parts) {
    std::vector<PolygonFactor> items;
    for (const auto& [cls, z] : parts) {
        if (z.is_zero()) fail(ErrorKind::input, "polygon part has zero charge");
        items.push_back({cls, z, Phase::in_heart(z)});
    }
    std::stable_sort(items.begin(), items.end(),
                     [](const PolygonFactor& a, const PolygonFactor& b) { return a.phase > b.phase; });
    HNPolygon out;
    for (const auto& it : items) {
        if (!out.factors.empty() && out.factors.back().phase == it.phase) {
            auto& f = out.factors.back();
            f.cls = {f.cls.r + it.cls.r, f.cls.d + it.cls.d};
            f.z = f.z + it.z;
        } else {
            out.factors.push_back(it);
        }
    }
    out.vertices.emplace_back(0, 0);
    for (const auto& f : out.factors) out.vertices.push_back(out.vertices.back() + f.z);
    return out;
}

HNPolygon hn_polygon(const std::vector<CurveClass>& parts, const CurveCharge& zc) {
    std::vector<std::pair<CurveClass, QComplex>> items;
    for (const auto& c : parts) items.emplace_back(c, zc(c));
    return hn_polygon(items);
}

bool curve_discreteness(const CurveCharge& zc) { return !zc.irrational(); }

} // namespace stabkit
