#pragma once

// Stability data on N(C) = Z² with basis (rank, degree).

#include "stabkit/numeric.hpp"
#include "stabkit/phase.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace stabkit {

struct CurveClass {
    long long r = 0;
    long long d = 0;
    friend bool operator==(const CurveClass&, const CurveClass&) = default;
};

/// A charge (r, d) ↦ m·(r, d) = (Re Z, Im Z).
class CurveCharge {
public:
    /// Requires det m != 0.
    static CurveCharge create(const Mat2& m);
    /// Z(r, d) = -d + i·r
    static CurveCharge standard();
    /// A rational stand-in for a charge with irrational entries. Such a
    /// charge is kept for display only and never counts as discrete.
    static CurveCharge approximating(const Mat2& m);

    const Mat2& matrix() const { return m_; }
    bool irrational() const { return irrational_; }
    QComplex operator()(const CurveClass& c) const;

    friend bool operator==(const CurveCharge& a, const CurveCharge& b) {
        return a.m_ == b.m_ && a.irrational_ == b.irrational_;
    }

private:
    Mat2 m_;
    bool irrational_ = false;
};

QComplex z_standard(const CurveClass& c);

/// Phase of -μ + i, in (0, 1).
Phase slope_phase(const Rational& mu);
/// -cot(πφ) for φ ∈ (0, 1) given as a phase token; exact whenever the phase
/// has a rational direction. Throws for φ = 1.
Rational phase_slope(const Phase& phi);

/// M ∈ GL⁺(2, Q) with zc = M⁻¹ ∘ Z_std. Throws ErrorKind::domain when
/// det(zc) <= 0.
Mat2 gl_orbit_decompose(const CurveCharge& zc);
CurveCharge gl_orbit_recompose(const Mat2& M);

struct PhaseOrderReport {
    bool ok = true;
    Phase point_phase = Phase::of_value(1);
    std::vector<std::pair<long long, Phase>> line_phases; // (d, phase of (1, d)) lifted below point_phase
    std::optional<long long> failure;
};
/// Checks φ_x - 1 < φ(1, d) < φ_x for d_lo <= d <= d_hi.
PhaseOrderReport phase_order_check(const CurveCharge& zc, long long d_lo, long long d_hi);

struct PolygonFactor {
    CurveClass cls;
    QComplex z;
    Phase phase;
};
struct HNPolygon {
    std::vector<QComplex> vertices; // cumulative sums from 0 to Z(total)
    std::vector<PolygonFactor> factors; // strictly decreasing phase
};
HNPolygon hn_polygon(const std::vector<std::pair<CurveClass, QComplex>>& parts);
HNPolygon hn_polygon(const std::vector<CurveClass>& parts, const CurveCharge& zc);

bool curve_discreteness(const CurveCharge& zc);

} // namespace stabkit
