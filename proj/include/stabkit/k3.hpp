#pragma once

// The stability function Z(v) = <exp(B + iω), v> on numerical K3 data:
// spherical guard, heart positivity, discreteness, exp-form normalization
// and exact wall scans along affine (B, ω) paths.

#include "stabkit/lattice.hpp"
#include "stabkit/phase.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stabkit {

class K3CentralCharge {
public:
    /// Requires ω² > 0.
    static K3CentralCharge create(const NSLattice& lat, QVec B, QVec omega);

    const NSLattice& lattice() const { return lat_; }
    const QVec& B() const { return B_; }
    const QVec& omega() const { return omega_; }
    const ComplexMukaiVector& om() const { return om_; }
    /// β = (B.ω)
    Rational beta() const;

private:
    NSLattice lat_;
    QVec B_, omega_;
    ComplexMukaiVector om_;
};

/// Re = B.l - s - r(B² - ω²)/2, Im = ω.l - r(B.ω)
QComplex central_charge(const K3CentralCharge& zc, const MukaiVector& v);
/// Phase in (0,1] of a value in H ∪ R_{<0}.
Phase phase(const QComplex& z);

struct GuardResult {
    bool ok = true;
    std::optional<MukaiVector> violation;
    QComplex value; // Z(violation)
    bool truncated = true;
    DeltaBox searched;
};

/// Looks for δ ∈ Δ with r > 0 and Z(δ) ∈ R_{<=0}. For ρ = 1 the search box
/// is widened to a box that provably contains every such δ, and the result is
/// not truncated.
GuardResult spherical_guard(const K3CentralCharge& zc, const DeltaBox& box);

/// True iff B, ω ∈ (1/m)·NS; then m²·Z(v) ∈ Z[i] for all integral v, which is
/// spot-checked on a small box.
bool discreteness_check(const K3CentralCharge& zc, long long m);

/// Re Z(v) == ((l² - 2rs) + r²ω² - (l - rB)²) / (2r), exactly; requires r != 0.
bool realpart_identity_check(const K3CentralCharge& zc, const MukaiVector& v);

enum class TorsionSide { T, F };
/// T iff μ_ω(v) = (ω.l)/r > β; requires r > 0.
TorsionSide torsion_side(const MukaiVector& v, const K3CentralCharge& zc);

struct HeartViolation {
    MukaiVector v;
    QComplex z;
    std::string rule;
};

struct HeartReport {
    std::vector<HeartViolation> violations;
    long long classes_checked = 0;
    bool truncated = true;
};

/// Checks that every class of the box with v² >= -2 lands where the heart
/// A(ω, β) requires. Throws ErrorKind::guard_violation when the spherical guard
/// fails on the box.
HeartReport heart_image_check(const K3CentralCharge& zc, const DeltaBox& box);

struct Claim4Data {
    Rational scale; // Om / scale maps the point class to -1
    QVec omega;
    Rational beta;
    AmpleCertificate ample;
};
/// Reads (ω, β) off a charge whose point-class image is a negative real.
Claim4Data claim4_extract(const ComplexMukaiVector& om, const NSLattice& lat);

/// Result of bringing a positive plane to exp(B + iω) form through
/// M ∈ GL⁺(2,R) acting on (re, im). The first row of M is rational; the
/// second row is c·(m21, m22) with c = sqrt(c_squared) > 0, and ω = c·omega_unit.
struct ExpForm {
    Rational m11, m12;
    Rational m21, m22;
    Rational c_squared;
    QVec B;
    QVec omega_unit;

    bool is_rational() const;
    std::optional<Rational> c() const;
    std::optional<Mat2> matrix() const;
    std::optional<QVec> omega() const;
    /// ω² = c²·omega_unit²
    Rational omega_squared(const NSLattice& lat) const;
};
ExpForm normalize_to_exp_form(const ComplexMukaiVector& om, const NSLattice& lat);

/// B_t = B0 + t·B1, ω_t = W0 + t·W1
struct AffinePath {
    QVec B0, B1, W0, W1;
    QVec B_at(const Rational& t) const;
    QVec omega_at(const Rational& t) const;
};

struct Wall {
    enum class Kind { A, C };
    Surd t;
    MukaiVector witness;
    Kind kind = Kind::A;
    IVec curve;      // kind C only
    long long k = 0; // kind C only

    friend bool operator==(const Wall& x, const Wall& y) {
        return x.t == y.t && x.witness == y.witness && x.kind == y.kind;
    }
};

struct WallScan {
    std::vector<Wall> walls; // sorted by t, deduplicated
    bool truncated = true;
    DeltaBox searched;
};

/// Exact walls of type A (some positive-rank δ ∈ Δ has Z_t(δ) ∈ R_{<=0} on the
/// boundary of the locus where this happens) and of type C ((ω_t.C) = 0 for a
/// declared curve C with (B_t.C) = k integral, |k| <= box.s).
WallScan wall_scan(const NSLattice& lat, const AffinePath& path, const Rational& t0, const Rational& t1,
                   const DeltaBox& box);

/// Real roots of c0 + c1 t + c2 t² in increasing order (a double root once).
std::vector<Surd> real_roots(const Rational& c0, const Rational& c1, const Rational& c2);

/// Wall segments in the (b, t) half plane B = b·h, ω = t·h of a rank one
/// lattice: δ = (r, m·h, s) gives the vertical segment b = m/r, 0 < t <= t_top.
struct ChamberSegment {
    Rational b;
    Surd t_top;
    MukaiVector witness;
};
struct ChamberPlot {
    Rational b0, b1, t0, t1;
    std::vector<ChamberSegment> segments; // sorted by b, then rank
};
ChamberPlot chamber_plot(const NSLattice& lat, const Rational& b0, const Rational& b1, const Rational& t0,
                         const Rational& t1);

} // namespace stabkit
