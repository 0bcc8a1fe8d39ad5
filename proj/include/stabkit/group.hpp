#pragma once

// The universal cover of GL⁺(2, R) acting on the right of stability data,
// and Mukai isometries acting on the left.

#include "stabkit/curve.hpp"
#include "stabkit/lattice.hpp"
#include "stabkit/quiver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stabkit {

/// A pair (M, f) with M ∈ GL⁺(2, Q) and f: R → R increasing, f(φ + 1) = f(φ) + 1,
/// M·exp(iπφ) ∈ exp(iπ f(φ))·R_{>0}. f is stored through its anchor f(0).
class GLTildeElement {
public:
    /// Throws ErrorKind::input unless det M > 0 and f0 ≡ phase of M·(1, 0) mod 2.
    static GLTildeElement create(const Mat2& m, const Phase& f0);
    static GLTildeElement identity();
    /// (id, φ ↦ φ + 2k)
    static GLTildeElement central_shift(long long k);
    /// Rotation by -π/2 with f(φ) = φ - 1/2.
    static GLTildeElement quarter_rotation();
    /// (λ·id, φ ↦ φ) for λ > 0.
    static GLTildeElement scaling(const Rational& lambda);

    const Mat2& matrix() const { return m_; }
    const Phase& f0() const { return f0_; }
    /// M is a positive multiple of a rotation, so f is a translation.
    bool conformal() const;
    std::string to_string() const;

    friend bool operator==(const GLTildeElement& a, const GLTildeElement& b) {
        return a.m_ == b.m_ && a.f0_ == b.f0_;
    }

private:
    GLTildeElement(Mat2 m, Phase f0) : m_(std::move(m)), f0_(std::move(f0)) {}

    Mat2 m_;
    Phase f0_;
};

/// f(φ). Exact for φ with a rational direction (integral or quarter shifts),
/// and for every φ when M is conformal; throws ErrorKind::domain otherwise.
Phase f_eval(const GLTildeElement& g, const Phase& phi);
GLTildeElement compose(const GLTildeElement& g1, const GLTildeElement& g2);
GLTildeElement inverse(const GLTildeElement& g);

/// Z' = M⁻¹ ∘ Z.
CurveCharge act_on_charge(const GLTildeElement& g, const CurveCharge& z);
/// Z' = M⁻¹ ∘ Z for Z = <Ω, ·>, acting on the pair (Re Ω, Im Ω).
ComplexMukaiVector act_on_charge(const GLTildeElement& g, const ComplexMukaiVector& om);

struct HeartAction {
    std::vector<QComplex> charge;     // M⁻¹ Z on the simples
    std::vector<Phase> simple_phases; // f⁻¹ of the old phases
    std::optional<QuiverStability> heart;
    std::string note; // why no heart was extracted
};
/// P'(φ) = P(f(φ)). The new slicing is read off as a heart stability when
/// the new phases of all simples lie in one interval (n, n + 1]. Requires
/// an integral shift on s.
HeartAction act_on_heart_stability(const GLTildeElement& g, const QuiverStability& s, const Quiver& q);
/// Rotation by exp(iπε): every phase moves by ε.
QuiverStability rotate(const QuiverStability& s, const Rational& eps);

/// Ω' = Φ(Ω), so that <Ω', v> = <Ω, Φ⁻¹ v>. Throws ErrorKind::input unless
/// Φ is a Mukai isometry.
ComplexMukaiVector aut_act(const MukaiMap& iso, const ComplexMukaiVector& om, const NSLattice& lat);
/// aut_act(Φ, g·Ω) == g·aut_act(Φ, Ω), exactly.
bool commute_check(const MukaiMap& iso, const GLTildeElement& g, const ComplexMukaiVector& om, const NSLattice& lat);

} // namespace stabkit
