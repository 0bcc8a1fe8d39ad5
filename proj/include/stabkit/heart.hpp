#pragma once

// Exhaustive checks on rep(Q) up to a dimension bound: torsion pairs and
// tilts, the slicing metric, norms on charges, mass, deformation, and the
// Hom-vanishing principles of a stability condition.

#include "stabkit/quiver.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stabkit {

/// An isomorphism-closed class of representations, used as torsion part T.
class TorsionClass {
public:
    static TorsionClass all();
    static TorsionClass none();
    /// Representations supported on the given (0-based) vertices.
    static TorsionClass support(std::vector<int> vertices);
    /// P(φ, ∞) ∩ A: every HN phase is > φ.
    static TorsionClass phase_above(QuiverStability s, Phase phi);
    /// Direct sums of copies of P.
    static TorsionClass additive_hull(QuiverRep p);
    /// "all", "none", "support:2" (1-based vertices, comma separated),
    /// "phase-gt:1/2" (needs a stability), "add:<rep>".
    static TorsionClass parse(const Quiver& q, const std::string& text,
                              const std::optional<QuiverStability>& s = std::nullopt);

    bool contains(const QuiverRep& e, const Quiver& q) const;
    const std::string& name() const { return name_; }

private:
    enum class Kind { all, none, support, phase_above, additive_hull };
    Kind kind_ = Kind::all;
    std::string name_;
    std::vector<int> vertices_;
    std::optional<QuiverStability> stab_;
    std::optional<Phase> phi_;
    std::optional<QuiverRep> p_;
};

struct TorsionPairReport {
    bool ok = true;
    std::vector<QuiverRep> torsion; // nonzero members of T in the bound
    std::vector<QuiverRep> free;    // nonzero members of F = T^⊥ in the bound
    std::optional<QuiverRep> witness;
    std::string axiom; // "isomorphism-closure" or "decomposition" on failure
    std::size_t checked = 0;
};
/// F is computed as T^⊥ inside the bound; then every representation must
/// have a subobject in T with quotient in F.
TorsionPairReport torsion_pair_verify(const TorsionClass& t, const Quiver& q, const RepBound& bound);

struct TiltReport {
    bool ok = true;
    TorsionPairReport pair;
    bool hom_vanishing = true;   // Hom(T, F) = 0, i.e. Hom(A♯, A♯[-1]) = 0
    bool euler_consistent = true; // ext¹(T, F) from the Euler form equals the direct computation
    bool equals_heart = false;   // F = 0 within the bound, so A♯ = A
    bool equals_shift = false;   // T = 0 within the bound, so A♯ = A[1]
    std::size_t objects = 0;     // pairs (F[1], T) modelled
    std::string failure;
};
TiltReport tilt_heart_check(const TorsionClass& t, const Quiver& q, const RepBound& bound);

/// φ⁺ and φ⁻ of an object: phases of its first and last HN factors.
struct PhaseRange {
    Phase max = Phase::of_value(1);
    Phase min = Phase::of_value(1);
};
PhaseRange phase_range(const SubobjectLattice& lat, const QuiverStability& s);

/// A nonnegative phase difference upper - lower, compared exactly through
/// sums of phases.
struct Distance {
    Phase upper = Phase::of_value(1);
    Phase lower = Phase::of_value(1);
    std::optional<QuiverRep> witness;
    std::size_t objects = 0;
    bool truncated = true;

    PhaseGap value() const { return upper - lower; }
    /// upper - lower < eps
    bool less_than(const Rational& eps) const;
    std::string to_string() const;
};
/// Sign of a - b.
int compare(const Distance& a, const Distance& b);

/// sup over nonzero E in the bound of max(|φ_a⁺ - φ_b⁺|, |φ_a⁻ - φ_b⁻|).
Distance slicing_distance(const QuiverStability& a, const QuiverStability& b, const Quiver& q, const RepBound& bound);
/// inf{ε : b-semistable objects of phase φ lie in a[φ-ε, φ+ε]} on the same set.
Distance slicing_distance_inf(const QuiverStability& a, const QuiverStability& b, const Quiver& q,
                              const RepBound& bound);

/// A nonnegative real known exactly as a surd or only approximately.
struct NormValue {
    std::optional<Surd> exact;
    long double approx = 0;
    std::string to_string() const;
};
/// Sign of a - b; exact when both are.
int compare(const NormValue& a, const NormValue& b);

struct NormResult {
    NormValue squared; // ‖U‖²
    IVec witness;
    std::size_t classes = 0;
    bool truncated = true;
};
/// sup |U(E)|² / |Z(E)|² over classes of semistable E in the bound, with
/// U(E) = Σ u_i dims_i.
NormResult stability_norm(const std::vector<QComplex>& u, const QuiverStability& s, const Quiver& q,
                          const RepBound& bound);
/// ‖W - Z‖² for the charge W(E) = e^{iπ(w.shift - s.shift)} w.charge(E).
/// Exact when the rotation is a multiple of 1/4 or 1/6.
NormResult perturbation_norm(const QuiverStability& s, const QuiverStability& w, const Quiver& q,
                             const RepBound& bound);

struct MassResult {
    std::vector<Rational> factor_norms_squared;
    Rational charge_norm_squared; // |Z(E)|²
    std::optional<Surd> exact;    // when the factor moduli share one radicand
    long double approx = 0;
};
MassResult mass(const SubobjectLattice& lat, const QuiverStability& s);

enum class DeformationStatus { ok, violation, not_applicable };
std::string to_string(DeformationStatus s);

struct DeformationReport {
    DeformationStatus status = DeformationStatus::not_applicable;
    NormValue norm_squared;
    NormValue sin_squared; // sin²(πε)
    bool exact = true;     // the norm comparison used no floating point
    std::optional<Distance> distance;
};
/// Requires 0 < eps < 1/2. When ‖W - Z‖ < sin(πε), checks d(P_Z, P_W) < ε.
DeformationReport deformation_test(const QuiverStability& z, const QuiverStability& w, const Rational& eps,
                                   const Quiver& q, const RepBound& bound);

struct GPReport {
    bool ok = true;
    std::size_t hom_pairs = 0;       // semistable pairs with φ(E) > φ(F)
    std::size_t stable_pairs = 0;    // stable pairs of equal phase
    std::size_t endomorphisms = 0;   // stable objects with End a division ring
    std::size_t decompositions = 0;  // unstable objects split as A → E → B, Hom(A, B) = 0
    std::size_t semistable = 0;
    std::size_t stable = 0;
    std::string failure;
};
GPReport gp_principles_check(const QuiverStability& s, const Quiver& q, const RepBound& bound);

struct SliceReport {
    Phase center = Phase::of_value(1);
    std::vector<QuiverRep> semistable; // semistable objects with phase in (φ - η, φ + η)
    long long longest_chain = 0;       // longest strict chain inside P(φ - η, φ + η)
    long long length_bound = 0;        // largest total dimension met
};
struct LocalFinitenessReport {
    bool ok = true;
    bool discrete = true;
    std::vector<SliceReport> slices;
    std::string summary;
};
LocalFinitenessReport local_finiteness_probe(const QuiverStability& s, const Quiver& q, const Rational& eta,
                                             const RepBound& bound);

} // namespace stabkit
