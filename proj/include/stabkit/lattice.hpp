#pragma once

// Exact arithmetic on the extended Néron–Severi lattice
// N = Z ⊕ NS ⊕ Z with the signed Mukai pairing
//   <(r,l,s),(r',l',s')> = l.l' - r s' - r' s.

#include "stabkit/numeric.hpp"

#include <compare>
#include <optional>
#include <vector>

namespace stabkit {

struct MukaiVector {
    long long r = 0;
    IVec l;
    long long s = 0;

    friend auto operator<=>(const MukaiVector&, const MukaiVector&) = default;
    friend bool operator==(const MukaiVector&, const MukaiVector&) = default;
};

struct QMukaiVector {
    Rational r;
    QVec l;
    Rational s;

    static QMukaiVector from(const MukaiVector& v);
    bool is_zero() const;
    friend bool operator==(const QMukaiVector&, const QMukaiVector&) = default;
};

QMukaiVector operator+(const QMukaiVector& a, const QMukaiVector& b);
QMukaiVector operator*(const Rational& c, const QMukaiVector& a);

/// A class in N ⊗ C, e.g. exp(B + iω).
struct ComplexMukaiVector {
    QMukaiVector re;
    QMukaiVector im;

    ComplexMukaiVector conj() const;
    /// Multiplication by the complex scalar c.
    ComplexMukaiVector times(const QComplex& c) const;
    friend bool operator==(const ComplexMukaiVector&, const ComplexMukaiVector&) = default;
};

std::string to_string(const MukaiVector& v);

/// Generators and invariant factors of the discriminant group N*/N.
struct DiscriminantGroup {
    std::vector<long long> invariants;   // the d_k > 1 of the Smith normal form
    std::vector<QVec> generators;        // N-coordinates of generators x_k of order d_k
};

class NSLattice {
public:
    /// Validates: symmetric even Gram matrix of signature (1, ρ-1), ample_ref of
    /// positive square, declared curves of square -2.
    static NSLattice create(std::vector<IVec> gram, QVec ample_ref, std::vector<IVec> neg2_curves = {});

    int rank() const { return static_cast<int>(gram_.size()); }
    long long gram(int i, int j) const { return gram_[i][j]; }
    const std::vector<IVec>& gram_matrix() const { return gram_; }
    const QVec& ample_ref() const { return ample_ref_; }
    const std::vector<IVec>& neg2_curves() const { return curves_; }
    const DiscriminantGroup& discriminant() const { return disc_; }

    long long dot(const IVec& x, const IVec& y) const;
    Rational dot(const QVec& x, const QVec& y) const;
    Rational dot(const QVec& x, const IVec& y) const;

    /// Rank of N, i.e. ρ + 2.
    int mukai_rank() const { return rank() + 2; }
    /// Gram matrix of the Mukai pairing in the basis (1,0,0), (0,e_i,0), (0,0,1).
    std::vector<IVec> mukai_gram() const;

    void check_dim(const IVec& x) const;
    void check_dim(const QVec& x) const;

private:
    std::vector<IVec> gram_;
    QVec ample_ref_;
    std::vector<IVec> curves_;
    DiscriminantGroup disc_;
};

/// Number of positive and negative eigenvalues of a symmetric rational matrix,
/// by exact congruence diagonalization. `degenerate` is set if it is singular.
struct Signature {
    int positive = 0;
    int negative = 0;
    bool degenerate = false;
};
Signature signature(const std::vector<std::vector<Rational>>& sym);

long long mukai_pairing(const MukaiVector& v, const MukaiVector& w, const NSLattice& lat);
Rational mukai_pairing(const QMukaiVector& v, const QMukaiVector& w, const NSLattice& lat);
/// <Ω, v> = <re, v> + i <im, v>
QComplex mukai_pairing(const ComplexMukaiVector& om, const MukaiVector& v, const NSLattice& lat);
long long square(const MukaiVector& v, const NSLattice& lat);

ComplexMukaiVector exp_class(const QVec& B, const QVec& omega, const NSLattice& lat);

/// Box |r| <= r, |l_i| <= l, |s| <= s used for all enumerations of classes.
struct DeltaBox {
    long long r = 0, l = 0, s = 0;

    static DeltaBox cube(long long b) { return {b, b, b}; }
    bool contains(const MukaiVector& v) const;
    DeltaBox hull(const DeltaBox& o) const;
};

struct DeltaList {
    std::vector<MukaiVector> classes; // lexicographic in (r, l, s)
    bool truncated = true;            // Δ is infinite; a box never certifies completeness
};

DeltaList enumerate_delta(const NSLattice& lat, const DeltaBox& box);

bool positive_plane_check(const ComplexMukaiVector& om, const NSLattice& lat);

enum class Orientation { plus, minus };
Orientation orientation_component(const ComplexMukaiVector& om, const NSLattice& lat);

struct P0Result {
    enum class Kind { inside, outside, not_plus };
    Kind kind = Kind::not_plus;
    std::optional<MukaiVector> witness;
    bool truncated = true;
};
P0Result p0_membership(const ComplexMukaiVector& om, const NSLattice& lat, const DeltaBox& box);

/// s_δ(v) = v + <v,δ> δ
MukaiVector reflection(const MukaiVector& delta, const MukaiVector& v, const NSLattice& lat);
/// exp(B)·v for an integral class B
MukaiVector tensor_line_bundle(const IVec& B, const MukaiVector& v, const NSLattice& lat);

IVec to_coords(const MukaiVector& v);
MukaiVector from_coords(const IVec& c, const NSLattice& lat);
QVec to_coords(const QMukaiVector& v);
QMukaiVector from_coords(const QVec& c, const NSLattice& lat);

/// An endomorphism of N given by the images of the basis vectors
/// (1,0,0), (0,e_1,0), ..., (0,e_ρ,0), (0,0,1).
using MukaiMap = std::vector<MukaiVector>;

MukaiMap identity_map(const NSLattice& lat);
MukaiMap reflection_map(const MukaiVector& delta, const NSLattice& lat);
MukaiMap tensor_map(const IVec& B, const NSLattice& lat);
MukaiVector apply(const MukaiMap& m, const MukaiVector& v, const NSLattice& lat);
QMukaiVector apply(const MukaiMap& m, const QMukaiVector& v, const NSLattice& lat);
/// Exact inverse over Q; throws for singular maps.
std::vector<QVec> inverse_matrix(const MukaiMap& m, const NSLattice& lat);

bool is_mukai_isometry(const MukaiMap& images, const NSLattice& lat);
/// True iff the isometry acts trivially on N*/N.
bool gamma_membership(const MukaiMap& isometry, const NSLattice& lat);

/// Smith normal form D = U·A·V of a square integer matrix; returns the
/// diagonal and V.
struct SmithForm {
    std::vector<long long> diagonal;
    std::vector<IVec> V;
};
SmithForm smith_normal_form(const std::vector<IVec>& A);

/// Ampleness evidence for ω: positive square, same cone component as
/// ample_ref, positive on every declared (-2)-curve. `complete` only for ρ = 1.
struct AmpleCertificate {
    bool positive_square = false;
    bool reference_side = false;
    bool positive_on_curves = false;
    bool complete = false;
    bool ok() const { return positive_square && reference_side && positive_on_curves; }
};
AmpleCertificate certify_ample(const QVec& omega, const NSLattice& lat);

} // namespace stabkit
