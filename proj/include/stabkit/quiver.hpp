#pragma once

// Representations of an acyclic quiver over F_p: a finite length hereditary
// abelian category in which subobjects can be listed exhaustively.

#include "stabkit/numeric.hpp"
#include "stabkit/phase.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace stabkit {

class Quiver {
public:
    /// Vertices are 0..n-1, arrows (source, target). Throws on cycles, loops,
    /// out-of-range endpoints or p outside {2, 3, 5, 7}.
    static Quiver create(int vertices, std::vector<std::pair<int, int>> arrows, int p);

    int vertices() const { return n_; }
    int p() const { return p_; }
    const std::vector<std::pair<int, int>>& arrows() const { return arrows_; }

    friend bool operator==(const Quiver&, const Quiver&) = default;

private:
    int n_ = 0;
    int p_ = 2;
    std::vector<std::pair<int, int>> arrows_;
};

/// Entries in [0, p), row-major.
struct FpMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> a;

    static FpMatrix zero(int rows, int cols) { return {rows, cols, std::vector<std::uint8_t>(rows * cols, 0)}; }
    std::uint8_t at(int i, int j) const { return a[i * cols + j]; }
    std::uint8_t& at(int i, int j) { return a[i * cols + j]; }
    friend bool operator==(const FpMatrix&, const FpMatrix&) = default;
};

class QuiverRep {
public:
    /// maps[k] has shape dims[target] x dims[source] of arrow k.
    static QuiverRep create(const Quiver& q, IVec dims, std::vector<FpMatrix> maps);
    static QuiverRep zero(const Quiver& q);
    static QuiverRep simple(const Quiver& q, int vertex);

    const IVec& dims() const { return dims_; }
    const std::vector<FpMatrix>& maps() const { return maps_; }
    long long total() const;
    bool is_zero() const { return total() == 0; }
    /// "dims=[1,1];f=[[1]]" with one nested matrix per arrow, rows as lists.
    std::string to_string() const;

    friend bool operator==(const QuiverRep&, const QuiverRep&) = default;

private:
    IVec dims_;
    std::vector<FpMatrix> maps_;
};

QuiverRep direct_sum(const Quiver& q, const QuiverRep& e, const QuiverRep& f);
/// Parses the to_string() format; 1x1 matrices may be written as [[x]] or [x].
QuiverRep parse_rep(const Quiver& q, const std::string& text);

/// Bounds for exhaustive sweeps: dims[i] <= max_dims[i] and Σ dims <= max_total.
struct RepBound {
    IVec max_dims;
    long long max_total = 8;

    /// Per-vertex 3, total 8.
    static RepBound standard(const Quiver& q);
    static RepBound box(const IVec& max_dims);
};

/// Nonzero dimension vectors within the bound, in lexicographic order.
std::vector<IVec> dims_in_bound(const Quiver& q, const RepBound& bound);
/// Calls f on every representation with the given dimension vector. Throws a
/// resource error when there are more than 2^22 of them.
void for_each_rep(const Quiver& q, const IVec& dims, const std::function<void(const QuiverRep&)>& f);
std::vector<QuiverRep> reps_in_bound(const Quiver& q, const RepBound& bound);

/// Hereditary Euler form Σ d_i e_i - Σ_{a: i→j} d_i e_j.
long long euler_pairing(const IVec& d, const IVec& e, const Quiver& q);

/// One matrix per vertex, shaped F.dims[v] x E.dims[v].
using Morphism = std::vector<FpMatrix>;

struct HomSpace {
    int dim = 0;
    std::vector<Morphism> basis;
};
HomSpace hom_space(const QuiverRep& e, const QuiverRep& f, const Quiver& q);
/// dim Ext¹(E, F) as the cokernel of the commuting-square map.
int ext1_dim(const QuiverRep& e, const QuiverRep& f, const Quiver& q);
bool is_invertible(const Morphism& m, const Quiver& q);
/// Every nonzero element of the Hom space is an isomorphism. Throws a
/// resource error when the space has more than 2^16 elements.
bool nonzero_maps_invertible(const HomSpace& h, const Quiver& q);
bool is_isomorphic(const QuiverRep& e, const QuiverRep& f, const Quiver& q);
/// One representative of each isomorphism class in the bound, in
/// reps_in_bound order of first appearance.
std::vector<QuiverRep> iso_classes_in_bound(const Quiver& q, const RepBound& bound);

/// A subrepresentation, one subspace index per vertex into the F_p^{dims}
/// catalogs of the ambient representation.
struct Subrep {
    std::vector<int> space;
    IVec dims;
    long long total = 0;
};

/// All subrepresentations of E, ordered by total dimension, then dims, then
/// subspace indices. Index 0 is the zero subobject and the last one is E.
class SubobjectLattice {
public:
    static constexpr long long kDefaultMaxTotal = 8;

    /// Throws a resource error when Σ dims exceeds max_total.
    static SubobjectLattice build(const Quiver& q, const QuiverRep& e, long long max_total = kDefaultMaxTotal);

    const Quiver& quiver() const { return q_; }
    const QuiverRep& object() const { return e_; }
    std::size_t size() const { return subs_.size(); }
    const Subrep& operator[](std::size_t i) const { return subs_[i]; }
    const std::vector<Subrep>& subobjects() const { return subs_; }
    int zero() const { return 0; }
    int full() const { return static_cast<int>(subs_.size()) - 1; }

    /// inner ⊆ outer
    bool contains(int inner, int outer) const;
    /// upper / lower as a representation; requires lower ⊆ upper.
    QuiverRep subquotient(int lower, int upper) const;

private:
    Quiver q_;
    QuiverRep e_;
    std::vector<Subrep> subs_;
    std::vector<std::vector<std::uint64_t>> bits_;
};

std::vector<Subrep> subobjects(const QuiverRep& e, const Quiver& q);

/// z_i ∈ H ∪ R_{<0} for every vertex.
class HeartCharge {
public:
    static HeartCharge create(std::vector<QComplex> z);
    const std::vector<QComplex>& values() const { return z_; }
    std::size_t size() const { return z_.size(); }
    QComplex operator()(const IVec& dims) const;
    friend bool operator==(const HeartCharge&, const HeartCharge&) = default;

private:
    std::vector<QComplex> z_;
};

/// The stability condition with heart A = rep(Q) and charge z, with every
/// phase shifted by `shift` (a rotated or shifted slicing).
struct QuiverStability {
    HeartCharge charge;
    Rational shift = 0;

    /// Requires nonzero effective dims.
    Phase phase(const IVec& dims) const;
};

enum class Verdict { stable, semistable, unstable };
std::string to_string(Verdict v);

struct SemistabilityResult {
    Verdict verdict = Verdict::stable;
    Phase phase = Phase::of_value(1);
    /// Unstable: the maximal destabilizing subobject. Strictly semistable: a
    /// proper subobject of the same phase.
    std::optional<int> witness;
    IVec witness_dims;
};
SemistabilityResult is_semistable(const SubobjectLattice& lat, const QuiverStability& s);
SemistabilityResult is_semistable(const QuiverRep& e, const QuiverStability& s, const Quiver& q);

struct HNFactor {
    IVec dims;
    QComplex z;
    Phase phase;
};
struct HNResult {
    std::vector<int> chain; // subobject indices 0 = E_0 ⊂ … ⊂ E_n = E
    std::vector<HNFactor> factors;
};
/// Greedy filtration: repeatedly take the subobject of the remaining quotient
/// with maximal phase, then maximal total dimension. Throws for E = 0.
HNResult hn_filtration(const SubobjectLattice& lat, const QuiverStability& s);
HNResult hn_filtration(const QuiverRep& e, const QuiverStability& s, const Quiver& q);
/// The HN filtration of upper/lower, as a chain in the lattice of E.
std::vector<int> hn_chain(const SubobjectLattice& lat, const HeartCharge& z, int lower, int upper);

struct JHResult {
    std::vector<int> chain;
    std::vector<IVec> factors; // stable, all of phase `phase`
    Phase phase = Phase::of_value(1);
};
/// Throws ErrorKind::domain for unstable input.
JHResult jh_filtration(const SubobjectLattice& lat, const QuiverStability& s);

struct TorsionCut {
    int sub = 0;         // index of E' in the lattice
    QuiverRep torsion;   // E' ∈ P(> φ0)
    QuiverRep free_part; // E'' = E/E' ∈ P(≤ φ0)
};
TorsionCut torsion_cut(const SubobjectLattice& lat, const Phase& phi0, const QuiverStability& s);

} // namespace stabkit
