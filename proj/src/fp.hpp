#pragma once

// Linear algebra over F_p used by the quiver model. Vectors of F_p^d are
// encoded as integers Σ v_j p^j.

#include <cstdint>
#include <vector>

namespace stabkit::detail {

using Code = std::uint32_t;
using Row = std::vector<std::uint8_t>;

std::uint8_t inv_mod(std::uint8_t a, int p);

Code encode(const std::uint8_t* v, int d, int p);
void decode(Code c, int d, int p, std::uint8_t* out);
Code power(int p, int d);

struct Subspace {
    int dim = 0;
    std::vector<Code> basis;
    std::vector<std::uint64_t> bits; // membership over all p^d codes

    bool contains(Code c) const { return (bits[c >> 6] >> (c & 63)) & 1; }
};

struct SubspaceCatalog {
    int p = 2;
    int d = 0;
    std::vector<Subspace> spaces; // ordered by dimension, index 0 is {0}, last is F_p^d
};

/// Shared, lazily built catalog of all subspaces of F_p^d. Throws a resource
/// error when the catalog would exceed the supported size.
const SubspaceCatalog& subspace_catalog(int p, int d);

/// Rank of the given rows (each of equal length) over F_p.
int rank_mod(std::vector<Row> rows, int p);
/// A basis of {x : A x = 0} for A given by rows with `cols` columns.
std::vector<Row> nullspace_mod(std::vector<Row> rows, int cols, int p);

} // namespace stabkit::detail
