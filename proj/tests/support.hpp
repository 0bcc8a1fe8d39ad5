#pragma once

#include "stabkit/lattice.hpp"

#include <random>

namespace stabkit::testing {

inline NSLattice lattice_h2() { return NSLattice::create({{2}}, {1}); }

inline NSLattice lattice_diag2() { return NSLattice::create({{2, 0}, {0, -2}}, {1, 0}, {{0, 1}}); }

inline NSLattice lattice_hyperbolic() { return NSLattice::create({{0, 1}, {1, 0}}, {1, 1}); }

class Rng {
public:
    explicit Rng(unsigned long long seed) : gen_(seed) {}

    long long uniform(long long lo, long long hi) { return std::uniform_int_distribution<long long>(lo, hi)(gen_); }

    IVec ivec(int n, long long bound) {
        IVec v(n);
        for (auto& x : v) x = uniform(-bound, bound);
        return v;
    }

    Rational rational(long long num_bound, long long den_max) {
        return make_rational(uniform(-num_bound, num_bound), uniform(1, den_max));
    }

    QVec qvec(int n, long long num_bound, long long den_max) {
        QVec v;
        for (int i = 0; i < n; ++i) v.push_back(rational(num_bound, den_max));
        return v;
    }

    MukaiVector mukai(int rank, long long bound) { return {uniform(-bound, bound), ivec(rank, bound), uniform(-bound, bound)}; }

    std::mt19937_64& engine() { return gen_; }

private:
    std::mt19937_64 gen_;
};

} // namespace stabkit::testing
