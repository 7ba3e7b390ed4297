#pragma once

#include <cstdint>
#include <vector>

#include <gmpxx.h>

namespace torbit {

// Exact table of N_r(T) = #{1 <= x <= T : Omega(x) = r}, indexed by r.
struct NrTable {
    uint64_t T = 0;
    std::vector<uint64_t> counts;  // counts[r]; sum over r equals T
};

// Truncated Euler-product value of nu(z) with an explicit tail bound.
struct NuValue {
    double z = 0.0;
    double value = 0.0;
    uint64_t truncation_prime = 0;
    double tail_bound = 0.0;
};

inline constexpr uint64_t kDefaultNuTruncation = 100000;

// Exact counts of integers in [1,T] by Omega, via a segmented sieve.
// Throws when T exceeds the sieve ceiling (see TORBIT_SIEVE_CEILING).
NrTable count_by_omega(uint64_t T);

// (T/log T) * (log log T)^(r-1) / (r-1)!. Requires T >= 3, r >= 1.
double nr_naive(uint64_t T, int r);

// 1/Gamma(z+1) * prod_{p<=P} (1-z/p)^(-1) (1-1/p)^z, with a first-order
// tail correction beyond P and a conservative reported tail bound.
// Requires 0 < z <= 3/2.
NuValue nu(double z, uint64_t P = kDefaultNuTruncation);

// Sathe-Selberg main term nr_naive(T,r) * nu((r-1)/log log T).
// Requires T >= 3 and 1 <= r <= (3/2) log log T.
double nr_selberg(uint64_t T, int r);

// Exact probability that a uniform draw from [1,T]^k has
// Omega(x_1 ... x_k) <= R, as a canonical rational:
// (1/T^k) * sum_{r_1+...+r_k <= R} prod_j N_{r_j}(T).
mpq_class single_draw_prob_exact(uint64_t T, int k, int R);

}  // namespace torbit
