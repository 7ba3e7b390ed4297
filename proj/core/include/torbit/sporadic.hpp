#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace torbit {

enum class SigmaPair { FF, LL, FL };

SigmaPair sigma_pair_from_string(const std::string& s);  // throws on unknown
std::string to_string(SigmaPair pair);

struct SigmaSearchResult {
    SigmaPair pair;
    int R = 2;
    uint64_t n_bound = 0;
    std::vector<uint64_t> hits;  // ascending
    double prediction = 0.0;     // exp(R / beta_2)
    std::string certification_level;  // "deterministic" below 2^64, else "probable"
    std::vector<uint64_t> one_prime_indices;  // FL only: exactly one member prime
};

// Indices n <= n_bound where both members of the pair are (probable) primes:
//   FF: (F_n, F_{n+2});  LL: (L_n, L_{n+2});  FL: (F_n, L_n).
// Every hit is re-verified with an independent second probable-prime test.
SigmaSearchResult search_sigma(SigmaPair pair, uint64_t n_bound);

// exp(R / beta_k). Requires k >= 2: for k = 1 the prediction diverges
// (beta_1 = 0; the largest almost-prime index is unbounded almost surely).
double naive_nmax(int R, int k);

}  // namespace torbit
