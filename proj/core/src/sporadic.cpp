#include "torbit/sporadic.hpp"

#include <cmath>
#include <stdexcept>

#include <gmpxx.h>

#include "torbit/beta.hpp"
#include "torbit/factor.hpp"

namespace torbit {

SigmaPair sigma_pair_from_string(const std::string& s) {
    if (s == "FF") return SigmaPair::FF;
    if (s == "LL") return SigmaPair::LL;
    if (s == "FL") return SigmaPair::FL;
    throw std::invalid_argument("unknown sequence pair '" + s + "' (expected FF, LL, or FL)");
}

std::string to_string(SigmaPair pair) {
    switch (pair) {
        case SigmaPair::FF: return "FF";
        case SigmaPair::LL: return "LL";
        case SigmaPair::FL: return "FL";
    }
    throw std::logic_error("unreachable sigma pair");
}

namespace {

void pair_members(SigmaPair pair, uint64_t n, mpz_class& a, mpz_class& b) {
    switch (pair) {
        case SigmaPair::FF:
            mpz_fib_ui(a.get_mpz_t(), n);
            mpz_fib_ui(b.get_mpz_t(), n + 2);
            return;
        case SigmaPair::LL:
            mpz_lucnum_ui(a.get_mpz_t(), n);
            mpz_lucnum_ui(b.get_mpz_t(), n + 2);
            return;
        case SigmaPair::FL:
            mpz_fib_ui(a.get_mpz_t(), n);
            mpz_lucnum_ui(b.get_mpz_t(), n);
            return;
    }
    throw std::logic_error("unreachable sigma pair");
}

bool below_deterministic_range(const mpz_class& v) {
    return mpz_sizeinbase(v.get_mpz_t(), 2) <= 64;
}

}  // namespace

SigmaSearchResult search_sigma(SigmaPair pair, uint64_t n_bound) {
    if (n_bound < 2) throw std::domain_error("search_sigma: n_bound must be >= 2");
    SigmaSearchResult result;
    result.pair = pair;
    result.R = 2;
    result.n_bound = n_bound;
    result.prediction = naive_nmax(2, 2);
    bool all_deterministic = true;

    mpz_class a, b;
    for (uint64_t n = 1; n <= n_bound; ++n) {
        pair_members(pair, n, a, b);
        bool pa = probable_prime(a);
        bool pb = probable_prime(b);
        if (pa && pb) {
            // independent re-verification with a different base set
            if (!probable_prime_alt(a) || !probable_prime_alt(b))
                throw std::runtime_error(
                    "search_sigma: probable-prime disagreement between base sets at n = " +
                    std::to_string(n));
            result.hits.push_back(n);
            if (!below_deterministic_range(a) || !below_deterministic_range(b))
                all_deterministic = false;
        } else if (pair == SigmaPair::FL && (pa || pb)) {
            result.one_prime_indices.push_back(n);
        }
    }
    result.certification_level = all_deterministic ? "deterministic" : "probable";
    return result;
}

double naive_nmax(int R, int k) {
    if (k < 2)
        throw std::domain_error(
            "naive_nmax: k must be >= 2 (beta_1 = 0, so for k = 1 the largest "
            "almost-prime index is unbounded almost surely)");
    if (R < 0) throw std::domain_error("naive_nmax: R must be >= 0");
    return std::exp(static_cast<double>(R) / solve_beta(k).beta);
}

}  // namespace torbit
