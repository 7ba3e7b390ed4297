#pragma once
// Independent reference implementations used only by the tests. Everything
// here is deliberately naive: plain addition recurrences, trial division,
// exhaustive search. Never call library code from this header.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace oracle {

inline mpz_class fib(uint64_t n) {
    mpz_class a = 0, b = 1;
    for (uint64_t i = 0; i < n; ++i) {
        mpz_class c = a + b;
        a = b;
        b = c;
    }
    return a;
}

inline mpz_class lucas(uint64_t n) {
    mpz_class a = 2, b = 1;
    for (uint64_t i = 0; i < n; ++i) {
        mpz_class c = a + b;
        a = b;
        b = c;
    }
    return a;
}

inline mpz_class mersenne(uint64_t n) {
    mpz_class m = 1;
    m <<= n;
    return m - 1;
}

// Prime factors with multiplicity, ascending, by trial division.
inline std::vector<uint64_t> trial_factor(uint64_t n) {
    std::vector<uint64_t> out;
    for (uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            out.push_back(p);
            n /= p;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

inline int omega(uint64_t n) {
    return n == 1 ? 0 : static_cast<int>(trial_factor(n).size());
}

inline bool is_prime(uint64_t n) {
    if (n < 2) return false;
    return trial_factor(n).size() == 1;
}

// Minimal-u solution of t^2 - D u^2 = 4 with u in [1, u_cap]; (0, 0) if none
// exists in that range.
inline std::pair<mpz_class, mpz_class> pell4_brute(const mpz_class& D, uint64_t u_cap) {
    for (uint64_t u = 1; u <= u_cap; ++u) {
        mpz_class t2 = 4 + D * static_cast<unsigned long>(u) * static_cast<unsigned long>(u);
        if (mpz_perfect_square_p(t2.get_mpz_t())) {
            mpz_class t;
            mpz_sqrt(t.get_mpz_t(), t2.get_mpz_t());
            return {t, mpz_class(static_cast<unsigned long>(u))};
        }
    }
    return {0, 0};
}

}  // namespace oracle
