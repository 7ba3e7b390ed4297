#include "torbit/omega_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "torbit/factor.hpp"

namespace torbit {

NrTable count_by_omega(uint64_t T) {
    if (T < 2) throw std::domain_error("count_by_omega: T must be >= 2");
    uint64_t ceiling = sieve_ceiling();
    if (T > ceiling)
        throw std::runtime_error("count_by_omega: T " + std::to_string(T) +
                                 " exceeds the sieve ceiling " + std::to_string(ceiling) +
                                 " (raise TORBIT_SIEVE_CEILING)");

    // primes <= sqrt(T)
    uint64_t root = 1;
    while ((root + 1) * (root + 1) <= T) ++root;
    std::vector<uint64_t> base;
    {
        std::vector<bool> comp(root + 1, false);
        for (uint64_t i = 2; i <= root; ++i)
            if (!comp[i]) {
                base.push_back(i);
                for (uint64_t j = i * i; j <= root; j += i) comp[j] = true;
            }
    }

    NrTable table;
    table.T = T;
    table.counts.assign(65, 0);
    table.counts[0] = 1;  // the integer 1

    const uint64_t seg = uint64_t{1} << 20;
    std::vector<uint64_t> rem(seg);
    std::vector<uint8_t> cnt(seg);
    for (uint64_t lo = 2; lo <= T; lo += seg) {
        uint64_t hi = std::min(lo + seg - 1, T);
        uint64_t len = hi - lo + 1;
        for (uint64_t i = 0; i < len; ++i) rem[i] = lo + i;
        std::fill(cnt.begin(), cnt.begin() + len, 0);
        for (uint64_t p : base) {
            if (p * p > hi) break;
            for (uint64_t m = (lo + p - 1) / p * p; m <= hi; m += p) {
                uint64_t i = m - lo;
                do {
                    rem[i] /= p;
                    ++cnt[i];
                } while (rem[i] % p == 0);
            }
        }
        for (uint64_t i = 0; i < len; ++i) {
            unsigned r = cnt[i] + (rem[i] > 1 ? 1 : 0);
            ++table.counts[r];
        }
    }
    while (table.counts.size() > 1 && table.counts.back() == 0) table.counts.pop_back();
    return table;
}

double nr_naive(uint64_t T, int r) {
    if (T < 3) throw std::domain_error("nr_naive: T must be >= 3");
    if (r < 1) throw std::domain_error("nr_naive: r must be >= 1");
    double logT = std::log(static_cast<double>(T));
    double llT = std::log(logT);
    double term = static_cast<double>(T) / logT;
    for (int i = 1; i < r; ++i) term *= llT / i;
    return term;
}

NuValue nu(double z, uint64_t P) {
    if (!(z > 0.0) || z > 1.5)
        throw std::domain_error("nu: z must lie in (0, 3/2]");
    if (P < 2) throw std::domain_error("nu: truncation prime must be >= 2");

    double log_prod = 0.0;
    auto accumulate = [&](uint64_t p) {
        double pd = static_cast<double>(p);
        log_prod += -std::log1p(-z / pd) + z * std::log1p(-1.0 / pd);
    };
    if (P <= kTrialDivisionBound) {
        for (uint32_t p : trial_primes()) {
            if (p > P) break;
            accumulate(p);
        }
    } else {
        std::vector<bool> comp(P + 1, false);
        for (uint64_t i = 2; i * i <= P; ++i)
            if (!comp[i])
                for (uint64_t j = i * i; j <= P; j += i) comp[j] = true;
        for (uint64_t i = 2; i <= P; ++i)
            if (!comp[i]) accumulate(i);
    }
    double logP = std::log(static_cast<double>(P));
    double correction = z * (z - 1.0) / (2.0 * static_cast<double>(P) * logP);

    NuValue out;
    out.z = z;
    out.truncation_prime = P;
    out.value = std::exp(log_prod + correction) / std::tgamma(z + 1.0);
    out.tail_bound = 2.0 * std::fabs(z) * (std::fabs(z) + 1.0) /
                     (static_cast<double>(P) * logP);
    return out;
}

double nr_selberg(uint64_t T, int r) {
    if (T < 3) throw std::domain_error("nr_selberg: T must be >= 3");
    double llT = std::log(std::log(static_cast<double>(T)));
    if (r < 1 || static_cast<double>(r) > 1.5 * llT)
        throw std::domain_error("nr_selberg: r outside the uniformity range [1, (3/2) log log T]");
    if (r == 1) return nr_naive(T, 1);  // nu(0+) = 1 exactly
    double z = static_cast<double>(r - 1) / llT;
    return nr_naive(T, r) * nu(z).value;
}

mpq_class single_draw_prob_exact(uint64_t T, int k, int R) {
    if (k < 1) throw std::domain_error("single_draw_prob_exact: k must be >= 1");
    if (R < 0) throw std::domain_error("single_draw_prob_exact: R must be >= 0");
    NrTable table = count_by_omega(T);

    // Per-coordinate counts may be truncated at R (an omega above R can never
    // occur inside a sum <= R), but the k-fold sum itself supports values up to
    // k * (counts.size() - 1), so the accumulator must widen as coordinates join.
    const size_t cap = static_cast<size_t>(R) + 1;
    const size_t cwidth = std::min(table.counts.size(), cap);
    std::vector<mpz_class> counts(cwidth);
    for (size_t r = 0; r < cwidth; ++r) counts[r] = table.counts[r];

    std::vector<mpz_class> conv = counts;  // k = 1
    for (int j = 2; j <= k; ++j) {
        const size_t width = std::min(conv.size() + cwidth - 1, cap);
        std::vector<mpz_class> next(width, mpz_class(0));
        for (size_t s = 0; s < width; ++s) {
            const size_t lo = s >= cwidth ? s - cwidth + 1 : 0;
            const size_t hi = std::min(s, conv.size() - 1);
            for (size_t i = lo; i <= hi; ++i) next[s] += conv[i] * counts[s - i];
        }
        conv.swap(next);
    }
    mpz_class numerator = 0;
    for (const auto& c : conv) numerator += c;
    mpz_class denominator;
    mpz_ui_pow_ui(denominator.get_mpz_t(), T, static_cast<unsigned long>(k));
    mpq_class result(numerator, denominator);
    result.canonicalize();
    return result;
}

}  // namespace torbit
