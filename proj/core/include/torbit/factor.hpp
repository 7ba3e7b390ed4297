#pragma once
// Prime-factorization services: sieved smallest-prime-factor tables for exact
// Omega on machine integers, BPSW-style probable-prime testing, budgeted
// big-integer factorization (trial division + Brent's rho), the
// unresolved-composite-counts-as-two protocol, and factor-table ingestion.

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace torbit {

// Max admissible sieve size (applies to build_spf limits and count_by_omega T).
// Overridable via the TORBIT_SIEVE_CEILING environment variable.
uint64_t sieve_ceiling();
inline constexpr uint64_t kDefaultSieveCeiling = 100000000;  // 1e8

// Default per-cofactor rho iteration budget; one doubling is attempted before
// a cofactor is declared unresolved.
inline constexpr uint64_t kDefaultRhoBudget = uint64_t{1} << 22;

// Trial-division bound: unresolved cofactors therefore exceed 1e12, making the
// count-as-two protocol a genuine lower bound.
inline constexpr uint32_t kTrialDivisionBound = 1000000;

// Shared ascending list of primes <= kTrialDivisionBound (built once, lazily).
const std::vector<uint32_t>& trial_primes();

// ---------------------------------------------------------------------------
// Smallest-prime-factor table
// ---------------------------------------------------------------------------
struct SpfTable {
    uint64_t limit = 0;
    std::vector<uint32_t> spf;  // spf[n] for 0 <= n <= limit; spf[p] = p for prime p

    uint32_t operator[](uint64_t n) const { return spf[n]; }
};

// Segmented construction; rejects limits beyond sieve_ceiling() with a
// diagnostic naming the required budget.
SpfTable build_spf(uint64_t limit);

// Omega(n) = number of prime factors with multiplicity; Omega(1) = 0.
int omega_small(uint64_t n, const SpfTable& t);

// ---------------------------------------------------------------------------
// Probable-prime testing
// ---------------------------------------------------------------------------
// Strong-pseudoprime test to the twelve bases {2,3,5,7,11,13,17,19,23,29,31,37}
// (deterministic for n < 2^64), combined with a strong Lucas test with
// Selfridge parameters for larger n. n < 2 returns false.
bool probable_prime(const mpz_class& n);

// Independent re-verification path: disjoint bases {41,...,71} plus a strong
// Lucas test using the next admissible discriminant past Selfridge's choice.
bool probable_prime_alt(const mpz_class& n);

// ---------------------------------------------------------------------------
// Budgeted factorization
// ---------------------------------------------------------------------------
struct FactorResult {
    mpz_class n;
    std::vector<mpz_class> prime_factors;  // ascending multiset
    std::vector<mpz_class> unresolved;     // ascending; composite, > 1e12
    bool fully_factored = true;

    int omega_known() const { return static_cast<int>(prime_factors.size()); }
};

// Trial division by primes <= 1e6, then recursive Brent rho with `budget`
// iterations per cofactor (doubled once before giving up). Budget exhaustion
// is not an error; resistant cofactors land in `unresolved`.
FactorResult factor_big(const mpz_class& n, uint64_t budget = kDefaultRhoBudget);

// Exact Omega for 64-bit integers (trial division + rho; always resolves).
int omega_u64(uint64_t x);

// min(Omega(x), cap+1) with early bailout -- the cheap event test
// "Omega(x) <= cap" for the Monte Carlo model. cap >= 0.
int omega_capped_u64(uint64_t x, int cap);

// ---------------------------------------------------------------------------
// External factor tables
// ---------------------------------------------------------------------------
// Line format: "<label> <index> <factor> <factor> ... [C<digits>]" with `#`
// comments; at most one C token per line (an unresolved composite cofactor of
// that decimal length). Labels F, L, M are reconstructible and
// integrity-checked on ingestion; other labels are accepted unchecked.
struct FactorTableEntry {
    uint64_t index = 0;
    std::vector<mpz_class> factors;
    std::optional<int> cofactor_digits;
    mpz_class value;                // sequence value; 0 when not reconstructible
    mpz_class unresolved_cofactor;  // value / product(factors) when C present; else 0
};

struct FactorTable {
    std::string label;
    std::map<uint64_t, FactorTableEntry> entries;

    // Value-indexed lookup (reconstructible entries only).
    const FactorTableEntry* find_by_value(const mpz_class& v) const;

  private:
    friend FactorTable ingest_factor_table(std::istream& in);
    std::unordered_multimap<uint64_t, uint64_t> by_hash_;  // value hash -> index
};

// F_n, L_n (L_0 = 2), M_n = 2^n - 1 for labels "F", "L", "M"; nullopt otherwise.
std::optional<mpz_class> sequence_value(const std::string& label, uint64_t index);

// Throws std::runtime_error on malformed lines or integrity failures, with
// the line number (and index, for product mismatches) in the message.
FactorTable ingest_factor_table(std::istream& in);

// ---------------------------------------------------------------------------
// The unresolved-composite protocol
// ---------------------------------------------------------------------------
struct OmegaEstimate {
    int value = 0;
    bool exact = true;
    int unresolved = 0;  // number of composites counted under the 2-per-cofactor rule
};

// Omega estimate for n: known factors from matching table entries (matched by
// value) are merged with factor_big output on the remainder; every cofactor
// still unresolved contributes exactly 2. exact <=> nothing unresolved (a
// non-exact value may undercount Omega).
OmegaEstimate omega_protocol(const mpz_class& n, uint64_t budget = kDefaultRhoBudget,
                             const std::vector<FactorTable>* tables = nullptr);

}  // namespace torbit
