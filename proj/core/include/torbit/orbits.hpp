#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "torbit/factor.hpp"

namespace torbit {

// 2x2 matrix over the exact rationals.
struct Mat2Q {
    mpq_class a, b, c, d;  // [[a, b], [c, d]]

    static Mat2Q identity();
    Mat2Q operator*(const Mat2Q& rhs) const;
    bool operator==(const Mat2Q& rhs) const = default;
    mpq_class trace() const { return a + d; }
    mpq_class det() const { return a * d - b * c; }
    Mat2Q inverse() const;  // throws std::domain_error when det = 0
};

// True iff tr^2 - 4 det > 0 in exact arithmetic (two distinct real eigenvalues).
bool is_hyperbolic(const Mat2Q& gamma);

inline constexpr int kIntegralityHorizon = 50;

struct OrbitSpec {
    Mat2Q gamma;
    mpz_class v0x, v0y;
    std::string label;  // empty for anonymous specs
};

// Validates v0 != 0, hyperbolicity (unless overridden), nonzero determinant,
// and integrality of the first kIntegralityHorizon iterates.
OrbitSpec make_orbit_spec(const Mat2Q& gamma, const mpz_class& v0x, const mpz_class& v0y,
                          std::string label = "", bool allow_non_hyperbolic = false);

// Named orbits: fibonacci_lucas, consecutive_fibonacci, consecutive_lucas,
// even_fibonacci, consecutive_mersenne. Throws on unknown labels.
OrbitSpec named_orbit(const std::string& label);
const std::vector<std::string>& named_orbit_labels();

struct OrbitPoint {
    uint64_t n = 0;
    mpz_class x, y;
    mpz_class f_value;    // x * y
    OmegaEstimate omega;  // of |x*y|, via the unresolved-composite protocol
    std::optional<double> ratio;        // Omega / log log|xy|, present when log log|xy| > 0
    std::optional<double> running_min;  // over present ratios so far
    bool skipped = false;               // x*y = 0: no Omega, no ratio
};

struct OrbitSeries {
    OrbitSpec spec;
    std::vector<OrbitPoint> points;  // n = 0..n_max
    uint64_t zero_skipped = 0;       // points with x*y = 0
    uint64_t unresolved_points = 0;  // points whose Omega is protocol-censored
    uint64_t unresolved_composites = 0;
};

// Exact iteration v_{n+1} = gamma * v_n with a per-step integrality assertion.
// Omega is computed per coordinate (so per-sequence factor tables apply) and
// summed; Omega(|xy|) = Omega(|x|) + Omega(|y|).
OrbitSeries iterate_orbit(const OrbitSpec& spec, uint64_t n_max,
                          uint64_t omega_budget = kDefaultRhoBudget,
                          const std::vector<FactorTable>* tables = nullptr);

struct IdentityReport {
    uint64_t n_max = 0;
    uint64_t checks = 0;  // number of identities verified
};

// Exact verification for all n <= n_max of:
//   F_{2n} = F_n L_n;   L_n^2 - 5 F_n^2 = -4 (n odd) / +4 (n even);
//   M_{2n} = M_n (M_n + 2).
// Any failure throws std::runtime_error (fatal consistency error).
IdentityReport verify_identities(uint64_t n_max);

}  // namespace torbit
