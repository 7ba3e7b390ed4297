#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "torbit/factor.hpp"
#include "torbit/orbits.hpp"

namespace torbit {

// The real quadratic irrational (P + sqrt(D)) / Q.
struct SurdSpec {
    mpz_class P;
    mpz_class Q;
    mpz_class D;
    bool operator==(const SurdSpec&) const = default;
};

// Validates D > 0 non-square, Q != 0, and normalizes so that Q | D - P^2
// (multiplying P, Q, D by |Q| / Q^2 as needed); value is unchanged.
SurdSpec make_surd(const mpz_class& P, const mpz_class& Q, const mpz_class& D);

struct CFExpansion {
    SurdSpec surd;                      // normalized input
    std::vector<mpz_class> preperiod;   // a_0 .. a_k (possibly empty)
    std::vector<mpz_class> period;      // nonempty, minimal
};

// Exact continued-fraction expansion with the period detected by the first
// (P,Q)-state repeat. Throws std::domain_error for rational input (square D).
CFExpansion cf_expand(const SurdSpec& surd);

struct Convergent {
    uint64_t n = 0;
    mpz_class p, q;
};

// Convergents p_n/q_n for n = 0..n_max via the exact matrix recursion.
std::vector<Convergent> convergents(const CFExpansion& cf, uint64_t n_max);

struct SurdOrbitDecomposition {
    Mat2Q gamma;  // integral, det = (-1)^(period length)
    std::vector<std::pair<mpz_class, mpz_class>> reps;  // one (p,q) per period phase
};

// gamma = (preperiod product) * (period product) * (preperiod product)^{-1};
// verifies the shift property gamma * (p_n, q_n) = (p_{n+l}, q_{n+l}) on all
// checked indices (throws std::runtime_error on violation).
SurdOrbitDecomposition surd_orbit_decomposition(const CFExpansion& cf);

// Indefinite binary quadratic form A x^2 + B xy + C y^2.
struct QuadForm {
    mpz_class A, B, C;
    mpz_class discriminant() const { return B * B - 4 * A * C; }
};

// Minimal positive solution (t, u) of t^2 - D u^2 = 4 for D > 0 non-square,
// from the continued-fraction expansion of (D mod 2 + sqrt(D)) / 2 and of
// sqrt(D). Throws std::runtime_error if the safety horizon is exhausted.
std::pair<mpz_class, mpz_class> pell4_fundamental(const mpz_class& D);

// gamma_Q = [[(t - Bu)/2, -Cu], [Au, (t + Bu)/2]] for the fundamental (t,u);
// verified symbolically to preserve the form; det = 1.
Mat2Q automorph(const QuadForm& form);

// All solutions of Q(x,y) = t with |x|,|y| <= height, reduced under the
// action of <gamma_Q, -I> (merging only when a power maps one solution to
// another inside the box), one canonical representative per detected orbit:
// minimal sup-norm, ties broken by |x|, |y|, then nonnegative signs.
// t must be square-free unless allow_non_squarefree is set.
std::vector<std::pair<mpz_class, mpz_class>> quadric_orbit_reps(
    const QuadForm& form, const mpz_class& t, const mpz_class& height,
    bool allow_non_squarefree = false);

struct SurdSeriesRow {
    uint64_t n = 0;
    mpz_class p, q;
    OmegaEstimate omega;                 // of |p_n q_n|, protocol-based
    std::optional<double> ratio;         // Omega / log n (n >= 2)
    std::optional<double> running_min;   // over ratios of rows with Omega >= 1
    std::optional<double> loglog_pq;     // log log |p_n q_n| when |p_n q_n| > e
};

// The Omega(p_n q_n) / log n series for n = 2..n_max; rows with p_n q_n = 0
// are skipped.
std::vector<SurdSeriesRow> surd_ratio_series(const SurdSpec& surd, uint64_t n_max,
                                             uint64_t omega_budget = kDefaultRhoBudget);

}  // namespace torbit
