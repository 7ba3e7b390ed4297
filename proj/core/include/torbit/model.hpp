#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace torbit {

inline constexpr uint64_t kDrawCap = (uint64_t{1} << 63) - 1;  // 2^63 - 1

// Counter-based generator: every draw is a pure function of
// (seed, trial, n, coordinate, attempt), so results are independent of
// execution order.
uint64_t counter_hash(uint64_t seed, uint64_t trial, uint64_t n, uint64_t coord,
                      uint64_t attempt);

struct RngState {
    uint64_t seed = 0;
    uint64_t trial = 0;
};

// Uniform integer in [1, bound] by rejection sampling on bit_width(bound)-wide
// words from the counter stream. bound = 1 returns 1 without consuming draws.
uint64_t uniform_draw(const RngState& state, uint64_t n, uint64_t coord, uint64_t bound);

struct ModelConfig {
    int k = 1;
    std::string C = "2";              // exact rational > 1: "1.03", "103/100", "2"
    std::vector<std::string> C_list;  // optional per-coordinate growth bases (size k)
    uint64_t n_max = 1;
    uint64_t seed = 0;
    std::vector<int> R_list;
    uint64_t trials = 1;
};

// Parse a decimal or "num/den" string into an exact rational. Throws
// std::invalid_argument on malformed input.
mpq_class parse_rational(const std::string& text);

// Per-coordinate draw bounds floor(C_j^n) for n = 1..n_max, computed in exact
// integer arithmetic and saturated at 2^63 - 1; the first saturated index per
// coordinate is recorded.
struct DrawBounds {
    std::vector<std::vector<uint64_t>> bounds;             // [coord][n-1]
    std::vector<std::optional<uint64_t>> saturated_from;   // per coord
};
DrawBounds compute_bounds(const ModelConfig& config);

// One draw of the k coordinates at index n.
std::vector<uint64_t> draw_vector(uint64_t n, const ModelConfig& config,
                                  const DrawBounds& bounds, const RngState& state);

struct LiminfRecord {
    uint64_t n = 0;
    uint64_t trial = 0;
    int omega = 0;
    std::optional<double> ratio;        // Omega / log n, reported for n >= 2
    std::optional<double> running_min;  // over ratios of draws with Omega >= 1
};

struct ModelRun {
    ModelConfig config;
    std::vector<LiminfRecord> records;  // trials * n_max records, trial-major
    uint64_t zero_omega_draws = 0;      // draws with Omega = 0 (excluded from the minimum)
    double beta_k = 0.0;
};

// The liminf experiment: `trials` independent trajectories of n = 1..n_max
// draws each, with exact Omega per draw and the per-trajectory running
// minimum of Omega / log n.
ModelRun run_liminf(const ModelConfig& config);

struct NmaxSamples {
    int R = 0;
    std::vector<uint64_t> samples;  // per trial: largest n with Omega <= R;
                                    // 0 if none; n_max + 1 when censored
    uint64_t censored = 0;
    std::optional<double> tail_slope;  // log-log slope of the per-index success
                                       // frequency P[Omega of the draw at t <= R]
                                       // over t in [20, min(200, n_max)]; the
                                       // max-index distribution itself stays
                                       // inspectable through `samples`
};

// The n(R) tail experiment. Requires R >= config.k.
NmaxSamples run_nmax(const ModelConfig& config, int R);

// Regression slope of log(frequency of sample == t) against log t over
// t in [t_lo, t_hi]; nullopt when fewer than two populated indices exist.
std::optional<double> tail_slope(const std::vector<uint64_t>& samples, uint64_t t_lo,
                                 uint64_t t_hi);

struct ComparisonRecord {
    uint64_t T = 0;
    int k = 0;
    int R = 0;
    uint64_t samples = 0;
    mpq_class exact;
    std::optional<double> frequency;
    std::optional<double> deviation;
    std::optional<double> z_score;
};

// Bridge between the Monte Carlo draws and the exact convolution oracle:
// empirical frequency of Omega(x_1...x_k) <= R over `samples` uniform draws
// from [1,T]^k versus the exact probability.
ComparisonRecord empirical_vs_exact(uint64_t T, int k, int R, uint64_t samples,
                                    uint64_t seed);

}  // namespace torbit
