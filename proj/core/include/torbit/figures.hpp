#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "torbit/factor.hpp"
#include "torbit/orbits.hpp"

namespace torbit {

struct ReferenceLine {
    int k = 0;
    double value = 0.0;
    std::string label;  // e.g. "beta_2"
};

struct FigurePoint {
    uint64_t n = 0;
    double ratio = 0.0;
    std::string marker_class;  // "even" / "odd"
};

struct FigureDataset {
    std::string orbit_label;
    std::string denominator;  // "loglog_xy" or "log_n"
    std::vector<FigurePoint> points;
    std::vector<ReferenceLine> reference_lines;
    uint64_t zero_skipped = 0;
    uint64_t guard_skipped = 0;  // points below the log log > 0.05 start guard
    uint64_t unresolved_points = 0;
    uint64_t unresolved_composites = 0;
    std::string notes;
};

// Ratio-vs-n dataset for an orbit, with horizontal beta_k reference lines.
// Points start at the first n with log log|xy| > 0.05 (or log n > 0.05 when
// log_n_denominator is set, matching the one figure that divides by log n).
FigureDataset ratio_series_figure(const OrbitSpec& spec, uint64_t n_max,
                                  const std::vector<int>& beta_lines,
                                  uint64_t omega_budget = kDefaultRhoBudget,
                                  const std::vector<FactorTable>* tables = nullptr,
                                  bool log_n_denominator = false);

// Largest orbit index whose coordinate values this artifact factors unassisted
// (full rho budget); beyond it, ingested factor tables are required.
inline constexpr uint64_t kSelfFactorableNmax = 300;

// Built-in recipes 1..6:
//   1 fibonacci_lucas        /loglog, beta_2
//   2 consecutive_fibonacci  /loglog, beta_3
//   3 consecutive_lucas      /loglog, beta_2
//   4 fibonacci_lucas        /loglog, beta_2 + beta_3, even/odd markers
//   5 even_fibonacci         /loglog, beta_4 + beta_5
//   6 consecutive_mersenne   /log n,  beta_3
// For n_max > kSelfFactorableNmax the required sequence indices must be
// covered by the supplied tables; missing indices raise std::runtime_error
// listing them.
FigureDataset reproduce_figure(int figure_id, const std::vector<FactorTable>& tables,
                               uint64_t n_max);

}  // namespace torbit
