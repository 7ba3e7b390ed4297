#include "torbit/figures.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>

#include "torbit/beta.hpp"

namespace torbit {

FigureDataset ratio_series_figure(const OrbitSpec& spec, uint64_t n_max,
                                  const std::vector<int>& beta_lines,
                                  uint64_t omega_budget,
                                  const std::vector<FactorTable>* tables,
                                  bool log_n_denominator) {
    OrbitSeries series = iterate_orbit(spec, n_max, omega_budget, tables);
    FigureDataset ds;
    ds.orbit_label = series.spec.label;
    ds.denominator = log_n_denominator ? "log_n" : "loglog_xy";
    ds.zero_skipped = series.zero_skipped;
    ds.unresolved_points = series.unresolved_points;
    ds.unresolved_composites = series.unresolved_composites;

    for (const OrbitPoint& pt : series.points) {
        if (pt.skipped) continue;
        double denom;
        if (log_n_denominator) {
            if (pt.n == 0) {
                ++ds.guard_skipped;
                continue;
            }
            denom = std::log(static_cast<double>(pt.n));
        } else {
            mpz_class av = abs(pt.f_value);
            signed long e2 = 0;
            double mant = mpz_get_d_2exp(&e2, av.get_mpz_t());
            double log_av = std::log(mant) + static_cast<double>(e2) * std::log(2.0);
            if (log_av <= 0.0) {
                ++ds.guard_skipped;
                continue;
            }
            denom = std::log(log_av);
        }
        if (denom <= 0.05) {
            ++ds.guard_skipped;
            continue;
        }
        FigurePoint fp;
        fp.n = pt.n;
        fp.ratio = static_cast<double>(pt.omega.value) / denom;
        fp.marker_class = (pt.n % 2 == 0) ? "even" : "odd";
        ds.points.push_back(std::move(fp));
    }
    for (int k : beta_lines) {
        BetaSolution sol = solve_beta(k);
        ds.reference_lines.push_back({k, sol.beta, "beta_" + std::to_string(k)});
    }
    if (ds.unresolved_points > 0)
        ds.notes = std::to_string(ds.unresolved_points) +
                   " points carry censored Omega values (each unresolved composite "
                   "contributes 2); the plotted ratios are lower bounds there";
    return ds;
}

namespace {

struct Recipe {
    const char* orbit;
    std::vector<int> betas;
    bool log_n;
};

const std::map<int, Recipe>& recipes() {
    static const std::map<int, Recipe> r = {
        {1, {"fibonacci_lucas", {2}, false}},
        {2, {"consecutive_fibonacci", {3}, false}},
        {3, {"consecutive_lucas", {2}, false}},
        {4, {"fibonacci_lucas", {2, 3}, false}},
        {5, {"even_fibonacci", {4, 5}, false}},
        {6, {"consecutive_mersenne", {3}, true}},
    };
    return r;
}

// (label, index) pairs of sequence values entering the product x_n * y_n.
void required_indices(const std::string& orbit, uint64_t n,
                      std::set<std::pair<std::string, uint64_t>>& out) {
    if (orbit == "fibonacci_lucas") {
        out.insert({"F", n + 1});
        out.insert({"L", n + 1});
    } else if (orbit == "consecutive_fibonacci") {
        out.insert({"F", n});
        out.insert({"F", n + 1});
    } else if (orbit == "consecutive_lucas") {
        out.insert({"L", n});
        out.insert({"L", n + 1});
    } else if (orbit == "even_fibonacci") {
        out.insert({"F", 2 * n});
        out.insert({"F", 2 * n + 2});
    } else {  // consecutive_mersenne
        out.insert({"M", n});
        out.insert({"M", n + 1});
    }
}

}  // namespace

FigureDataset reproduce_figure(int figure_id, const std::vector<FactorTable>& tables,
                               uint64_t n_max) {
    auto it = recipes().find(figure_id);
    if (it == recipes().end())
        throw std::invalid_argument("reproduce_figure: figure id must be in 1..6");
    const Recipe& rec = it->second;

    if (n_max > kSelfFactorableNmax) {
        std::set<std::pair<std::string, uint64_t>> required;
        for (uint64_t n = kSelfFactorableNmax + 1; n <= n_max; ++n)
            required_indices(rec.orbit, n, required);
        auto covered = [&](const std::pair<std::string, uint64_t>& key) {
            for (const FactorTable& t : tables) {
                if (t.label != key.first) continue;
                auto e = t.entries.find(key.second);
                if (e != t.entries.end() && e->second.value != 0) return true;
            }
            return false;
        };
        std::vector<std::string> missing;
        for (const auto& key : required)
            if (!covered(key)) missing.push_back(key.first + "(" + std::to_string(key.second) + ")");
        if (!missing.empty()) {
            std::string msg = "reproduce_figure: n_max = " + std::to_string(n_max) +
                              " needs factor-table coverage beyond n = " +
                              std::to_string(kSelfFactorableNmax) +
                              "; missing entries:";
            size_t shown = std::min<size_t>(missing.size(), 20);
            for (size_t i = 0; i < shown; ++i) msg += " " + missing[i];
            if (missing.size() > shown)
                msg += " and " + std::to_string(missing.size() - shown) + " more";
            throw std::runtime_error(msg);
        }
    }

    OrbitSpec spec = named_orbit(rec.orbit);
    return ratio_series_figure(spec, n_max, rec.betas, kDefaultRhoBudget,
                               tables.empty() ? nullptr : &tables, rec.log_n);
}

}  // namespace torbit
