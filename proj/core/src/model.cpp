#include "torbit/model.hpp"

#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "torbit/beta.hpp"
#include "torbit/factor.hpp"
#include "torbit/omega_stats.hpp"

namespace torbit {

namespace {

inline uint64_t mix64(uint64_t x) {
    x ^= x >> 30;
    x *= 0xbf58476d1ce4e5b9ULL;
    x ^= x >> 27;
    x *= 0x94d049bb133111ebULL;
    x ^= x >> 31;
    return x;
}

}  // namespace

uint64_t counter_hash(uint64_t seed, uint64_t trial, uint64_t n, uint64_t coord,
                      uint64_t attempt) {
    uint64_t h = seed;
    h = mix64(h ^ trial);
    h = mix64(h ^ n);
    h = mix64(h ^ coord);
    h = mix64(h ^ attempt);
    return h;
}

uint64_t uniform_draw(const RngState& state, uint64_t n, uint64_t coord, uint64_t bound) {
    if (bound == 0) throw std::domain_error("uniform_draw: bound must be >= 1");
    if (bound == 1) return 1;
    int width = std::bit_width(bound);
    uint64_t mask = width >= 64 ? ~uint64_t{0} : (uint64_t{1} << width) - 1;
    for (uint64_t attempt = 0;; ++attempt) {
        uint64_t v = (counter_hash(state.seed, state.trial, n, coord, attempt) & mask) + 1;
        if (v <= bound) return v;
    }
}

mpq_class parse_rational(const std::string& text) {
    auto bad = [&] {
        throw std::invalid_argument("parse_rational: malformed rational '" + text + "'");
    };
    if (text.empty()) bad();
    auto digits = [&](const std::string& s) {
        if (s.empty()) return false;
        size_t start = (s[0] == '-') ? 1 : 0;
        if (start == s.size()) return false;
        for (size_t i = start; i < s.size(); ++i)
            if (s[i] < '0' || s[i] > '9') return false;
        return true;
    };
    if (auto slash = text.find('/'); slash != std::string::npos) {
        std::string num = text.substr(0, slash), den = text.substr(slash + 1);
        if (!digits(num) || !digits(den)) bad();
        mpz_class n(num), d(den);
        if (d == 0) bad();
        mpq_class q(n, d);
        q.canonicalize();
        return q;
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string whole = text.substr(0, dot), frac = text.substr(dot + 1);
        if (whole.empty() || !digits(whole)) bad();
        if (frac.empty() || !digits(frac) || frac[0] == '-') bad();
        mpz_class num(whole + frac);  // sign carried by `whole`
        mpz_class den = 1;
        for (size_t i = 0; i < frac.size(); ++i) den *= 10;
        mpq_class q(num, den);
        q.canonicalize();
        return q;
    }
    if (!digits(text)) bad();
    mpq_class q{mpz_class(text)};
    return q;
}

DrawBounds compute_bounds(const ModelConfig& config) {
    if (config.k < 1) throw std::domain_error("model: k must be >= 1");
    if (config.n_max < 1) throw std::domain_error("model: n_max must be >= 1");
    if (!config.C_list.empty() && config.C_list.size() != static_cast<size_t>(config.k))
        throw std::invalid_argument("model: C_list must have exactly k entries");

    DrawBounds out;
    out.bounds.resize(config.k);
    out.saturated_from.resize(config.k);
    mpz_class cap = kDrawCap;
    for (int j = 0; j < config.k; ++j) {
        const std::string& text = config.C_list.empty() ? config.C : config.C_list[j];
        mpq_class C = parse_rational(text);
        if (C <= 1) throw std::invalid_argument("model: growth base C must be > 1 (got '" + text + "')");
        mpz_class num_pow = 1, den_pow = 1;
        auto& bounds = out.bounds[j];
        bounds.resize(config.n_max);
        bool saturated = false;
        for (uint64_t n = 1; n <= config.n_max; ++n) {
            if (!saturated) {
                num_pow *= C.get_num();
                den_pow *= C.get_den();
                mpz_class b;
                mpz_fdiv_q(b.get_mpz_t(), num_pow.get_mpz_t(), den_pow.get_mpz_t());
                if (b > cap) {
                    saturated = true;
                    out.saturated_from[j] = n;
                } else {
                    bounds[n - 1] = mpz_get_ui(b.get_mpz_t());
                }
            }
            if (saturated) bounds[n - 1] = kDrawCap;
        }
    }
    return out;
}

std::vector<uint64_t> draw_vector(uint64_t n, const ModelConfig& config,
                                  const DrawBounds& bounds, const RngState& state) {
    if (n < 1 || n > config.n_max)
        throw std::domain_error("draw_vector: n out of range [1, n_max]");
    std::vector<uint64_t> v(config.k);
    for (int j = 0; j < config.k; ++j)
        v[j] = uniform_draw(state, n, static_cast<uint64_t>(j), bounds.bounds[j][n - 1]);
    return v;
}

ModelRun run_liminf(const ModelConfig& config) {
    DrawBounds bounds = compute_bounds(config);
    ModelRun run;
    run.config = config;
    run.beta_k = solve_beta(config.k).beta;
    run.records.reserve(config.trials * config.n_max);
    for (uint64_t trial = 0; trial < config.trials; ++trial) {
        RngState state{config.seed, trial};
        std::optional<double> running_min;
        for (uint64_t n = 1; n <= config.n_max; ++n) {
            std::vector<uint64_t> v = draw_vector(n, config, bounds, state);
            int omega = 0;
            for (uint64_t x : v) omega += omega_u64(x);
            LiminfRecord rec;
            rec.n = n;
            rec.trial = trial;
            rec.omega = omega;
            if (omega == 0) ++run.zero_omega_draws;
            if (n >= 2) {
                double ratio = omega / std::log(static_cast<double>(n));
                rec.ratio = ratio;
                if (omega >= 1 && (!running_min || ratio < *running_min))
                    running_min = ratio;
            }
            rec.running_min = running_min;
            run.records.push_back(std::move(rec));
        }
    }
    return run;
}

namespace {

// Least-squares slope of log(freq[i] / total) against log(t_lo + i) over the
// populated indices; nullopt with fewer than two of them.
std::optional<double> loglog_slope(const std::vector<uint64_t>& freq, uint64_t t_lo,
                                   double total) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    uint64_t m = 0;
    for (size_t i = 0; i < freq.size(); ++i) {
        if (freq[i] == 0) continue;
        double x = std::log(static_cast<double>(t_lo + i));
        double y = std::log(static_cast<double>(freq[i]) / total);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++m;
    }
    if (m < 2) return std::nullopt;
    double denom = m * sxx - sx * sx;
    if (denom == 0) return std::nullopt;
    return (m * sxy - sx * sy) / denom;
}

}  // namespace

std::optional<double> tail_slope(const std::vector<uint64_t>& samples, uint64_t t_lo,
                                 uint64_t t_hi) {
    if (samples.empty() || t_hi < t_lo) return std::nullopt;
    std::vector<uint64_t> freq(t_hi - t_lo + 1, 0);
    for (uint64_t s : samples)
        if (s >= t_lo && s <= t_hi) ++freq[s - t_lo];
    return loglog_slope(freq, t_lo, static_cast<double>(samples.size()));
}

NmaxSamples run_nmax(const ModelConfig& config, int R) {
    if (R < config.k)
        throw std::domain_error("run_nmax: R must be >= k");
    DrawBounds bounds = compute_bounds(config);
    NmaxSamples out;
    out.R = R;
    out.samples.reserve(config.trials);

    const uint64_t w_lo = 20;
    const uint64_t w_hi = std::min<uint64_t>(200, config.n_max);
    std::vector<uint64_t> window_hits(w_hi >= w_lo ? w_hi - w_lo + 1 : 0, 0);

    for (uint64_t trial = 0; trial < config.trials; ++trial) {
        RngState state{config.seed, trial};
        auto qualifies = [&](uint64_t n) {
            int left = R;
            for (int j = 0; j < config.k; ++j) {
                uint64_t x =
                    uniform_draw(state, n, static_cast<uint64_t>(j), bounds.bounds[j][n - 1]);
                int w = omega_capped_u64(x, left);
                if (w > left) return false;
                left -= w;
            }
            return true;
        };
        uint64_t sample = 0;
        // The counter-based generator has no sequential state, so the largest
        // qualifying n can be found scanning downward, evaluating Omega with a
        // cap and skipping later coordinates once the cap is exceeded; the
        // draws equal those of a full forward pass.
        for (uint64_t n = config.n_max; n >= 1; --n) {
            if (qualifies(n)) {
                if (n == config.n_max) {
                    sample = config.n_max + 1;
                    ++out.censored;
                } else {
                    sample = n;
                }
                break;
            }
        }
        out.samples.push_back(sample);
        // Per-index success counts over the slope window. The scan above
        // already evaluated every n down to its stopping point (all failures
        // except the stop itself), so only indices below it are drawn afresh;
        // the stateless generator returns the same draws either way.
        if (!window_hits.empty()) {
            const uint64_t succ_n =
                sample == 0 ? 0 : (sample == config.n_max + 1 ? config.n_max : sample);
            const uint64_t lowest_scanned = sample == 0 ? 1 : succ_n;
            for (uint64_t t = w_lo; t <= w_hi; ++t) {
                bool hit = t >= lowest_scanned ? t == succ_n : qualifies(t);
                if (hit) ++window_hits[t - w_lo];
            }
        }
    }
    // Shape statistic: slope of the per-index success frequency, the quantity
    // with a t^{-k}-times-log-power law. The distribution of the max index
    // itself stays fully inspectable through `samples` and `censored`.
    out.tail_slope = loglog_slope(window_hits, w_lo, static_cast<double>(config.trials));
    return out;
}

ComparisonRecord empirical_vs_exact(uint64_t T, int k, int R, uint64_t samples,
                                    uint64_t seed) {
    ComparisonRecord rec;
    rec.T = T;
    rec.k = k;
    rec.R = R;
    rec.samples = samples;
    rec.exact = single_draw_prob_exact(T, k, R);
    if (samples == 0) return rec;

    SpfTable spf = build_spf(T);
    uint64_t successes = 0;
    for (uint64_t s = 0; s < samples; ++s) {
        RngState state{seed, s};
        int total = 0;
        for (int j = 0; j < k; ++j) {
            uint64_t x = uniform_draw(state, 0, static_cast<uint64_t>(j), T);
            total += omega_small(x, spf);
            if (total > R) break;
        }
        if (total <= R) ++successes;
    }
    double freq = static_cast<double>(successes) / static_cast<double>(samples);
    double p = rec.exact.get_d();
    rec.frequency = freq;
    rec.deviation = std::fabs(freq - p);
    double var = p * (1.0 - p) / static_cast<double>(samples);
    if (var > 0)
        rec.z_score = (freq - p) / std::sqrt(var);
    else
        rec.z_score = (freq == p) ? 0.0 : std::numeric_limits<double>::infinity();
    return rec;
}

}  // namespace torbit
