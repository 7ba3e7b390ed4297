// Acceptance gate: one criterion per numbered check, one PASS/FAIL line each.
// Usage: acceptance [N]   (N in 1..11; no argument runs all criteria)

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "torbit/beta.hpp"
#include "torbit/factor.hpp"
#include "torbit/figures.hpp"
#include "torbit/model.hpp"
#include "torbit/omega_stats.hpp"
#include "torbit/orbits.hpp"
#include "torbit/sporadic.hpp"
#include "torbit/surd_forms.hpp"

#include "oracles.hpp"

namespace {

using Clock = std::chrono::steady_clock;

struct Criterion {
    int id;
    const char* name;
    std::function<void(std::vector<std::string>&)> body;  // push a message per failure
};

void expect(std::vector<std::string>& fails, bool ok, const std::string& msg) {
    if (!ok) fails.push_back(msg);
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

// --------------------------------------------------------------------------
// 1. beta table
// --------------------------------------------------------------------------
void criterion_beta(std::vector<std::string>& fails) {
    auto t0 = Clock::now();
    struct Ref {
        int k;
        double value;
        double tol;
    };
    const Ref refs[] = {{2, 0.373365, 5e-5},
                        {3, 0.913728, 5e-5},
                        {4, 1.52961, 5e-5},
                        {5, 2.19252, 5e-5},
                        {10, 5.8754, 5e-4}};
    for (const Ref& r : refs) {
        double b = torbit::solve_beta(r.k).beta;
        expect(fails, std::abs(b - r.value) < r.tol,
               "beta_" + std::to_string(r.k) + " = " + fmt(b) + " misses " + fmt(r.value));
    }
    for (int k = 2; k <= 50; ++k) {
        double bis = torbit::solve_beta(k).beta;
        double lam = torbit::beta_lambert(k);
        expect(fails, std::abs(bis - lam) <= 1e-10,
               "bisection/Lambert disagree at k = " + std::to_string(k) + " by " +
                   fmt(std::abs(bis - lam)));
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    expect(fails, secs < 1.0, "runtime " + fmt(secs) + " s exceeds 1 s");
}

// --------------------------------------------------------------------------
// 2. exact counts
// --------------------------------------------------------------------------
void criterion_counts(std::vector<std::string>& fails) {
    torbit::NrTable small = torbit::count_by_omega(10);
    expect(fails, small.counts == std::vector<uint64_t>{1, 4, 4, 1},
           "N_r(10) != (1,4,4,1)");
    // Independent brute-force oracle for T = 10.
    std::vector<uint64_t> brute(4, 0);
    for (uint64_t x = 1; x <= 10; ++x) ++brute[static_cast<size_t>(oracle::omega(x))];
    expect(fails, small.counts == brute, "N_r(10) disagrees with the brute-force oracle");

    for (uint64_t T : {uint64_t{1000}, uint64_t{100000}, uint64_t{1000000}}) {
        torbit::NrTable t = torbit::count_by_omega(T);
        uint64_t sum = 0;
        for (uint64_t c : t.counts) sum += c;
        expect(fails, sum == T,
               "sum_r N_r(" + std::to_string(T) + ") = " + std::to_string(sum));
    }

    auto t0 = Clock::now();
    torbit::NrTable big = torbit::count_by_omega(10000000);
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    expect(fails, secs < 60.0, "10^7 sieve took " + fmt(secs) + " s (limit 60 s)");
    uint64_t sum = 0;
    for (uint64_t c : big.counts) sum += c;
    expect(fails, sum == 10000000, "sum_r N_r(10^7) != 10^7");
}

// --------------------------------------------------------------------------
// 3. nu
// --------------------------------------------------------------------------
void criterion_nu(std::vector<std::string>& fails) {
    double v1 = torbit::nu(1.0).value;
    expect(fails, std::abs(v1 - 1.0) < 1e-9, "nu(1) = " + fmt(v1));
    double v0 = torbit::nu(1e-6).value;
    expect(fails, std::abs(v0 - 1.0) < 1e-4, "nu(1e-6) = " + fmt(v0));
    for (double z : {0.25, 0.5, 1.0, 1.4}) {
        torbit::NuValue lo = torbit::nu(z, torbit::kDefaultNuTruncation);
        torbit::NuValue hi = torbit::nu(z, 4 * torbit::kDefaultNuTruncation);
        expect(fails, std::abs(lo.value - hi.value) <= lo.tail_bound,
               "nu(" + fmt(z) + ") truncation drift " + fmt(std::abs(lo.value - hi.value)) +
                   " exceeds tail bound " + fmt(lo.tail_bound));
    }
}

// --------------------------------------------------------------------------
// 4. Selberg band
// --------------------------------------------------------------------------
void criterion_selberg(std::vector<std::string>& fails) {
    const uint64_t T = 10000000;
    torbit::NrTable table = torbit::count_by_omega(T);
    double ll = std::log(std::log(static_cast<double>(T)));
    for (int r = 1; r <= 4; ++r) {
        double ratio = static_cast<double>(table.counts[static_cast<size_t>(r)]) /
                       torbit::nr_selberg(T, r);
        double band = 3.0 * r / (ll * ll);
        expect(fails, ratio >= 1.0 - band && ratio <= 1.0 + band,
               "N_" + std::to_string(r) + "(10^7)/selberg = " + fmt(ratio) +
                   " outside 1 +- " + fmt(band));
    }
}

// --------------------------------------------------------------------------
// 5. oracle bridge
// --------------------------------------------------------------------------
void criterion_bridge(std::vector<std::string>& fails) {
    auto t0 = Clock::now();
    mpq_class expected(33, 100);
    expected.canonicalize();
    expect(fails, torbit::single_draw_prob_exact(10, 2, 2) == expected,
           "single_draw_prob_exact(10,2,2) != 33/100");
    // Brute force over all 100 pairs.
    int hits = 0;
    for (uint64_t x = 1; x <= 10; ++x)
        for (uint64_t y = 1; y <= 10; ++y)
            if (oracle::omega(x) + oracle::omega(y) <= 2) ++hits;
    expect(fails, hits == 33, "brute force over the 100 pairs found " + std::to_string(hits));

    const uint64_t seed = 20260816;
    for (uint64_t T : {uint64_t{100}, uint64_t{10000}}) {
        for (int k = 1; k <= 3; ++k) {
            for (int R = k; R <= k + 3; ++R) {
                torbit::ComparisonRecord rec =
                    torbit::empirical_vs_exact(T, k, R, 100000, seed);
                double z = rec.z_score.value_or(0.0);
                expect(fails, std::abs(z) <= 4.0,
                       "grid cell T=" + std::to_string(T) + " k=" + std::to_string(k) +
                           " R=" + std::to_string(R) + " has |z| = " + fmt(std::abs(z)));
            }
        }
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    expect(fails, secs < 120.0, "runtime " + fmt(secs) + " s exceeds 2 min");
}

// --------------------------------------------------------------------------
// 6. nmax tail shape
// --------------------------------------------------------------------------
void criterion_tail(std::vector<std::string>& fails) {
    torbit::ModelConfig cfg;
    cfg.k = 2;
    cfg.C = "1.05";
    cfg.n_max = 500;
    cfg.seed = 424242;
    cfg.trials = 100000;
    torbit::NmaxSamples out = torbit::run_nmax(cfg, 2);
    expect(fails, out.samples.size() == cfg.trials,
           "trials dropped: " + std::to_string(out.samples.size()) + " of 100000 reported");
    uint64_t censored = 0;
    for (uint64_t s : out.samples)
        if (s == cfg.n_max + 1) ++censored;
    expect(fails, out.censored == censored, "censored count mismatch");
    if (!out.tail_slope) {
        fails.push_back("tail slope missing");
        return;
    }
    double slope = *out.tail_slope;
    expect(fails, slope >= -2.6 && slope <= -1.4,
           "tail slope " + fmt(slope) + " outside [-2.6, -1.4]");
}

// --------------------------------------------------------------------------
// 7. orbit identities
// --------------------------------------------------------------------------
void criterion_identities(std::vector<std::string>& fails) {
    auto t0 = Clock::now();
    try {
        torbit::IdentityReport rep = torbit::verify_identities(2000);
        expect(fails, rep.checks == 3 * 2001, "unexpected identity check count");
    } catch (const std::exception& e) {
        fails.push_back(std::string("identity failure: ") + e.what());
    }

    const uint64_t N = 40;
    auto points = [&](const char* label) {
        return torbit::iterate_orbit(torbit::named_orbit(label), N).points;
    };
    auto check_orbit = [&](const char* label, auto&& fx, auto&& fy) {
        auto pts = points(label);
        for (uint64_t n = 0; n <= N; ++n) {
            if (pts[n].x != fx(n) || pts[n].y != fy(n)) {
                fails.push_back(std::string(label) + " diverges from the recurrence oracle at n = " +
                                std::to_string(n));
                return;
            }
        }
    };
    check_orbit(
        "fibonacci_lucas", [](uint64_t n) { return oracle::fib(n + 1); },
        [](uint64_t n) { return oracle::lucas(n + 1); });
    check_orbit(
        "consecutive_fibonacci", [](uint64_t n) { return oracle::fib(n + 1); },
        [](uint64_t n) { return oracle::fib(n); });
    check_orbit(
        "consecutive_lucas", [](uint64_t n) { return oracle::lucas(n + 1); },
        [](uint64_t n) { return oracle::lucas(n); });
    check_orbit(
        "even_fibonacci", [](uint64_t n) { return oracle::fib(2 * n + 2); },
        [](uint64_t n) { return mpz_class(-oracle::fib(2 * n)); });
    check_orbit(
        "consecutive_mersenne", [](uint64_t n) { return oracle::mersenne(n + 1); },
        [](uint64_t n) { return oracle::mersenne(n); });

    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    expect(fails, secs < 10.0, "runtime " + fmt(secs) + " s exceeds 10 s");
}

// --------------------------------------------------------------------------
// 8. sporadic sets
// --------------------------------------------------------------------------
void criterion_sporadic(std::vector<std::string>& fails) {
    auto t0 = Clock::now();
    auto check_set = [&](torbit::SigmaPair pair, std::vector<uint64_t> want) {
        torbit::SigmaSearchResult r = torbit::search_sigma(pair, 1000);
        if (r.hits != want) {
            std::string got;
            for (uint64_t h : r.hits) got += std::to_string(h) + " ";
            fails.push_back(torbit::to_string(pair) + " hits {" + got + "} != expected set");
        }
    };
    check_set(torbit::SigmaPair::FF, {3, 5, 11, 431, 569});
    check_set(torbit::SigmaPair::LL, {2, 5, 11, 17});
    check_set(torbit::SigmaPair::FL, {4, 5, 7, 11, 13, 17, 47});

    double nm = torbit::naive_nmax(2, 2);
    expect(fails, nm >= 211.0 && nm <= 213.0, "naive_nmax(2,2) = " + fmt(nm));

    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    expect(fails, secs < 300.0, "runtime " + fmt(secs) + " s exceeds 5 min");
}

// --------------------------------------------------------------------------
// 9. surds & forms
// --------------------------------------------------------------------------
void criterion_surds(std::vector<std::string>& fails) {
    using torbit::make_surd;
    torbit::CFExpansion r2 = torbit::cf_expand(make_surd(0, 1, 2));
    std::vector<torbit::Convergent> cs = torbit::convergents(r2, 50);
    const long want[4][2] = {{1, 1}, {3, 2}, {7, 5}, {17, 12}};
    for (int i = 0; i < 4; ++i)
        expect(fails,
               cs[static_cast<size_t>(i)].p == want[i][0] &&
                   cs[static_cast<size_t>(i)].q == want[i][1],
               "sqrt(2) convergent " + std::to_string(i) + " mismatch");
    for (size_t i = 1; i < cs.size(); ++i) {
        mpz_class det = cs[i].p * cs[i - 1].q - cs[i - 1].p * cs[i].q;
        expect(fails, det == 1 || det == -1,
               "sqrt(2) convergent determinant at index " + std::to_string(i));
    }

    // Shift property on 20 random surds, verified directly for n <= 400.
    std::mt19937_64 rng(9);
    int tried = 0;
    while (tried < 20) {
        long D = static_cast<long>(rng() % 400) + 2;
        long r = static_cast<long>(std::sqrt(static_cast<double>(D)));
        if (r * r == D) continue;
        long P = static_cast<long>(rng() % 41) - 20;
        long Q = static_cast<long>(rng() % 21) - 10;
        if (Q == 0) continue;
        ++tried;
        torbit::SurdSpec surd = make_surd(P, Q, D);
        torbit::CFExpansion cf = torbit::cf_expand(surd);
        torbit::SurdOrbitDecomposition dec;
        try {
            dec = torbit::surd_orbit_decomposition(cf);
        } catch (const std::exception& e) {
            fails.push_back("decomposition failed for (" + std::to_string(P) + "," +
                            std::to_string(Q) + "," + std::to_string(D) + "): " + e.what());
            continue;
        }
        size_t ell = cf.period.size();
        size_t start = cf.preperiod.empty() ? 0 : cf.preperiod.size() - 1;
        std::vector<torbit::Convergent> conv = torbit::convergents(cf, 400 + ell);
        bool ok = true;
        for (size_t n = start; n + ell <= 400 + ell && ok; ++n) {
            mpq_class gx = dec.gamma.a * conv[n].p + dec.gamma.b * conv[n].q;
            mpq_class gy = dec.gamma.c * conv[n].p + dec.gamma.d * conv[n].q;
            if (gx != mpq_class(conv[n + ell].p) || gy != mpq_class(conv[n + ell].q)) ok = false;
        }
        expect(fails, ok,
               "shift property fails for surd (" + std::to_string(P) + "," +
                   std::to_string(Q) + "," + std::to_string(D) + ")");
    }

    // Automorph of x^2 - 5 y^2.
    auto [t, u] = torbit::pell4_fundamental(20);
    expect(fails, t == 18 && u == 4, "pell4_fundamental(20) != (18, 4)");
    auto [bt, bu] = oracle::pell4_brute(20, 1000);
    expect(fails, bt == 18 && bu == 4, "brute-force Pell disagrees at D = 20");
    torbit::QuadForm f{1, 0, -5};
    torbit::Mat2Q g = torbit::automorph(f);
    torbit::Mat2Q want_g{mpq_class(9), mpq_class(20), mpq_class(4), mpq_class(9)};
    expect(fails, g == want_g, "automorph(x^2 - 5y^2) != [[9,20],[4,9]]");

    std::mt19937_64 vec_rng(11);
    for (int i = 0; i < 100; ++i) {
        mpz_class x(static_cast<long>(vec_rng() % 20001) - 10000);
        mpz_class y(static_cast<long>(vec_rng() % 20001) - 10000);
        mpz_class before = x * x - 5 * y * y;
        mpq_class gx = g.a * x + g.b * y;
        mpq_class gy = g.c * x + g.d * y;
        mpz_class ax = gx.get_num(), ay = gy.get_num();
        bool integral = gx.get_den() == 1 && gy.get_den() == 1;
        expect(fails, integral && ax * ax - 5 * ay * ay == before,
               "automorph fails to preserve the form on vector " + std::to_string(i));
        if (!integral) break;
    }
}

// --------------------------------------------------------------------------
// 10. figure reproduction corridor
// --------------------------------------------------------------------------
void criterion_figure(std::vector<std::string>& fails) {
    torbit::FigureDataset ds = torbit::reproduce_figure(1, {}, 300);
    expect(fails, ds.points.size() >= 250, "figure 1 dataset unexpectedly sparse");
    double min_ratio = std::numeric_limits<double>::infinity();
    for (const torbit::FigurePoint& pt : ds.points)
        if (pt.n >= 50 && pt.n <= 300) min_ratio = std::min(min_ratio, pt.ratio);
    expect(fails, std::isfinite(min_ratio), "no points in the n window [50, 300]");
    expect(fails, min_ratio >= 0.3 && min_ratio <= 1.2,
           "running minimum over n in [50,300] is " + fmt(min_ratio) +
               ", outside [0.3, 1.2]");
}

// --------------------------------------------------------------------------
// 11. liminf experiment
// --------------------------------------------------------------------------
std::string serialize(const torbit::ModelRun& run) {
    std::string out;
    char buf[128];
    for (const torbit::LiminfRecord& r : run.records) {
        std::snprintf(buf, sizeof buf, "%llu,%llu,%d,%.17g,%.17g\n",
                      static_cast<unsigned long long>(r.trial),
                      static_cast<unsigned long long>(r.n), r.omega,
                      r.ratio.value_or(-1.0), r.running_min.value_or(-1.0));
        out += buf;
    }
    return out;
}

void criterion_liminf(std::vector<std::string>& fails) {
    torbit::ModelConfig cfg;
    cfg.k = 1;
    cfg.C = "1.03";
    cfg.n_max = 2000;
    cfg.seed = 7;
    cfg.trials = 1;
    torbit::ModelRun run1 = torbit::run_liminf(cfg);
    bool low_draw = false;
    for (const torbit::LiminfRecord& r : run1.records)
        if (r.omega <= 1) low_draw = true;
    expect(fails, low_draw, "k = 1 run has no draw with Omega <= 1");

    cfg.k = 2;
    torbit::ModelRun run2 = torbit::run_liminf(cfg);
    double prev = std::numeric_limits<double>::infinity();
    bool monotone = true, positive = true;
    for (const torbit::LiminfRecord& r : run2.records) {
        if (!r.running_min) continue;
        if (*r.running_min > prev + 1e-15) monotone = false;
        if (*r.running_min <= 0.0) positive = false;
        prev = *r.running_min;
    }
    expect(fails, monotone, "k = 2 running_min is not non-increasing");
    expect(fails, positive, "k = 2 running_min is not strictly positive");

    torbit::ModelRun run2b = torbit::run_liminf(cfg);
    expect(fails, serialize(run2) == serialize(run2b),
           "identical seeds did not reproduce byte-identical output");
}

}  // namespace

int main(int argc, char** argv) {
    const std::vector<Criterion> criteria = {
        {1, "beta table", criterion_beta},
        {2, "exact Omega counts", criterion_counts},
        {3, "nu Euler product", criterion_nu},
        {4, "Selberg band", criterion_selberg},
        {5, "oracle bridge", criterion_bridge},
        {6, "nmax tail shape", criterion_tail},
        {7, "orbit identities", criterion_identities},
        {8, "sporadic sets", criterion_sporadic},
        {9, "surds and forms", criterion_surds},
        {10, "figure corridor", criterion_figure},
        {11, "liminf experiment", criterion_liminf},
    };

    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > 11) {
            std::fprintf(stderr, "usage: %s [criterion 1..11]\n", argv[0]);
            return 2;
        }
    }

    int failures = 0;
    for (const Criterion& c : criteria) {
        if (only && c.id != only) continue;
        std::vector<std::string> fails;
        auto t0 = Clock::now();
        try {
            c.body(fails);
        } catch (const std::exception& e) {
            fails.push_back(std::string("unexpected exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (fails.empty()) {
            std::printf("[PASS] criterion %2d: %s (%.1f s)\n", c.id, c.name, secs);
        } else {
            ++failures;
            std::printf("[FAIL] criterion %2d: %s (%.1f s) -- %s\n", c.id, c.name, secs,
                        fails.front().c_str());
            for (size_t i = 1; i < fails.size(); ++i)
                std::printf("       %s\n", fails[i].c_str());
        }
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
