#include <benchmark/benchmark.h>

#include <cstdint>

#include <gmpxx.h>

#include "torbit/beta.hpp"
#include "torbit/factor.hpp"
#include "torbit/model.hpp"
#include "torbit/omega_stats.hpp"
#include "torbit/orbits.hpp"
#include "torbit/surd_forms.hpp"

namespace {

void BM_SolveBeta(benchmark::State& state) {
    const int k = static_cast<int>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(torbit::solve_beta(k).beta);
}
BENCHMARK(BM_SolveBeta)->Arg(2)->Arg(10)->Arg(50);

void BM_BuildSpf(benchmark::State& state) {
    const uint64_t limit = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        torbit::SpfTable t = torbit::build_spf(limit);
        benchmark::DoNotOptimize(t.spf.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(limit));
}
BENCHMARK(BM_BuildSpf)->Arg(100000)->Arg(1000000)->Arg(10000000)
    ->Unit(benchmark::kMillisecond);

void BM_CountByOmega(benchmark::State& state) {
    const uint64_t T = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        torbit::NrTable t = torbit::count_by_omega(T);
        benchmark::DoNotOptimize(t.counts.data());
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(T));
}
BENCHMARK(BM_CountByOmega)->Arg(100000)->Arg(1000000)->Arg(10000000)
    ->Unit(benchmark::kMillisecond);

void BM_ProbablePrimeMersenne(benchmark::State& state) {
    mpz_class m;
    mpz_ui_pow_ui(m.get_mpz_t(), 2, static_cast<unsigned long>(state.range(0)));
    m -= 1;
    for (auto _ : state) benchmark::DoNotOptimize(torbit::probable_prime(m));
}
BENCHMARK(BM_ProbablePrimeMersenne)->Arg(127)->Arg(521)->Arg(1279);

void BM_OmegaU64Semiprime(benchmark::State& state) {
    // 1000003 * 1000033: both factors beyond the small-prime strip.
    const uint64_t n = 1000003ULL * 1000033ULL;
    for (auto _ : state) benchmark::DoNotOptimize(torbit::omega_u64(n));
}
BENCHMARK(BM_OmegaU64Semiprime);

void BM_FactorBigSemiprime(benchmark::State& state) {
    // Product of two nine-digit primes: the Brent-rho workhorse case.
    mpz_class n = mpz_class(999999937) * 999999893;
    for (auto _ : state) {
        torbit::FactorResult r = torbit::factor_big(n);
        benchmark::DoNotOptimize(r.prime_factors.data());
    }
}
BENCHMARK(BM_FactorBigSemiprime);

void BM_UniformDraw(benchmark::State& state) {
    torbit::RngState s{12345, 0};
    uint64_t n = 0;
    for (auto _ : state)
        benchmark::DoNotOptimize(torbit::uniform_draw(s, ++n, 0, (uint64_t{1} << 62) + 12345));
}
BENCHMARK(BM_UniformDraw);

void BM_SingleDrawProbExact(benchmark::State& state) {
    const uint64_t T = static_cast<uint64_t>(state.range(0));
    for (auto _ : state)
        benchmark::DoNotOptimize(torbit::single_draw_prob_exact(T, 3, 6));
    state.SetLabel("k=3 R=6");
}
BENCHMARK(BM_SingleDrawProbExact)->Arg(10000)->Arg(100000)->Unit(benchmark::kMillisecond);

void BM_OrbitIterate(benchmark::State& state) {
    torbit::OrbitSpec spec = torbit::named_orbit("fibonacci_lucas");
    const uint64_t n = static_cast<uint64_t>(state.range(0));
    for (auto _ : state) {
        torbit::OrbitSeries s = torbit::iterate_orbit(spec, n);
        benchmark::DoNotOptimize(s.points.data());
    }
    state.SetLabel("with full Omega protocol");
}
BENCHMARK(BM_OrbitIterate)->Arg(20)->Arg(40)->Unit(benchmark::kMillisecond);

void BM_Pell4Fundamental(benchmark::State& state) {
    const long D = state.range(0);
    for (auto _ : state) benchmark::DoNotOptimize(torbit::pell4_fundamental(D).first);
}
BENCHMARK(BM_Pell4Fundamental)->Arg(61)->Arg(97)->Arg(277);

void BM_CfExpand(benchmark::State& state) {
    torbit::SurdSpec surd = torbit::make_surd(3, 7, 9871);
    for (auto _ : state) {
        torbit::CFExpansion cf = torbit::cf_expand(surd);
        benchmark::DoNotOptimize(cf.period.data());
    }
}
BENCHMARK(BM_CfExpand);

}  // namespace

BENCHMARK_MAIN();
