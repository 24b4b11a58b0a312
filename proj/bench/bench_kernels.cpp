// Throughput of the OpenMP kernels against the serial reference paths, plus
// thread scaling of the hot loops. Run: ./rbsim_bench [--benchmark_filter=...]

#include <benchmark/benchmark.h>
#include <omp.h>

#include <random>

#include "rbsim/fft.hpp"
#include "rbsim/foxli.hpp"
#include "rbsim/kernels.hpp"
#include "rbsim/reference.hpp"

using namespace rbsim;
using cvec = std::vector<std::complex<double>>;

namespace {

cvec random_buffer(std::size_t count, std::uint64_t seed) {
    cvec v(count);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (auto& z : v)
        z = {u(rng), u(rng)};
    return v;
}

CavityGeometry bench_geometry() {
    CavityGeometry g;
    g.tx = RetroGeometry{0.0504, 0.052, 0.007};
    g.rx = g.tx;
    return g;
}

} // namespace

static void BM_dft2d_reference(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const cvec v = random_buffer(n * n, 1);
    for (auto _ : state) {
        auto out = ref::dft_2d(v, n, -1);
        benchmark::DoNotOptimize(out.data());
    }
}
BENCHMARK(BM_dft2d_reference)->Arg(32)->Arg(64)->Unit(benchmark::kMicrosecond);

static void BM_fft2d(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    omp_set_num_threads(static_cast<int>(state.range(1)));
    Fft2d fft(n);
    cvec v = random_buffer(n * n, 2);
    for (auto _ : state) {
        fft.forward(v.data());
        benchmark::DoNotOptimize(v.data());
    }
    omp_set_num_threads(omp_get_num_procs());
}
BENCHMARK(BM_fft2d)
    ->Args({32, 1})
    ->Args({64, 1})
    ->Args({512, 1})
    ->Args({512, 2})
    ->Args({1024, 1})
    ->Args({1024, 2})
    ->Unit(benchmark::kMicrosecond);

static void BM_power_sum_reference(benchmark::State& state) {
    const std::size_t n = 1024;
    const cvec v = random_buffer(n * n, 3);
    for (auto _ : state) {
        double p = ref::power_sum(v, 1e-4);
        benchmark::DoNotOptimize(p);
    }
}
BENCHMARK(BM_power_sum_reference)->Unit(benchmark::kMicrosecond);

static void BM_power_sum_rows(benchmark::State& state) {
    omp_set_num_threads(static_cast<int>(state.range(0)));
    const std::size_t n = 1024;
    const cvec v = random_buffer(n * n, 3);
    for (auto _ : state) {
        double p = kernels::power_sum_rows(v.data(), n) * 1e-8;
        benchmark::DoNotOptimize(p);
    }
    omp_set_num_threads(omp_get_num_procs());
}
BENCHMARK(BM_power_sum_rows)->Arg(1)->Arg(2)->Unit(benchmark::kMicrosecond);

static void BM_round_trip(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    omp_set_num_threads(static_cast<int>(state.range(1)));
    const GridSpec grid{n, 0.030};
    RoundTrip rt(bench_geometry(), grid);
    cvec u = random_buffer(n * n, 4);
    for (auto _ : state) {
        rt.apply(u);
        const double p = kernels::power_sum_rows(u.data(), n);
        kernels::scale(u.data(), {1.0 / std::sqrt(p), 0.0}, u.size());
        benchmark::DoNotOptimize(u.data());
    }
    omp_set_num_threads(omp_get_num_procs());
}
BENCHMARK(BM_round_trip)
    ->Args({512, 1})
    ->Args({512, 2})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
