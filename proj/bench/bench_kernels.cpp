// Parallel kernels vs the serial reference on the shapes the toolkit hits:
// small certificate blocks and the larger Choi-sized products.
#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "factorcert/kernels.hpp"

using factorcert::Complex;

namespace {

std::vector<Complex> random_buffer(std::size_t count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    std::vector<Complex> buf(count);
    for (auto& z : buf) z = Complex(dist(rng), dist(rng));
    return buf;
}

template <void (*MatMul)(const Complex*, const Complex*, Complex*, std::size_t, std::size_t,
                         std::size_t)>
void bm_matmul(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<Complex> a = random_buffer(n * n, 1);
    const std::vector<Complex> b = random_buffer(n * n, 2);
    std::vector<Complex> c(n * n);
    for (auto _ : state) {
        MatMul(a.data(), b.data(), c.data(), n, n, n);
        benchmark::DoNotOptimize(c.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(n * n * n));
}

template <void (*Kron)(const Complex*, std::size_t, std::size_t, const Complex*, std::size_t,
                       std::size_t, Complex*)>
void bm_kron(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<Complex> a = random_buffer(n * n, 3);
    const std::vector<Complex> b = random_buffer(n * n, 4);
    std::vector<Complex> out(n * n * n * n);
    for (auto _ : state) {
        Kron(a.data(), n, n, b.data(), n, n, out.data());
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(out.size()));
}

template <void (*Adjoint)(const Complex*, std::size_t, std::size_t, Complex*)>
void bm_adjoint(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const std::vector<Complex> a = random_buffer(n * n, 5);
    std::vector<Complex> out(n * n);
    for (auto _ : state) {
        Adjoint(a.data(), n, n, out.data());
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(n * n));
}

template <void (*PTrace)(const Complex*, std::size_t, std::size_t, Complex*)>
void bm_partial_trace(benchmark::State& state) {
    const auto n = static_cast<std::size_t>(state.range(0));
    const auto k = static_cast<std::size_t>(state.range(1));
    const std::vector<Complex> a = random_buffer(n * k * n * k, 6);
    std::vector<Complex> out(n * n);
    for (auto _ : state) {
        PTrace(a.data(), n, k, out.data());
        benchmark::DoNotOptimize(out.data());
        benchmark::ClobberMemory();
    }
    state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) *
                            static_cast<int64_t>(n * n * k));
}

} // namespace

BENCHMARK(bm_matmul<factorcert::kernels::matmul>)->Name("matmul/parallel")->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(bm_matmul<factorcert::reference::matmul>)->Name("matmul/reference")->Arg(16)->Arg(64)->Arg(256);
BENCHMARK(bm_kron<factorcert::kernels::kron>)->Name("kron/parallel")->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(bm_kron<factorcert::reference::kron>)->Name("kron/reference")->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(bm_adjoint<factorcert::kernels::adjoint>)->Name("adjoint/parallel")->Arg(64)->Arg(512);
BENCHMARK(bm_adjoint<factorcert::reference::adjoint>)->Name("adjoint/reference")->Arg(64)->Arg(512);
BENCHMARK(bm_partial_trace<factorcert::kernels::partial_trace_right>)
    ->Name("partial_trace/parallel")->Args({16, 4})->Args({64, 8});
BENCHMARK(bm_partial_trace<factorcert::reference::partial_trace_right>)
    ->Name("partial_trace/reference")->Args({16, 4})->Args({64, 8});

BENCHMARK_MAIN();
