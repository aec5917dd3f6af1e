// Serial reference kernels against their OpenMP counterparts.
#include <benchmark/benchmark.h>

#include <random>

#include "fcq/linalg.hpp"
#include "fcq/weyl.hpp"

using namespace fcq;

namespace {

// Dense element: every PBW monomial with a random coefficient at h^0 and h^1.
WeylElem dense(const WeylPtr& alg, std::mt19937_64& rng) {
    WeylElem a(alg);
    for (uint64_t m : alg->basis())
        for (int k = 0; k < 2; ++k)
            a += WeylElem::monomial(alg, m, CRElem(alg->ring(), 1 + static_cast<long long>(rng() % (alg->p() - 1))), k);
    return a;
}

template <WeylElem (*Mul)(const WeylElem&, const WeylElem&)>
void BM_weyl_mul(benchmark::State& st) {
    int p = static_cast<int>(st.range(0)), n = static_cast<int>(st.range(1));
    auto alg = WeylAlgebra::make(p, n, Flavor::Standard, CoeffRing::make(p, std::vector<std::string>{}));
    std::mt19937_64 rng(1);
    WeylElem a = dense(alg, rng), b = dense(alg, rng);
    for (auto _ : st) benchmark::DoNotOptimize(Mul(a, b));
}

FpMatrix random_matrix(int p, size_t dim) {
    std::mt19937_64 rng(2);
    FpMatrix m(p, dim, dim);
    for (auto& v : m.a) v = static_cast<uint32_t>(rng() % p);
    return m;
}

template <size_t (*Rank)(FpMatrix)>
void BM_rank(benchmark::State& st) {
    FpMatrix m = random_matrix(3, static_cast<size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(Rank(m));
}

}  // namespace

BENCHMARK(BM_weyl_mul<weyl_mul_serial>)->Name("weyl_mul_serial")->Args({3, 1})->Args({5, 1})->Args({3, 2});
BENCHMARK(BM_weyl_mul<weyl_mul_parallel>)->Name("weyl_mul_parallel")->Args({3, 1})->Args({5, 1})->Args({3, 2});
BENCHMARK(BM_rank<rank_serial>)->Name("rank_serial")->Arg(81)->Arg(256)->Arg(729);
BENCHMARK(BM_rank<rank_parallel>)->Name("rank_parallel")->Arg(81)->Arg(256)->Arg(729);

BENCHMARK_MAIN();
