#include <benchmark/benchmark.h>

#include "polytree/chow_liu.hpp"
#include "polytree/graph_ops.hpp"
#include "polytree/hard_instances.hpp"
#include "polytree/kl.hpp"
#include "polytree/pc_tree.hpp"
#include "polytree/rng.hpp"

namespace {

using namespace polytree;

GaussianSem make_instance(int d) {
    Rng rng(7);
    const DirectedTree tree = random_directed_tree(d, 7);
    std::vector<double> betas(d - 1);
    for (double& b : betas) {
        const double m = rng.uniform(0.1, 0.5);
        b = rng.coin() ? m : -m;
    }
    return GaussianSem(tree.dag(), std::move(betas), std::vector<double>(d, 1.0));
}

void bm_sem_sample(benchmark::State& state) {
    const GaussianSem sem = make_instance(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(sample(sem, 1000, NoiseFamily::gaussian, 3));
    state.SetItemsProcessed(state.iterations() * 1000 * state.range(0));
}
BENCHMARK(bm_sem_sample)->Arg(10)->Arg(50)->Arg(100);

void bm_sample_covariance(benchmark::State& state) {
    const GaussianSem sem = make_instance(static_cast<int>(state.range(0)));
    const SampleMatrix data = sample(sem, 2000, NoiseFamily::gaussian, 3);
    for (auto _ : state) benchmark::DoNotOptimize(sample_covariance(data));
}
BENCHMARK(bm_sample_covariance)->Arg(10)->Arg(50)->Arg(100);

void bm_chow_liu(benchmark::State& state) {
    const GaussianSem sem = make_instance(static_cast<int>(state.range(0)));
    const CovarianceMatrix sigma =
        sample_covariance(sample(sem, 2000, NoiseFamily::gaussian, 3));
    for (auto _ : state) benchmark::DoNotOptimize(chow_liu(sigma));
}
BENCHMARK(bm_chow_liu)->Arg(10)->Arg(50)->Arg(100);

void bm_pc_tree(benchmark::State& state) {
    const GaussianSem sem = make_instance(static_cast<int>(state.range(0)));
    const CovarianceMatrix sigma =
        sample_covariance(sample(sem, 2000, NoiseFamily::gaussian, 3));
    for (auto _ : state) benchmark::DoNotOptimize(pc_tree_skeleton(sigma, 0.05));
}
BENCHMARK(bm_pc_tree)->Arg(10)->Arg(50)->Arg(100);

void bm_partial_correlation(benchmark::State& state) {
    const CovarianceMatrix sigma = sem_to_covariance(make_instance(32));
    for (auto _ : state)
        for (int l = 2; l < 32; ++l)
            benchmark::DoNotOptimize(partial_correlation(sigma, 0, 1, {l}));
}
BENCHMARK(bm_partial_correlation);

void bm_best_tree_bruteforce(benchmark::State& state) {
    const int d = static_cast<int>(state.range(0));
    Rng rng(11);
    Eigen::MatrixXd g(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) g(i, j) = rng.normal();
    Eigen::MatrixXd s = g * g.transpose() / d + 0.5 * Eigen::MatrixXd::Identity(d, d);
    const CovarianceMatrix sigma(((s + s.transpose()) / 2.0).eval());
    for (auto _ : state) benchmark::DoNotOptimize(best_tree_bruteforce(sigma));
}
BENCHMARK(bm_best_tree_bruteforce)->Arg(5)->Arg(6)->Arg(7);

void bm_faithfulness_parameter(benchmark::State& state) {
    const GaussianSem sem = structure_lb_instance(static_cast<int>(state.range(0)), 0.3, 5);
    for (auto _ : state) benchmark::DoNotOptimize(faithfulness_parameter(sem));
}
BENCHMARK(bm_faithfulness_parameter)->Arg(8)->Arg(12);

}  // namespace

BENCHMARK_MAIN();
