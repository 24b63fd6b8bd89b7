#include <benchmark/benchmark.h>

#include "ekss/elastic.hpp"
#include "ekss/hodge.hpp"
#include "ekss/random_fields.hpp"
#include "ekss/spectral.hpp"
#include "ekss/tensor.hpp"

namespace {

using namespace ekss;

void BM_FftRoundTrip(benchmark::State& state) {
  const GridSpec g{static_cast<int>(state.range(0)), 8.0, true};
  const ScalarField f = random_smooth_scalar(g, 1);
  for (auto _ : state) {
    ScalarField back = fft_inverse(fft_forward(f));
    benchmark::DoNotOptimize(back.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(g.size()));
}
BENCHMARK(BM_FftRoundTrip)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_HodgeDecompose(benchmark::State& state) {
  const GridSpec g{static_cast<int>(state.range(0)), 8.0, true};
  const VectorField u = random_smooth_vector(g, 2);
  for (auto _ : state) {
    HodgePair p = hodge_decompose(u);
    benchmark::DoNotOptimize(p.cf[0].data());
  }
}
BENCHMARK(BM_HodgeDecompose)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

// Nonlinear flux with the sparse nonzero list of g.
void BM_NonlinearFluxSparse(benchmark::State& state) {
  const GridSpec g{static_cast<int>(state.range(0)), 8.0, true};
  const VectorField u = random_smooth_vector(g, 3);
  const TensorField gu = gradient_tensor(u);
  const Tensor6 t = isotropic_g({1, 0.5, 0, 0, 0.25, 0, 0, 0, 0, 0, 0, 0, 0, 0, -0.5});
  for (auto _ : state) {
    TensorField F = nonlinear_flux(gu, gu, t);
    benchmark::DoNotOptimize(F[0][0].data());
  }
  state.counters["nonzeros"] = static_cast<double>(t.nonzeros().size());
}
BENCHMARK(BM_NonlinearFluxSparse)->Arg(32)->Unit(benchmark::kMillisecond);

// Same contraction over all 729 entries, the baseline the sparse path replaces.
void BM_NonlinearFluxDense(benchmark::State& state) {
  const GridSpec g{static_cast<int>(state.range(0)), 8.0, true};
  const VectorField u = random_smooth_vector(g, 3);
  const TensorField gu = gradient_tensor(u);
  const Tensor6 t = isotropic_g({1, 0.5, 0, 0, 0.25, 0, 0, 0, 0, 0, 0, 0, 0, 0, -0.5});
  for (auto _ : state) {
    TensorField F;
    for (auto& row : F)
      for (auto& c : row) c = ScalarField(g);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l)
            for (int m = 0; m < 3; ++m)
              for (int n = 0; n < 3; ++n) {
                const double c = t(i, j, k, l, m, n);
                for (std::size_t q = 0; q < g.size(); ++q) F[i][l][q] += c * gu[j][m][q] * gu[k][n][q];
              }
    benchmark::DoNotOptimize(F[0][0].data());
  }
}
BENCHMARK(BM_NonlinearFluxDense)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_ElasticRhs(benchmark::State& state) {
  const GridSpec g{static_cast<int>(state.range(0)), 8.0, true};
  const VectorField u = random_smooth_vector(g, 4);
  ElasticMedium m;
  for (auto _ : state) {
    VectorField a = elastic_spatial(u, m);
    benchmark::DoNotOptimize(a[0].data());
  }
}
BENCHMARK(BM_ElasticRhs)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
