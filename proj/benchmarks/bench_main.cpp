#include <benchmark/benchmark.h>

#include <random>

#include <tropid/constructors.hpp>
#include <tropid/plactic.hpp>
#include <tropid/verifier.hpp>

using namespace tropid;

static void matrix_product(benchmark::State& state) {
  SamplerConfig cfg;
  cfg.dim     = static_cast<std::size_t>(state.range(0));
  auto const w = sample_assignment(cfg, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(w.a * w.b);
  }
}
BENCHMARK(matrix_product)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

static void matrix_power(benchmark::State& state) {
  SamplerConfig cfg;
  cfg.dim      = 5;
  auto const w = sample_assignment(cfg, 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(power(w.a, static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(matrix_power)->Arg(1'000)->Arg(1'000'000'000);

static void slp_m3_side(benchmark::State& state) {
  auto const id = m3_identity();
  auto const w  = m4_witness();
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(id.lhs(), w));
  }
}
BENCHMARK(slp_m3_side);

static void slp_prime_side(benchmark::State& state) {
  auto const sep = prime_separation(5);
  SamplerConfig cfg;
  cfg.dim = 4;
  std::uint64_t trial = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(evaluate(sep.identity.lhs(), sample_assignment(cfg, trial++)));
  }
}
BENCHMARK(slp_prime_side)->Unit(benchmark::kMillisecond);

static void prime_construction(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(prime_separation(static_cast<std::uint64_t>(state.range(0))));
  }
}
BENCHMARK(prime_construction)->Arg(5)->Arg(7)->Unit(benchmark::kMillisecond);

static void schensted(benchmark::State& state) {
  std::mt19937_64                    rng(1);
  std::uniform_int_distribution<int> letter(1, 4);
  std::string                        w;
  for (int i = 0; i < state.range(0); ++i) {
    w += static_cast<char>('0' + letter(rng));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(Tableau::from_word(w));
  }
}
BENCHMARK(schensted)->Arg(16)->Arg(256)->Arg(4096);

static void rho_word(benchmark::State& state) {
  for (auto _ : state) {
    benchmark::DoNotOptimize(rho("31214231"));
  }
}
BENCHMARK(rho_word);

static void first_difference_long(benchmark::State& state) {
  auto const sep = prime_separation(5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(first_difference(sep.identity.lhs(), sep.identity.rhs()));
  }
}
BENCHMARK(first_difference_long)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
