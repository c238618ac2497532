// Compares the OpenMP and serial scoring kernels on a synthetic catalog.
//   bench_scoring [components] [leaves] [repeats]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>

#include "comporank/scoring.hpp"

using namespace comporank;

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 200000;
  const std::size_t leaves = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 14;
  const int repeats = argc > 3 ? std::atoi(argv[3]) : 5;

  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> rating(0.5, 10.0);
  std::uniform_real_distribution<double> raw(0.0, 1000.0);

  LeafWeights weights;
  for (std::size_t h = 0; h < leaves; ++h) weights.push_back({"leaf" + std::to_string(h), 1.0 / leaves});
  // Force an exact unit sum regardless of rounding in 1/leaves.
  double acc = 0.0;
  for (std::size_t h = 0; h + 1 < leaves; ++h) acc += weights[h].weight;
  weights.back().weight = 1.0 - acc;

  std::vector<Component> comps(n);
  for (std::size_t i = 0; i < n; ++i) {
    comps[i].id = "c" + std::to_string(i);
    for (const auto& w : weights) comps[i].ratings[w.id] = rating(rng);
    comps[i].raw_cost = raw(rng);
    comps[i].raw_time = raw(rng);
  }
  ScoringParams params;

  auto time_it = [&](auto&& fn) {
    double best = 1e300;
    for (int r = 0; r < repeats; ++r) {
      auto t0 = std::chrono::steady_clock::now();
      auto out = fn();
      auto t1 = std::chrono::steady_clock::now();
      if (out.size() != n) std::abort();
      best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
  };

  double serial = time_it([&] { return evaluate_all_serial(comps, weights, params); });
  double parallel = time_it([&] { return evaluate_all(comps, weights, params); });

  auto a = evaluate_all_serial(comps, weights, params);
  auto b = evaluate_all(comps, weights, params);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].score != b[i].score) {
      std::fprintf(stderr, "mismatch at %zu\n", i);
      return 1;
    }
  }

  std::printf("components %zu  leaves %zu  threads %d\n", n, leaves, omp_get_max_threads());
  std::printf("serial    %10.3f ms\n", serial);
  std::printf("parallel  %10.3f ms  (speedup %.2fx)\n", parallel, serial / parallel);
  return 0;
}
