// Benchmark: parallel semilocking lattice scan vs the serial reference.
#include <chrono>
#include <iostream>
#include <random>

#include "crn/siphon.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

crn::ReactionNetwork random_network(std::size_t n, std::size_t r,
                                    std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> coeff(1, 2);
  crn::ReactionNetwork net;
  for (std::size_t j = 0; j < n; ++j)
    net.species.push_back({j, "X" + std::to_string(j + 1)});
  while (net.reactions.size() < r) {
    crn::Reaction rx;
    rx.reactant.coeffs[pick(rng)] = coeff(rng);
    if (rng() & 1) rx.reactant.coeffs[pick(rng)] += 1;
    rx.product.coeffs[pick(rng)] = coeff(rng);
    if (rng() & 1) rx.product.coeffs[pick(rng)] += 1;
    if (rx.reactant == rx.product) continue;
    rx.rate_k = 1.0;
    net.reactions.push_back(std::move(rx));
  }
  return net;
}

template <typename F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  std::size_t n = argc > 1 ? std::stoul(argv[1]) : 22;
  std::size_t r = argc > 2 ? std::stoul(argv[2]) : 40;

#ifdef _OPENMP
  std::cout << "threads: " << omp_get_max_threads() << "\n";
#else
  std::cout << "threads: 1 (OpenMP disabled)\n";
#endif
  const auto net = random_network(n, r, 42);

  std::size_t count_serial = 0, count_parallel = 0;
  const double serial_ms = time_ms([&] {
    count_serial = crn::enumerate_semilocking_serial(net, n).size();
  });
  // Compare the raw scans; classification is shared by both paths and
  // would otherwise dominate the timing.
  const double parallel_ms = time_ms([&] {
    count_parallel = crn::enumerate_semilocking_masks(net, n).size();
  });

  std::cout << "n=" << n << " r=" << r << "\n";
  std::cout << "serial reference: " << serial_ms << " ms, " << count_serial
            << " semilocking sets\n";
  std::cout << "parallel kernel:  " << parallel_ms << " ms, " << count_parallel
            << " semilocking sets\n";
  if (count_serial != count_parallel) {
    std::cout << "MISMATCH\n";
    return 1;
  }
  return 0;
}
