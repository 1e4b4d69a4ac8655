// Serial reference versus OpenMP timings for the three parallel kernels.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>

#include <omp.h>

#include "clonealg/axioms.hpp"
#include "clonealg/block_algebra.hpp"
#include "clonealg/congruence.hpp"
#include "clonealg/structure.hpp"

using namespace clonealg;

namespace {

  double seconds(std::function<void()> const& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  void row(char const* name, double serial, double parallel) {
    std::printf("%-28s serial %9.4fs  parallel %9.4fs  speedup %5.2fx\n", name, serial, parallel,
                parallel > 0 ? serial / parallel : 0.0);
  }

  FinAlgebra nand() {
    auto u = make_numeric_universe(2, "bool");
    return FinAlgebra("nand", u,
                      {{"nand", OpTable::from_function(u, 2, [](std::span<Value const> x) -> Value {
                          return 1 - (x[0] & x[1]);
                        })}});
  }

}  // namespace

int main() {
  std::printf("threads: %d\n", omp_get_max_threads());
  auto const a = nand();

  std::size_t s1 = 0, s2 = 0;
  double      ts = seconds([&] { s1 = term_clone(a, 3, Exec::Serial).members().size(); });
  double      tp = seconds([&] { s2 = term_clone(a, 3, Exec::Parallel).members().size(); });
  row("clone_close nand cap 3", ts, tp);
  if (s1 != s2) {
    std::printf("mismatch: %zu vs %zu blocks\n", s1, s2);
    return 1;
  }

  auto const c      = clv_block_algebra(a, 3);
  auto const domain = low_dimension_domain(*c, 2);
  std::size_t v1 = 0, v2 = 0;
  ts = seconds([&] { v1 = check_axioms_serial(*c, AxiomMode::exhaustive(2), domain).total_instances; });
  tp = seconds([&] { v2 = check_axioms(*c, AxiomMode::exhaustive(2), domain).total_instances; });
  row("check_axioms n<=2 dom 16", ts, tp);
  if (v1 != v2) {
    std::printf("mismatch: %zu vs %zu instances\n", v1, v2);
    return 1;
  }

  auto const             c2 = clv_block_algebra(a, 2);
  std::vector<Element>   all(c2->size());
  std::iota(all.begin(), all.end(), 0);
  SectionStructure const ss(tabulate(*c2, all, 2, true));
  std::size_t            l1 = 0, l2 = 0;
  ts = seconds([&] { l1 = congruence_enumerate(ss, Exec::Serial).elements.size(); });
  tp = seconds([&] { l2 = congruence_enumerate(ss, Exec::Parallel).elements.size(); });
  row("congruence_enumerate B2", ts, tp);
  if (l1 != l2) {
    std::printf("mismatch: %zu vs %zu congruences\n", l1, l2);
    return 1;
  }
  return 0;
}
