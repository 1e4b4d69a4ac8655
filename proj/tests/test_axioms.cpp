#include "doctest.h"

#include "clonealg/axioms.hpp"
#include "clonealg/block_algebra.hpp"
#include "fixtures.hpp"

using namespace clonealg;
using namespace fixtures;

namespace {

  // Odometer over domain^m.
  template <class F>
  void tuples(std::vector<Element> const& dom, std::size_t m, F const& f) {
    std::vector<std::size_t> pick(m, 0);
    std::vector<Element>     xs(m);
    while (true) {
      for (std::size_t i = 0; i < m; ++i) {
        xs[i] = dom[pick[i]];
      }
      f(xs);
      std::size_t pos = m;
      while (pos > 0 && ++pick[pos - 1] == dom.size()) {
        pick[--pos] = 0;
      }
      if (pos == 0) {
        return;
      }
    }
  }

  std::size_t c5_oracle(CloneAlgebraHandle const& c, std::vector<Element> const& dom, std::size_t bound) {
    std::size_t bad = 0;
    for (std::size_t n = 0; n <= bound; ++n) {
      tuples(dom, 1 + 2 * n, [&](std::vector<Element> const& v) {
        std::span<Element const> all(v);
        auto const               ys = all.subspan(1, n);
        auto const               zs = all.subspan(1 + n, n);
        Element const            lhs = c.q(n, c.q(n, v[0], ys), zs);
        std::vector<Element>     inner;
        for (auto y : ys) {
          inner.push_back(c.q(n, y, zs));
        }
        bad += lhs != c.q(n, v[0], inner);
      });
    }
    return bad;
  }

  std::size_t c1_oracle(CloneAlgebraHandle const& c, std::vector<Element> const& dom, std::size_t bound) {
    std::size_t bad = 0;
    for (std::size_t n = 1; n <= bound; ++n) {
      for (std::size_t i = 1; i <= n && i <= c.e_limit(); ++i) {
        tuples(dom, n, [&](std::vector<Element> const& xs) { bad += c.q(n, c.e(i), xs) != xs[i - 1]; });
      }
    }
    return bad;
  }

}  // namespace

TEST_CASE("valid clone algebras satisfy every law") {
  auto const nand2 = clv_block_algebra(nand(), 2);
  CHECK(check_axioms(*nand2, AxiomMode::exhaustive(2)).ok());
  auto const sets3 = clv_block_algebra(sets(), 3);
  CHECK(check_axioms(*sets3, AxiomMode::exhaustive(3)).ok());
  auto const ba2 = clv_block_algebra(ba(), 2);
  auto const r   = check_axioms(*ba2, AxiomMode::exhaustive(2));
  CHECK(r.ok());
  CHECK(r.laws.count("C6") == 1);
  CHECK(r.laws.at("C6").instances > 0);
  ProductHandle const p(clv_block_algebra(left_zero(), 2), clv_block_algebra(right_zero(), 2));
  CHECK(check_axioms(p, AxiomMode::exhaustive(2)).ok());
  CHECK(check_axioms(TrivialCloneAlgebra(), AxiomMode::exhaustive(2), {0}).ok());
}

TEST_CASE("injected faults are reported and counted exactly") {
  HandlePtr const base = clv_block_algebra(nand(), 2);
  std::mt19937    rng(41);
  for (int trial = 0; trial < 4; ++trial) {
    std::size_t const    n = 1 + rng() % 2;
    Element const        a = static_cast<Element>(rng() % base->size());
    std::vector<Element> bs;
    for (std::size_t i = 0; i < n; ++i) {
      bs.push_back(static_cast<Element>(rng() % base->size()));
    }
    Element const right = base->q(n, a, bs);
    Element const wrong = static_cast<Element>((right + 1 + rng() % (base->size() - 1)) % base->size());
    FaultInjectedHandle const f(base, n, a, bs, wrong);
    auto const                dom = all_elements(f);
    auto const                par = check_axioms(f, AxiomMode::exhaustive(2), dom);
    auto const                ser = check_axioms_serial(f, AxiomMode::exhaustive(2), dom);
    CHECK_FALSE(par.ok());
    CHECK(par.total_violations == ser.total_violations);
    CHECK(par.total_instances == ser.total_instances);
    CHECK(par.listed == ser.listed);
    CHECK(par.laws.at("C5").violations == c5_oracle(f, dom, 2));
    CHECK(par.laws.at("C1").violations == c1_oracle(f, dom, 2));
    CHECK(par.listed.size() <= AxiomReport::kMaxListed);
    CHECK(std::is_sorted(par.listed.begin(), par.listed.end()));
  }
}

TEST_CASE("sampled mode is reproducible") {
  HandlePtr const           base = clv_block_algebra(nand(), 2);
  std::vector<Element>      bs{base->e(2), base->e(1)};
  FaultInjectedHandle const f(base, 2, base->sigma(0, bs), bs, base->e(1));
  auto const                a = check_axioms(f, AxiomMode::sampled(2, 2000, 7));
  auto const                b = check_axioms(f, AxiomMode::sampled(2, 2000, 7));
  CHECK(a.total_violations == b.total_violations);
  CHECK(a.listed == b.listed);
  CHECK(a.total_instances == b.total_instances);
}

TEST_CASE("low-dimension domains") {
  auto const c = clv_block_algebra(nand(), 3);
  CHECK(low_dimension_domain(*c, 0).size() == 2);
  CHECK(low_dimension_domain(*c, 1).size() == 4);
  CHECK(low_dimension_domain(*c, 2).size() == 16);
  CHECK(low_dimension_domain(*c, 3).size() == 256);
}
