#include "doctest.h"

#include <set>

#include "clonealg/block_algebra.hpp"
#include "clonealg/congruence.hpp"
#include "fixtures.hpp"

using namespace clonealg;
using namespace fixtures;

namespace {

  // Every partition of {0..n-1} as a restricted growth string.
  std::vector<std::vector<std::uint32_t>> all_rgs(std::size_t n) {
    std::vector<std::vector<std::uint32_t>> out;
    std::vector<std::uint32_t>              cur(n, 0);
    std::function<void(std::size_t, std::uint32_t)> go = [&](std::size_t i, std::uint32_t top) {
      if (i == n) {
        out.push_back(cur);
        return;
      }
      for (std::uint32_t v = 0; v <= top + 1; ++v) {
        cur[i] = v;
        go(i + 1, std::max(top, v));
      }
    };
    if (n > 0) {
      cur[0] = 0;
      go(1, 0);
    }
    return out;
  }

  // Compatibility with whole tuples, not translations.
  bool compatible_full(FiniteStructure const& s, std::vector<std::uint32_t> const& rgs) {
    std::size_t const N = s.size();
    for (std::size_t oi = 0; oi < s.ops().size(); ++oi) {
      std::size_t const m = s.ops()[oi].arity;
      std::size_t       rows = 1;
      for (std::size_t i = 0; i < m; ++i) {
        rows *= N;
      }
      std::vector<Element> x(m), y(m);
      for (std::size_t r1 = 0; r1 < rows; ++r1) {
        for (std::size_t r2 = 0; r2 < rows; ++r2) {
          std::size_t a = r1, b = r2;
          bool        related = true;
          for (std::size_t i = m; i-- > 0;) {
            x[i] = static_cast<Element>(a % N);
            y[i] = static_cast<Element>(b % N);
            a /= N;
            b /= N;
            related = related && rgs[x[i]] == rgs[y[i]];
          }
          if (related && rgs[s.apply(oi, x)] != rgs[s.apply(oi, y)]) {
            return false;
          }
        }
      }
    }
    return true;
  }

  FiniteStructure random_structure(std::mt19937& rng, std::size_t n) {
    std::vector<StructOp> ops{random_struct_op(rng, "f", n, 1)};
    if (rng() % 2) {
      ops.push_back(random_struct_op(rng, "g", n, 2));
    }
    return FiniteStructure("random", numeric_labels(n), std::move(ops));
  }

}  // namespace

TEST_CASE("partition operations") {
  Partition const a({0, 0, 1, 1, 2});
  Partition const b({0, 1, 1, 2, 2});
  CHECK(a.classes() == 3);
  CHECK(a.join(b) == Partition::total(5));
  CHECK(a.meet(b) == Partition::discrete(5));
  CHECK(Partition::discrete(5).finer_or_equal(a));
  CHECK_FALSE(a.finer_or_equal(b));
  CHECK(Partition({7, 7, 3}).rgs() == std::vector<std::uint32_t>{0, 0, 1});
  CHECK(a.blocks() == std::vector<std::vector<Element>>{{0, 1}, {2, 3}, {4}});
  CHECK(Partition::total(3) < Partition::discrete(3));
}

TEST_CASE("enumeration matches brute force over all partitions") {
  std::mt19937 rng(1234);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t const      n = 2 + rng() % 5;
    auto const             s = random_structure(rng, n);
    SectionStructure const ss(s);
    std::set<Partition>    oracle;
    for (auto const& r : all_rgs(n)) {
      if (compatible_full(s, r)) {
        oracle.insert(Partition(r));
      }
    }
    auto const par = congruence_enumerate(ss, Exec::Parallel);
    auto const ser = congruence_enumerate(ss, Exec::Serial);
    CHECK(std::set<Partition>(par.elements.begin(), par.elements.end()) == oracle);
    CHECK(par.elements == ser.elements);
    CHECK(par.covers == ser.covers);
    CHECK(std::is_sorted(par.elements.begin(), par.elements.end()));
    CHECK(par.elements.front() == Partition::total(n));
    CHECK(par.elements.back() == Partition::discrete(n));
  }
}

TEST_CASE("generated congruences are least") {
  std::mt19937 rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t const      n = 2 + rng() % 5;
    SectionStructure const ss(random_structure(rng, n));
    auto const             lattice = congruence_enumerate(ss);
    Element const          a       = static_cast<Element>(rng() % n);
    Element const          b       = static_cast<Element>(rng() % n);
    Partition const        g       = congruence_generate(ss, {{a, b}});
    Partition              meet    = Partition::total(n);
    for (auto const& p : lattice.elements) {
      if (p.related(a, b)) {
        meet = meet.meet(p);
      }
    }
    CHECK(g == meet);
    // Idempotent and monotone.
    std::vector<std::pair<Element, Element>> pairs;
    for (auto const& cls : g.blocks()) {
      for (std::size_t i = 1; i < cls.size(); ++i) {
        pairs.emplace_back(cls[0], cls[i]);
      }
    }
    CHECK(congruence_generate(ss, pairs) == g);
    Element const c = static_cast<Element>(rng() % n);
    CHECK(g.finer_or_equal(congruence_generate(ss, {{a, b}, {a, c}})));
  }
  SectionStructure const ss(random_structure(rng, 3));
  CHECK(congruence_generate(ss, {}) == Partition::discrete(3));
  CHECK(congruence_generate(ss, {{1, 1}}) == Partition::discrete(3));
}

TEST_CASE("sections of clone algebras") {
  auto const sets4 = clv_block_algebra(sets(), 4);
  SectionStructure const s4(tabulate(*sets4, all_elements(*sets4), 4, true));
  CHECK(s4.size() == 4);
  CHECK(congruence_generate(s4, {{sets4->e(1), sets4->e(2)}}) == Partition::total(4));
  CHECK(congruence_enumerate(s4).elements.size() == 2);

  auto const b2 = clv_block_algebra(ba(), 2);
  SectionStructure const full(tabulate(*b2, all_elements(*b2), 2, true));
  SectionStructure const pure(tabulate(*b2, all_elements(*b2), 2, false));
  auto const             lf = congruence_enumerate(full);
  auto const             lp = congruence_enumerate(pure);
  CHECK(lf.elements.size() == 2);
  CHECK(lf.elements == lp.elements);

  auto const n2 = clv_block_algebra(nand(), 2);
  SectionStructure const nf(tabulate(*n2, all_elements(*n2), 2, true));
  SectionStructure const np(tabulate(*n2, all_elements(*n2), 2, false));
  CHECK(congruence_enumerate(nf).elements == congruence_enumerate(np).elements);

  // Collapsing two blocks collapses their substitution instances.
  Partition const theta = congruence_generate(nf, {{n2->e(1), n2->e(2)}});
  for (Element a = 0; a < n2->size(); ++a) {
    std::vector<Element> s1{n2->e(1)}, s2{n2->e(2)};
    CHECK(theta.related(n2->q(1, a, s1), n2->q(1, a, s2)));
  }
  CHECK_THROWS_AS(congruence_enumerate(nf, Exec::Parallel, 10), CapError);
}

TEST_CASE("DOT rendering") {
  FiniteStructure const two("two", numeric_labels(2), {});
  auto const            l2 = congruence_enumerate(SectionStructure(two));
  CHECK(l2.elements.size() == 2);
  CHECK(emit_dot(l2) == "digraph congruences {\n  rankdir=BT;\n  n0 [label=\"1\"];\n  n1 [label=\"2\"];\n  n1 -> n0;\n}\n");
  FiniteStructure const one("one", numeric_labels(1), {});
  auto const            l1 = congruence_enumerate(SectionStructure(one));
  CHECK(l1.elements.size() == 1);
  CHECK(l1.covers.empty());
  // 0 -> 0, 1 -> 0, 2 -> 1: congruences Delta < {01|2} < nabla.
  FiniteStructure const chain("chain", numeric_labels(3), {{"f", 1, {0, 0, 1}}});
  auto const            l3 = congruence_enumerate(SectionStructure(chain));
  CHECK(l3.elements.size() == 3);
  CHECK(l3.covers.size() == 2);
}

TEST_CASE("equations in varieties") {
  CHECK(equation_derivable(ba(), parse_term("(not (not v1))"), parse_term("v1"), 1));
  CHECK_FALSE(equation_derivable(sets(), parse_term("v1"), parse_term("v2"), 2));
  CHECK(equation_derivable(left_zero(), parse_term("(· v1 v2)"), parse_term("v1"), 2));
  CHECK_FALSE(equation_derivable(right_zero(), parse_term("(· v1 v2)"), parse_term("v1"), 2));
  CHECK(equation_derivable(ba(), parse_term("(and v1 v2)"), parse_term("(and v2 v1)"), 2));
}
