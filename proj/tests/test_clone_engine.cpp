#include "doctest.h"

#include <set>

#include "clonealg/clone_engine.hpp"
#include "fixtures.hpp"

using namespace clonealg;
using namespace fixtures;

namespace {

  // Naive closure: every arity-k table obtained from the k-ary projections
  // by applying generators, iterated to a fixed point; blocks of all of them.
  std::set<Block> closure_oracle(UniversePtr const& u, std::vector<OpTable> const& gens, std::size_t cap) {
    std::set<Block> blocks;
    for (std::size_t k = 1; k <= cap; ++k) {
      std::set<std::vector<Value>> tables;
      for (std::size_t i = 1; i <= k; ++i) {
        tables.insert(OpTable::projection(u, i, k).table());
      }
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<std::vector<Value>> cur(tables.begin(), tables.end());
        for (auto const& g : gens) {
          std::size_t const        m = g.arity();
          std::vector<std::size_t> pick(m, 0);
          while (true) {
            std::vector<OpTable> args;
            for (auto p : pick) {
              args.emplace_back(u, k, cur[p]);
            }
            grew = tables.insert(compose(g, args, k).table()).second || grew;
            std::size_t pos = m;
            while (pos > 0 && ++pick[pos - 1] == cur.size()) {
              pick[--pos] = 0;
            }
            if (pos == 0) {
              break;
            }
          }
        }
      }
      for (auto const& t : tables) {
        blocks.insert(canonicalize(OpTable(u, k, t)));
      }
    }
    return blocks;
  }

}  // namespace

TEST_CASE("NAND section sizes") {
  auto const s2 = term_clone(nand(), 2);
  CHECK(s2.members().size() == 16);
  CHECK(s2.operation_count() == 22);
  CHECK(s2.operations().size() == 22);
  auto const s3 = term_clone(nand(), 3);
  // NAND is functionally complete: every function of arity <= 3.
  std::size_t expected = 0;
  std::size_t all_prev = 0;
  for (std::size_t k = 0; k <= 3; ++k) {
    std::size_t const all = std::size_t{1} << (std::size_t{1} << k);
    expected += all - all_prev;
    all_prev = all;
  }
  CHECK(s3.members().size() == expected);
  CHECK(s3.members().size() == 256);
}

TEST_CASE("closure matches a naive fixed point") {
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    bool const           ternary = trial % 2 == 0;
    auto                 u       = ternary ? make_numeric_universe(3) : boolean();
    std::vector<OpTable> gens;
    std::vector<NamedOp> named;
    std::size_t const    count = 1 + rng() % 2;
    for (std::size_t i = 0; i < count; ++i) {
      // Unary generators on three elements keep the oracle small.
      gens.push_back(random_op(rng, u, ternary ? rng() % 2 : rng() % 3));
      named.push_back({"g" + std::to_string(i), gens.back()});
    }
    ClonePresentation const p{u, named, 2};
    auto const              oracle = closure_oracle(u, gens, 2);
    for (Exec e : {Exec::Serial, Exec::Parallel}) {
      auto const s = clone_close(p, e);
      CHECK(std::set<Block>(s.members().begin(), s.members().end()) == oracle);
    }
  }
}

TEST_CASE("serial and parallel sections coincide") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto                 u = boolean();
    std::vector<NamedOp> named{{"g", random_op(rng, u, 2)}, {"h", random_op(rng, u, rng() % 3)}};
    ClonePresentation const p{u, named, 3};
    auto const              a = clone_close(p, Exec::Serial);
    auto const              b = clone_close(p, Exec::Parallel);
    REQUIRE(a.members() == b.members());
    for (std::size_t i = 0; i < a.members().size(); ++i) {
      CHECK(a.term(i) == b.term(i));
    }
  }
}

TEST_CASE("representative terms evaluate into their blocks") {
  for (auto const& alg : {nand(), ba(), left_zero()}) {
    auto const s = term_clone(alg, 3);
    for (std::size_t i = 0; i < s.members().size(); ++i) {
      std::size_t const k = std::max<std::size_t>({1, s.members()[i].arity(), s.term(i).max_index()});
      CHECK(canonicalize(term_eval(s.term(i), alg, k)) == s.members()[i]);
    }
  }
}

TEST_CASE("membership, monotonicity and idempotence") {
  auto const s = term_clone(left_zero(), 3);
  // x.y = x: only projections survive.
  CHECK(s.members().size() == 3);
  CHECK(s.contains(OpTable::projection(boolean(), 2, 3)) == Membership::Yes);
  CHECK(s.contains(binary(0, 0, 0, 1)) == Membership::No);
  CHECK(s.contains(OpTable::projection(boolean(), 1, 4)) == Membership::Undecided);

  auto const small = term_clone(FinAlgebra("and", boolean(), {{"and", binary(0, 0, 0, 1)}}), 2);
  auto const big   = term_clone(ba(), 2);
  for (auto const& b : small.members()) {
    CHECK(big.find(b).has_value());
  }
  auto const bigger = term_clone(ba(), 3);
  for (auto const& b : big.members()) {
    CHECK(bigger.find(b).has_value());
  }
  // Closing the members again adds nothing.
  std::vector<NamedOp> again;
  for (std::size_t i = 0; i < big.members().size(); ++i) {
    again.push_back({"m" + std::to_string(i), big.members()[i].generator()});
  }
  auto const twice = clone_close({boolean(), again, 2});
  CHECK(twice.members() == big.members());
}

TEST_CASE("generators above the cap") {
  std::vector<NamedOp> gens{{"maj", OpTable::from_function(boolean(), 3, [](std::span<Value const> x) -> Value {
                               return (x[0] + x[1] + x[2]) >= 2;
                             })}};
  auto const s = clone_close({boolean(), gens, 2});
  // Majority with repeated arguments only yields projections.
  CHECK(s.members().size() == 2);
}

TEST_CASE("term evaluation errors") {
  CHECK_THROWS_AS(term_eval(parse_term("(nand v1 v3)"), nand(), 2), ArityError);
  CHECK_THROWS_AS(term_eval(parse_term("(nand v1)"), nand(), 2), ArityError);
  CHECK_THROWS_AS(term_eval(parse_term("(and v1 v2)"), nand(), 2), UniverseError);
  CHECK_THROWS_AS(FinAlgebra("x", boolean(), {{"f", binary(0, 0, 0, 0)}, {"f", binary(0, 0, 0, 0)}}),
                  UniverseError);
}
