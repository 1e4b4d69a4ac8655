#include "doctest.h"

#include <set>

#include "clonealg/block_algebra.hpp"
#include "fixtures.hpp"

using namespace clonealg;
using namespace fixtures;

namespace {

  Stream random_stream(std::mt19937& rng, std::size_t N) {
    std::vector<Value> pattern(1 + rng() % 3);
    for (auto& v : pattern) {
      v = static_cast<Value>(rng() % N);
    }
    Stream s = Stream::periodic(pattern);
    for (std::size_t i = 0, m = rng() % 4; i < m; ++i) {
      s = s.with(1 + rng() % 6, static_cast<Value>(rng() % N));
    }
    return s;
  }

}  // namespace

TEST_CASE("q on blocks agrees with top extensions on streams") {
  auto const   c = clv_block_algebra(nand(), 3);
  std::mt19937 rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t const    n = rng() % 4;
    Element const        a = static_cast<Element>(rng() % c->size());
    std::vector<Element> bs;
    for (std::size_t i = 0; i < n; ++i) {
      bs.push_back(static_cast<Element>(rng() % c->size()));
    }
    Element const r = c->q(n, a, bs);
    for (int s_trial = 0; s_trial < 4; ++s_trial) {
      Stream const       s = random_stream(rng, 2);
      std::vector<Value> prefix;
      for (auto b : bs) {
        prefix.push_back(top_eval(c->block(b), s));
      }
      CHECK(top_eval(c->block(r), s) == top_eval(c->block(a), s.with_prefix(prefix)));
    }
  }
}

TEST_CASE("q does not depend on the padding arity") {
  auto const   c = clv_block_algebra(nand(), 2);
  std::mt19937 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t const    n = rng() % 3;
    Element const        a = static_cast<Element>(rng() % c->size());
    std::vector<Element> bs;
    std::size_t          k0 = std::max(n, c->block(a).arity());
    for (std::size_t i = 0; i < n; ++i) {
      bs.push_back(static_cast<Element>(rng() % c->size()));
      k0 = std::max(k0, c->block(bs.back()).arity());
    }
    Block const expected = c->block(c->q(n, a, bs));
    for (std::size_t k = k0; k <= 4; ++k) {
      CHECK(c->q_padded(n, a, bs, k) == expected);
    }
    CHECK(q_apply(c->block(a), [&] {
            std::vector<Block> v;
            for (auto b : bs) {
              v.push_back(c->block(b));
            }
            return v;
          }(), n) == expected);
  }
}

TEST_CASE("units, signature and dimension") {
  auto const c = clv_block_algebra(nand(), 2);
  CHECK(c->size() == 16);
  CHECK(c->block(c->e(1)).generator() == OpTable::projection(boolean(), 1, 1));
  CHECK(c->block(c->e(2)).generator() == OpTable::projection(boolean(), 2, 2));
  CHECK_THROWS_AS(c->e(3), CapError);
  std::vector<Element> es{c->e(1), c->e(2)};
  Element const        nand_el = c->sigma(0, es);
  CHECK(c->block(nand_el).generator() == binary(1, 1, 1, 0));
  CHECK(c->sigma_block(0) == nand_el);
  CHECK(c->dimension(nand_el) == 2);
  CHECK(c->render(c->e(2)) == "v2");
  // Dependence tested through the units agrees with the block arity.
  auto const c3 = clv_block_algebra(nand(), 3);
  for (Element a = 0; a < c3->size(); ++a) {
    if (c3->block(a).arity() <= 2) {
      std::size_t d = 0;
      for (std::size_t n = 1; n <= 2; ++n) {
        if (!c3->independent_of(a, n)) {
          d = n;
        }
      }
      CHECK(d == c3->block(a).arity());
    }
  }
  CHECK_THROWS(BlockAlgebra(term_clone(left_zero(), 2), nand().ops()));
}

TEST_CASE("product handles are componentwise") {
  HandlePtr const l = clv_block_algebra(left_zero(), 2);
  HandlePtr const r = clv_block_algebra(right_zero(), 2);
  ProductHandle   p(l, r);
  CHECK(p.size() == l->size() * r->size());
  std::vector<Element> es{p.e(1), p.e(2)};
  Element const        x = p.sigma(0, es);
  CHECK(p.left_of(x) == l->e(1));
  CHECK(p.right_of(x) == r->e(2));
  CHECK(p.render(x) == "<v1, v2>");
  CHECK_THROWS(ProductHandle(l, clv_block_algebra(ba(), 2)));
}

TEST_CASE("the stream embedding is injective and preserves q") {
  auto const c   = clv_block_algebra(nand(), 2);
  auto const eps = epsilon_stream(*c);
  // Injective at epsilon and on all streams of support <= 2.
  std::set<Element> seen;
  for (Element x = 0; x < c->size(); ++x) {
    CHECK(rca_embed(*c, x, eps) == x);
    seen.insert(rca_embed(*c, x, eps));
  }
  CHECK(seen.size() == c->size());
  for (Element x = 0; x < c->size(); ++x) {
    for (Element y = x + 1; y < c->size(); ++y) {
      bool differ = false;
      for (Element s1 = 0; s1 < c->size() && !differ; ++s1) {
        for (Element s2 = 0; s2 < c->size() && !differ; ++s2) {
          Stream const s = eps.with(1, s1).with(2, s2);
          differ         = rca_embed(*c, x, s) != rca_embed(*c, y, s);
        }
      }
      CHECK(differ);
    }
  }
  std::mt19937 rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t const    n = rng() % 3;
    Element const        b = static_cast<Element>(rng() % c->size());
    std::vector<Element> cs;
    for (std::size_t i = 0; i < n; ++i) {
      cs.push_back(static_cast<Element>(rng() % c->size()));
    }
    Stream s = eps;
    for (std::size_t i = 1; i <= 2; ++i) {
      if (rng() % 2) {
        s = s.with(i, static_cast<Value>(rng() % c->size()));
      }
    }
    std::vector<Value> prefix;
    for (auto ci : cs) {
      prefix.push_back(rca_embed(*c, ci, s));
    }
    CHECK(rca_embed(*c, c->q(n, b, cs), s) == rca_embed(*c, b, s.with_prefix(prefix)));
  }
}
