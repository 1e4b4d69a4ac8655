#include "clonealg/representable.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

#include "clonealg/tuples.hpp"

namespace clonealg {

  namespace {

    std::string show(std::span<Element const> xs) {
      std::string s = "(";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? "," : "") + std::to_string(xs[i]);
      }
      return s + ")";
    }

    void note(RepIsoReport& r, std::string msg) {
      ++r.mismatches;
      if (r.details.size() < 16) {
        r.details.push_back(std::move(msg));
      }
    }

    std::vector<Element> all_elements(CloneAlgebraHandle const& c) {
      std::vector<Element> v(c.size());
      for (Element a = 0; a < c.size(); ++a) {
        v[a] = a;
      }
      return v;
    }

  }  // namespace

  RepVerdict is_representable(CloneAlgebraHandle const&   c,
                              SectionFunction const&      f,
                              std::size_t                 k,
                              std::vector<Element> const& domain) {
    if (k > c.e_limit()) {
      return {Verdict::Unknown, "e_" + std::to_string(k) + " is not available"};
    }
    std::vector<Element> es;
    for (std::size_t i = 1; i <= k; ++i) {
      es.push_back(c.e(i));
    }
    Element const a   = f(es);
    auto          dim = c.dimension(a);
    if (!dim) {
      return {Verdict::Unknown, "dimension of f(e) is beyond the bound"};
    }
    if (*dim > k) {
      return {Verdict::No, "f(e) has dimension " + std::to_string(*dim) + " > " + std::to_string(k)};
    }
    RepVerdict out{Verdict::Yes, ""};
    for_each_tuple(domain, k, [&](std::span<Element const> xs) {
      if (out.verdict == Verdict::Yes && f(xs) != c.q(k, a, xs)) {
        out = {Verdict::No, "f" + show(xs) + " differs from q_" + std::to_string(k) + "(f(e), x)"};
      }
    });
    return out;
  }

  RepFunction rep_block(CloneAlgebraHandle const& c, Element a) {
    auto dim = c.dimension(a);
    if (!dim) {
      throw CapError("dimension of " + c.render(a) + " is not finite within the bound");
    }
    return {*dim, a};
  }

  RepIsoReport rep_iso_check(BlockAlgebra const& c, std::size_t q_bound) {
    std::size_t const N = c.size();
    std::vector<std::string> symbols;
    for (Element a = 0; a < N; ++a) {
      symbols.push_back("x" + std::to_string(a));
    }
    UniversePtr U = make_universe("section of " + c.name(), symbols);

    RepIsoReport r;
    r.elements   = N;
    r.limitation = "surjectivity is checked onto the representable operations of arity <= "
                   + std::to_string(c.section().cap()) + " over the enumerated section";

    // R(a) as an operation on U of arity dimension(a).
    std::vector<Block> R;
    R.reserve(N);
    std::unordered_map<Block, Element, BlockHash> seen;
    for (Element a = 0; a < N; ++a) {
      auto    f = rep_block(c, a);
      OpTable t = OpTable::from_function(U, f.arity, [&](std::span<Value const> xs) {
        return static_cast<Value>(c.q(f.arity, a, xs));
      });
      Block b(t);
      ++r.checked;
      if (b.arity() != f.arity) {
        note(r, "R(" + c.render(a) + ") has arity " + std::to_string(b.arity()) + " but dimension "
                    + std::to_string(f.arity));
      }
      ++r.checked;
      auto [it, fresh] = seen.emplace(b, a);
      if (!fresh) {
        note(r, "R(" + c.render(a) + ") = R(" + c.render(it->second) + ")");
      }
      R.push_back(std::move(b));
    }

    for (std::size_t i = 1; i <= c.e_limit(); ++i) {
      ++r.checked;
      if (!(R[c.e(i)] == Block(OpTable::projection(U, i, i)))) {
        note(r, "R(e" + std::to_string(i) + ") is not the projection block");
      }
    }

    auto const all = all_elements(c);
    for (std::size_t n = 0; n <= q_bound; ++n) {
      for_each_tuple(all, n + 1, [&](std::span<Element const> xs) {
        ++r.checked;
        std::vector<Block> images;
        for (std::size_t i = 1; i <= n; ++i) {
          images.push_back(R[xs[i]]);
        }
        Element const lhs = c.q(n, xs[0], xs.subspan(1));
        if (!(R[lhs] == q_apply(R[xs[0]], images, n))) {
          note(r, "R(q" + std::to_string(n) + show(xs) + ") differs");
        }
      });
    }

    for (std::size_t op = 0; op < c.signature().size(); ++op) {
      std::size_t const m     = c.signature()[op].second;
      OpTable           sigma = OpTable::from_function(U, m, [&](std::span<Value const> xs) {
        return static_cast<Value>(c.sigma(op, xs));
      });
      for_each_tuple(all, m, [&](std::span<Element const> xs) {
        ++r.checked;
        std::size_t k = 0;
        for (Element x : xs) {
          k = std::max(k, R[x].arity());
        }
        std::vector<OpTable> inner;
        for (Element x : xs) {
          inner.push_back(R[x].member(k));
        }
        Block rhs(compose(sigma, inner, k));
        if (!(R[c.sigma(op, xs)] == rhs)) {
          note(r, "R(" + c.signature()[op].first + show(xs) + ") differs");
        }
      });
    }

    for (std::size_t k = 0; k <= c.section().cap(); ++k) {
      for (Element a = 0; a < N; ++a) {
        if (c.block(a).arity() > k) {
          continue;
        }
        ++r.checked;
        OpTable t = OpTable::from_function(U, k, [&](std::span<Value const> xs) {
          return static_cast<Value>(c.q(k, a, xs));
        });
        if (!(Block(t) == R[a])) {
          note(r, "x -> q" + std::to_string(k) + "(" + c.render(a) + ", x) is not in R(" + c.render(a) + ")");
        }
      }
    }
    return r;
  }

  FiSection fi_section(CloneAlgebraHandle const&   c,
                       std::size_t                 k,
                       std::size_t                 q_bound,
                       std::vector<Element> const& domain) {
    FiSection            out;
    std::vector<Element> dom = domain.empty() ? all_elements(c) : domain;
    for (Element a : dom) {
      auto d = c.dimension(a);
      if (d && *d <= k) {
        out.elements.push_back(a);
      }
    }
    std::vector<bool> in(c.size(), false);
    for (Element a : out.elements) {
      in[a] = true;
    }
    auto fail = [&](std::string w) {
      if (out.closed) {
        out.closed  = false;
        out.witness = std::move(w);
      }
    };
    for (std::size_t n = 0; n <= q_bound && out.closed; ++n) {
      for_each_tuple(out.elements, n + 1, [&](std::span<Element const> xs) {
        if (out.closed && !in[c.q(n, xs[0], xs.subspan(1))]) {
          fail("q" + std::to_string(n) + show(xs));
        }
      });
    }
    for (std::size_t op = 0; op < c.signature().size() && out.closed; ++op) {
      for_each_tuple(out.elements, c.signature()[op].second, [&](std::span<Element const> xs) {
        if (out.closed && !in[c.sigma(op, xs)]) {
          fail(c.signature()[op].first + show(xs));
        }
      });
    }
    return out;
  }

}  // namespace clonealg
