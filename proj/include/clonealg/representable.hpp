#pragma once

// Representable functions of a clone algebra and the representation of a
// block algebra by the blocks R(a).

#include <functional>
#include <string>
#include <vector>

#include "clonealg/block_algebra.hpp"
#include "clonealg/handle.hpp"

namespace clonealg {

  // f(x_1, ..., x_k) = q_k(value, x_1, ..., x_k).
  struct RepFunction {
    std::size_t arity = 0;
    Element     value = 0;

    Element operator()(CloneAlgebraHandle const& c, std::span<Element const> xs) const {
      return c.q(arity, value, xs);
    }
  };

  enum class Verdict { No, Yes, Unknown };

  struct RepVerdict {
    Verdict     verdict = Verdict::Unknown;
    std::string reason;
  };

  using SectionFunction = std::function<Element(std::span<Element const>)>;

  // Checks f(x) = q_k(f(e_1, ..., e_k), x) on every x over `domain` and
  // dimension(f(e)) <= k.
  RepVerdict is_representable(CloneAlgebraHandle const&   c,
                              SectionFunction const&      f,
                              std::size_t                 k,
                              std::vector<Element> const& domain);

  // Throws CapError when the dimension of a cannot be settled.
  RepFunction rep_block(CloneAlgebraHandle const& c, Element a);

  struct RepIsoReport {
    std::size_t              elements   = 0;
    std::size_t              checked    = 0;
    std::size_t              mismatches = 0;
    std::vector<std::string> details;
    std::string              limitation;

    bool ok() const {
      return mismatches == 0;
    }
  };

  // Builds R(a) as an operation on the section itself and compares, in the
  // full block algebra over that universe: injectivity, arity = dimension,
  // R(e_i) = P_i, R(q_n(a, b)) = q_n(R(a), R(b)) for n <= q_bound,
  // R(sigma(b)) = sigma(R(b)), and that each x -> q_k(c, x) is in R(c).
  RepIsoReport rep_iso_check(BlockAlgebra const& c, std::size_t q_bound);

  struct FiSection {
    std::vector<Element> elements;
    bool                 closed = true;
    std::string          witness;  // first failure of closure
  };

  // Elements of `domain` (all when empty) with dimension <= k, and whether
  // they are closed under q_n (n <= q_bound) and sigma.
  FiSection fi_section(CloneAlgebraHandle const&   c,
                       std::size_t                 k,
                       std::size_t                 q_bound,
                       std::vector<Element> const& domain = {});

}  // namespace clonealg
