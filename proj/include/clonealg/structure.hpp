#pragma once

// Finite structures with tabulated operations: the common input of the
// congruence and centrality code.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "clonealg/clone_engine.hpp"
#include "clonealg/handle.hpp"

namespace clonealg {

  struct StructOp {
    std::string          name;
    std::size_t          arity = 0;
    std::vector<Element> table;  // row-major, leftmost argument most significant

    Element operator()(std::size_t n, std::span<Element const> args) const;
  };

  class FiniteStructure {
   public:
    FiniteStructure(std::string name, std::vector<std::string> labels, std::vector<StructOp> ops);

    std::string const& name() const noexcept {
      return _name;
    }
    std::size_t size() const noexcept {
      return _labels.size();
    }
    std::vector<std::string> const& labels() const noexcept {
      return _labels;
    }
    std::vector<StructOp> const& ops() const noexcept {
      return _ops;
    }
    std::optional<std::size_t> find(std::string const& name) const;
    Element apply(std::size_t op, std::span<Element const> args) const {
      return _ops[op](size(), args);
    }
    // Element with the given label; throws UniverseError.
    Element element(std::string const& label) const;

    // The same structure keeping only the named operations.
    FiniteStructure restrict_to(std::vector<std::string> const& names) const;

   private:
    std::string              _name;
    std::vector<std::string> _labels;
    std::vector<StructOp>    _ops;
  };

  FiniteStructure from_algebra(FinAlgebra const& a);

  // Tabulates a handle on `domain`, which must be closed under the tabulated
  // operations: constants e1..ek for every e_i in the domain with
  // i <= q_max, operations q0..q<q_max>, and the signature when
  // include_sigma. Element j of the structure is domain[j].
  FiniteStructure tabulate(CloneAlgebraHandle const&   c,
                           std::vector<Element> const& domain,
                           std::size_t                 q_max,
                           bool                        include_sigma);

  // An n-Church view of a structure: the operation q of arity n+1 and the
  // constants e1..en.
  struct NChurch {
    std::size_t          n = 0;
    std::size_t          q_op = 0;
    std::vector<Element> es;  // es[i-1] = e_i

    Element q(FiniteStructure const& s, Element c, std::span<Element const> xs) const;
  };

  // Looks for "q<n>" then "q" with arity n+1, and constants "e1".."en".
  NChurch nchurch_view(FiniteStructure const& s, std::size_t n);

  // The pure nBA on {e1, ..., en}: q(e_i, x_1, ..., x_n) = x_i.
  FiniteStructure n_algebra(std::size_t n);
  // Componentwise power A^X with |X| = x; element tuples are encoded in base
  // |A| with the first coordinate most significant.
  FiniteStructure power(FiniteStructure const& a, std::size_t x);
  // n-tuples of pairwise disjoint subsets of {0, ..., x-1} covering it, with
  // q(Y, Z^1, ..., Z^n)_j = union over i of (Y_i intersect Z^i_j) and e_i the
  // tuple with X in position i.
  FiniteStructure n_partition_algebra(std::size_t n, std::size_t x);

}  // namespace clonealg
