#pragma once

// Finite algebras, clone generation up to an arity cap, and term operations.

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "clonealg/finite_ops.hpp"
#include "clonealg/term.hpp"

namespace clonealg {

  struct NamedOp {
    std::string name;
    OpTable     op;
  };

  class FinAlgebra {
   public:
    FinAlgebra(std::string name, UniversePtr universe, std::vector<NamedOp> ops);

    std::string const& name() const noexcept {
      return _name;
    }
    UniversePtr const& universe() const noexcept {
      return _universe;
    }
    std::vector<NamedOp> const& ops() const noexcept {
      return _ops;
    }
    // nullptr when absent.
    OpTable const* find(std::string const& name) const;
    std::vector<std::pair<std::string, std::size_t>> signature() const;
    std::size_t max_arity() const;

   private:
    std::string          _name;
    UniversePtr          _universe;
    std::vector<NamedOp> _ops;
  };

  // k-ary term operation of t. Unit leaves e_i are read as v_i.
  OpTable term_eval(Term const& t, FinAlgebra const& a, std::size_t k);

  struct ClonePresentation {
    UniversePtr          universe;
    std::vector<NamedOp> generators;
    std::size_t          cap = 1;

    static ClonePresentation of(FinAlgebra const& a, std::size_t cap);
  };

  enum class Membership { No, Yes, Undecided };

  enum class Exec { Serial, Parallel };

  class CloneSection {
   public:
    ClonePresentation const& presentation() const noexcept {
      return _presentation;
    }
    std::size_t cap() const noexcept {
      return _presentation.cap;
    }
    UniversePtr const& universe() const noexcept {
      return _presentation.universe;
    }

    // Sorted by (arity, table).
    std::vector<Block> const& members() const noexcept {
      return _members;
    }
    // A term over the generator names whose term operation lies in the
    // block; variables are bounded by max(1, block arity).
    Term const& term(std::size_t member) const {
      return _terms.at(member);
    }
    std::optional<std::size_t> find(Block const& b) const;

    // Number of operations of arity <= cap, i.e. |F^(0)| + ... + |F^(cap)|.
    std::size_t operation_count() const;
    // All operations of arity <= cap, ordered by (arity, table).
    std::vector<OpTable> operations() const;

    // Undecided when op.arity() > cap.
    Membership contains(OpTable const& op) const;

   private:
    friend CloneSection clone_close(ClonePresentation const&, Exec);

    ClonePresentation                               _presentation;
    std::vector<Block>                              _members;
    std::vector<Term>                               _terms;
    std::unordered_map<Block, std::size_t, BlockHash> _index;
  };

  // Generators may exceed the cap. Throws CapError when the section would
  // grow past the member guard.
  CloneSection clone_close(ClonePresentation const& p, Exec exec = Exec::Parallel);
  Membership   clone_contains(CloneSection const& s, OpTable const& op);
  CloneSection term_clone(FinAlgebra const& a, std::size_t cap, Exec exec = Exec::Parallel);

  // Limit on the number of k-ary operations generated for a single k.
  inline constexpr std::size_t kMemberGuard = std::size_t{1} << 20;

}  // namespace clonealg
