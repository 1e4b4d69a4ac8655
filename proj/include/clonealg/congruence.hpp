#pragma once

// Congruences of finite structures: principal generation through unary
// translations and enumeration of the whole lattice.

#include <string>
#include <utility>
#include <vector>

#include "clonealg/clone_engine.hpp"
#include "clonealg/structure.hpp"

namespace clonealg {

  // A partition stored as its restricted growth string.
  class Partition {
   public:
    explicit Partition(std::vector<std::uint32_t> labels);
    static Partition discrete(std::size_t n);
    static Partition total(std::size_t n);

    std::vector<std::uint32_t> const& rgs() const noexcept {
      return _rgs;
    }
    std::size_t size() const noexcept {
      return _rgs.size();
    }
    std::size_t classes() const noexcept {
      return _classes;
    }
    bool related(Element a, Element b) const {
      return _rgs[a] == _rgs[b];
    }
    bool finer_or_equal(Partition const& other) const;
    Partition join(Partition const& other) const;
    Partition meet(Partition const& other) const;
    std::vector<std::vector<Element>> blocks() const;

    bool operator==(Partition const& o) const {
      return _rgs == o._rgs;
    }
    // Canonical order: fewer classes first, then the string.
    bool operator<(Partition const& o) const;

   private:
    std::vector<std::uint32_t> _rgs;
    std::size_t                _classes = 0;
  };

  class SectionStructure {
   public:
    explicit SectionStructure(FiniteStructure s);

    FiniteStructure const& structure() const noexcept {
      return _s;
    }
    std::size_t size() const noexcept {
      return _s.size();
    }
    // Deduplicated, sorted maps x -> op(c.., x, ..d) with parameters in
    // the structure; identity maps are dropped.
    std::vector<std::vector<Element>> const& translations() const noexcept {
      return _translations;
    }

   private:
    FiniteStructure                   _s;
    std::vector<std::vector<Element>> _translations;
  };

  Partition congruence_generate(SectionStructure const& s,
                                std::vector<std::pair<Element, Element>> const& pairs);

  struct CongruenceLattice {
    std::string                                 section;  // descriptor of the structure
    std::vector<Partition>                      elements;  // canonical order
    std::vector<std::pair<std::size_t, std::size_t>> covers;  // (lower, upper)
  };

  inline constexpr std::size_t kCongruenceGuard = 40;

  CongruenceLattice congruence_enumerate(SectionStructure const& s,
                                         Exec                    exec  = Exec::Parallel,
                                         std::size_t             guard = kCongruenceGuard);

  // One node per congruence labelled by its class count; edges are covers.
  std::string emit_dot(CongruenceLattice const& l);

  // s = t holds in the variety of a (terms over at most k variables).
  bool equation_derivable(FinAlgebra const& a, Term const& s, Term const& t, std::size_t k);

}  // namespace clonealg
