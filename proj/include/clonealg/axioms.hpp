#pragma once

// Checker for the clone algebra axioms (C1)-(C6) and a few derived laws
// over a finite variable domain.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clonealg/handle.hpp"

namespace clonealg {

  struct AxiomMode {
    enum class Kind { Exhaustive, Sampled };
    Kind          kind    = Kind::Exhaustive;
    std::size_t   bound   = 2;  // largest n in q_n
    std::size_t   samples = 0;  // per law, sampled mode only
    std::uint64_t seed    = 0;

    static AxiomMode exhaustive(std::size_t bound) {
      return {Kind::Exhaustive, bound, 0, 0};
    }
    static AxiomMode sampled(std::size_t bound, std::size_t count, std::uint64_t seed) {
      return {Kind::Sampled, bound, count, seed};
    }
  };

  struct Violation {
    std::string          law;
    std::size_t          n = 0;  // the q index of the instance
    std::vector<Element> witness;
    Element              lhs = 0;
    Element              rhs = 0;

    bool operator<(Violation const& o) const;
    bool operator==(Violation const& o) const;
  };

  struct LawTally {
    std::size_t instances  = 0;
    std::size_t violations = 0;
  };

  struct AxiomReport {
    std::map<std::string, LawTally> laws;
    // Sorted; at most kMaxListed entries.
    std::vector<Violation> listed;
    std::size_t            total_violations = 0;
    std::size_t            total_instances  = 0;

    bool ok() const {
      return total_violations == 0;
    }

    static constexpr std::size_t kMaxListed = 32;
  };

  // Laws: C1..C6, allungo_i, allungo_ii (excluding the k = n case, which is
  // C5), ind1, preservare, fi0. `domain` lists the elements substituted for
  // the variables; it defaults to the whole handle.
  AxiomReport check_axioms(CloneAlgebraHandle const&   c,
                           AxiomMode const&            mode,
                           std::vector<Element> const& domain = {});

  // Direct evaluation through the handle with no memo and no threads.
  AxiomReport check_axioms_serial(CloneAlgebraHandle const&   c,
                                  AxiomMode const&            mode,
                                  std::vector<Element> const& domain = {});

  // Blocks of arity <= d as a variable domain for block algebras, and the
  // general form: elements whose dimension is known and <= d.
  std::vector<Element> low_dimension_domain(CloneAlgebraHandle const& c, std::size_t d);

}  // namespace clonealg
