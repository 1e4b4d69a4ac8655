#pragma once

// Decomposition operators, n-central elements and direct factorization of
// finite n-Church structures.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "clonealg/congruence.hpp"
#include "clonealg/structure.hpp"

namespace clonealg {

  // An n-ary function on the structure, tabulated row-major.
  struct NaryMap {
    std::size_t          arity = 0;
    std::vector<Element> table;

    Element operator()(std::size_t N, std::span<Element const> args) const;
  };

  // f(c, x_1, ..., x_n) = q(c, x_1, ..., x_n) for a fixed c.
  NaryMap induced_map(FiniteStructure const& s, NChurch const& v, Element c);

  // The relation a theta_i b iff f_i(b, a) = a, as a partition when it is an
  // equivalence.
  std::optional<Partition> induced_relation(FiniteStructure const& s, NaryMap const& f, std::size_t i);

  // Exact test through the induced relations: each theta_i is a congruence,
  // their meet is the identity and f(a) theta_i a_i for every tuple.
  bool is_decomposition_op(FiniteStructure const& s, NaryMap const& f);

  // The three defining identities checked verbatim, including the
  // homomorphism condition on every operation. Exponential in n and the
  // operation arities; for tiny structures.
  bool is_decomposition_op_literal(FiniteStructure const& s, NaryMap const& f);

  bool is_n_central(FiniteStructure const& s, Element c, std::size_t n);

  struct CentralRange {
    std::vector<bool>                                verdicts;  // verdicts[m-1] for m = 1..cap
    std::optional<std::pair<std::size_t, std::size_t>> range;
    bool                                             monotone = true;
  };

  // Sweeps m = 1..cap; needs q<m> and e1..e<m> for every m. The range is
  // [least central m, cap] when some m is central.
  CentralRange central_range(FiniteStructure const& s, Element c, std::size_t cap);

  struct FactorSystem {
    std::vector<Partition> thetas;  // thetas[i-1] = theta(c, e_i)
    bool                   meet_is_identity = false;
    bool                   unique_solutions = false;

    bool ok() const {
      return meet_is_identity && unique_solutions;
    }
  };

  // Throws PreconditionError when c is not n-central.
  FactorSystem factor_congruences(FiniteStructure const& s, Element c, std::size_t n);

  // Quotient by a congruence, with class representatives as labels.
  FiniteStructure quotient(FiniteStructure const& s, Partition const& theta);

  struct Decomposition {
    std::vector<FiniteStructure> factors;
    std::vector<std::size_t>     factor_sizes;
    bool                         bijective = false;
    bool                         preserves_operations = false;

    bool ok() const {
      return bijective && preserves_operations;
    }
  };

  Decomposition decompose(FiniteStructure const& s, Element c, std::size_t n);

  struct NbaVerdict {
    enum class Kind { Yes, No, Malformed };
    Kind        kind = Kind::Yes;
    std::string detail;  // the failing element or identity instance
  };

  // Malformed when q(e_i, x_1, ..., x_n) = x_i fails somewhere.
  NbaVerdict is_nba(FiniteStructure const& s, std::size_t n);

}  // namespace clonealg
