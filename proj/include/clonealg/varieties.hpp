#pragma once

// Minimal clone algebras, interpretations as pure homomorphisms, products
// and independence of varieties, and f-expansions.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "clonealg/block_algebra.hpp"
#include "clonealg/clone_engine.hpp"
#include "clonealg/handle.hpp"

namespace clonealg {

  struct MinimalSection {
    std::vector<Element>      elements;  // sorted
    std::map<Element, Term>   witness;   // a ground term of least depth
    std::size_t               depth      = 0;
    std::size_t               units      = 0;  // e_1..e_units were seeded
    bool                      stabilized = false;
    // Closure under q_n for n <= units; nullopt when too large to test.
    std::optional<bool> closed_under_q;
  };

  // Values of ground terms of depth <= depth built from e_1..e_units and the
  // signature. units = 0 means e_limit(), which must then be finite.
  MinimalSection minimal_section(CloneAlgebraHandle const& c, std::size_t depth, std::size_t units = 0);

  enum class MinimalVerdict { Yes, NoWithinBound, Unknown };

  std::string to_string(MinimalVerdict v);

  // Yes when the section reaches every element; NoWithinBound when it
  // stabilized short of that.
  MinimalVerdict is_minimal_bounded(CloneAlgebraHandle const& c, std::size_t depth);

  // A binary term t with t = v1 in a1 and t = v2 in a2, found breadth-first
  // by depth. nullopt is relative to the depth.
  std::optional<Term> independence_search(FinAlgebra const& a1, FinAlgebra const& a2, std::size_t depth);

  struct ProductMinimality {
    std::optional<Term> witness;
    MinimalVerdict      minimal = MinimalVerdict::Unknown;
    std::size_t         product_size = 0;
    bool                agree = false;
  };

  // The product of the two Cl sections at the cap, with the minimality
  // verdict and the independence search side by side.
  ProductMinimality product_minimality_check(FinAlgebra const& a1,
                                             FinAlgebra const& a2,
                                             std::size_t       depth,
                                             std::size_t       cap);

  // sigma -> term over the target signature in variables v1..v<arity>; a
  // nullary sigma maps to a unary term.
  using Interpretation = std::map<std::string, Term>;

  // Replaces every source operation by its image.
  Term translate(Term const& t, Interpretation const& f);

  struct PureHomReport {
    std::vector<Element> map;  // source section element -> target element
    std::size_t          checked = 0;
    std::size_t          failures = 0;
    std::vector<std::string> details;

    bool ok() const {
      return failures == 0;
    }
  };

  // Maps the Cl section of the source to that of the target through the
  // interpretation and checks preservation of e_i and q_n for n <= q_bound.
  // Throws PreconditionError for a malformed interpretation, including a
  // nullary image that is not constant in the target.
  PureHomReport interp_to_purehom(Interpretation const& f,
                                  FinAlgebra const&     source,
                                  FinAlgebra const&     target,
                                  std::size_t           cap,
                                  std::size_t           q_bound = 2);

  // D with sigma(a) = q_k^D(h(sigma^C(e_1, ..., e_k)), a).
  class ExpansionHandle : public CloneAlgebraHandle {
   public:
    ExpansionHandle(HandlePtr c, HandlePtr d, std::vector<Element> h);

    std::string name() const override {
      return _d->name() + "^f";
    }
    std::size_t size() const override {
      return _d->size();
    }
    std::size_t e_limit() const override {
      return _d->e_limit();
    }
    Element e(std::size_t i) const override {
      return _d->e(i);
    }
    Element q(std::size_t n, Element a, std::span<Element const> bs) const override {
      return _d->q(n, a, bs);
    }
    Signature const& signature() const override {
      return _c->signature();
    }
    Element sigma(std::size_t op, std::span<Element const> args) const override;
    std::optional<std::size_t> dim_bound() const override {
      return _d->dim_bound();
    }
    std::optional<std::size_t> dimension(Element a) const override {
      return _d->dimension(a);
    }
    std::string render(Element a) const override {
      return _d->render(a);
    }

   private:
    HandlePtr            _c;
    HandlePtr            _d;
    std::vector<Element> _images;  // h(sigma^C(e_1, ..., e_k)) per operation
  };

  struct ExpansionReport {
    std::shared_ptr<ExpansionHandle const> handle;
    std::size_t                            checked    = 0;
    std::size_t                            mismatches = 0;  // h(sigma(a)) != sigma(h(a))

    bool ok() const {
      return mismatches == 0;
    }
  };

  // Throws PreconditionError when h does not preserve e_i and q_n (n <=
  // q_bound) on the elements of c.
  ExpansionReport f_expansion(HandlePtr c, HandlePtr d, std::vector<Element> h, std::size_t q_bound = 2);

  // A counterexample (y, x11, ..., x1n, ..., xn1, ..., xnn) over the domain
  // to q_n(y, q_n(y, x11, ..., x1n), ..., q_n(y, xn1, ..., xnn)) =
  // q_n(y, x11, x22, ..., xnn).
  std::optional<std::vector<Element>> diagonal_identity_counterexample(CloneAlgebraHandle const&   c,
                                                                       std::size_t                 n,
                                                                       std::vector<Element> const& domain);

}  // namespace clonealg
