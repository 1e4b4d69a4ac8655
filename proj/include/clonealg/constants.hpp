#pragma once

// Term equivalence between clone tau-algebras and pure clone algebras with
// one constant per tau-symbol.

#include <string>
#include <vector>

#include "clonealg/handle.hpp"

namespace clonealg {

  // The base algebra's e and q with the signature replaced by nullary
  // constants c_sigma = sigma(e_1, ..., e_k).
  class ConstantsHandle : public CloneAlgebraHandle {
   public:
    ConstantsHandle(HandlePtr base, std::vector<std::string> names, std::vector<Element> constants);

    std::string name() const override {
      return _base->name() + "^bullet";
    }
    std::size_t size() const override {
      return _base->size();
    }
    std::size_t e_limit() const override {
      return _base->e_limit();
    }
    Element e(std::size_t i) const override {
      return _base->e(i);
    }
    Element q(std::size_t n, Element a, std::span<Element const> bs) const override {
      return _base->q(n, a, bs);
    }
    Signature const& signature() const override {
      return _sig;
    }
    Element sigma(std::size_t op, std::span<Element const> args) const override;
    std::optional<std::size_t> dim_bound() const override {
      return _base->dim_bound();
    }
    std::optional<std::size_t> dimension(Element a) const override {
      return _base->dimension(a);
    }
    std::string render(Element a) const override {
      return _base->render(a);
    }

    Element constant(std::size_t op) const {
      return _constants.at(op);
    }

   private:
    HandlePtr            _base;
    Signature            _sig;
    std::vector<Element> _constants;
  };

  // sigma*(a_1, ..., a_k) = q_k(c_sigma, a_1, ..., a_k) over a handle whose
  // signature consists of nullary constants.
  class StarHandle : public CloneAlgebraHandle {
   public:
    // `arities[i]` is the arity given to the i-th constant.
    StarHandle(HandlePtr base, std::vector<std::size_t> arities);

    std::string name() const override {
      return _base->name() + "^star";
    }
    std::size_t size() const override {
      return _base->size();
    }
    std::size_t e_limit() const override {
      return _base->e_limit();
    }
    Element e(std::size_t i) const override {
      return _base->e(i);
    }
    Element q(std::size_t n, Element a, std::span<Element const> bs) const override {
      return _base->q(n, a, bs);
    }
    Signature const& signature() const override {
      return _sig;
    }
    Element sigma(std::size_t op, std::span<Element const> args) const override;
    std::optional<std::size_t> dim_bound() const override {
      return _base->dim_bound();
    }
    std::optional<std::size_t> dimension(Element a) const override {
      return _base->dimension(a);
    }
    std::string render(Element a) const override {
      return _base->render(a);
    }

   private:
    HandlePtr            _base;
    Signature            _sig;
    std::vector<Element> _constants;
  };

  // Throws CapError when some sigma has arity above e_limit().
  std::shared_ptr<ConstantsHandle const> to_constants(HandlePtr c);
  // Every signature symbol of `a` must be nullary.
  std::shared_ptr<StarHandle const> from_constants(HandlePtr a, std::vector<std::size_t> arities);

  struct EquivalenceReport {
    std::size_t              checked    = 0;
    std::size_t              mismatches = 0;
    std::vector<std::string> details;  // first few mismatches

    bool ok() const {
      return mismatches == 0;
    }
  };

  // (C^bullet)^star = C: sigma tables agree on every tuple over `domain`
  // and e, q agree for n <= q_bound.
  EquivalenceReport check_star_bullet(CloneAlgebraHandle const& c,
                                      std::vector<Element> const& domain,
                                      std::size_t q_bound);
  // (A^star)^bullet = A: the constants agree and e, q agree.
  EquivalenceReport check_bullet_star(HandlePtr a,
                                      std::vector<std::size_t> const& arities,
                                      std::vector<Element> const& domain,
                                      std::size_t q_bound);

}  // namespace clonealg
