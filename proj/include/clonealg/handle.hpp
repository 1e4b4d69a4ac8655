#pragma once

// Uniform access to clone tau-algebras whose elements are enumerated as
// 0, 1, ..., size()-1.

#include <cstddef>
#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "clonealg/error.hpp"
#include "clonealg/term.hpp"

namespace clonealg {

  using Element   = std::uint32_t;
  using Signature = std::vector<std::pair<std::string, std::size_t>>;

  inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

  class CloneAlgebraHandle {
   public:
    virtual ~CloneAlgebraHandle() = default;

    virtual std::string name() const = 0;
    virtual std::size_t size() const = 0;

    // Largest i for which e(i) is available.
    virtual std::size_t e_limit() const = 0;
    // Throws CapError for i > e_limit().
    virtual Element e(std::size_t i) const = 0;
    virtual Element q(std::size_t n, Element a, std::span<Element const> bs) const = 0;

    virtual Signature const& signature() const = 0;
    virtual Element sigma(std::size_t op, std::span<Element const> args) const = 0;

    // An upper bound on every element's dimension, when known.
    virtual std::optional<std::size_t> dim_bound() const = 0;
    // nullopt when the dimension cannot be settled with the available e_i.
    virtual std::optional<std::size_t> dimension(Element a) const;

    virtual std::string render(Element a) const;

    // Index of a signature symbol, or nullopt.
    std::optional<std::size_t> find_op(std::string const& name) const;
    bool independent_of(Element a, std::size_t n) const;
  };

  using HandlePtr = std::shared_ptr<CloneAlgebraHandle const>;

  // Evaluates a ground term: v_i and e_i are read as e(i), operation symbols
  // as sigma, and a symbol q<n> not in the signature as q_n.
  Element eval_ground(CloneAlgebraHandle const& c, Term const& t);

  class TrivialCloneAlgebra : public CloneAlgebraHandle {
   public:
    explicit TrivialCloneAlgebra(Signature sig = {}) : _sig(std::move(sig)) {}

    std::string name() const override {
      return "trivial";
    }
    std::size_t size() const override {
      return 1;
    }
    std::size_t e_limit() const override {
      return kUnbounded;
    }
    Element e(std::size_t) const override {
      return 0;
    }
    Element q(std::size_t, Element, std::span<Element const>) const override {
      return 0;
    }
    Signature const& signature() const override {
      return _sig;
    }
    Element sigma(std::size_t, std::span<Element const>) const override {
      return 0;
    }
    std::optional<std::size_t> dim_bound() const override {
      return 0;
    }
    std::optional<std::size_t> dimension(Element) const override {
      return 0;
    }

   private:
    Signature _sig;
  };

  // Componentwise product; element (x, y) is x * right.size() + y.
  class ProductHandle : public CloneAlgebraHandle {
   public:
    ProductHandle(HandlePtr left, HandlePtr right);

    std::string name() const override;
    std::size_t size() const override;
    std::size_t e_limit() const override;
    Element     e(std::size_t i) const override;
    Element     q(std::size_t n, Element a, std::span<Element const> bs) const override;
    Signature const& signature() const override {
      return _left->signature();
    }
    Element sigma(std::size_t op, std::span<Element const> args) const override;
    std::optional<std::size_t> dim_bound() const override;
    std::optional<std::size_t> dimension(Element a) const override;
    std::string                render(Element a) const override;

    Element pair(Element x, Element y) const {
      return static_cast<Element>(x * _right->size() + y);
    }
    Element left_of(Element a) const {
      return static_cast<Element>(a / _right->size());
    }
    Element right_of(Element a) const {
      return static_cast<Element>(a % _right->size());
    }
    HandlePtr const& left() const noexcept {
      return _left;
    }
    HandlePtr const& right() const noexcept {
      return _right;
    }

   private:
    HandlePtr _left;
    HandlePtr _right;
  };

  // The same clone algebra with an empty signature.
  class PureReduct : public CloneAlgebraHandle {
   public:
    explicit PureReduct(HandlePtr base) : _base(std::move(base)) {}

    std::string name() const override {
      return _base->name() + "_0";
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
    Element sigma(std::size_t, std::span<Element const>) const override {
      throw ArityError("pure reduct has no basic operations");
    }
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
    HandlePtr _base;
    Signature _sig;
  };

  // Returns `replacement` for one q instance and delegates otherwise.
  class FaultInjectedHandle : public CloneAlgebraHandle {
   public:
    FaultInjectedHandle(HandlePtr            base,
                        std::size_t          n,
                        Element              a,
                        std::vector<Element> bs,
                        Element              replacement);

    std::string name() const override {
      return _base->name() + "+fault";
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
    Element q(std::size_t n, Element a, std::span<Element const> bs) const override;
    Signature const& signature() const override {
      return _base->signature();
    }
    Element sigma(std::size_t op, std::span<Element const> args) const override {
      return _base->sigma(op, args);
    }
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
    std::size_t          _n;
    Element              _a;
    std::vector<Element> _bs;
    Element              _replacement;
  };

}  // namespace clonealg
