#include "clonealg/handle.hpp"

#include <algorithm>
#include <cctype>

namespace clonealg {

  std::optional<std::size_t> CloneAlgebraHandle::dimension(Element a) const {
    auto bound = dim_bound();
    if (!bound) {
      return std::nullopt;
    }
    // Testing dependence on e_n needs e_{n+1}.
    if (e_limit() != kUnbounded && *bound + 1 > e_limit()) {
      return std::nullopt;
    }
    for (std::size_t n = *bound; n >= 1; --n) {
      if (!independent_of(a, n)) {
        return n;
      }
    }
    return 0;
  }

  std::string CloneAlgebraHandle::render(Element a) const {
    return "#" + std::to_string(a);
  }

  std::optional<std::size_t> CloneAlgebraHandle::find_op(std::string const& name) const {
    auto const& sig = signature();
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (sig[i].first == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  bool CloneAlgebraHandle::independent_of(Element a, std::size_t n) const {
    std::vector<Element> bs;
    bs.reserve(n);
    for (std::size_t i = 1; i < n; ++i) {
      bs.push_back(e(i));
    }
    bs.push_back(e(n + 1));
    return q(n, a, bs) == a;
  }

  Element eval_ground(CloneAlgebraHandle const& c, Term const& t) {
    if (t.kind() != Term::Kind::Op) {
      return c.e(t.index());
    }
    std::vector<Element> args;
    args.reserve(t.args().size());
    for (auto const& s : t.args()) {
      args.push_back(eval_ground(c, s));
    }
    if (auto op = c.find_op(t.name())) {
      std::size_t arity = c.signature()[*op].second;
      if (arity != args.size()) {
        throw ArityError("operation '" + t.name() + "' has arity " + std::to_string(arity)
                         + " but is applied to " + std::to_string(args.size()) + " arguments");
      }
      return c.sigma(*op, args);
    }
    auto const& name = t.name();
    if (name.size() >= 2 && name[0] == 'q'
        && std::all_of(name.begin() + 1, name.end(),
                       [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); })) {
      std::size_t n = std::stoul(name.substr(1));
      if (args.size() != n + 1) {
        throw ArityError(name + " takes " + std::to_string(n + 1) + " arguments");
      }
      return c.q(n, args[0], std::span<Element const>(args).subspan(1));
    }
    throw UniverseError("unknown operation symbol '" + name + "' for " + c.name());
  }

  ////////////////////////////////////////////////////////////////////////
  // ProductHandle
  ////////////////////////////////////////////////////////////////////////

  ProductHandle::ProductHandle(HandlePtr left, HandlePtr right)
      : _left(std::move(left)), _right(std::move(right)) {
    if (_left->signature() != _right->signature()) {
      throw ArityError("product of clone algebras of different types");
    }
    if (_left->size() * _right->size() > (std::size_t{1} << 31)) {
      throw CapError("product section is too large");
    }
  }

  std::string ProductHandle::name() const {
    return _left->name() + " x " + _right->name();
  }

  std::size_t ProductHandle::size() const {
    return _left->size() * _right->size();
  }

  std::size_t ProductHandle::e_limit() const {
    return std::min(_left->e_limit(), _right->e_limit());
  }

  Element ProductHandle::e(std::size_t i) const {
    return pair(_left->e(i), _right->e(i));
  }

  Element ProductHandle::q(std::size_t n, Element a, std::span<Element const> bs) const {
    std::vector<Element> l(bs.size()), r(bs.size());
    for (std::size_t i = 0; i < bs.size(); ++i) {
      l[i] = left_of(bs[i]);
      r[i] = right_of(bs[i]);
    }
    return pair(_left->q(n, left_of(a), l), _right->q(n, right_of(a), r));
  }

  Element ProductHandle::sigma(std::size_t op, std::span<Element const> args) const {
    std::vector<Element> l(args.size()), r(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
      l[i] = left_of(args[i]);
      r[i] = right_of(args[i]);
    }
    return pair(_left->sigma(op, l), _right->sigma(op, r));
  }

  std::optional<std::size_t> ProductHandle::dim_bound() const {
    auto l = _left->dim_bound();
    auto r = _right->dim_bound();
    if (!l || !r) {
      return std::nullopt;
    }
    return std::max(*l, *r);
  }

  std::optional<std::size_t> ProductHandle::dimension(Element a) const {
    auto l = _left->dimension(left_of(a));
    auto r = _right->dimension(right_of(a));
    if (!l || !r) {
      return std::nullopt;
    }
    return std::max(*l, *r);
  }

  std::string ProductHandle::render(Element a) const {
    return "<" + _left->render(left_of(a)) + ", " + _right->render(right_of(a)) + ">";
  }

  ////////////////////////////////////////////////////////////////////////
  // FaultInjectedHandle
  ////////////////////////////////////////////////////////////////////////

  FaultInjectedHandle::FaultInjectedHandle(HandlePtr            base,
                                           std::size_t          n,
                                           Element              a,
                                           std::vector<Element> bs,
                                           Element              replacement)
      : _base(std::move(base)), _n(n), _a(a), _bs(std::move(bs)), _replacement(replacement) {
    if (_bs.size() != _n) {
      throw ArityError("fault instance needs exactly n arguments");
    }
  }

  Element FaultInjectedHandle::q(std::size_t n, Element a, std::span<Element const> bs) const {
    if (n == _n && a == _a && std::equal(bs.begin(), bs.end(), _bs.begin(), _bs.end())) {
      return _replacement;
    }
    return _base->q(n, a, bs);
  }

}  // namespace clonealg
