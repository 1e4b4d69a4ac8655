#include "clonealg/constants.hpp"

#include "clonealg/tuples.hpp"

namespace clonealg {

  namespace {

    void note(EquivalenceReport& r, std::string msg) {
      ++r.mismatches;
      if (r.details.size() < 16) {
        r.details.push_back(std::move(msg));
      }
    }

    std::string show(std::span<Element const> xs) {
      std::string s = "(";
      for (std::size_t i = 0; i < xs.size(); ++i) {
        s += (i ? "," : "") + std::to_string(xs[i]);
      }
      return s + ")";
    }

    void compare_pure(EquivalenceReport& r,
                      CloneAlgebraHandle const& x,
                      CloneAlgebraHandle const& y,
                      std::vector<Element> const& dom,
                      std::size_t q_bound) {
      std::size_t const el = std::min(x.e_limit(), y.e_limit());
      for (std::size_t i = 1; i <= el && i <= q_bound + 1; ++i) {
        ++r.checked;
        if (x.e(i) != y.e(i)) {
          note(r, "e" + std::to_string(i) + " differs");
        }
      }
      for (std::size_t n = 0; n <= q_bound; ++n) {
        for_each_tuple(dom, n + 1, [&](std::span<Element const> xs) {
          ++r.checked;
          if (x.q(n, xs[0], xs.subspan(1)) != y.q(n, xs[0], xs.subspan(1))) {
            note(r, "q" + std::to_string(n) + show(xs) + " differs");
          }
        });
      }
    }

  }  // namespace

  ConstantsHandle::ConstantsHandle(HandlePtr base, std::vector<std::string> names, std::vector<Element> constants)
      : _base(std::move(base)), _constants(std::move(constants)) {
    if (names.size() != _constants.size()) {
      throw ArityError("constants handle needs one element per name");
    }
    for (auto& nm : names) {
      _sig.emplace_back(std::move(nm), 0);
    }
  }

  Element ConstantsHandle::sigma(std::size_t op, std::span<Element const> args) const {
    if (!args.empty()) {
      throw ArityError("constants take no arguments");
    }
    return _constants.at(op);
  }

  StarHandle::StarHandle(HandlePtr base, std::vector<std::size_t> arities) : _base(std::move(base)) {
    auto const& sig = _base->signature();
    if (arities.size() != sig.size()) {
      throw ArityError("one arity per constant is required");
    }
    for (std::size_t i = 0; i < sig.size(); ++i) {
      if (sig[i].second != 0) {
        throw ArityError("'" + sig[i].first + "' is not a constant");
      }
      _sig.emplace_back(sig[i].first, arities[i]);
      _constants.push_back(_base->sigma(i, {}));
    }
  }

  Element StarHandle::sigma(std::size_t op, std::span<Element const> args) const {
    if (args.size() != _sig.at(op).second) {
      throw ArityError("operation '" + _sig[op].first + "' has arity " + std::to_string(_sig[op].second));
    }
    return _base->q(args.size(), _constants[op], args);
  }

  std::shared_ptr<ConstantsHandle const> to_constants(HandlePtr c) {
    std::vector<std::string> names;
    std::vector<Element>     constants;
    for (std::size_t op = 0; op < c->signature().size(); ++op) {
      auto const& [name, k] = c->signature()[op];
      if (k > c->e_limit()) {
        throw CapError("'" + name + "' has arity " + std::to_string(k) + " but only e_1..e_"
                       + std::to_string(c->e_limit()) + " are available");
      }
      std::vector<Element> es;
      for (std::size_t i = 1; i <= k; ++i) {
        es.push_back(c->e(i));
      }
      names.push_back(name);
      constants.push_back(c->sigma(op, es));
    }
    return std::make_shared<ConstantsHandle const>(c, std::move(names), std::move(constants));
  }

  std::shared_ptr<StarHandle const> from_constants(HandlePtr a, std::vector<std::size_t> arities) {
    return std::make_shared<StarHandle const>(std::move(a), std::move(arities));
  }

  EquivalenceReport check_star_bullet(CloneAlgebraHandle const& c,
                                      std::vector<Element> const& domain,
                                      std::size_t q_bound) {
    // A non-owning pointer is enough here: the views do not outlive c.
    HandlePtr base(std::shared_ptr<CloneAlgebraHandle const>{}, &c);
    auto      bullet = to_constants(base);
    std::vector<std::size_t> arities;
    for (auto const& s : c.signature()) {
      arities.push_back(s.second);
    }
    auto star = from_constants(bullet, arities);

    EquivalenceReport r;
    for (std::size_t op = 0; op < c.signature().size(); ++op) {
      for_each_tuple(domain, arities[op], [&](std::span<Element const> xs) {
        ++r.checked;
        if (star->sigma(op, xs) != c.sigma(op, xs)) {
          note(r, c.signature()[op].first + show(xs) + " differs");
        }
      });
    }
    compare_pure(r, c, *star, domain, q_bound);
    return r;
  }

  EquivalenceReport check_bullet_star(HandlePtr a,
                                      std::vector<std::size_t> const& arities,
                                      std::vector<Element> const& domain,
                                      std::size_t q_bound) {
    auto star   = from_constants(a, arities);
    auto bullet = to_constants(star);

    EquivalenceReport r;
    for (std::size_t op = 0; op < a->signature().size(); ++op) {
      ++r.checked;
      if (bullet->constant(op) != a->sigma(op, {})) {
        note(r, "constant " + a->signature()[op].first + " differs");
      }
    }
    compare_pure(r, *a, *bullet, domain, q_bound);
    return r;
  }

}  // namespace clonealg
