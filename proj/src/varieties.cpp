#include "clonealg/varieties.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "clonealg/congruence.hpp"
#include "clonealg/tuples.hpp"

namespace clonealg {

  namespace {

    constexpr std::size_t kTupleGuard = std::size_t{1} << 24;

  }  // namespace

  ////////////////////////////////////////////////////////////////////////
  // Minimal sections
  ////////////////////////////////////////////////////////////////////////

  MinimalSection minimal_section(CloneAlgebraHandle const& c, std::size_t depth, std::size_t units) {
    if (units == 0) {
      if (c.e_limit() == kUnbounded) {
        throw CapError("minimal_section needs a bound on the units of " + c.name());
      }
      units = c.e_limit();
    }
    MinimalSection ms;
    ms.depth = depth;
    ms.units = units;
    std::vector<Element> order;  // discovery order
    auto add = [&](Element x, Term t) {
      if (ms.witness.emplace(x, std::move(t)).second) {
        order.push_back(x);
        return true;
      }
      return false;
    };
    for (std::size_t i = 1; i <= units; ++i) {
      add(c.e(i), Term::unit(i));
    }
    auto const& sig = c.signature();
    ms.stabilized   = false;
    for (std::size_t d = 1; d <= depth; ++d) {
      std::vector<Element> const current = order;
      bool                       grew    = false;
      for (std::size_t op = 0; op < sig.size(); ++op) {
        std::size_t const m = sig[op].second;
        tuple_count(current.size(), m, kTupleGuard);
        for_each_tuple(current, m, [&](std::span<Element const> xs) {
          Element v = c.sigma(op, xs);
          if (ms.witness.count(v)) {
            return;
          }
          std::vector<Term> args;
          for (Element x : xs) {
            args.push_back(ms.witness.at(x));
          }
          grew = add(v, Term::op(sig[op].first, std::move(args))) || grew;
        });
      }
      if (!grew) {
        ms.stabilized = true;
        break;
      }
    }
    if (sig.empty()) {
      ms.stabilized = true;
    }
    ms.elements = order;
    std::sort(ms.elements.begin(), ms.elements.end());

    std::size_t work = 0;
    bool        feasible = true;
    for (std::size_t n = 0; n <= units && feasible; ++n) {
      try {
        work += tuple_count(order.size(), n + 1, kTupleGuard);
      } catch (CapError const&) {
        feasible = false;
      }
      feasible = feasible && work <= kTupleGuard;
    }
    if (feasible) {
      bool closed = true;
      for (std::size_t n = 0; n <= units && closed; ++n) {
        for_each_tuple(order, n + 1, [&](std::span<Element const> xs) {
          if (closed && !ms.witness.count(c.q(n, xs[0], xs.subspan(1)))) {
            closed = false;
          }
        });
      }
      ms.closed_under_q = closed;
    }
    return ms;
  }

  std::string to_string(MinimalVerdict v) {
    switch (v) {
      case MinimalVerdict::Yes:
        return "minimal";
      case MinimalVerdict::NoWithinBound:
        return "not minimal";
      case MinimalVerdict::Unknown:
        break;
    }
    return "unknown";
  }

  MinimalVerdict is_minimal_bounded(CloneAlgebraHandle const& c, std::size_t depth) {
    auto const ms = minimal_section(c, depth);
    if (ms.elements.size() == c.size()) {
      return MinimalVerdict::Yes;
    }
    return ms.stabilized ? MinimalVerdict::NoWithinBound : MinimalVerdict::Unknown;
  }

  ////////////////////////////////////////////////////////////////////////
  // Independence
  ////////////////////////////////////////////////////////////////////////

  std::optional<Term> independence_search(FinAlgebra const& a1, FinAlgebra const& a2, std::size_t depth) {
    if (a1.signature() != a2.signature()) {
      throw PreconditionError("independence needs algebras of the same type");
    }
    using Pair = std::pair<OpTable, OpTable>;
    auto const target = Pair{OpTable::projection(a1.universe(), 1, 2), OpTable::projection(a2.universe(), 2, 2)};

    std::vector<Term> terms;
    std::vector<Pair> values;
    std::set<Pair>    seen;
    auto add = [&](Term t, Pair p) {
      if (seen.insert(p).second) {
        terms.push_back(std::move(t));
        values.push_back(std::move(p));
        return true;
      }
      return false;
    };
    for (std::size_t i = 1; i <= 2; ++i) {
      add(Term::var(i), Pair{OpTable::projection(a1.universe(), i, 2), OpTable::projection(a2.universe(), i, 2)});
    }
    if (seen.count(target)) {
      return terms[std::find(values.begin(), values.end(), target) - values.begin()];
    }
    std::vector<std::size_t> ids;
    for (std::size_t d = 1; d <= depth; ++d) {
      ids.resize(values.size());
      std::iota(ids.begin(), ids.end(), 0);
      std::vector<std::size_t> const current = ids;
      bool                           grew    = false;
      for (std::size_t op = 0; op < a1.ops().size(); ++op) {
        auto const&       g1 = a1.ops()[op].op;
        auto const&       g2 = a2.ops()[op].op;
        std::size_t const m  = g1.arity();
        tuple_count(current.size(), m, kTupleGuard);
        std::optional<Term> found;
        for_each_tuple(current, m, [&](std::span<std::size_t const> xs) {
          if (found) {
            return;
          }
          std::vector<OpTable> l, r;
          std::vector<Term>    args;
          for (auto x : xs) {
            l.push_back(values[x].first);
            r.push_back(values[x].second);
            args.push_back(terms[x]);
          }
          Pair p{compose(g1, l, 2), compose(g2, r, 2)};
          Term t = Term::op(a1.ops()[op].name, std::move(args));
          if (p == target) {
            found = t;
          }
          grew = add(std::move(t), std::move(p)) || grew;
        });
        if (found) {
          return found;
        }
      }
      if (!grew) {
        break;
      }
    }
    return std::nullopt;
  }

  ProductMinimality product_minimality_check(FinAlgebra const& a1,
                                             FinAlgebra const& a2,
                                             std::size_t       depth,
                                             std::size_t       cap) {
    ProductMinimality r;
    r.witness = independence_search(a1, a2, depth);
    auto const prod = std::make_shared<ProductHandle const>(clv_block_algebra(a1, cap), clv_block_algebra(a2, cap));
    r.product_size = prod->size();
    r.minimal      = is_minimal_bounded(*prod, depth);
    r.agree        = r.witness ? r.minimal == MinimalVerdict::Yes : r.minimal == MinimalVerdict::NoWithinBound;
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Interpretations
  ////////////////////////////////////////////////////////////////////////

  Term translate(Term const& t, Interpretation const& f) {
    if (t.kind() != Term::Kind::Op) {
      return t;
    }
    auto it = f.find(t.name());
    if (it == f.end()) {
      throw PreconditionError("interpretation has no image for '" + t.name() + "'");
    }
    std::vector<Term> args;
    for (auto const& a : t.args()) {
      args.push_back(translate(a, f));
    }
    return it->second.substitute(args);
  }

  namespace {

    void check_term_signature(Term const& t, FinAlgebra const& a) {
      if (t.kind() != Term::Kind::Op) {
        return;
      }
      OpTable const* op = a.find(t.name());
      if (!op || op->arity() != t.args().size()) {
        throw PreconditionError("term " + t.to_string() + " does not fit the type of " + a.name());
      }
      for (auto const& s : t.args()) {
        check_term_signature(s, a);
      }
    }

  }  // namespace

  PureHomReport interp_to_purehom(Interpretation const& f,
                                  FinAlgebra const&     source,
                                  FinAlgebra const&     target,
                                  std::size_t           cap,
                                  std::size_t           q_bound) {
    for (auto const& op : source.ops()) {
      auto it = f.find(op.name);
      if (it == f.end()) {
        throw PreconditionError("interpretation has no image for '" + op.name + "'");
      }
      Term const&       t     = it->second;
      std::size_t const arity = op.op.arity();
      check_term_signature(t, target);
      if (t.max_index() > std::max<std::size_t>(arity, 1)) {
        throw PreconditionError("image of '" + op.name + "' uses too many variables");
      }
      if (arity == 0 && !equation_derivable(target, t, t.substitute({Term::var(2)}), 2)) {
        throw PreconditionError("image of nullary '" + op.name + "' is not constant in " + target.name());
      }
    }
    auto const src = clv_block_algebra(source, cap);
    auto const tgt = clv_block_algebra(target, cap);

    PureHomReport r;
    for (Element a = 0; a < src->size(); ++a) {
      Term const&       t = src->section().term(a);
      std::size_t const k = std::max<std::size_t>({1, src->block(a).arity(), t.max_index()});
      r.map.push_back(tgt->element(canonicalize(term_eval(translate(t, f), target, k))));
    }
    auto fail = [&](std::string what) {
      ++r.failures;
      if (r.details.size() < 16) {
        r.details.push_back(std::move(what));
      }
    };
    for (std::size_t i = 1; i <= cap; ++i) {
      ++r.checked;
      if (r.map[src->e(i)] != tgt->e(i)) {
        fail("e" + std::to_string(i) + " not preserved");
      }
    }
    std::vector<Element> all(src->size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<Element> images;
    for (std::size_t n = 0; n <= std::min(q_bound, cap); ++n) {
      tuple_count(all.size(), n + 1, kTupleGuard);
      for_each_tuple(all, n + 1, [&](std::span<Element const> xs) {
        ++r.checked;
        images.assign(xs.size(), 0);
        for (std::size_t j = 0; j < xs.size(); ++j) {
          images[j] = r.map[xs[j]];
        }
        Element const lhs = r.map[src->q(n, xs[0], xs.subspan(1))];
        Element const rhs = tgt->q(n, images[0], std::span<Element const>(images).subspan(1));
        if (lhs != rhs) {
          fail("q" + std::to_string(n) + " not preserved at " + src->render(xs[0]));
        }
      });
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // f-expansion
  ////////////////////////////////////////////////////////////////////////

  ExpansionHandle::ExpansionHandle(HandlePtr c, HandlePtr d, std::vector<Element> h)
      : _c(std::move(c)), _d(std::move(d)) {
    if (h.size() != _c->size()) {
      throw ArityError("homomorphism table has the wrong length");
    }
    for (std::size_t op = 0; op < _c->signature().size(); ++op) {
      std::size_t const    k = _c->signature()[op].second;
      std::vector<Element> es;
      for (std::size_t i = 1; i <= k; ++i) {
        es.push_back(_c->e(i));
      }
      _images.push_back(h.at(_c->sigma(op, es)));
    }
  }

  Element ExpansionHandle::sigma(std::size_t op, std::span<Element const> args) const {
    return _d->q(args.size(), _images.at(op), args);
  }

  ExpansionReport f_expansion(HandlePtr c, HandlePtr d, std::vector<Element> h, std::size_t q_bound) {
    std::size_t const units = std::min(c->e_limit(), d->e_limit());
    if (units == kUnbounded) {
      throw CapError("f_expansion needs a bound on the units");
    }
    for (Element x : h) {
      if (x >= d->size()) {
        throw UniverseError("homomorphism value outside the target");
      }
    }
    for (std::size_t i = 1; i <= units; ++i) {
      if (h.at(c->e(i)) != d->e(i)) {
        throw PreconditionError("h does not preserve e" + std::to_string(i));
      }
    }
    std::vector<Element> all(c->size());
    std::iota(all.begin(), all.end(), 0);
    std::vector<Element> images;
    for (std::size_t n = 0; n <= std::min(q_bound, units); ++n) {
      tuple_count(all.size(), n + 1, kTupleGuard);
      for_each_tuple(all, n + 1, [&](std::span<Element const> xs) {
        images.resize(xs.size());
        for (std::size_t j = 0; j < xs.size(); ++j) {
          images[j] = h[xs[j]];
        }
        if (h[c->q(n, xs[0], xs.subspan(1))] != d->q(n, images[0], std::span<Element const>(images).subspan(1))) {
          throw PreconditionError("h does not preserve q" + std::to_string(n));
        }
      });
    }
    ExpansionReport r;
    r.handle = std::make_shared<ExpansionHandle const>(c, d, h);
    auto const& sig = c->signature();
    for (std::size_t op = 0; op < sig.size(); ++op) {
      std::size_t const m = sig[op].second;
      tuple_count(all.size(), m, kTupleGuard);
      for_each_tuple(all, m, [&](std::span<Element const> xs) {
        ++r.checked;
        images.resize(m);
        for (std::size_t j = 0; j < m; ++j) {
          images[j] = h[xs[j]];
        }
        if (h[c->sigma(op, xs)] != r.handle->sigma(op, images)) {
          ++r.mismatches;
        }
      });
    }
    return r;
  }

  ////////////////////////////////////////////////////////////////////////
  // Identity regression
  ////////////////////////////////////////////////////////////////////////

  std::optional<std::vector<Element>> diagonal_identity_counterexample(CloneAlgebraHandle const&   c,
                                                                       std::size_t                 n,
                                                                       std::vector<Element> const& domain) {
    tuple_count(domain.size(), n * n + 1, kTupleGuard * 4);
    std::optional<std::vector<Element>> out;
    std::vector<Element>                inner(n), diag(n);
    for_each_tuple(domain, n * n + 1, [&](std::span<Element const> xs) {
      if (out) {
        return;
      }
      Element const y = xs[0];
      for (std::size_t i = 0; i < n; ++i) {
        inner[i] = c.q(n, y, xs.subspan(1 + i * n, n));
        diag[i]  = xs[1 + i * n + i];
      }
      if (c.q(n, y, inner) != c.q(n, y, diag)) {
        out.emplace(xs.begin(), xs.end());
      }
    });
    return out;
  }

}  // namespace clonealg
