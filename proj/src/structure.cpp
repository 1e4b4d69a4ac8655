#include "clonealg/structure.hpp"

#include <algorithm>
#include <set>

#include "clonealg/tuples.hpp"

namespace clonealg {

  Element StructOp::operator()(std::size_t n, std::span<Element const> args) const {
    std::size_t row = 0;
    for (Element a : args) {
      row = row * n + a;
    }
    return table[row];
  }

  FiniteStructure::FiniteStructure(std::string name, std::vector<std::string> labels, std::vector<StructOp> ops)
      : _name(std::move(name)), _labels(std::move(labels)), _ops(std::move(ops)) {
    if (_labels.empty()) {
      throw UniverseError("structure '" + _name + "' is empty");
    }
    std::set<std::string> names;
    for (auto const& op : _ops) {
      if (!names.insert(op.name).second) {
        throw UniverseError("structure '" + _name + "' repeats operation '" + op.name + "'");
      }
      if (op.table.size() != tuple_count(size(), op.arity)) {
        throw ArityError("operation '" + op.name + "' has a table of the wrong length");
      }
      for (Element v : op.table) {
        if (v >= size()) {
          throw UniverseError("operation '" + op.name + "' leaves the structure");
        }
      }
    }
  }

  std::optional<std::size_t> FiniteStructure::find(std::string const& name) const {
    for (std::size_t i = 0; i < _ops.size(); ++i) {
      if (_ops[i].name == name) {
        return i;
      }
    }
    return std::nullopt;
  }

  Element FiniteStructure::element(std::string const& label) const {
    auto it = std::find(_labels.begin(), _labels.end(), label);
    if (it == _labels.end()) {
      throw UniverseError("no element '" + label + "' in '" + _name + "'");
    }
    return static_cast<Element>(it - _labels.begin());
  }

  FiniteStructure FiniteStructure::restrict_to(std::vector<std::string> const& names) const {
    std::vector<StructOp> ops;
    for (auto const& op : _ops) {
      if (std::find(names.begin(), names.end(), op.name) != names.end()) {
        ops.push_back(op);
      }
    }
    return FiniteStructure(_name, _labels, std::move(ops));
  }

  FiniteStructure from_algebra(FinAlgebra const& a) {
    std::vector<StructOp> ops;
    for (auto const& [name, op] : a.ops()) {
      ops.push_back({name, op.arity(), std::vector<Element>(op.table().begin(), op.table().end())});
    }
    return FiniteStructure(a.name(), a.universe()->symbols(), std::move(ops));
  }

  FiniteStructure tabulate(CloneAlgebraHandle const&   c,
                           std::vector<Element> const& domain,
                           std::size_t                 q_max,
                           bool                        include_sigma) {
    std::vector<std::int64_t> pos(c.size(), -1);
    for (std::size_t i = 0; i < domain.size(); ++i) {
      pos[domain[i]] = static_cast<std::int64_t>(i);
    }
    auto local = [&](Element a, std::string const& what) {
      if (pos[a] < 0) {
        throw PreconditionError("section is not closed: " + what + " = " + c.render(a));
      }
      return static_cast<Element>(pos[a]);
    };
    std::vector<StructOp> ops;
    for (std::size_t i = 1; i <= q_max && i <= c.e_limit(); ++i) {
      Element ei = c.e(i);
      if (pos[ei] >= 0) {
        ops.push_back({"e" + std::to_string(i), 0, {static_cast<Element>(pos[ei])}});
      }
    }
    auto tab = [&](std::string name, std::size_t arity, auto const& f) {
      StructOp op{std::move(name), arity, {}};
      op.table.resize(tuple_count(domain.size(), arity, std::size_t{1} << 26));
      std::size_t row = 0;
      for_each_tuple(domain, arity, [&](std::span<Element const> xs) {
        op.table[row++] = local(f(xs), op.name);
      });
      ops.push_back(std::move(op));
    };
    for (std::size_t n = 0; n <= q_max; ++n) {
      tab("q" + std::to_string(n), n + 1,
          [&](std::span<Element const> xs) { return c.q(n, xs[0], xs.subspan(1)); });
    }
    if (include_sigma) {
      for (std::size_t op = 0; op < c.signature().size(); ++op) {
        tab(c.signature()[op].first, c.signature()[op].second,
            [&](std::span<Element const> xs) { return c.sigma(op, xs); });
      }
    }
    std::vector<std::string> labels;
    for (Element a : domain) {
      labels.push_back(c.render(a));
    }
    return FiniteStructure(c.name(), std::move(labels), std::move(ops));
  }

  Element NChurch::q(FiniteStructure const& s, Element c, std::span<Element const> xs) const {
    std::size_t const N   = s.size();
    auto const&       tbl = s.ops()[q_op].table;
    std::size_t       row = c;
    for (Element x : xs) {
      row = row * N + x;
    }
    return tbl[row];
  }

  NChurch nchurch_view(FiniteStructure const& s, std::size_t n) {
    NChurch v;
    v.n     = n;
    auto qi = s.find("q" + std::to_string(n));
    if (!qi) {
      qi = s.find("q");
    }
    if (!qi || s.ops()[*qi].arity != n + 1) {
      throw ArityError("structure '" + s.name() + "' has no operation q of arity " + std::to_string(n + 1));
    }
    v.q_op = *qi;
    for (std::size_t i = 1; i <= n; ++i) {
      auto ei = s.find("e" + std::to_string(i));
      if (!ei || s.ops()[*ei].arity != 0) {
        throw ArityError("structure '" + s.name() + "' has no constant e" + std::to_string(i));
      }
      v.es.push_back(s.ops()[*ei].table[0]);
    }
    return v;
  }

  FiniteStructure n_algebra(std::size_t n) {
    if (n == 0) {
      throw ArityError("n must be at least 1");
    }
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) {
      labels.push_back("e" + std::to_string(i));
    }
    std::vector<StructOp> ops;
    StructOp              q{"q", n + 1, std::vector<Element>(tuple_count(n, n + 1))};
    for (std::size_t row = 0; row < q.table.size(); ++row) {
      // Digits of row: c, x_1, ..., x_n.
      std::size_t const c     = row / tuple_count(n, n);
      std::size_t const shift = tuple_count(n, n - 1 - c);
      q.table[row]            = static_cast<Element>((row / shift) % n);
    }
    ops.push_back(std::move(q));
    for (std::size_t i = 0; i < n; ++i) {
      ops.push_back({"e" + std::to_string(i + 1), 0, {static_cast<Element>(i)}});
    }
    return FiniteStructure(std::to_string(n), std::move(labels), std::move(ops));
  }

  FiniteStructure power(FiniteStructure const& a, std::size_t x) {
    std::size_t const base = a.size();
    std::size_t const N    = tuple_count(base, x, std::size_t{1} << 20);
    auto coord = [&](std::size_t e, std::size_t j) { return (e / tuple_count(base, x - 1 - j)) % base; };
    std::vector<std::string> labels;
    for (std::size_t e = 0; e < N; ++e) {
      std::string l = "(";
      for (std::size_t j = 0; j < x; ++j) {
        l += (j ? "," : "") + a.labels()[coord(e, j)];
      }
      labels.push_back(l + ")");
    }
    std::vector<StructOp> ops;
    for (std::size_t oi = 0; oi < a.ops().size(); ++oi) {
      auto const& op = a.ops()[oi];
      StructOp    p{op.name, op.arity, std::vector<Element>(tuple_count(N, op.arity, std::size_t{1} << 26))};
      std::vector<Element> args(op.arity);
      for (std::size_t row = 0; row < p.table.size(); ++row) {
        std::size_t rest = row;
        std::vector<std::size_t> elems(op.arity);
        for (std::size_t i = op.arity; i-- > 0;) {
          elems[i] = rest % N;
          rest /= N;
        }
        std::size_t out = 0;
        for (std::size_t j = 0; j < x; ++j) {
          for (std::size_t i = 0; i < op.arity; ++i) {
            args[i] = static_cast<Element>(coord(elems[i], j));
          }
          out = out * base + a.apply(oi, args);
        }
        p.table[row] = static_cast<Element>(out);
      }
      ops.push_back(std::move(p));
    }
    return FiniteStructure(a.name() + "^" + std::to_string(x), std::move(labels), std::move(ops));
  }

  FiniteStructure n_partition_algebra(std::size_t n, std::size_t x) {
    if (x > 16 || n == 0) {
      throw CapError("n-partition algebra is limited to |X| <= 16 and n >= 1");
    }
    std::uint32_t const full = (std::uint32_t{1} << x) - 1;
    // All n-tuples of subsets that are pairwise disjoint and cover X.
    std::vector<std::vector<std::uint32_t>> parts;
    std::vector<std::uint32_t>              cur(n, 0);
    std::size_t const                       total = tuple_count(std::size_t{1} << x, n, std::size_t{1} << 26);
    for (std::size_t t = 0; t < total; ++t) {
      std::size_t rest = t;
      for (std::size_t i = n; i-- > 0;) {
        cur[i] = static_cast<std::uint32_t>(rest % (std::size_t{1} << x));
        rest >>= x;
      }
      std::uint32_t seen = 0;
      bool          ok   = true;
      for (auto s : cur) {
        ok = ok && (seen & s) == 0;
        seen |= s;
      }
      if (ok && seen == full) {
        parts.push_back(cur);
      }
    }
    std::vector<std::string> labels;
    for (auto const& p : parts) {
      std::string l;
      for (std::size_t i = 0; i < n; ++i) {
        l += i ? "|{" : "{";
        bool first = true;
        for (std::size_t j = 0; j < x; ++j) {
          if (p[i] >> j & 1) {
            l += (first ? "" : ",") + std::to_string(j);
            first = false;
          }
        }
        l += "}";
      }
      labels.push_back(l);
    }
    auto index_of = [&](std::vector<std::uint32_t> const& p) {
      return static_cast<Element>(std::lower_bound(parts.begin(), parts.end(), p) - parts.begin());
    };
    std::size_t const N = parts.size();
    StructOp          q{"q", n + 1, std::vector<Element>(tuple_count(N, n + 1, std::size_t{1} << 26))};
    std::vector<std::size_t> idx(n + 1);
    for (std::size_t row = 0; row < q.table.size(); ++row) {
      std::size_t rest = row;
      for (std::size_t i = n + 1; i-- > 0;) {
        idx[i] = rest % N;
        rest /= N;
      }
      auto const&                Y = parts[idx[0]];
      std::vector<std::uint32_t> out(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        auto const& Z = parts[idx[i + 1]];
        for (std::size_t j = 0; j < n; ++j) {
          out[j] |= Y[i] & Z[j];
        }
      }
      q.table[row] = index_of(out);
    }
    std::vector<StructOp> ops{std::move(q)};
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::uint32_t> e(n, 0);
      e[i] = full;
      ops.push_back({"e" + std::to_string(i + 1), 0, {index_of(e)}});
    }
    return FiniteStructure("partitions(" + std::to_string(n) + "," + std::to_string(x) + ")", std::move(labels),
                           std::move(ops));
  }

}  // namespace clonealg
