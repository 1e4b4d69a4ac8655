#include "clonealg/clone_engine.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include <omp.h>

namespace clonealg {

  ////////////////////////////////////////////////////////////////////////
  // FinAlgebra
  ////////////////////////////////////////////////////////////////////////

  FinAlgebra::FinAlgebra(std::string name, UniversePtr universe, std::vector<NamedOp> ops)
      : _name(std::move(name)), _universe(std::move(universe)), _ops(std::move(ops)) {
    std::set<std::string> seen;
    for (auto const& [op_name, op] : _ops) {
      if (!seen.insert(op_name).second) {
        throw UniverseError("algebra '" + _name + "' declares operation '" + op_name
                            + "' twice");
      }
      if (!(*op.universe() == *_universe)) {
        throw UniverseError("operation '" + op_name + "' is over a different universe");
      }
    }
  }

  OpTable const* FinAlgebra::find(std::string const& name) const {
    for (auto const& nop : _ops) {
      if (nop.name == name) {
        return &nop.op;
      }
    }
    return nullptr;
  }

  std::vector<std::pair<std::string, std::size_t>> FinAlgebra::signature() const {
    std::vector<std::pair<std::string, std::size_t>> sig;
    for (auto const& nop : _ops) {
      sig.emplace_back(nop.name, nop.op.arity());
    }
    return sig;
  }

  std::size_t FinAlgebra::max_arity() const {
    std::size_t m = 0;
    for (auto const& nop : _ops) {
      m = std::max(m, nop.op.arity());
    }
    return m;
  }

  OpTable term_eval(Term const& t, FinAlgebra const& a, std::size_t k) {
    switch (t.kind()) {
      case Term::Kind::Var:
      case Term::Kind::Unit:
        if (t.index() > k) {
          throw ArityError("term mentions v" + std::to_string(t.index())
                           + " but is evaluated at arity " + std::to_string(k));
        }
        return OpTable::projection(a.universe(), t.index(), k);
      case Term::Kind::Op:
        break;
    }
    OpTable const* f = a.find(t.name());
    if (f == nullptr) {
      throw UniverseError("operation symbol '" + t.name() + "' is not in algebra '" + a.name()
                          + "'");
    }
    if (f->arity() != t.args().size()) {
      throw ArityError("operation '" + t.name() + "' has arity " + std::to_string(f->arity())
                       + " but is applied to " + std::to_string(t.args().size())
                       + " arguments");
    }
    std::vector<OpTable> gs;
    gs.reserve(t.args().size());
    for (auto const& s : t.args()) {
      gs.push_back(term_eval(s, a, k));
    }
    return compose(*f, gs, k);
  }

  ClonePresentation ClonePresentation::of(FinAlgebra const& a, std::size_t cap) {
    return ClonePresentation{a.universe(), a.ops(), cap};
  }

  ////////////////////////////////////////////////////////////////////////
  // CloneSection
  ////////////////////////////////////////////////////////////////////////

  std::optional<std::size_t> CloneSection::find(Block const& b) const {
    auto it = _index.find(b);
    if (it == _index.end()) {
      return std::nullopt;
    }
    return it->second;
  }

  std::size_t CloneSection::operation_count() const {
    std::size_t n = 0;
    for (auto const& b : _members) {
      n += cap() - b.arity() + 1;
    }
    return n;
  }

  std::vector<OpTable> CloneSection::operations() const {
    std::vector<OpTable> ops;
    for (auto const& b : _members) {
      for (std::size_t k = b.arity(); k <= cap(); ++k) {
        ops.push_back(b.member(k));
      }
    }
    std::sort(ops.begin(), ops.end());
    return ops;
  }

  Membership CloneSection::contains(OpTable const& op) const {
    if (op.arity() > cap()) {
      return Membership::Undecided;
    }
    return _index.count(canonicalize(op)) ? Membership::Yes : Membership::No;
  }

  Membership clone_contains(CloneSection const& s, OpTable const& op) {
    return s.contains(op);
  }

  ////////////////////////////////////////////////////////////////////////
  // Generation of one arity
  ////////////////////////////////////////////////////////////////////////

  namespace {

    constexpr std::uint32_t kProjection = std::numeric_limits<std::uint32_t>::max();

    struct VecHash {
      std::size_t operator()(std::vector<Value> const& v) const noexcept {
        std::size_t h = 0xcbf29ce484222325ULL;
        for (Value x : v) {
          h = (h ^ x) * 0x100000001b3ULL;
        }
        return h;
      }
    };

    struct Derivation {
      std::uint32_t              gen;
      std::vector<std::uint32_t> args;
    };

    struct Candidate {
      std::vector<Value>         table;
      std::uint32_t              gen;
      std::vector<std::uint32_t> args;

      bool operator<(Candidate const& o) const {
        if (table != o.table) {
          return table < o.table;
        }
        if (gen != o.gen) {
          return gen < o.gen;
        }
        return args < o.args;
      }
    };

    // F^(k): the k-ary operations generated from the k-ary projections by
    // pointwise application of the generators.
    struct AritySection {
      std::size_t                                             k;
      std::vector<std::vector<Value>>                         tables;
      std::vector<Derivation>                                 derivs;
      std::unordered_map<std::vector<Value>, std::size_t, VecHash> index;

      void add(std::vector<Value> table, Derivation d) {
        index.emplace(table, tables.size());
        tables.push_back(std::move(table));
        derivs.push_back(std::move(d));
      }
    };

    std::vector<Value> apply_generator(OpTable const&                         g,
                                       std::vector<std::vector<Value>> const& tables,
                                       std::vector<std::uint32_t> const&      idx,
                                       std::size_t                            n,
                                       std::size_t                            rows) {
      std::vector<Value> out(rows);
      for (std::size_t r = 0; r < rows; ++r) {
        std::size_t row = 0;
        for (auto i : idx) {
          row = row * n + tables[i][r];
        }
        out[r] = g.at(row);
      }
      return out;
    }

    std::size_t checked_pow(std::size_t base, std::size_t exp) {
      std::size_t r = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > (std::size_t{1} << 40) / base) {
          throw CapError("clone generation round is too large");
        }
        r *= base;
      }
      return r;
    }

    // One round; `ds` is the first index that is new since the previous
    // round and `oe` the current size. Tuples with every index below `ds`
    // were handled in an earlier round.
    std::vector<Candidate> round_parallel(AritySection const&          sec,
                                          std::vector<NamedOp> const&  gens,
                                          std::size_t                  ds,
                                          std::size_t                  oe,
                                          bool                         first,
                                          std::size_t                  n,
                                          std::size_t                  rows) {
      std::vector<Candidate> found;
      for (std::uint32_t gi = 0; gi < gens.size(); ++gi) {
        OpTable const&    g = gens[gi].op;
        std::size_t const m = g.arity();
        if (m == 0) {
          if (first) {
            std::vector<Value> t(rows, g.at(0));
            if (!sec.index.count(t)) {
              found.push_back({std::move(t), gi, {}});
            }
          }
          continue;
        }
        for (std::size_t j = 0; j < m; ++j) {
          std::size_t const pre   = checked_pow(ds, j);
          std::size_t const mid   = oe - ds;
          std::size_t const post  = checked_pow(oe, m - j - 1);
          std::size_t const total = pre * mid * post;
          if (total == 0) {
            continue;
          }
#pragma omp parallel
          {
            std::vector<Candidate>     local;
            std::vector<std::uint32_t> idx(m);
#pragma omp for schedule(static)
            for (std::size_t t = 0; t < total; ++t) {
              std::size_t rest = t;
              for (std::size_t p = m; p-- > j + 1;) {
                idx[p] = static_cast<std::uint32_t>(rest % oe);
                rest /= oe;
              }
              idx[j] = static_cast<std::uint32_t>(ds + rest % mid);
              rest /= mid;
              for (std::size_t p = j; p-- > 0;) {
                idx[p] = static_cast<std::uint32_t>(rest % ds);
                rest /= ds;
              }
              auto table = apply_generator(g, sec.tables, idx, n, rows);
              if (!sec.index.count(table)) {
                local.push_back({std::move(table), gi, idx});
              }
            }
#pragma omp critical(clonealg_close_merge)
            {
              for (auto& c : local) {
                found.push_back(std::move(c));
              }
            }
          }
        }
      }
      return found;
    }

    std::vector<Candidate> round_serial(AritySection const&         sec,
                                        std::vector<NamedOp> const& gens,
                                        std::size_t                 oe,
                                        bool                        first,
                                        std::size_t                 n,
                                        std::size_t                 rows) {
      std::vector<Candidate> found;
      for (std::uint32_t gi = 0; gi < gens.size(); ++gi) {
        OpTable const&    g = gens[gi].op;
        std::size_t const m = g.arity();
        if (m == 0) {
          if (first) {
            std::vector<Value> t(rows, g.at(0));
            if (!sec.index.count(t)) {
              found.push_back({std::move(t), gi, {}});
            }
          }
          continue;
        }
        std::size_t const          total = checked_pow(oe, m);
        std::vector<std::uint32_t> idx(m);
        for (std::size_t t = 0; t < total; ++t) {
          std::size_t rest = t;
          for (std::size_t p = m; p-- > 0;) {
            idx[p] = static_cast<std::uint32_t>(rest % oe);
            rest /= oe;
          }
          auto table = apply_generator(g, sec.tables, idx, n, rows);
          if (!sec.index.count(table)) {
            found.push_back({std::move(table), gi, idx});
          }
        }
      }
      return found;
    }

    AritySection generate_arity(ClonePresentation const& p, std::size_t k, Exec exec) {
      std::size_t const n    = p.universe->size();
      std::size_t const rows = table_size(n, k);
      AritySection      sec{k, {}, {}, {}};
      for (std::size_t i = 1; i <= k; ++i) {
        auto t = OpTable::projection(p.universe, i, k).table();
        if (!sec.index.count(t)) {
          sec.add(std::move(t), {kProjection, {static_cast<std::uint32_t>(i)}});
        }
      }
      std::size_t ds    = 0;
      bool        first = true;
      while (true) {
        std::size_t const      oe = sec.tables.size();
        std::vector<Candidate> found
            = exec == Exec::Parallel ? round_parallel(sec, p.generators, ds, oe, first, n, rows)
                                     : round_serial(sec, p.generators, oe, first, n, rows);
        std::sort(found.begin(), found.end());
        found.erase(std::unique(found.begin(), found.end(),
                                [](Candidate const& x, Candidate const& y) { return x.table == y.table; }),
                    found.end());
        bool grew = false;
        for (std::size_t i = 0; i < found.size(); ++i) {
          sec.add(std::move(found[i].table), {found[i].gen, std::move(found[i].args)});
          grew = true;
          if (sec.tables.size() > kMemberGuard) {
            throw CapError("clone section of arity " + std::to_string(k) + " exceeds "
                           + std::to_string(kMemberGuard) + " operations");
          }
        }
        if (!grew) {
          break;
        }
        ds    = oe;
        first = false;
      }
      return sec;
    }

    Term derive_term(AritySection const&         sec,
                     std::vector<NamedOp> const& gens,
                     std::size_t                 i,
                     std::vector<std::optional<Term>>& memo) {
      if (memo[i]) {
        return *memo[i];
      }
      Derivation const& d = sec.derivs[i];
      Term              t = Term::var(1);
      if (d.gen == kProjection) {
        t = Term::var(d.args[0]);
      } else {
        std::vector<Term> args;
        for (auto a : d.args) {
          args.push_back(derive_term(sec, gens, a, memo));
        }
        t = Term::op(gens[d.gen].name, std::move(args));
      }
      memo[i] = t;
      return t;
    }

  }  // namespace

  CloneSection clone_close(ClonePresentation const& p, Exec exec) {
    if (p.cap == 0) {
      throw CapError("arity cap must be at least 1");
    }
    for (auto const& g : p.generators) {
      if (!(*g.op.universe() == *p.universe)) {
        throw UniverseError("generator '" + g.name + "' is over a different universe");
      }
    }

    std::vector<AritySection> secs;
    secs.reserve(p.cap);
    for (std::size_t k = 1; k <= p.cap; ++k) {
      secs.push_back(generate_arity(p, k, exec));
    }

    struct Entry {
      Block       block;
      std::size_t k;
      std::size_t at;
    };
    std::vector<Entry> entries;
    // Arity 0: values of the unary constants.
    for (std::size_t i = 0; i < secs[0].tables.size(); ++i) {
      OpTable op(p.universe, 1, secs[0].tables[i]);
      Block   b = canonicalize(op);
      if (b.arity() == 0) {
        entries.push_back({b, 1, i});
      }
    }
    for (std::size_t k = 1; k <= p.cap; ++k) {
      auto const& sec = secs[k - 1];
      for (std::size_t i = 0; i < sec.tables.size(); ++i) {
        OpTable op(p.universe, k, sec.tables[i]);
        if (depends_on(op, k)) {
          entries.push_back({Block(op), k, i});
        }
      }
    }
    std::sort(entries.begin(), entries.end(),
              [](Entry const& x, Entry const& y) { return x.block < y.block; });

    CloneSection out;
    out._presentation = p;
    std::vector<std::vector<std::optional<Term>>> memo(p.cap);
    for (std::size_t k = 1; k <= p.cap; ++k) {
      memo[k - 1].resize(secs[k - 1].tables.size());
    }
    for (auto const& e : entries) {
      out._index.emplace(e.block, out._members.size());
      out._members.push_back(e.block);
      out._terms.push_back(derive_term(secs[e.k - 1], p.generators, e.at, memo[e.k - 1]));
    }
    return out;
  }

  CloneSection term_clone(FinAlgebra const& a, std::size_t cap, Exec exec) {
    return clone_close(ClonePresentation::of(a, cap), exec);
  }

}  // namespace clonealg
