#include "clonealg/central.hpp"

#include <numeric>

#include "clonealg/tuples.hpp"

namespace clonealg {

  namespace {

    std::size_t row_of(std::size_t N, std::span<Element const> args) {
      std::size_t r = 0;
      for (Element x : args) {
        r = r * N + x;
      }
      return r;
    }

    std::vector<Element> all_elements(std::size_t N) {
      std::vector<Element> v(N);
      std::iota(v.begin(), v.end(), 0);
      return v;
    }

    // f_i(b, a) = f(a, ..., a, b, a, ..., a) with b at position i.
    Element f_i(std::size_t N, NaryMap const& f, std::size_t i, Element b, Element a) {
      std::vector<Element> args(f.arity, a);
      args[i - 1] = b;
      return f(N, args);
    }

    bool compatible(SectionStructure const& ss, Partition const& p) {
      auto const classes = p.blocks();
      for (auto const& t : ss.translations()) {
        for (auto const& cls : classes) {
          for (std::size_t j = 1; j < cls.size(); ++j) {
            if (!p.related(t[cls[0]], t[cls[j]])) {
              return false;
            }
          }
        }
      }
      return true;
    }

    bool decomposition_with(FiniteStructure const& s, SectionStructure const& ss, NaryMap const& f) {
      std::size_t const      N = s.size();
      std::vector<Partition> thetas;
      for (std::size_t i = 1; i <= f.arity; ++i) {
        auto p = induced_relation(s, f, i);
        if (!p || !compatible(ss, *p)) {
          return false;
        }
        thetas.push_back(std::move(*p));
      }
      if (thetas.empty()) {
        return N <= 1;
      }
      Partition meet = thetas[0];
      for (std::size_t i = 1; i < thetas.size(); ++i) {
        meet = meet.meet(thetas[i]);
      }
      if (meet.classes() != N) {
        return false;
      }
      bool ok = true;
      for_each_tuple(all_elements(N), f.arity, [&](std::span<Element const> xs) {
        if (!ok) {
          return;
        }
        Element u = f(N, xs);
        for (std::size_t i = 0; i < f.arity && ok; ++i) {
          ok = thetas[i].related(xs[i], u);
        }
      });
      return ok;
    }

    void require_church(FiniteStructure const& s, NChurch const& v) {
      for (std::size_t i = 0; i < v.n; ++i) {
        if (v.es[i] >= s.size()) {
          throw UniverseError("constant outside the structure");
        }
      }
    }

  }  // namespace

  Element NaryMap::operator()(std::size_t N, std::span<Element const> args) const {
    return table[row_of(N, args)];
  }

  NaryMap induced_map(FiniteStructure const& s, NChurch const& v, Element c) {
    std::size_t const N = s.size();
    NaryMap           f{v.n, std::vector<Element>(tuple_count(N, v.n))};
    std::size_t       r = 0;
    for_each_tuple(all_elements(N), v.n, [&](std::span<Element const> xs) { f.table[r++] = v.q(s, c, xs); });
    return f;
  }

  std::optional<Partition> induced_relation(FiniteStructure const& s, NaryMap const& f, std::size_t i) {
    std::size_t const N = s.size();
    // rel[a * N + b] : a theta b
    std::vector<char> rel(N * N);
    for (Element a = 0; a < N; ++a) {
      for (Element b = 0; b < N; ++b) {
        rel[a * N + b] = f_i(N, f, i, b, a) == a;
      }
    }
    std::vector<std::uint32_t> label(N);
    for (Element a = 0; a < N; ++a) {
      if (!rel[a * N + a]) {
        return std::nullopt;
      }
      label[a] = a;
      for (Element b = 0; b < a; ++b) {
        if (rel[a * N + b]) {
          label[a] = label[b];
          break;
        }
      }
    }
    for (Element a = 0; a < N; ++a) {
      for (Element b = 0; b < N; ++b) {
        if (static_cast<bool>(rel[a * N + b]) != (label[a] == label[b])) {
          return std::nullopt;
        }
      }
    }
    return Partition(std::move(label));
  }

  bool is_decomposition_op(FiniteStructure const& s, NaryMap const& f) {
    return decomposition_with(s, SectionStructure(s), f);
  }

  bool is_decomposition_op_literal(FiniteStructure const& s, NaryMap const& f) {
    std::size_t const N  = s.size();
    std::size_t const n  = f.arity;
    auto const        el = all_elements(N);
    for (Element x = 0; x < N; ++x) {
      std::vector<Element> xs(n, x);
      if (f(N, xs) != x) {
        return false;
      }
    }
    bool ok = true;
    for_each_tuple(el, n * n, [&](std::span<Element const> m) {
      if (!ok) {
        return;
      }
      std::vector<Element> rows(n), diag(n);
      for (std::size_t i = 0; i < n; ++i) {
        rows[i] = f(N, m.subspan(i * n, n));
        diag[i] = m[i * n + i];
      }
      ok = f(N, rows) == f(N, diag);
    });
    if (!ok) {
      return false;
    }
    for (std::size_t oi = 0; oi < s.ops().size() && ok; ++oi) {
      std::size_t const k = s.ops()[oi].arity;
      // m[j * n + i]: argument j of g in coordinate i.
      for_each_tuple(el, k * n, [&](std::span<Element const> m) {
        if (!ok) {
          return;
        }
        std::vector<Element> g_cols(n), f_rows(k), col(k), row(n);
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            col[j] = m[j * n + i];
          }
          g_cols[i] = s.apply(oi, col);
        }
        for (std::size_t j = 0; j < k; ++j) {
          for (std::size_t i = 0; i < n; ++i) {
            row[i] = m[j * n + i];
          }
          f_rows[j] = f(N, row);
        }
        ok = f(N, g_cols) == s.apply(oi, f_rows);
      });
    }
    return ok;
  }

  bool is_n_central(FiniteStructure const& s, Element c, std::size_t n) {
    auto v = nchurch_view(s, n);
    require_church(s, v);
    if (c >= s.size()) {
      throw UniverseError("element outside the structure");
    }
    if (v.q(s, c, v.es) != c) {
      return false;
    }
    return is_decomposition_op(s, induced_map(s, v, c));
  }

  CentralRange central_range(FiniteStructure const& s, Element c, std::size_t cap) {
    if (cap == 0) {
      throw CapError("central_range needs a cap of at least 1");
    }
    CentralRange      r;
    SectionStructure  ss(s);
    for (std::size_t m = 1; m <= cap; ++m) {
      auto v = nchurch_view(s, m);
      require_church(s, v);
      bool central = v.q(s, c, v.es) == c && decomposition_with(s, ss, induced_map(s, v, c));
      r.verdicts.push_back(central);
    }
    for (std::size_t m = 1; m <= cap; ++m) {
      if (r.verdicts[m - 1]) {
        r.range = std::pair{m, cap};
        for (std::size_t k = m; k <= cap; ++k) {
          r.monotone = r.monotone && r.verdicts[k - 1];
        }
        break;
      }
    }
    return r;
  }

  FactorSystem factor_congruences(FiniteStructure const& s, Element c, std::size_t n) {
    if (!is_n_central(s, c, n)) {
      throw PreconditionError("element " + s.labels().at(c) + " is not " + std::to_string(n) + "-central");
    }
    auto const       v = nchurch_view(s, n);
    SectionStructure ss(s);
    FactorSystem     fs;
    for (std::size_t i = 0; i < n; ++i) {
      fs.thetas.push_back(congruence_generate(ss, {{c, v.es[i]}}));
    }
    std::size_t const N    = s.size();
    Partition         meet = fs.thetas[0];
    for (std::size_t i = 1; i < n; ++i) {
      meet = meet.meet(fs.thetas[i]);
    }
    fs.meet_is_identity = meet.classes() == N;

    // For every tuple count the u with a_i theta_i u for all i.
    bool unique = true;
    for_each_tuple(all_elements(N), n, [&](std::span<Element const> xs) {
      if (!unique) {
        return;
      }
      std::size_t hits = 0;
      for (Element u = 0; u < N && hits < 2; ++u) {
        bool all = true;
        for (std::size_t i = 0; i < n && all; ++i) {
          all = fs.thetas[i].related(xs[i], u);
        }
        hits += all;
      }
      unique = hits == 1;
    });
    fs.unique_solutions = unique;
    return fs;
  }

  FiniteStructure quotient(FiniteStructure const& s, Partition const& theta) {
    auto const               classes = theta.blocks();
    std::size_t const        Q       = classes.size();
    std::vector<std::string> labels;
    for (auto const& cls : classes) {
      labels.push_back("[" + s.labels()[cls[0]] + "]");
    }
    std::vector<Element> reps;
    for (auto const& cls : classes) {
      reps.push_back(cls[0]);
    }
    std::vector<StructOp> ops;
    for (std::size_t oi = 0; oi < s.ops().size(); ++oi) {
      auto const& op = s.ops()[oi];
      StructOp    qop{op.name, op.arity, {}};
      std::vector<Element> args(op.arity);
      for_each_tuple(all_elements(Q), op.arity, [&](std::span<Element const> xs) {
        for (std::size_t j = 0; j < op.arity; ++j) {
          args[j] = reps[xs[j]];
        }
        qop.table.push_back(theta.rgs()[s.apply(oi, args)]);
      });
      ops.push_back(std::move(qop));
    }
    return FiniteStructure(s.name() + "/theta", std::move(labels), std::move(ops));
  }

  Decomposition decompose(FiniteStructure const& s, Element c, std::size_t n) {
    auto const fs = factor_congruences(s, c, n);
    if (!fs.ok()) {
      throw PreconditionError("factor congruences of " + s.labels().at(c) + " are not complementary");
    }
    Decomposition     d;
    std::size_t const N = s.size();
    std::size_t       product = 1;
    for (auto const& t : fs.thetas) {
      d.factors.push_back(quotient(s, t));
      d.factor_sizes.push_back(t.classes());
      product *= t.classes();
    }
    // phi(a) encoded with the first factor most significant.
    std::vector<std::size_t> phi(N);
    for (Element a = 0; a < N; ++a) {
      std::size_t code = 0;
      for (std::size_t i = 0; i < n; ++i) {
        code = code * d.factor_sizes[i] + fs.thetas[i].rgs()[a];
      }
      phi[a] = code;
    }
    std::vector<char> seen(product);
    bool              injective = true;
    for (Element a = 0; a < N; ++a) {
      injective = injective && !seen[phi[a]];
      seen[phi[a]] = 1;
    }
    d.bijective = injective && product == N;

    bool preserves = true;
    for (std::size_t oi = 0; oi < s.ops().size() && preserves; ++oi) {
      std::size_t const    k = s.ops()[oi].arity;
      std::vector<Element> fargs(k);
      for_each_tuple(all_elements(N), k, [&](std::span<Element const> xs) {
        if (!preserves) {
          return;
        }
        Element const out = s.apply(oi, xs);
        for (std::size_t i = 0; i < n && preserves; ++i) {
          for (std::size_t j = 0; j < k; ++j) {
            fargs[j] = fs.thetas[i].rgs()[xs[j]];
          }
          preserves = d.factors[i].apply(oi, fargs) == fs.thetas[i].rgs()[out];
        }
      });
    }
    d.preserves_operations = preserves;
    return d;
  }

  NbaVerdict is_nba(FiniteStructure const& s, std::size_t n) {
    auto const v = nchurch_view(s, n);
    require_church(s, v);
    std::size_t const N = s.size();
    NbaVerdict        out;
    for (std::size_t i = 0; i < n && out.kind == NbaVerdict::Kind::Yes; ++i) {
      for_each_tuple(all_elements(N), n, [&](std::span<Element const> xs) {
        if (out.kind == NbaVerdict::Kind::Yes && v.q(s, v.es[i], xs) != xs[i]) {
          out.kind   = NbaVerdict::Kind::Malformed;
          out.detail = "q(e" + std::to_string(i + 1) + ", ...) differs from argument " + std::to_string(i + 1);
          for (Element x : xs) {
            out.detail += " " + s.labels()[x];
          }
        }
      });
    }
    if (out.kind == NbaVerdict::Kind::Malformed) {
      return out;
    }
    SectionStructure ss(s);
    for (Element c = 0; c < N; ++c) {
      if (v.q(s, c, v.es) != c || !decomposition_with(s, ss, induced_map(s, v, c))) {
        out.kind   = NbaVerdict::Kind::No;
        out.detail = "element " + s.labels()[c] + " is not " + std::to_string(n) + "-central";
        return out;
      }
    }
    return out;
  }

}  // namespace clonealg
