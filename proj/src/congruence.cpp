#include "clonealg/congruence.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <omp.h>

#include "clonealg/tuples.hpp"

namespace clonealg {

  ////////////////////////////////////////////////////////////////////////
  // Partition
  ////////////////////////////////////////////////////////////////////////

  Partition::Partition(std::vector<std::uint32_t> labels) : _rgs(labels.size()) {
    std::vector<std::uint32_t> renamed;
    std::vector<std::uint32_t> from;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      auto it = std::find(from.begin(), from.end(), labels[i]);
      if (it == from.end()) {
        from.push_back(labels[i]);
        _rgs[i] = static_cast<std::uint32_t>(from.size() - 1);
      } else {
        _rgs[i] = static_cast<std::uint32_t>(it - from.begin());
      }
    }
    _classes = from.size();
  }

  Partition Partition::discrete(std::size_t n) {
    std::vector<std::uint32_t> l(n);
    std::iota(l.begin(), l.end(), 0);
    return Partition(std::move(l));
  }

  Partition Partition::total(std::size_t n) {
    return Partition(std::vector<std::uint32_t>(n, 0));
  }

  bool Partition::finer_or_equal(Partition const& other) const {
    std::vector<std::int64_t> image(_classes, -1);
    for (std::size_t i = 0; i < _rgs.size(); ++i) {
      auto& m = image[_rgs[i]];
      if (m < 0) {
        m = other._rgs[i];
      } else if (m != other._rgs[i]) {
        return false;
      }
    }
    return true;
  }

  namespace {

    struct UnionFind {
      std::vector<std::uint32_t> parent;

      explicit UnionFind(std::size_t n) : parent(n) {
        std::iota(parent.begin(), parent.end(), 0);
      }
      std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
          parent[x] = parent[parent[x]];
          x         = parent[x];
        }
        return x;
      }
      bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) {
          return false;
        }
        if (a > b) {
          std::swap(a, b);
        }
        parent[b] = a;
        return true;
      }
      Partition partition() {
        std::vector<std::uint32_t> l(parent.size());
        for (std::uint32_t i = 0; i < parent.size(); ++i) {
          l[i] = find(i);
        }
        return Partition(std::move(l));
      }
    };

  }  // namespace

  Partition Partition::join(Partition const& other) const {
    UnionFind                   uf(size());
    std::vector<std::int64_t>   first_a(_classes, -1);
    std::vector<std::int64_t>   first_b(other._classes, -1);
    for (std::uint32_t i = 0; i < size(); ++i) {
      for (auto [first, label] : {std::pair{&first_a, _rgs[i]}, std::pair{&first_b, other._rgs[i]}}) {
        auto& f = (*first)[label];
        if (f < 0) {
          f = i;
        } else {
          uf.unite(static_cast<std::uint32_t>(f), i);
        }
      }
    }
    return uf.partition();
  }

  Partition Partition::meet(Partition const& other) const {
    std::vector<std::uint32_t> l(size());
    for (std::size_t i = 0; i < size(); ++i) {
      l[i] = static_cast<std::uint32_t>(_rgs[i] * other._classes + other._rgs[i]);
    }
    return Partition(std::move(l));
  }

  std::vector<std::vector<Element>> Partition::blocks() const {
    std::vector<std::vector<Element>> out(_classes);
    for (std::size_t i = 0; i < size(); ++i) {
      out[_rgs[i]].push_back(static_cast<Element>(i));
    }
    return out;
  }

  bool Partition::operator<(Partition const& o) const {
    if (_classes != o._classes) {
      return _classes < o._classes;
    }
    return _rgs < o._rgs;
  }

  ////////////////////////////////////////////////////////////////////////
  // Translations
  ////////////////////////////////////////////////////////////////////////

  SectionStructure::SectionStructure(FiniteStructure s) : _s(std::move(s)) {
    std::size_t const N = _s.size();
    std::set<std::vector<Element>> maps;
    std::size_t                    work = 0;
    std::vector<Element>           ids(N);
    std::iota(ids.begin(), ids.end(), 0);
    for (std::size_t oi = 0; oi < _s.ops().size(); ++oi) {
      std::size_t const m = _s.ops()[oi].arity;
      if (m == 0) {
        continue;
      }
      work += m * tuple_count(N, m - 1) * N;
      if (work > (std::size_t{1} << 26)) {
        throw CapError("too many translations for structure '" + _s.name() + "'");
      }
      std::vector<Element> args(m);
      for (std::size_t pos = 0; pos < m; ++pos) {
        for_each_tuple(ids, m - 1, [&](std::span<Element const> params) {
          std::vector<Element> t(N);
          for (Element x = 0; x < N; ++x) {
            for (std::size_t i = 0, j = 0; i < m; ++i) {
              args[i] = i == pos ? x : params[j++];
            }
            t[x] = _s.apply(oi, args);
          }
          if (t != ids) {
            maps.insert(std::move(t));
          }
        });
      }
    }
    _translations.assign(maps.begin(), maps.end());
  }

  Partition congruence_generate(SectionStructure const& s,
                                std::vector<std::pair<Element, Element>> const& pairs) {
    UnionFind                                uf(s.size());
    std::vector<std::pair<Element, Element>> work;
    for (auto [a, b] : pairs) {
      if (a >= s.size() || b >= s.size()) {
        throw UniverseError("congruence generator outside the section");
      }
      if (uf.unite(a, b)) {
        work.emplace_back(a, b);
      }
    }
    while (!work.empty()) {
      auto [a, b] = work.back();
      work.pop_back();
      for (auto const& t : s.translations()) {
        if (uf.unite(t[a], t[b])) {
          work.emplace_back(t[a], t[b]);
        }
      }
    }
    return uf.partition();
  }

  CongruenceLattice congruence_enumerate(SectionStructure const& s, Exec exec, std::size_t guard) {
    std::size_t const N = s.size();
    if (N > guard) {
      throw CapError("section of " + std::to_string(N) + " elements exceeds the congruence guard "
                     + std::to_string(guard));
    }
    std::vector<std::pair<Element, Element>> seeds;
    for (Element a = 0; a < N; ++a) {
      for (Element b = a + 1; b < N; ++b) {
        seeds.emplace_back(a, b);
      }
    }
    std::vector<Partition> principal(seeds.size(), Partition::discrete(N));
    std::int64_t const     count = static_cast<std::int64_t>(seeds.size());
    if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic)
      for (std::int64_t i = 0; i < count; ++i) {
        principal[i] = congruence_generate(s, {seeds[i]});
      }
    } else {
      for (std::int64_t i = 0; i < count; ++i) {
        principal[i] = congruence_generate(s, {seeds[i]});
      }
    }
    std::sort(principal.begin(), principal.end());
    principal.erase(std::unique(principal.begin(), principal.end()), principal.end());

    std::set<Partition> all{Partition::discrete(N)};
    for (auto const& p : principal) {
      std::vector<Partition> fresh;
      for (auto const& x : all) {
        fresh.push_back(x.join(p));
      }
      all.insert(fresh.begin(), fresh.end());
    }

    CongruenceLattice l;
    l.section = s.structure().name() + " (" + std::to_string(N) + " elements)";
    l.elements.assign(all.begin(), all.end());
    std::size_t const L = l.elements.size();
    for (std::size_t i = 0; i < L; ++i) {
      for (std::size_t j = 0; j < L; ++j) {
        if (i == j || !l.elements[i].finer_or_equal(l.elements[j])) {
          continue;
        }
        bool between = false;
        for (std::size_t k = 0; k < L && !between; ++k) {
          between = k != i && k != j && l.elements[i].finer_or_equal(l.elements[k])
                    && l.elements[k].finer_or_equal(l.elements[j]);
        }
        if (!between) {
          l.covers.emplace_back(i, j);
        }
      }
    }
    std::sort(l.covers.begin(), l.covers.end());
    return l;
  }

  std::string emit_dot(CongruenceLattice const& l) {
    std::string out = "digraph congruences {\n  rankdir=BT;\n";
    for (std::size_t i = 0; i < l.elements.size(); ++i) {
      out += "  n" + std::to_string(i) + " [label=\"" + std::to_string(l.elements[i].classes()) + "\"];\n";
    }
    for (auto [a, b] : l.covers) {
      out += "  n" + std::to_string(a) + " -> n" + std::to_string(b) + ";\n";
    }
    return out + "}\n";
  }

  bool equation_derivable(FinAlgebra const& a, Term const& s, Term const& t, std::size_t k) {
    return canonicalize(term_eval(s, a, k)) == canonicalize(term_eval(t, a, k));
  }

}  // namespace clonealg
