#include "clonealg/axioms.hpp"

#include <algorithm>
#include <array>
#include <random>

#include <omp.h>

namespace clonealg {

  bool Violation::operator<(Violation const& o) const {
    return std::tie(law, n, witness, lhs, rhs) < std::tie(o.law, o.n, o.witness, o.lhs, o.rhs);
  }

  bool Violation::operator==(Violation const& o) const {
    return std::tie(law, n, witness, lhs, rhs) == std::tie(o.law, o.n, o.witness, o.lhs, o.rhs);
  }

  std::vector<Element> low_dimension_domain(CloneAlgebraHandle const& c, std::size_t d) {
    std::vector<Element> out;
    for (Element a = 0; a < c.size(); ++a) {
      auto dim = c.dimension(a);
      if (dim && *dim <= d) {
        out.push_back(a);
      }
    }
    return out;
  }

  namespace {

    constexpr std::size_t kMaxBound = 8;
    constexpr std::size_t kMemoCells = std::size_t{1} << 22;

    using Buf = std::array<Element, 4 * kMaxBound + 4>;

    enum class Law { C1, C2, C3, C4, C5, C6, AllungoI, AllungoII, Ind1, PresQ, PresSigma, Fi0 };

    char const* law_name(Law l) {
      switch (l) {
        case Law::C1:
          return "C1";
        case Law::C2:
          return "C2";
        case Law::C3:
          return "C3";
        case Law::C4:
          return "C4";
        case Law::C5:
          return "C5";
        case Law::C6:
          return "C6";
        case Law::AllungoI:
          return "allungo_i";
        case Law::AllungoII:
          return "allungo_ii";
        case Law::Ind1:
          return "ind1";
        case Law::PresQ:
        case Law::PresSigma:
          return "preservare";
        case Law::Fi0:
          return "fi0";
      }
      return "?";
    }

    struct Family {
      Law         law;
      std::size_t n  = 0;
      std::size_t k  = 0;  // second q index, or the e index for C1/C2
      std::size_t op = 0;
      std::size_t m  = 0;  // number of domain variables
    };

    struct Outcome {
      Element lhs;
      Element rhs;
      bool    ok;
    };

    std::vector<Family> families(CloneAlgebraHandle const& c, std::size_t bound) {
      std::size_t const   el = c.e_limit();
      std::vector<Family> fs;
      for (std::size_t n = 1; n <= bound; ++n) {
        for (std::size_t i = 1; i <= n && i <= el; ++i) {
          fs.push_back({Law::C1, n, i, 0, n});
        }
      }
      for (std::size_t n = 0; n <= bound; ++n) {
        for (std::size_t j = n + 1; j <= std::min(el, bound + 1); ++j) {
          fs.push_back({Law::C2, n, j, 0, n});
        }
      }
      for (std::size_t n = 0; n <= bound && n <= el; ++n) {
        fs.push_back({Law::C3, n, 0, 0, 1});
      }
      for (std::size_t n = 1; n <= bound && n <= el; ++n) {
        for (std::size_t k = 0; k < n; ++k) {
          fs.push_back({Law::C4, n, k, 0, 1 + k});
        }
      }
      for (std::size_t n = 0; n <= bound; ++n) {
        fs.push_back({Law::C5, n, 0, 0, 1 + 2 * n});
      }
      auto const& sig = c.signature();
      for (std::size_t op = 0; op < sig.size(); ++op) {
        for (std::size_t n = 0; n <= bound; ++n) {
          fs.push_back({Law::C6, n, 0, op, sig[op].second + n});
        }
      }
      for (std::size_t n = 0; n <= bound; ++n) {
        for (std::size_t k = 0; k <= bound; ++k) {
          if (n < k) {
            fs.push_back({Law::AllungoI, n, k, 0, 1 + n + k});
          } else if (n > k) {
            fs.push_back({Law::AllungoII, n, k, 0, 1 + n + k});
          }
        }
      }
      for (std::size_t n = 1; n <= bound; ++n) {
        for (std::size_t k = n; k <= bound; ++k) {
          fs.push_back({Law::Ind1, n, k, 0, 1 + k});
        }
      }
      for (std::size_t n = 0; n <= bound; ++n) {
        fs.push_back({Law::PresQ, n, 0, 0, 1 + n});
      }
      for (std::size_t op = 0; op < sig.size(); ++op) {
        fs.push_back({Law::PresSigma, sig[op].second, 0, op, sig[op].second});
      }
      for (std::size_t n = 0; n <= bound; ++n) {
        fs.push_back({Law::Fi0, n, 0, 0, 1 + n});
      }
      return fs;
    }

    std::size_t power_or_cap(std::size_t base, std::size_t exp, std::size_t cap) {
      std::size_t r = 1;
      for (std::size_t i = 0; i < exp; ++i) {
        if (base != 0 && r > cap / base) {
          return cap;
        }
        r *= base;
      }
      return r;
    }

    constexpr std::size_t kInstanceCap = std::size_t{1} << 62;

    // Evaluation straight through the handle.
    struct Direct {
      CloneAlgebraHandle const& c;

      Element q(std::size_t n, Element a, std::span<Element const> bs) const {
        return c.q(n, a, bs);
      }
      Element sigma(std::size_t op, std::span<Element const> args) const {
        return c.sigma(op, args);
      }
      std::optional<std::size_t> dim(Element a) const {
        return c.dimension(a);
      }
    };

    // Dense tables of q_n and sigma over a fixed set of elements.
    class Memo {
     public:
      Memo(CloneAlgebraHandle const& c, std::vector<Element> dom, std::size_t bound)
          : _c(c), _dom(std::move(dom)), _pos(c.size(), -1) {
        std::sort(_dom.begin(), _dom.end());
        _dom.erase(std::unique(_dom.begin(), _dom.end()), _dom.end());
        for (std::size_t i = 0; i < _dom.size(); ++i) {
          _pos[_dom[i]] = static_cast<std::int32_t>(i);
        }
        std::size_t const M = _dom.size();
        _q.resize(bound + 1);
        for (std::size_t n = 0; n <= bound; ++n) {
          std::size_t cells = power_or_cap(M, n + 1, kMemoCells + 1);
          if (cells > kMemoCells) {
            continue;
          }
          fill(_q[n], cells, n + 1, [&](std::span<Element const> xs) {
            return c.q(xs.size() - 1, xs[0], xs.subspan(1));
          });
        }
        auto const& sig = c.signature();
        _sigma.resize(sig.size());
        for (std::size_t op = 0; op < sig.size(); ++op) {
          std::size_t cells = power_or_cap(M, sig[op].second, kMemoCells + 1);
          if (cells > kMemoCells) {
            continue;
          }
          fill(_sigma[op], cells, sig[op].second,
               [&, op](std::span<Element const> xs) { return c.sigma(op, xs); });
        }
        _dim.resize(M);
        for (std::size_t i = 0; i < M; ++i) {
          _dim[i] = c.dimension(_dom[i]);
        }
      }

      Element q(std::size_t n, Element a, std::span<Element const> bs) const {
        if (n < _q.size() && !_q[n].empty()) {
          std::size_t idx = 0;
          if (index_of(a, idx) && index_all(bs, idx)) {
            return _q[n][idx];
          }
        }
        return _c.q(n, a, bs);
      }

      Element sigma(std::size_t op, std::span<Element const> args) const {
        if (!_sigma[op].empty()) {
          std::size_t idx = 0;
          if (index_all(args, idx)) {
            return _sigma[op][idx];
          }
        }
        return _c.sigma(op, args);
      }

      std::optional<std::size_t> dim(Element a) const {
        auto p = _pos[a];
        return p >= 0 ? _dim[p] : _c.dimension(a);
      }

     private:
      bool index_of(Element a, std::size_t& idx) const {
        auto p = _pos[a];
        if (p < 0) {
          return false;
        }
        idx = idx * _dom.size() + static_cast<std::size_t>(p);
        return true;
      }

      bool index_all(std::span<Element const> xs, std::size_t& idx) const {
        for (Element x : xs) {
          if (!index_of(x, idx)) {
            return false;
          }
        }
        return true;
      }

      template <typename F>
      void fill(std::vector<Element>& table, std::size_t cells, std::size_t width, F const& f) {
        table.resize(cells);
        std::size_t const M = _dom.size();
        std::int64_t const total = static_cast<std::int64_t>(cells);
#pragma omp parallel for schedule(static)
        for (std::int64_t t = 0; t < total; ++t) {
          Buf         args{};
          std::size_t rest = static_cast<std::size_t>(t);
          for (std::size_t p = width; p-- > 0;) {
            args[p] = _dom[rest % M];
            rest /= M;
          }
          table[static_cast<std::size_t>(t)] = f(std::span<Element const>(args.data(), width));
        }
      }

      CloneAlgebraHandle const&                  _c;
      std::vector<Element>                       _dom;
      std::vector<std::int32_t>                  _pos;
      std::vector<std::vector<Element>>          _q;
      std::vector<std::vector<Element>>          _sigma;
      std::vector<std::optional<std::size_t>>    _dim;
    };

    template <typename Eval>
    Outcome run(Eval const&                 ev,
                std::vector<Element> const& es,
                Family const&               f,
                std::span<Element const>    x) {
      Buf         a{};
      std::size_t n = f.n, k = f.k;
      auto        span_of = [](Buf const& buf, std::size_t len) {
        return std::span<Element const>(buf.data(), len);
      };
      switch (f.law) {
        case Law::C1: {
          Element lhs = ev.q(n, es[k], x);
          return {lhs, x[k - 1], lhs == x[k - 1]};
        }
        case Law::C2: {
          Element lhs = ev.q(n, es[k], x);
          return {lhs, es[k], lhs == es[k]};
        }
        case Law::C3: {
          Element lhs = ev.q(n, x[0], std::span<Element const>(es.data() + 1, n));
          return {lhs, x[0], lhs == x[0]};
        }
        case Law::C4: {
          auto    ys  = x.subspan(1, k);
          Element lhs = ev.q(k, x[0], ys);
          std::copy(ys.begin(), ys.end(), a.begin());
          for (std::size_t i = k + 1; i <= n; ++i) {
            a[i - 1] = es[i];
          }
          Element rhs = ev.q(n, x[0], span_of(a, n));
          return {lhs, rhs, lhs == rhs};
        }
        case Law::C5: {
          auto    ys  = x.subspan(1, n);
          auto    zs  = x.subspan(1 + n, n);
          Element lhs = ev.q(n, ev.q(n, x[0], ys), zs);
          for (std::size_t i = 0; i < n; ++i) {
            a[i] = ev.q(n, ys[i], zs);
          }
          Element rhs = ev.q(n, x[0], span_of(a, n));
          return {lhs, rhs, lhs == rhs};
        }
        case Law::C6: {
          std::size_t const ar   = f.m - n;
          auto              args = x.subspan(0, ar);
          auto              ys   = x.subspan(ar, n);
          Element           lhs  = ev.q(n, ev.sigma(f.op, args), ys);
          for (std::size_t i = 0; i < ar; ++i) {
            a[i] = ev.q(n, args[i], ys);
          }
          Element rhs = ev.sigma(f.op, span_of(a, ar));
          return {lhs, rhs, lhs == rhs};
        }
        case Law::AllungoI:
        case Law::AllungoII: {
          auto    ys  = x.subspan(1, n);
          auto    zs  = x.subspan(1 + n, k);
          Element lhs = ev.q(k, ev.q(n, x[0], ys), zs);
          for (std::size_t i = 0; i < n; ++i) {
            a[i] = ev.q(k, ys[i], zs);
          }
          Element rhs;
          if (f.law == Law::AllungoI) {
            for (std::size_t i = n; i < k; ++i) {
              a[i] = zs[i];
            }
            rhs = ev.q(k, x[0], span_of(a, k));
          } else {
            rhs = ev.q(n, x[0], span_of(a, n));
          }
          return {lhs, rhs, lhs == rhs};
        }
        case Law::Ind1: {
          auto d = ev.dim(x[0]);
          if (!d || *d >= n) {
            return {0, 0, true};
          }
          auto    bs  = x.subspan(1, k);
          Element lhs = ev.q(k, x[0], bs);
          Element rhs = ev.q(n - 1, x[0], bs.subspan(0, n - 1));
          return {lhs, rhs, lhs == rhs};
        }
        case Law::PresQ:
        case Law::PresSigma: {
          Element r = f.law == Law::PresQ ? ev.q(n, x[0], x.subspan(1, n)) : ev.sigma(f.op, x);
          std::size_t bound = 0;
          for (Element y : x) {
            auto d = ev.dim(y);
            if (!d) {
              return {0, 0, true};
            }
            bound = std::max(bound, *d);
          }
          auto dr = ev.dim(r);
          if (!dr) {
            return {0, 0, true};
          }
          return {static_cast<Element>(*dr), static_cast<Element>(bound), *dr <= bound};
        }
        case Law::Fi0: {
          auto d = ev.dim(x[0]);
          if (!d || *d != 0) {
            return {0, 0, true};
          }
          Element lhs = ev.q(n, x[0], x.subspan(1, n));
          return {lhs, x[0], lhs == x[0]};
        }
      }
      return {0, 0, true};
    }

    void decode(std::size_t t, std::vector<Element> const& dom, std::size_t m, Element* out) {
      std::size_t const D = dom.size();
      for (std::size_t p = m; p-- > 0;) {
        out[p] = dom[t % D];
        t /= D;
      }
    }

    void keep_smallest(std::vector<Violation>& v) {
      std::sort(v.begin(), v.end());
      if (v.size() > AxiomReport::kMaxListed) {
        v.resize(AxiomReport::kMaxListed);
      }
    }

    struct Prepared {
      std::vector<Element>              dom;
      std::vector<Element>              es;
      std::vector<Family>               fams;
      std::vector<std::size_t>          totals;
      // Sampled mode: instance indices per family.
      std::vector<std::vector<std::size_t>> picks;
    };

    Prepared prepare(CloneAlgebraHandle const& c, AxiomMode const& mode, std::vector<Element> const& domain) {
      if (mode.bound > kMaxBound) {
        throw CapError("axiom bound " + std::to_string(mode.bound) + " exceeds "
                       + std::to_string(kMaxBound));
      }
      Prepared p;
      p.dom = domain;
      if (p.dom.empty()) {
        for (Element a = 0; a < c.size(); ++a) {
          p.dom.push_back(a);
        }
      }
      std::size_t const el = std::min(c.e_limit(), mode.bound + 1);
      p.es.push_back(0);
      for (std::size_t i = 1; i <= el; ++i) {
        p.es.push_back(c.e(i));
      }
      p.fams = families(c, mode.bound);
      for (auto const& f : p.fams) {
        if (f.m > std::tuple_size_v<Buf>) {
          throw CapError("axiom instance has too many variables");
        }
        p.totals.push_back(power_or_cap(p.dom.size(), f.m, kInstanceCap));
      }
      if (mode.kind == AxiomMode::Kind::Sampled) {
        for (std::size_t i = 0; i < p.fams.size(); ++i) {
          std::mt19937_64 rng(mode.seed ^ (0x9e3779b97f4a7c15ULL * (i + 1)));
          std::vector<std::size_t> picks;
          if (p.totals[i] > 0) {
            std::uniform_int_distribution<std::size_t> pick(0, p.totals[i] - 1);
            for (std::size_t s = 0; s < mode.samples; ++s) {
              picks.push_back(pick(rng));
            }
          }
          p.picks.push_back(std::move(picks));
        }
      } else {
        for (std::size_t i = 0; i < p.fams.size(); ++i) {
          if (p.totals[i] >= kInstanceCap) {
            throw CapError("exhaustive axiom check is too large; use sampled mode");
          }
        }
      }
      return p;
    }

    void record(AxiomReport& report, Family const& f, std::size_t instances, std::size_t bad,
                std::vector<Violation>& found) {
      auto& tally = report.laws[law_name(f.law)];
      tally.instances += instances;
      tally.violations += bad;
      report.total_instances += instances;
      report.total_violations += bad;
      for (auto& v : found) {
        report.listed.push_back(std::move(v));
      }
      keep_smallest(report.listed);
    }

    Violation make_violation(Family const& f, Element const* x, Outcome const& o) {
      return {law_name(f.law), f.n, std::vector<Element>(x, x + f.m), o.lhs, o.rhs};
    }

  }  // namespace

  AxiomReport check_axioms(CloneAlgebraHandle const&   c,
                           AxiomMode const&            mode,
                           std::vector<Element> const& domain) {
    Prepared p = prepare(c, mode, domain);
    std::vector<Element> memo_dom = p.dom;
    memo_dom.insert(memo_dom.end(), p.es.begin() + 1, p.es.end());
    Memo const memo(c, memo_dom, mode.bound);

    AxiomReport report;
    for (std::size_t fi = 0; fi < p.fams.size(); ++fi) {
      Family const&      f       = p.fams[fi];
      bool const         sampled = mode.kind == AxiomMode::Kind::Sampled;
      std::int64_t const total   = static_cast<std::int64_t>(sampled ? p.picks[fi].size() : p.totals[fi]);
      std::size_t            bad = 0;
      std::vector<Violation> found;
#pragma omp parallel
      {
        std::vector<Violation> local;
        std::size_t            local_bad = 0;
        Buf                    x{};
#pragma omp for schedule(dynamic, 4096) nowait
        for (std::int64_t t = 0; t < total; ++t) {
          std::size_t inst = sampled ? p.picks[fi][static_cast<std::size_t>(t)] : static_cast<std::size_t>(t);
          decode(inst, p.dom, f.m, x.data());
          Outcome o = run(memo, p.es, f, std::span<Element const>(x.data(), f.m));
          if (!o.ok) {
            ++local_bad;
            local.push_back(make_violation(f, x.data(), o));
            if (local.size() > 4 * AxiomReport::kMaxListed) {
              keep_smallest(local);
            }
          }
        }
#pragma omp critical(clonealg_axioms_merge)
        {
          bad += local_bad;
          for (auto& v : local) {
            found.push_back(std::move(v));
          }
        }
      }
      record(report, f, static_cast<std::size_t>(total), bad, found);
    }
    return report;
  }

  AxiomReport check_axioms_serial(CloneAlgebraHandle const&   c,
                                  AxiomMode const&            mode,
                                  std::vector<Element> const& domain) {
    Prepared     p = prepare(c, mode, domain);
    Direct const ev{c};
    AxiomReport  report;
    for (std::size_t fi = 0; fi < p.fams.size(); ++fi) {
      Family const&          f       = p.fams[fi];
      bool const             sampled = mode.kind == AxiomMode::Kind::Sampled;
      std::size_t const      total   = sampled ? p.picks[fi].size() : p.totals[fi];
      std::size_t            bad     = 0;
      std::vector<Violation> found;
      Buf                    x{};
      for (std::size_t t = 0; t < total; ++t) {
        decode(sampled ? p.picks[fi][t] : t, p.dom, f.m, x.data());
        Outcome o = run(ev, p.es, f, std::span<Element const>(x.data(), f.m));
        if (!o.ok) {
          ++bad;
          found.push_back(make_violation(f, x.data(), o));
        }
      }
      record(report, f, total, bad, found);
    }
    return report;
  }

}  // namespace clonealg
