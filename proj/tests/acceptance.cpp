// Acceptance run: one PASS/FAIL line per criterion.
//
// usage: acceptance <path to clonealg> <data dir>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "clonealg/axioms.hpp"
#include "clonealg/block_algebra.hpp"
#include "clonealg/central.hpp"
#include "clonealg/congruence.hpp"
#include "clonealg/constants.hpp"
#include "clonealg/io.hpp"
#include "clonealg/representable.hpp"
#include "clonealg/varieties.hpp"

using namespace clonealg;

namespace {

  constexpr double      kAxiomSeconds      = 120.0;
  constexpr double      kCongruenceSeconds = 300.0;
  constexpr std::size_t kEmbedInstances    = 1000;
  constexpr std::uint32_t kEmbedSeed       = 20240611;

  std::string g_cli;
  std::string g_data;

  struct Outcome {
    bool        pass = true;
    std::string note;

    void require(bool ok, std::string const& what) {
      if (!ok) {
        pass = false;
        note += (note.empty() ? "" : "; ") + what;
      }
    }
  };

  double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  }

  FinAlgebra load(std::string const& name) {
    return parse_algebra(g_data + "/" + name + ".alg");
  }

  std::vector<Element> all_of(CloneAlgebraHandle const& c) {
    std::vector<Element> v(c.size());
    for (Element i = 0; i < v.size(); ++i) {
      v[i] = i;
    }
    return v;
  }

  // Axiom suite on the NAND block algebra at cap 3 over arity <= 2 blocks.
  Outcome criterion1() {
    Outcome    o;
    auto const c      = clv_block_algebra(load("nand"), 3);
    auto const domain = low_dimension_domain(*c, 2);
    auto const t0     = std::chrono::steady_clock::now();
    auto const r      = check_axioms(*c, AxiomMode::exhaustive(3), domain);
    double const dt   = seconds_since(t0);
    for (auto const* law : {"C1", "C2", "C3", "C4", "C5", "C6"}) {
      o.require(r.laws.count(law) && r.laws.at(law).instances > 0, std::string(law) + " not exercised");
    }
    o.require(r.ok(), std::to_string(r.total_violations) + " violations");
    o.require(dt < kAxiomSeconds, "took " + std::to_string(dt) + "s");
    // One q table entry changed.
    std::vector<Element> bs{c->e(2), c->e(1)};
    Element const        nand_el = c->sigma_block(0);
    Element const        right   = c->q(2, nand_el, bs);
    FaultInjectedHandle const mutated(c, 2, nand_el, bs, right == c->e(1) ? c->e(2) : c->e(1));
    auto const                rm = check_axioms(mutated, AxiomMode::exhaustive(3), domain);
    o.require(rm.total_violations >= 1, "mutation not detected");
    o.note += (o.note.empty() ? "" : "; ") + std::to_string(r.total_instances) + " instances in "
              + std::to_string(static_cast<int>(dt)) + "s, mutation: " + std::to_string(rm.total_violations)
              + " violations";
    return o;
  }

  // The union of the blocks of the NAND section is the set of operations of
  // arity <= 2 in the clone, computed here by a naive fixed point.
  Outcome criterion2() {
    Outcome    o;
    auto const a    = load("nand");
    auto const s    = term_clone(a, 2);
    auto const u    = a.universe();
    auto const nand = a.ops()[0].op;
    std::set<OpTable> oracle;
    for (std::size_t k = 0; k <= 2; ++k) {
      std::set<OpTable> layer;
      std::size_t const kk = std::max<std::size_t>(k, 1);
      for (std::size_t i = 1; i <= kk; ++i) {
        layer.insert(OpTable::projection(u, i, kk));
      }
      bool grew = true;
      while (grew) {
        grew = false;
        std::vector<OpTable> cur(layer.begin(), layer.end());
        for (auto const& x : cur) {
          for (auto const& y : cur) {
            grew = layer.insert(compose(nand, {x, y}, kk)).second || grew;
          }
        }
      }
      for (auto const& op : layer) {
        if (k == 0) {
          if (!depends_on(op, 1)) {
            oracle.insert(OpTable(u, 0, {op.at(0)}));
          }
        } else {
          oracle.insert(op);
        }
      }
    }
    auto const        ops = s.operations();
    std::set<OpTable> from_blocks(ops.begin(), ops.end());
    o.require(from_blocks == oracle, "union of blocks differs from the clone");
    o.require(oracle.size() == 22, std::to_string(oracle.size()) + " operations");
    o.require(s.members().size() == 16, std::to_string(s.members().size()) + " blocks");
    return o;
  }

  Outcome criterion3() {
    Outcome o;
    for (auto const& [name, cap] : std::vector<std::pair<std::string, std::size_t>>{{"nand", 2}, {"sets", 3}, {"lz", 3}}) {
      auto const c = clv_block_algebra(load(name), cap);
      auto const r = rep_iso_check(*c, 2);
      o.require(r.ok() && r.checked > 0, name + ": " + std::to_string(r.mismatches) + " mismatches");
    }
    return o;
  }

  Outcome criterion4() {
    Outcome         o;
    HandlePtr const c   = clv_block_algebra(load("ba"), 2);
    auto const      dom = all_of(*c);
    auto const      sb  = check_star_bullet(*c, dom, 2);
    o.require(sb.ok(), "(C^bullet)^star: " + std::to_string(sb.mismatches) + " mismatches");
    std::vector<std::size_t> arities;
    for (auto const& [n, k] : c->signature()) {
      arities.push_back(k);
    }
    auto const bs = check_bullet_star(to_constants(c), arities, dom, 2);
    o.require(bs.ok(), "(A^star)^bullet: " + std::to_string(bs.mismatches) + " mismatches");
    return o;
  }

  Outcome criterion5() {
    Outcome o;
    for (std::size_t n : {2, 3}) {
      auto const a = n_algebra(n);
      auto const p = power(a, 2);
      for (auto const* s : {&a, &p}) {
        for (Element c = 0; c < s->size(); ++c) {
          o.require(is_n_central(*s, c, n), s->name() + ": " + s->labels()[c] + " not central");
        }
      }
      auto const d = decompose(p, p.element("(e1,e2)"), n);
      std::size_t nontrivial = 0, product = 1;
      for (auto sz : d.factor_sizes) {
        nontrivial += sz > 1;
        product *= sz;
        o.require(sz == 1 || sz == n, "factor of size " + std::to_string(sz));
      }
      o.require(d.ok() && nontrivial == 2 && product == n * n, "decomposition of n^X for n = " + std::to_string(n));
      for (std::size_t x = 1; x <= 3; ++x) {
        std::size_t expected = 1;
        for (std::size_t i = 0; i < x; ++i) {
          expected *= n;
        }
        o.require(n_partition_algebra(n, x).size() == expected, "partition count");
      }
    }
    std::size_t const cap = 4;
    auto const        c   = clv_block_algebra(load("sets"), cap);
    auto const        s   = tabulate(*c, all_of(*c), cap, true);
    for (std::size_t i = 1; i <= cap; ++i) {
      auto const r = central_range(s, c->e(i), cap);
      o.require(r.range && r.range->first == i && r.range->second == cap, "central range of e" + std::to_string(i));
    }
    return o;
  }

  Outcome criterion6() {
    Outcome    o;
    auto const t0    = std::chrono::steady_clock::now();
    auto const sets4 = clv_block_algebra(load("sets"), 4);
    auto const l1    = congruence_enumerate(SectionStructure(tabulate(*sets4, all_of(*sets4), 4, true)));
    auto const b2    = clv_block_algebra(load("ba"), 2);
    auto const l2    = congruence_enumerate(SectionStructure(tabulate(*b2, all_of(*b2), 2, true)));
    double const dt  = seconds_since(t0);
    o.require(l1.elements.size() == 2, "Cl(Sets): " + std::to_string(l1.elements.size()));
    o.require(b2->section().operation_count() == 22, "B2 section has " + std::to_string(b2->section().operation_count()) + " operations");
    o.require(l2.elements.size() == 2, "B2: " + std::to_string(l2.elements.size()));
    o.require(dt < kCongruenceSeconds, "took " + std::to_string(dt) + "s");
    return o;
  }

  Outcome criterion7() {
    Outcome    o;
    auto const lz = load("lz"), rz = load("rz"), sets = load("sets");
    auto const w  = independence_search(lz, rz, 1);
    o.require(w && w->to_string() == "(· v1 v2)", "no depth-1 witness for lz/rz");
    auto const p1 = product_minimality_check(lz, rz, 2, 2);
    o.require(p1.minimal == MinimalVerdict::Yes && p1.agree, "lz x rz: " + to_string(p1.minimal));
    auto const p2 = product_minimality_check(sets, sets, 3, 2);
    o.require(!p2.witness && p2.minimal == MinimalVerdict::NoWithinBound && p2.agree,
              "sets x sets: " + to_string(p2.minimal));
    return o;
  }

  Outcome criterion8() {
    Outcome    o;
    auto const sets4 = clv_block_algebra(load("sets"), 4);
    for (std::size_t n : {2, 3}) {
      o.require(!diagonal_identity_counterexample(*sets4, n, all_of(*sets4)), "identity fails in Cl(Sets)");
    }
    auto const           b2 = clv_block_algebra(load("ba"), 2);
    Element const        f  = b2->sigma_block(*b2->find_op("or"));
    Element const        e1 = b2->e(1), e2 = b2->e(2);
    std::vector<Element> inner{b2->q(2, f, std::vector<Element>{e1, e2}), b2->q(2, f, std::vector<Element>{e2, e1})};
    Element const        lhs = b2->q(2, f, inner);
    Element const        rhs = b2->q(2, f, std::vector<Element>{e1, e1});
    o.require(lhs != rhs, "OR witness does not separate");
    // Pointwise: f(f(0,1), f(1,0)) = 1 while f(0,0) = 0.
    auto const& g = b2->block(f).generator();
    o.require(g.at(g.at(1) * 2 + g.at(2)) == 1 && g.at(0) == 0, "OR table");
    return o;
  }

  Outcome criterion9() {
    Outcome    o;
    auto const c   = clv_block_algebra(load("nand"), 2);
    auto const eps = epsilon_stream(*c);
    std::set<Element> images;
    for (Element x = 0; x < c->size(); ++x) {
      images.insert(rca_embed(*c, x, eps));
    }
    o.require(images.size() == c->size(), "not injective at epsilon");
    std::mt19937 rng(kEmbedSeed);
    std::size_t  failures = 0;
    for (std::size_t t = 0; t < kEmbedInstances; ++t) {
      std::size_t const    n = rng() % 3;
      Element const        b = static_cast<Element>(rng() % c->size());
      std::vector<Element> cs;
      for (std::size_t i = 0; i < n; ++i) {
        cs.push_back(static_cast<Element>(rng() % c->size()));
      }
      Stream s = eps;
      for (std::size_t i = 1; i <= 2; ++i) {
        if (rng() % 2) {
          s = s.with(i, static_cast<Value>(rng() % c->size()));
        }
      }
      std::vector<Value> prefix;
      for (auto ci : cs) {
        prefix.push_back(rca_embed(*c, ci, s));
      }
      failures += rca_embed(*c, c->q(n, b, cs), s) != rca_embed(*c, b, s.with_prefix(prefix));
    }
    o.require(failures == 0, std::to_string(failures) + " of " + std::to_string(kEmbedInstances) + " failed");
    return o;
  }

  std::string slurp(std::filesystem::path const& p) {
    std::ifstream      in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  Outcome criterion10() {
    Outcome                        o;
    std::string const              d = g_data + "/";
    std::vector<std::string> const commands{
        "close " + d + "nand.alg --cap 2",
        "blocks " + d + "ba.alg",
        "axioms " + d + "nand.alg --cap 2 --bound 2",
        "axioms " + d + "nand.alg --cap 2 --bound 2 --samples 500 --seed 11",
        "dim " + d + "nand.alg --cap 3 --term \"(nand v1 v3)\"",
        "central " + d + "n2x2.alg",
        "central " + d + "sets.alg --cap 4 --element v2",
        "decompose " + d + "n3x2.alg --element \"(e1,e2)\"",
        "congruences " + d + "ba.alg --section 2 --dot {dot}",
        "derive " + d + "ba.alg --lhs \"(not (not v1))\" --rhs v1",
        "clv " + d + "nand.alg --cap 3",
        "repiso " + d + "lz.alg --cap 3",
        "independence " + d + "lz.alg " + d + "rz.alg --depth 2",
        "minimal " + d + "lz.alg --product " + d + "rz.alg --depth 2",
        "minimal " + d + "and.alg --generators " + d + "nand.alg --cap 2 --depth 3"};
    auto const dir = std::filesystem::temp_directory_path() / "clonealg_acceptance";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    for (std::size_t i = 0; i < commands.size(); ++i) {
      std::string runs[2][2];
      for (int r = 0; r < 2; ++r) {
        auto const json = dir / ("run" + std::to_string(r) + "_" + std::to_string(i) + ".json");
        auto const dot  = dir / ("run" + std::to_string(r) + "_" + std::to_string(i) + ".dot");
        std::string cmd = commands[i];
        if (auto at = cmd.find("{dot}"); at != std::string::npos) {
          cmd.replace(at, 5, dot.string());
        }
        std::string const line = "\"" + g_cli + "\" " + cmd + " --json " + json.string() + " > /dev/null 2>&1";
        int const         rc   = std::system(line.c_str());
        o.require(rc != -1 && WIFEXITED(rc) && WEXITSTATUS(rc) == 0, "command failed: " + commands[i]);
        runs[r][0] = slurp(json);
        runs[r][1] = std::filesystem::exists(dot) ? slurp(dot) : "";
      }
      o.require(!runs[0][0].empty(), "no JSON from: " + commands[i]);
      o.require(runs[0][0] == runs[1][0] && runs[0][1] == runs[1][1], "artifacts differ: " + commands[i]);
    }
    std::filesystem::remove_all(dir);
    return o;
  }

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <clonealg binary> <data dir>\n";
    return 2;
  }
  g_cli  = argv[1];
  g_data = argv[2];

  std::vector<std::pair<std::string, std::function<Outcome()>>> const criteria{
      {"axiom suite on the NAND block algebra, cap 3", criterion1},
      {"union of NAND blocks reproduces the 22 operations", criterion2},
      {"representation isomorphism on three block algebras", criterion3},
      {"constants presentation round trips on the BA section", criterion4},
      {"centrality in n and n^X, central ranges, partition counts", criterion5},
      {"congruence counts of the Sets and BA sections", criterion6},
      {"independence of left- and right-zero groupoids", criterion7},
      {"nested q identity: holds for Sets, fails for BA", criterion8},
      {"stream embedding of the NAND block algebra", criterion9},
      {"byte-identical CLI artifacts across runs", criterion10}};

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (std::exception const& e) {
      o.pass = false;
      o.note = std::string("exception: ") + e.what();
    }
    failed += !o.pass;
    std::printf("%s criterion %zu: %s%s%s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.note.empty() ? "" : " -- ", o.note.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
