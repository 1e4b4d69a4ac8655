// clonealg: command-line front end.
//
// Exit status: 0 success, 1 a checked property fails, 2 usage or input error.

#include <cstdlib>
#include <iostream>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "clonealg/axioms.hpp"
#include "clonealg/block_algebra.hpp"
#include "clonealg/central.hpp"
#include "clonealg/congruence.hpp"
#include "clonealg/io.hpp"
#include "clonealg/representable.hpp"
#include "clonealg/structure.hpp"
#include "clonealg/varieties.hpp"

using namespace clonealg;
using nlohmann::json;

namespace {

  struct Output {
    std::string json_path;
    std::string dot_path;
  };

  void emit(Output const& out, json const& report) {
    if (!out.json_path.empty()) {
      write_atomic(out.json_path, report.dump(2) + "\n");
    }
  }

  std::vector<std::string> symbols_of(OpTable const& op) {
    std::vector<std::string> s;
    for (Value v : op.table()) {
      s.push_back(op.universe()->symbol(v));
    }
    return s;
  }

  // The block of a term of the algebra, as an element of its Cl section.
  Element element_of_term(BlockAlgebra const& c, FinAlgebra const& a, Term const& t) {
    std::size_t const k = std::max<std::size_t>(1, t.max_index());
    if (k > c.e_limit()) {
      throw CapError("term " + t.to_string() + " needs cap " + std::to_string(k));
    }
    return c.element(canonicalize(term_eval(t, a, k)));
  }

  std::vector<Element> all_of(CloneAlgebraHandle const& c) {
    std::vector<Element> v(c.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
  }

  bool has_church_q(FinAlgebra const& a) {
    return a.find("q") != nullptr;
  }

  std::size_t church_n(FinAlgebra const& a) {
    std::size_t const arity = a.find("q")->arity();
    if (arity < 2) {
      throw ArityError("operation q must have arity at least 2");
    }
    return arity - 1;
  }

  json violation_json(Violation const& v) {
    return {{"law", v.law}, {"n", v.n}, {"witness", v.witness}, {"lhs", v.lhs}, {"rhs", v.rhs}};
  }

  ////////////////////////////////////////////////////////////////////////
  // Commands
  ////////////////////////////////////////////////////////////////////////

  int cmd_close(std::string const& file, std::size_t cap, Output const& out) {
    auto const a = parse_algebra(file);
    auto const s = term_clone(a, cap);
    auto const ops = s.operations();
    std::cout << ops.size() << " operations, " << s.members().size() << " blocks (cap " << cap << ")\n";
    json members = json::array();
    for (std::size_t i = 0; i < s.members().size(); ++i) {
      auto const& b = s.members()[i];
      std::cout << "  " << s.term(i).to_string() << "  arity " << b.arity() << "  " << render_table(b.generator())
                << "\n";
      members.push_back({{"term", s.term(i).to_string()}, {"arity", b.arity()}, {"table", symbols_of(b.generator())}});
    }
    emit(out, {{"command", "close"},
               {"algebra", a.name()},
               {"cap", cap},
               {"operations", ops.size()},
               {"blocks", members}});
    return 0;
  }

  int cmd_blocks(std::string const& file, std::vector<std::string> const& names, Output const& out) {
    auto const           a = parse_algebra(file);
    std::vector<NamedOp> chosen;
    for (auto const& n : names) {
      OpTable const* op = a.find(n);
      if (!op) {
        throw ParseError("no operation '" + n + "' in " + a.name());
      }
      chosen.push_back({n, *op});
    }
    if (names.empty()) {
      chosen = a.ops();
    }
    std::map<Block, std::vector<std::string>> groups;
    for (auto const& op : chosen) {
      groups[canonicalize(op.op)].push_back(op.name);
    }
    std::cout << groups.size() << " blocks among " << chosen.size() << " operations\n";
    json blocks = json::array();
    for (auto const& [b, ops] : groups) {
      std::cout << "  arity " << b.arity() << " " << render_table(b.generator()) << ":";
      for (auto const& n : ops) {
        std::cout << " " << n;
      }
      std::cout << "\n";
      blocks.push_back({{"arity", b.arity()}, {"table", symbols_of(b.generator())}, {"operations", ops}});
    }
    emit(out, {{"command", "blocks"}, {"algebra", a.name()}, {"blocks", blocks}});
    return 0;
  }

  int cmd_axioms(std::string const& file,
                 std::size_t        cap,
                 std::size_t        bound,
                 std::optional<std::size_t> domain_dim,
                 std::size_t        samples,
                 std::optional<std::uint64_t> seed,
                 Output const&      out) {
    if (samples > 0 && !seed) {
      throw ParseError("--samples requires --seed");
    }
    auto const a = parse_algebra(file);
    auto const c = clv_block_algebra(a, cap);
    auto const domain = domain_dim ? low_dimension_domain(*c, *domain_dim) : all_of(*c);
    auto const mode   = samples > 0 ? AxiomMode::sampled(bound, samples, *seed) : AxiomMode::exhaustive(bound);
    auto const r      = check_axioms(*c, mode, domain);
    std::cout << c->name() << ": " << r.total_instances << " instances over " << domain.size() << " elements, "
              << r.total_violations << " violations\n";
    json laws = json::object();
    for (auto const& [law, t] : r.laws) {
      std::cout << "  " << law << ": " << t.instances << " instances, " << t.violations << " violations\n";
      laws[law] = {{"instances", t.instances}, {"violations", t.violations}};
    }
    json listed = json::array();
    for (auto const& v : r.listed) {
      listed.push_back(violation_json(v));
    }
    emit(out, {{"command", "axioms"},
               {"algebra", c->name()},
               {"bound", bound},
               {"domain_size", domain.size()},
               {"mode", samples > 0 ? "sampled" : "exhaustive"},
               {"laws", laws},
               {"violations", listed},
               {"total_instances", r.total_instances},
               {"total_violations", r.total_violations}});
    return r.ok() ? 0 : 1;
  }

  int cmd_dim(std::string const& file, std::size_t cap, std::string const& term, Output const& out) {
    auto const a = parse_algebra(file);
    auto const c = clv_block_algebra(a, cap);
    auto const t = parse_term(term);
    Element    x = element_of_term(*c, a, t);
    auto const d = c->dimension(x);
    std::cout << t.to_string() << ": dimension " << *d << "\n";
    emit(out, {{"command", "dim"}, {"algebra", c->name()}, {"term", t.to_string()}, {"dimension", *d}});
    return 0;
  }

  int cmd_central(std::string const&         file,
                  std::size_t                cap,
                  std::optional<std::size_t> n_opt,
                  std::string const&         element,
                  Output const&              out) {
    auto const a = parse_algebra(file);
    json       report{{"command", "central"}, {"algebra", a.name()}};
    if (has_church_q(a)) {
      auto const        s = from_algebra(a);
      std::size_t const n = church_n(a);
      report["mode"]     = "n-church";
      report["n"]        = n;
      report["section"]  = s.name() + " (" + std::to_string(s.size()) + " elements)";
      auto const v = is_nba(s, n);
      if (v.kind == NbaVerdict::Kind::Malformed) {
        std::cout << "malformed " << n << "-Church algebra: " << v.detail << "\n";
        report["verdict"] = "malformed";
        report["detail"]  = v.detail;
        emit(out, report);
        return 1;
      }
      json central = json::array();
      for (Element c = 0; c < s.size(); ++c) {
        if (is_n_central(s, c, n)) {
          central.push_back(s.labels()[c]);
        }
      }
      if (!element.empty()) {
        Element const c  = s.element(element);
        bool const    ok = is_n_central(s, c, n);
        std::cout << element << " is " << (ok ? "" : "not ") << n << "-central\n";
        report["element"] = element;
        report["central"] = ok;
      }
      bool const nba = v.kind == NbaVerdict::Kind::Yes;
      std::cout << central.size() << " of " << s.size() << " elements are " << n << "-central; "
                << (nba ? "a " : "not a ") << n << "BA\n";
      report["central_elements"] = central;
      report["verdict"]          = nba ? "nba" : "not nba";
      emit(out, report);
      return nba ? 0 : 1;
    }
    auto const c = clv_block_algebra(a, cap);
    auto const s = tabulate(*c, all_of(*c), cap, true);
    report["mode"]    = "clone";
    report["section"] = c->name() + " (" + std::to_string(s.size()) + " elements)";
    if (!element.empty()) {
      Element const x = element_of_term(*c, a, parse_term(element));
      auto const    r = central_range(s, x, cap);
      report["element"] = c->render(x);
      if (r.range) {
        std::cout << c->render(x) << " is m-central for m in [" << r.range->first << ", " << r.range->second << "]\n";
        report["range"] = {r.range->first, r.range->second};
      } else {
        std::cout << c->render(x) << " is not m-central for any m <= " << cap << "\n";
        report["range"] = nullptr;
      }
      report["monotone"] = r.monotone;
      emit(out, report);
      return r.monotone ? 0 : 1;
    }
    std::size_t const n = n_opt.value_or(2);
    json central = json::array();
    for (Element x = 0; x < s.size(); ++x) {
      if (is_n_central(s, x, n)) {
        central.push_back(c->render(x));
      }
    }
    std::cout << central.size() << " of " << s.size() << " elements are " << n << "-central\n";
    for (auto const& e : central) {
      std::cout << "  " << e.get<std::string>() << "\n";
    }
    report["n"]                = n;
    report["central_elements"] = central;
    emit(out, report);
    return 0;
  }

  int cmd_decompose(std::string const& file, std::string const& element, Output const& out) {
    auto const a = parse_algebra(file);
    if (!has_church_q(a)) {
      throw ParseError("decompose needs an operation q and constants e1..en");
    }
    auto const        s = from_algebra(a);
    std::size_t const n = church_n(a);
    Element const     c = s.element(element);
    json              report{{"command", "decompose"}, {"algebra", a.name()}, {"element", element}, {"n", n}};
    if (!is_n_central(s, c, n)) {
      std::cout << element << " is not " << n << "-central\n";
      report["central"] = false;
      emit(out, report);
      return 1;
    }
    auto const d = decompose(s, c, n);
    std::cout << s.size() << " elements =";
    for (std::size_t i = 0; i < d.factor_sizes.size(); ++i) {
      std::cout << (i ? " x " : " ") << d.factor_sizes[i];
    }
    std::cout << "; bijective " << (d.bijective ? "yes" : "no") << ", operations preserved "
              << (d.preserves_operations ? "yes" : "no") << "\n";
    json factors = json::array();
    for (auto const& f : d.factors) {
      factors.push_back({{"size", f.size()}, {"elements", f.labels()}});
    }
    report["central"]              = true;
    report["factors"]              = factors;
    report["bijective"]            = d.bijective;
    report["preserves_operations"] = d.preserves_operations;
    emit(out, report);
    return d.ok() ? 0 : 1;
  }

  int cmd_congruences(std::string const& file, std::size_t section, std::size_t guard, Output const& out) {
    auto const a = parse_algebra(file);
    auto const c = clv_block_algebra(a, section);
    SectionStructure const ss(tabulate(*c, all_of(*c), section, true));
    auto const             l = congruence_enumerate(ss, Exec::Parallel, guard);
    std::cout << l.elements.size() << " congruences on " << c->name() << " (" << ss.size() << " elements)\n";
    json parts = json::array();
    for (auto const& p : l.elements) {
      json classes = json::array();
      for (auto const& cls : p.blocks()) {
        json names = json::array();
        for (Element x : cls) {
          names.push_back(c->render(x));
        }
        classes.push_back(names);
      }
      parts.push_back({{"classes", p.classes()}, {"rgs", p.rgs()}, {"blocks", classes}});
    }
    json covers = json::array();
    for (auto [lo, hi] : l.covers) {
      covers.push_back({lo, hi});
    }
    if (!out.dot_path.empty()) {
      write_atomic(out.dot_path, emit_dot(l));
    }
    emit(out, {{"command", "congruences"},
               {"section", c->name() + " (" + std::to_string(ss.size()) + " elements)"},
               {"count", l.elements.size()},
               {"congruences", parts},
               {"covers", covers}});
    return 0;
  }

  int cmd_derive(std::string const& file, std::string const& lhs, std::string const& rhs, std::size_t k,
                 Output const& out) {
    auto const a = parse_algebra(file);
    auto const s = parse_term(lhs);
    auto const t = parse_term(rhs);
    k            = std::max({k, s.max_index(), t.max_index(), std::size_t{1}});
    bool const holds = equation_derivable(a, s, t, k);
    std::cout << s.to_string() << " = " << t.to_string() << (holds ? " holds" : " fails") << " in the variety of "
              << a.name() << "\n";
    emit(out, {{"command", "derive"},
               {"algebra", a.name()},
               {"lhs", s.to_string()},
               {"rhs", t.to_string()},
               {"holds", holds}});
    return holds ? 0 : 1;
  }

  int cmd_clv(std::string const& file, std::size_t cap, Output const& out) {
    auto const a = parse_algebra(file);
    auto const c = clv_block_algebra(a, cap);
    std::vector<std::size_t> by_arity(cap + 1);
    for (Element x = 0; x < c->size(); ++x) {
      ++by_arity[c->block(x).arity()];
    }
    std::cout << c->name() << ": " << c->size() << " blocks, " << c->section().operation_count()
              << " operations\n";
    for (std::size_t k = 0; k <= cap; ++k) {
      std::cout << "  arity " << k << ": " << by_arity[k] << " blocks\n";
    }
    json sigma = json::array();
    for (std::size_t i = 0; i < c->signature().size(); ++i) {
      sigma.push_back({{"name", c->signature()[i].first}, {"block", c->render(c->sigma_block(i))}});
    }
    emit(out, {{"command", "clv"},
               {"algebra", c->name()},
               {"blocks", c->size()},
               {"operations", c->section().operation_count()},
               {"blocks_by_arity", by_arity},
               {"signature", sigma}});
    return 0;
  }

  int cmd_repiso(std::string const& file, std::size_t cap, std::size_t q_bound, Output const& out) {
    auto const a = parse_algebra(file);
    auto const c = clv_block_algebra(a, cap);
    auto const r = rep_iso_check(*c, q_bound);
    std::cout << c->name() << ": " << r.checked << " checks over " << r.elements << " elements, " << r.mismatches
              << " mismatches\n";
    for (auto const& d : r.details) {
      std::cout << "  " << d << "\n";
    }
    emit(out, {{"command", "repiso"},
               {"algebra", c->name()},
               {"elements", r.elements},
               {"checked", r.checked},
               {"mismatches", r.mismatches},
               {"details", r.details},
               {"limitation", r.limitation}});
    return r.ok() ? 0 : 1;
  }

  int cmd_independence(std::string const& f1, std::string const& f2, std::size_t depth, Output const& out) {
    auto const a1 = parse_algebra(f1);
    auto const a2 = parse_algebra(f2);
    auto const w  = independence_search(a1, a2, depth);
    json       report{{"command", "independence"}, {"left", a1.name()}, {"right", a2.name()}, {"depth", depth}};
    if (w) {
      std::cout << "witness " << w->to_string() << "\n";
      report["witness"] = w->to_string();
    } else {
      std::cout << "none at depth " << depth << "\n";
      report["witness"] = nullptr;
    }
    emit(out, report);
    return 0;
  }

  int cmd_minimal(std::string const& file,
                  std::string const& product,
                  std::string const& generators,
                  std::size_t        cap,
                  std::size_t        depth,
                  Output const&      out) {
    auto const a = parse_algebra(file);
    if (!product.empty()) {
      auto const b = parse_algebra(product);
      auto const r = product_minimality_check(a, b, depth, cap);
      std::cout << "product of " << a.name() << " and " << b.name() << " (" << r.product_size
                << " elements): " << to_string(r.minimal) << "; independence witness "
                << (r.witness ? r.witness->to_string() : "none") << "; " << (r.agree ? "agree" : "DISAGREE")
                << "\n";
      emit(out, {{"command", "minimal"},
                 {"left", a.name()},
                 {"right", b.name()},
                 {"cap", cap},
                 {"depth", depth},
                 {"product_size", r.product_size},
                 {"verdict", to_string(r.minimal)},
                 {"witness", r.witness ? json(r.witness->to_string()) : json(nullptr)},
                 {"agree", r.agree}});
      return r.agree ? 0 : 1;
    }
    auto const gen = generators.empty() ? a : parse_algebra(generators);
    BlockAlgebra const c(term_clone(gen, cap), a.ops(), "blocks of " + gen.name() + " with the type of " + a.name());
    auto const ms = minimal_section(c, depth);
    auto const v  = is_minimal_bounded(c, depth);
    std::cout << c.name() << ": " << ms.elements.size() << " of " << c.size() << " blocks reached at depth " << depth
              << "; " << to_string(v) << "\n";
    json reached = json::array();
    for (Element x : ms.elements) {
      reached.push_back({{"block", c.render(x)}, {"term", ms.witness.at(x).to_string()}});
    }
    emit(out, {{"command", "minimal"},
               {"section", c.name() + " (" + std::to_string(c.size()) + " elements)"},
               {"cap", cap},
               {"depth", depth},
               {"reached", reached},
               {"stabilized", ms.stabilized},
               {"verdict", to_string(v)}});
    return 0;
  }

}  // namespace

int main(int argc, char** argv) {
  if (char const* env = std::getenv("CLONEALG_THREADS")) {
    int t = std::atoi(env);
    if (t > 0) {
      omp_set_num_threads(t);
    }
  }

  CLI::App app{"Clone algebra toolkit over finite sets"};
  app.require_subcommand(1);
  Output out;

  std::string                  file, file2, term, lhs, rhs, element, generators, product;
  std::size_t                  cap = 2, bound = 2, depth = 2, section = 4, guard = kCongruenceGuard, k = 0,
              samples = 0, q_bound = 2;
  std::optional<std::size_t>   domain_dim, n_opt;
  std::optional<std::uint64_t> seed;
  std::vector<std::string>     names;
  std::function<int()>         run;

  auto add_json = [&](CLI::App* c) { c->add_option("--json", out.json_path, "write a JSON report"); };

  auto* close = app.add_subcommand("close", "list the clone generated by the operations up to the cap");
  close->add_option("file", file)->required();
  close->add_option("--cap", cap)->check(CLI::PositiveNumber);
  add_json(close);
  close->callback([&] { run = [&] { return cmd_close(file, cap, out); }; });

  auto* blocks = app.add_subcommand("blocks", "group operations into similarity blocks");
  blocks->add_option("file", file)->required();
  blocks->add_option("--ops", names, "operation names (default all)")->delimiter(',');
  add_json(blocks);
  blocks->callback([&] { run = [&] { return cmd_blocks(file, names, out); }; });

  auto* axioms = app.add_subcommand("axioms", "check the clone algebra axioms on a block algebra");
  axioms->add_option("file", file)->required();
  axioms->add_option("--cap", cap)->check(CLI::PositiveNumber);
  axioms->add_option("--bound", bound, "largest n in q_n")->check(CLI::PositiveNumber);
  axioms->add_option("--domain-dim", domain_dim, "substitute only blocks of arity <= this");
  axioms->add_option("--samples", samples, "instances per law; 0 means exhaustive");
  axioms->add_option("--seed", seed);
  add_json(axioms);
  axioms->callback([&] { run = [&] { return cmd_axioms(file, cap, bound, domain_dim, samples, seed, out); }; });

  auto* dim = app.add_subcommand("dim", "dimension of the block of a term");
  dim->add_option("file", file)->required();
  dim->add_option("--term", term)->required();
  dim->add_option("--cap", cap)->check(CLI::PositiveNumber);
  add_json(dim);
  dim->callback([&] { run = [&] { return cmd_dim(file, cap, term, out); }; });

  auto* central = app.add_subcommand("central", "central elements, nBA recognition and central ranges");
  central->add_option("file", file)->required();
  central->add_option("--cap", cap)->check(CLI::PositiveNumber);
  central->add_option("--n", n_opt)->check(CLI::PositiveNumber);
  central->add_option("--element", element, "a label, or a term for clone sections");
  add_json(central);
  central->callback([&] { run = [&] { return cmd_central(file, cap, n_opt, element, out); }; });

  auto* decompose_cmd = app.add_subcommand("decompose", "factor an n-Church algebra along a central element");
  decompose_cmd->add_option("file", file)->required();
  decompose_cmd->add_option("--element", element)->required();
  add_json(decompose_cmd);
  decompose_cmd->callback([&] { run = [&] { return cmd_decompose(file, element, out); }; });

  auto* congruences = app.add_subcommand("congruences", "congruence lattice of a Cl section");
  congruences->add_option("file", file)->required();
  congruences->add_option("--section", section, "arity cap of the section")->check(CLI::PositiveNumber);
  congruences->add_option("--guard", guard, "largest section size to enumerate");
  congruences->add_option("--dot", out.dot_path, "write the lattice as DOT");
  add_json(congruences);
  congruences->callback([&] { run = [&] { return cmd_congruences(file, section, guard, out); }; });

  auto* derive = app.add_subcommand("derive", "decide an equation in the variety of the algebra");
  derive->add_option("file", file)->required();
  derive->add_option("--lhs", lhs)->required();
  derive->add_option("--rhs", rhs)->required();
  derive->add_option("--k", k, "number of variables");
  add_json(derive);
  derive->callback([&] { run = [&] { return cmd_derive(file, lhs, rhs, k, out); }; });

  auto* clv = app.add_subcommand("clv", "summary of the Cl block algebra section");
  clv->add_option("file", file)->required();
  clv->add_option("--cap", cap)->check(CLI::PositiveNumber);
  add_json(clv);
  clv->callback([&] { run = [&] { return cmd_clv(file, cap, out); }; });

  auto* repiso = app.add_subcommand("repiso", "check the representation isomorphism on a Cl section");
  repiso->add_option("file", file)->required();
  repiso->add_option("--cap", cap)->check(CLI::PositiveNumber);
  repiso->add_option("--q-bound", q_bound);
  add_json(repiso);
  repiso->callback([&] { run = [&] { return cmd_repiso(file, cap, q_bound, out); }; });

  auto* independence = app.add_subcommand("independence", "search a term witnessing independence");
  independence->add_option("left", file)->required();
  independence->add_option("right", file2)->required();
  independence->add_option("--depth", depth);
  add_json(independence);
  independence->callback([&] { run = [&] { return cmd_independence(file, file2, depth, out); }; });

  auto* minimal = app.add_subcommand("minimal", "bounded minimality of a block algebra or of a product");
  minimal->add_option("file", file)->required();
  minimal->add_option("--cap", cap)->check(CLI::PositiveNumber);
  minimal->add_option("--depth", depth);
  minimal->add_option("--generators", generators, "algebra whose term clone is the section");
  minimal->add_option("--product", product, "check the product with this algebra");
  add_json(minimal);
  minimal->callback([&] { run = [&] { return cmd_minimal(file, product, generators, cap, depth, out); }; });

  try {
    app.parse(argc, argv);
  } catch (CLI::CallForHelp const& e) {
    return app.exit(e);
  } catch (CLI::ParseError const& e) {
    app.exit(e);
    return 2;
  }
  try {
    return run();
  } catch (ParseError const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (Error const& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
