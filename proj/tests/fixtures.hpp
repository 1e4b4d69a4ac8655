#pragma once

#include <numeric>
#include <random>

#include "clonealg/clone_engine.hpp"
#include "clonealg/handle.hpp"
#include "clonealg/structure.hpp"

namespace fixtures {

  using namespace clonealg;

  inline UniversePtr boolean() {
    static UniversePtr u = make_numeric_universe(2, "bool");
    return u;
  }

  inline OpTable binary(Value v00, Value v01, Value v10, Value v11) {
    return OpTable(boolean(), 2, {v00, v01, v10, v11});
  }

  inline FinAlgebra nand() {
    return FinAlgebra("nand", boolean(), {{"nand", binary(1, 1, 1, 0)}});
  }

  inline FinAlgebra ba() {
    return FinAlgebra("ba", boolean(),
                      {{"and", binary(0, 0, 0, 1)},
                       {"or", binary(0, 1, 1, 1)},
                       {"not", OpTable(boolean(), 1, {1, 0})},
                       {"0", OpTable(boolean(), 0, {0})},
                       {"1", OpTable(boolean(), 0, {1})}});
  }

  inline FinAlgebra sets() {
    return FinAlgebra("sets", boolean(), {});
  }

  inline FinAlgebra left_zero() {
    return FinAlgebra("lz", boolean(), {{"·", binary(0, 0, 1, 1)}});
  }

  inline FinAlgebra right_zero() {
    return FinAlgebra("rz", boolean(), {{"·", binary(0, 1, 0, 1)}});
  }

  inline FinAlgebra unary(std::string name, std::vector<Value> table) {
    return FinAlgebra(std::move(name), boolean(), {{"f", OpTable(boolean(), 1, std::move(table))}});
  }

  inline std::vector<Element> all_elements(CloneAlgebraHandle const& c) {
    std::vector<Element> v(c.size());
    std::iota(v.begin(), v.end(), 0);
    return v;
  }

  inline OpTable random_op(std::mt19937& rng, UniversePtr const& u, std::size_t arity) {
    std::uniform_int_distribution<Value> d(0, static_cast<Value>(u->size() - 1));
    std::vector<Value>                   t(table_size(u->size(), arity));
    for (auto& x : t) {
      x = d(rng);
    }
    return OpTable(u, arity, std::move(t));
  }

  inline StructOp random_struct_op(std::mt19937& rng, std::string name, std::size_t n, std::size_t arity) {
    std::uniform_int_distribution<Element> d(0, static_cast<Element>(n - 1));
    std::size_t                            rows = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      rows *= n;
    }
    StructOp op{std::move(name), arity, std::vector<Element>(rows)};
    for (auto& x : op.table) {
      x = d(rng);
    }
    return op;
  }

  inline std::vector<std::string> numeric_labels(std::size_t n) {
    std::vector<std::string> l;
    for (std::size_t i = 0; i < n; ++i) {
      l.push_back(std::to_string(i));
    }
    return l;
  }

}  // namespace fixtures
