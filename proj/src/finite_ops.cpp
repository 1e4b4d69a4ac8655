#include "clonealg/finite_ops.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

namespace clonealg {

  FinUniverse::FinUniverse(std::string name, std::vector<std::string> symbols)
      : _name(std::move(name)), _symbols(std::move(symbols)) {
    if (_symbols.empty()) {
      throw UniverseError("universe '" + _name + "' must have at least one element");
    }
    std::unordered_set<std::string> seen;
    for (auto const& s : _symbols) {
      if (!seen.insert(s).second) {
        throw UniverseError("universe '" + _name + "' repeats symbol '" + s + "'");
      }
    }
  }

  Value FinUniverse::index_of(std::string const& symbol) const {
    auto it = std::find(_symbols.begin(), _symbols.end(), symbol);
    if (it == _symbols.end()) {
      throw UniverseError("unknown element symbol '" + symbol + "' in universe '" + _name
                          + "'");
    }
    return static_cast<Value>(it - _symbols.begin());
  }

  UniversePtr make_universe(std::string name, std::vector<std::string> symbols) {
    return std::make_shared<FinUniverse const>(std::move(name), std::move(symbols));
  }

  UniversePtr make_numeric_universe(std::size_t n, std::string name) {
    std::vector<std::string> symbols;
    for (std::size_t i = 0; i < n; ++i) {
      symbols.push_back(std::to_string(i));
    }
    return make_universe(name.empty() ? "A" + std::to_string(n) : std::move(name),
                         std::move(symbols));
  }

  std::size_t table_size(std::size_t universe_size, std::size_t arity) {
    constexpr std::size_t limit = std::size_t{1} << 28;
    std::size_t           n     = 1;
    for (std::size_t i = 0; i < arity; ++i) {
      if (n > limit / universe_size) {
        throw CapError("operation table of arity " + std::to_string(arity)
                       + " over a universe of size " + std::to_string(universe_size)
                       + " is too large");
      }
      n *= universe_size;
    }
    return n;
  }

  ////////////////////////////////////////////////////////////////////////
  // OpTable
  ////////////////////////////////////////////////////////////////////////

  OpTable::OpTable(UniversePtr universe, std::size_t arity, std::vector<Value> table)
      : _universe(std::move(universe)), _arity(arity), _table(std::move(table)) {
    if (_universe == nullptr) {
      throw UniverseError("operation without a universe");
    }
    std::size_t expected = table_size(_universe->size(), _arity);
    if (_table.size() != expected) {
      throw ArityError("table of arity " + std::to_string(_arity) + " must have "
                       + std::to_string(expected) + " entries, found "
                       + std::to_string(_table.size()));
    }
    for (Value v : _table) {
      if (v >= _universe->size()) {
        throw UniverseError("table entry " + std::to_string(v) + " is outside universe '"
                            + _universe->name() + "'");
      }
    }
  }

  OpTable OpTable::projection(UniversePtr universe, std::size_t i, std::size_t arity) {
    if (i == 0 || i > arity) {
      throw ArityError("projection p_" + std::to_string(i) + " needs 1 <= i <= arity "
                       + std::to_string(arity));
    }
    std::size_t const  n    = universe->size();
    std::size_t const  rows = table_size(n, arity);
    std::size_t const  div  = table_size(n, arity - i);
    std::vector<Value> t(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      t[r] = static_cast<Value>((r / div) % n);
    }
    return OpTable(std::move(universe), arity, std::move(t));
  }

  OpTable OpTable::constant(UniversePtr universe, Value value, std::size_t arity) {
    std::size_t rows = table_size(universe->size(), arity);
    return OpTable(std::move(universe), arity, std::vector<Value>(rows, value));
  }

  OpTable OpTable::from_function(UniversePtr                                         universe,
                                 std::size_t                                         arity,
                                 std::function<Value(std::span<Value const>)> const& fn) {
    std::size_t const  n    = universe->size();
    std::size_t const  rows = table_size(n, arity);
    std::vector<Value> t(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      auto args = row_args(n, arity, r);
      t[r]      = fn(args);
    }
    return OpTable(std::move(universe), arity, std::move(t));
  }

  bool OpTable::shares_universe(OpTable const& other) const {
    return _universe == other._universe || *_universe == *other._universe;
  }

  bool OpTable::operator==(OpTable const& other) const {
    return _arity == other._arity && _table == other._table && shares_universe(other);
  }

  bool OpTable::operator<(OpTable const& other) const {
    if (_arity != other._arity) {
      return _arity < other._arity;
    }
    return _table < other._table;
  }

  std::size_t OpTable::hash() const noexcept {
    std::size_t h = 0x9e3779b97f4a7c15ULL ^ _arity;
    for (Value v : _table) {
      h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }

  ////////////////////////////////////////////////////////////////////////
  // Evaluation and composition
  ////////////////////////////////////////////////////////////////////////

  std::size_t row_index(std::size_t universe_size, std::span<Value const> args) {
    std::size_t r = 0;
    for (Value a : args) {
      r = r * universe_size + a;
    }
    return r;
  }

  std::vector<Value> row_args(std::size_t universe_size, std::size_t arity, std::size_t row) {
    std::vector<Value> args(arity);
    for (std::size_t i = arity; i-- > 0;) {
      args[i] = static_cast<Value>(row % universe_size);
      row /= universe_size;
    }
    return args;
  }

  Value evaluate(OpTable const& op, std::span<Value const> args) {
    if (args.size() != op.arity()) {
      throw ArityError("operation of arity " + std::to_string(op.arity()) + " applied to "
                       + std::to_string(args.size()) + " arguments");
    }
    std::size_t const n = op.universe()->size();
    for (Value a : args) {
      if (a >= n) {
        throw UniverseError("argument " + std::to_string(a) + " is outside universe '"
                            + op.universe()->name() + "'");
      }
    }
    return op.at(row_index(n, args));
  }

  Value evaluate(OpTable const& op, std::vector<std::string> const& symbols) {
    std::vector<Value> args;
    args.reserve(symbols.size());
    for (auto const& s : symbols) {
      args.push_back(op.universe()->index_of(s));
    }
    return evaluate(op, args);
  }

  OpTable compose(OpTable const& f, std::vector<OpTable> const& gs, std::size_t k) {
    if (gs.size() != f.arity()) {
      throw ArityError("composition of an operation of arity " + std::to_string(f.arity())
                       + " with " + std::to_string(gs.size()) + " operations");
    }
    for (auto const& g : gs) {
      if (g.arity() != k) {
        throw ArityError("inner operation of arity " + std::to_string(g.arity())
                         + " in a composition at arity " + std::to_string(k));
      }
      if (!g.shares_universe(f)) {
        throw UniverseError("composition across different universes");
      }
    }
    std::size_t const  n    = f.universe()->size();
    std::size_t const  rows = table_size(n, k);
    std::vector<Value> out(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      std::size_t idx = 0;
      for (auto const& g : gs) {
        idx = idx * n + g.at(r);
      }
      out[r] = f.at(idx);
    }
    return OpTable(f.universe(), k, std::move(out));
  }

  OpTable expand(OpTable const& op, std::size_t k) {
    if (k < op.arity()) {
      throw ArityError("cannot expand an operation of arity " + std::to_string(op.arity())
                       + " to arity " + std::to_string(k));
    }
    if (k == op.arity()) {
      return op;
    }
    std::size_t const  n    = op.universe()->size();
    std::size_t const  rows = table_size(n, k);
    std::size_t const  div  = table_size(n, k - op.arity());
    std::vector<Value> out(rows);
    for (std::size_t r = 0; r < rows; ++r) {
      out[r] = op.at(r / div);
    }
    return OpTable(op.universe(), k, std::move(out));
  }

  bool depends_on(OpTable const& op, std::size_t i) {
    if (i == 0 || i > op.arity()) {
      throw ArityError("argument index " + std::to_string(i) + " out of range for arity "
                       + std::to_string(op.arity()));
    }
    std::size_t const n      = op.universe()->size();
    std::size_t const stride = table_size(n, op.arity() - i);
    std::size_t const rows   = op.table().size();
    // Rows differing only at position i are r + d * stride for digit d.
    for (std::size_t r = 0; r < rows; ++r) {
      if ((r / stride) % n != 0) {
        continue;
      }
      Value first = op.at(r);
      for (std::size_t d = 1; d < n; ++d) {
        if (op.at(r + d * stride) != first) {
          return true;
        }
      }
    }
    return false;
  }

  ////////////////////////////////////////////////////////////////////////
  // Blocks
  ////////////////////////////////////////////////////////////////////////

  Block::Block(OpTable const& op) : _generator(canonicalize(op)._generator) {}

  Block canonicalize(OpTable const& op) {
    std::size_t const  n     = op.universe()->size();
    std::size_t        arity = op.arity();
    std::vector<Value> t     = op.table();
    while (arity > 0) {
      // Fictitious in the last argument: every run of n consecutive rows is
      // constant.
      bool fictitious = true;
      for (std::size_t r = 0; r < t.size() && fictitious; r += n) {
        for (std::size_t d = 1; d < n; ++d) {
          if (t[r + d] != t[r]) {
            fictitious = false;
            break;
          }
        }
      }
      if (!fictitious) {
        break;
      }
      std::vector<Value> restricted(t.size() / n);
      for (std::size_t r = 0; r < restricted.size(); ++r) {
        restricted[r] = t[r * n];
      }
      t = std::move(restricted);
      --arity;
    }
    return Block(Block::Canonical{}, OpTable(op.universe(), arity, std::move(t)));
  }

  bool similar(OpTable const& f, OpTable const& g) {
    if (!f.shares_universe(g)) {
      throw UniverseError("similarity test across different universes");
    }
    return canonicalize(f) == canonicalize(g);
  }

  ////////////////////////////////////////////////////////////////////////
  // Streams
  ////////////////////////////////////////////////////////////////////////

  Stream::Stream(std::string thread_name, Thread thread)
      : _thread_name(std::move(thread_name)), _thread(std::move(thread)) {}

  Stream Stream::constant(Value value) {
    return Stream("const(" + std::to_string(value) + ")",
                  [value](std::size_t) { return value; });
  }

  Stream Stream::periodic(std::vector<Value> pattern) {
    if (pattern.empty()) {
      throw UniverseError("periodic thread needs a non-empty pattern");
    }
    std::string name = "periodic(";
    for (std::size_t i = 0; i < pattern.size(); ++i) {
      name += (i ? "," : "") + std::to_string(pattern[i]);
    }
    name += ")";
    return Stream(name, [p = std::move(pattern)](std::size_t i) { return p[(i - 1) % p.size()]; });
  }

  Value Stream::at(std::size_t i) const {
    if (i == 0) {
      throw ArityError("stream positions are 1-based");
    }
    auto it = _overrides.find(i);
    return it == _overrides.end() ? _thread(i) : it->second;
  }

  Stream Stream::with(std::size_t position, Value v) const {
    if (position == 0) {
      throw ArityError("stream positions are 1-based");
    }
    Stream out = *this;
    if (_thread(position) == v) {
      out._overrides.erase(position);
    } else {
      out._overrides[position] = v;
    }
    return out;
  }

  Stream Stream::with_prefix(std::span<Value const> prefix) const {
    Stream out = *this;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
      out = out.with(i + 1, prefix[i]);
    }
    return out;
  }

  std::size_t Stream::support() const {
    std::size_t k = 0;
    for (auto const& [pos, v] : _overrides) {
      if (v != _thread(pos)) {
        k = std::max(k, pos);
      }
    }
    return k;
  }

  Value top_eval(Block const& b, Stream const& s) {
    std::size_t const  k = b.arity();
    std::vector<Value> args(k);
    for (std::size_t i = 0; i < k; ++i) {
      args[i] = s.at(i + 1);
    }
    return evaluate(b.generator(), args);
  }

  std::string render_table(OpTable const& op) {
    std::string out = "[";
    for (std::size_t i = 0; i < op.table().size(); ++i) {
      out += (i ? "," : "") + op.universe()->symbol(op.at(i));
    }
    return out + "]";
  }

}  // namespace clonealg
