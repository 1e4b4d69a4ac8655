#pragma once

// Finitary operations over a finite universe.
//
// Tables are stored row-major with the leftmost argument most significant,
// so the row of (a_1, ..., a_k) is a_1 * |A|^(k-1) + ... + a_k. With this
// layout the prefix (a_1, ..., a_m) of a row r is simply r / |A|^(k-m), which
// is what makes fictitious expansion free.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "clonealg/error.hpp"

namespace clonealg {

  using Value = std::uint32_t;

  class FinUniverse {
   public:
    FinUniverse(std::string name, std::vector<std::string> symbols);

    std::string const& name() const noexcept {
      return _name;
    }
    std::size_t size() const noexcept {
      return _symbols.size();
    }
    std::vector<std::string> const& symbols() const noexcept {
      return _symbols;
    }
    std::string const& symbol(Value v) const {
      return _symbols.at(v);
    }
    // Throws UniverseError for an unknown symbol.
    Value index_of(std::string const& symbol) const;

    bool operator==(FinUniverse const& other) const {
      return _symbols == other._symbols;
    }

   private:
    std::string              _name;
    std::vector<std::string> _symbols;
  };

  using UniversePtr = std::shared_ptr<FinUniverse const>;

  UniversePtr make_universe(std::string name, std::vector<std::string> symbols);
  // Universe {0, 1, ..., n-1} with decimal symbols.
  UniversePtr make_numeric_universe(std::size_t n, std::string name = "");

  // |A|^k, throwing CapError when the table would not fit in memory.
  std::size_t table_size(std::size_t universe_size, std::size_t arity);

  class OpTable {
   public:
    OpTable(UniversePtr universe, std::size_t arity, std::vector<Value> table);

    static OpTable projection(UniversePtr universe, std::size_t i, std::size_t arity);
    static OpTable constant(UniversePtr universe, Value value, std::size_t arity);
    static OpTable from_function(UniversePtr                                      universe,
                                 std::size_t                                      arity,
                                 std::function<Value(std::span<Value const>)> const& fn);

    UniversePtr const& universe() const noexcept {
      return _universe;
    }
    std::size_t arity() const noexcept {
      return _arity;
    }
    std::vector<Value> const& table() const noexcept {
      return _table;
    }
    Value at(std::size_t row) const {
      return _table[row];
    }

    // Same universe (structurally) as `other`.
    bool shares_universe(OpTable const& other) const;

    bool operator==(OpTable const& other) const;
    bool operator<(OpTable const& other) const;

    std::size_t hash() const noexcept;

   private:
    UniversePtr        _universe;
    std::size_t        _arity;
    std::vector<Value> _table;
  };

  struct OpTableHash {
    std::size_t operator()(OpTable const& op) const noexcept {
      return op.hash();
    }
  };

  // Row index of `args` in a table of the given universe size.
  std::size_t row_index(std::size_t universe_size, std::span<Value const> args);
  // Digits of row `row` as an argument tuple of length `arity`.
  std::vector<Value> row_args(std::size_t universe_size, std::size_t arity, std::size_t row);

  Value evaluate(OpTable const& op, std::span<Value const> args);
  Value evaluate(OpTable const& op, std::vector<std::string> const& symbols);

  // f(g_1, ..., g_n)_k. Every g_i must have arity k.
  OpTable compose(OpTable const& f, std::vector<OpTable> const& gs, std::size_t k);

  // The unique member of arity k >= op.arity() in the block of op.
  OpTable expand(OpTable const& op, std::size_t k);

  // 1-based i.
  bool depends_on(OpTable const& op, std::size_t i);

  class Block {
   public:
    // Takes any operation and stores its canonical generator.
    explicit Block(OpTable const& op);

    OpTable const& generator() const noexcept {
      return _generator;
    }
    std::size_t arity() const noexcept {
      return _generator.arity();
    }
    UniversePtr const& universe() const noexcept {
      return _generator.universe();
    }
    // The member of arity k; k must be >= arity().
    OpTable member(std::size_t k) const {
      return expand(_generator, k);
    }

    bool operator==(Block const& other) const {
      return _generator == other._generator;
    }
    bool operator<(Block const& other) const {
      return _generator < other._generator;
    }
    std::size_t hash() const noexcept {
      return _generator.hash();
    }

   private:
    struct Canonical {};
    Block(Canonical, OpTable op) : _generator(std::move(op)) {}
    friend Block canonicalize(OpTable const&);

    OpTable _generator;
  };

  struct BlockHash {
    std::size_t operator()(Block const& b) const noexcept {
      return b.hash();
    }
  };

  Block canonicalize(OpTable const& op);
  bool  similar(OpTable const& f, OpTable const& g);

  // An element of A^omega: a thread (the default value at each position)
  // with finitely many overrides. Positions are 1-based.
  class Stream {
   public:
    using Thread = std::function<Value(std::size_t)>;

    Stream(std::string thread_name, Thread thread);

    // Thread that is `value` everywhere.
    static Stream constant(Value value);
    // Thread that repeats `pattern` cyclically (pattern[0] at position 1).
    static Stream periodic(std::vector<Value> pattern);

    std::string const& thread_name() const noexcept {
      return _thread_name;
    }
    Value thread_at(std::size_t i) const {
      return _thread(i);
    }
    Value at(std::size_t i) const;

    // The stream s[a_1, ..., a_n].
    Stream with_prefix(std::span<Value const> prefix) const;
    Stream with(std::size_t position, Value v) const;

    std::map<std::size_t, Value> const& overrides() const noexcept {
      return _overrides;
    }
    // Largest position whose value differs from the thread, 0 if none.
    std::size_t support() const;

   private:
    std::string                  _thread_name;
    Thread                       _thread;
    std::map<std::size_t, Value> _overrides;
  };

  // B^T(s) = B^(k)(s_1, ..., s_k) for k the arity of the block.
  Value top_eval(Block const& b, Stream const& s);

  // Human-readable table like "[0,1,1,0]".
  std::string render_table(OpTable const& op);

}  // namespace clonealg
