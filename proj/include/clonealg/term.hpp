#pragma once

// Terms over a named signature. Leaves are variables v_i or, in ground
// terms of a clone algebra, the constants e_i.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace clonealg {

  class Term {
   public:
    enum class Kind { Var, Unit, Op };

    static Term var(std::size_t i);
    static Term unit(std::size_t i);
    static Term op(std::string name, std::vector<Term> args = {});

    Kind kind() const noexcept {
      return _kind;
    }
    // 1-based index of a variable or unit leaf.
    std::size_t index() const noexcept {
      return _index;
    }
    std::string const& name() const noexcept {
      return _name;
    }
    std::vector<Term> const& args() const noexcept {
      return _args;
    }

    // Leaves have depth 0, an operation node adds 1.
    std::size_t depth() const;
    // Largest variable or unit index, 0 if none.
    std::size_t max_index() const;
    // e_i leaves replaced by v_i.
    Term star() const;
    // v_i leaves replaced by e_i.
    Term ground() const;
    // Replace variable v_i by subs[i-1]; variables beyond subs stay.
    Term substitute(std::vector<Term> const& subs) const;

    // Prefix notation: v1, e2, (f t1 t2), nullary ops as (c).
    std::string to_string() const;

    bool operator==(Term const& other) const;
    bool operator<(Term const& other) const;

   private:
    Term(Kind kind, std::size_t index, std::string name, std::vector<Term> args)
        : _kind(kind), _index(index), _name(std::move(name)), _args(std::move(args)) {}

    Kind              _kind;
    std::size_t       _index;
    std::string       _name;
    std::vector<Term> _args;
  };

  // Parses prefix notation. A bare identifier that is not v<i> or e<i> is
  // read as a nullary operation. Throws ParseError.
  Term parse_term(std::string_view text);

}  // namespace clonealg
