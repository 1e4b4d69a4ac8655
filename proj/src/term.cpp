#include "clonealg/term.hpp"

#include <algorithm>
#include <cctype>

#include "clonealg/error.hpp"

namespace clonealg {

  Term Term::var(std::size_t i) {
    if (i == 0) {
      throw ParseError("variable indices start at 1");
    }
    return Term(Kind::Var, i, "", {});
  }

  Term Term::unit(std::size_t i) {
    if (i == 0) {
      throw ParseError("constant indices e_i start at 1");
    }
    return Term(Kind::Unit, i, "", {});
  }

  Term Term::op(std::string name, std::vector<Term> args) {
    return Term(Kind::Op, 0, std::move(name), std::move(args));
  }

  std::size_t Term::depth() const {
    if (_kind != Kind::Op) {
      return 0;
    }
    std::size_t d = 0;
    for (auto const& a : _args) {
      d = std::max(d, a.depth());
    }
    return d + 1;
  }

  std::size_t Term::max_index() const {
    if (_kind != Kind::Op) {
      return _index;
    }
    std::size_t m = 0;
    for (auto const& a : _args) {
      m = std::max(m, a.max_index());
    }
    return m;
  }

  Term Term::star() const {
    switch (_kind) {
      case Kind::Var:
        return *this;
      case Kind::Unit:
        return var(_index);
      case Kind::Op:
        break;
    }
    std::vector<Term> args;
    args.reserve(_args.size());
    for (auto const& a : _args) {
      args.push_back(a.star());
    }
    return op(_name, std::move(args));
  }

  Term Term::ground() const {
    switch (_kind) {
      case Kind::Var:
        return unit(_index);
      case Kind::Unit:
        return *this;
      case Kind::Op:
        break;
    }
    std::vector<Term> args;
    args.reserve(_args.size());
    for (auto const& a : _args) {
      args.push_back(a.ground());
    }
    return op(_name, std::move(args));
  }

  Term Term::substitute(std::vector<Term> const& subs) const {
    switch (_kind) {
      case Kind::Var:
        return _index <= subs.size() ? subs[_index - 1] : *this;
      case Kind::Unit:
        return *this;
      case Kind::Op:
        break;
    }
    std::vector<Term> args;
    args.reserve(_args.size());
    for (auto const& a : _args) {
      args.push_back(a.substitute(subs));
    }
    return op(_name, std::move(args));
  }

  std::string Term::to_string() const {
    switch (_kind) {
      case Kind::Var:
        return "v" + std::to_string(_index);
      case Kind::Unit:
        return "e" + std::to_string(_index);
      case Kind::Op:
        break;
    }
    std::string out = "(" + _name;
    for (auto const& a : _args) {
      out += " " + a.to_string();
    }
    return out + ")";
  }

  bool Term::operator==(Term const& other) const {
    return _kind == other._kind && _index == other._index && _name == other._name
           && _args == other._args;
  }

  bool Term::operator<(Term const& other) const {
    if (_kind != other._kind) {
      return _kind < other._kind;
    }
    if (_index != other._index) {
      return _index < other._index;
    }
    if (_name != other._name) {
      return _name < other._name;
    }
    return _args < other._args;
  }

  namespace {

    class TermParser {
     public:
      explicit TermParser(std::string_view text) : _text(text) {}

      Term parse() {
        Term t = parse_one();
        skip_space();
        if (_pos != _text.size()) {
          fail("unexpected trailing input");
        }
        return t;
      }

     private:
      [[noreturn]] void fail(std::string const& what) const {
        throw ParseError("term: " + what + " at column " + std::to_string(_pos + 1) + " in '"
                         + std::string(_text) + "'");
      }

      void skip_space() {
        while (_pos < _text.size() && std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
      }

      std::string token() {
        skip_space();
        std::size_t start = _pos;
        while (_pos < _text.size() && _text[_pos] != '(' && _text[_pos] != ')'
               && !std::isspace(static_cast<unsigned char>(_text[_pos]))) {
          ++_pos;
        }
        if (start == _pos) {
          fail("expected a symbol");
        }
        return std::string(_text.substr(start, _pos - start));
      }

      static bool indexed(std::string const& tok, char prefix, std::size_t& index) {
        if (tok.size() < 2 || tok[0] != prefix) {
          return false;
        }
        for (std::size_t i = 1; i < tok.size(); ++i) {
          if (!std::isdigit(static_cast<unsigned char>(tok[i]))) {
            return false;
          }
        }
        index = std::stoul(tok.substr(1));
        return true;
      }

      Term parse_one() {
        skip_space();
        if (_pos >= _text.size()) {
          fail("unexpected end of input");
        }
        if (_text[_pos] == ')') {
          fail("unexpected ')'");
        }
        if (_text[_pos] != '(') {
          std::string tok = token();
          std::size_t i   = 0;
          if (indexed(tok, 'v', i)) {
            if (i == 0) {
              fail("variable v0 does not exist");
            }
            return Term::var(i);
          }
          if (indexed(tok, 'e', i)) {
            if (i == 0) {
              fail("constant e0 does not exist");
            }
            return Term::unit(i);
          }
          return Term::op(tok);
        }
        ++_pos;
        std::string       name = token();
        std::vector<Term> args;
        while (true) {
          skip_space();
          if (_pos >= _text.size()) {
            fail("missing ')'");
          }
          if (_text[_pos] == ')') {
            ++_pos;
            break;
          }
          args.push_back(parse_one());
        }
        return Term::op(std::move(name), std::move(args));
      }

      std::string_view _text;
      std::size_t      _pos = 0;
    };

  }  // namespace

  Term parse_term(std::string_view text) {
    return TermParser(text).parse();
  }

}  // namespace clonealg
