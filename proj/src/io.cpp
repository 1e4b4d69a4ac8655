#include "clonealg/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace clonealg {

  using nlohmann::json;

  namespace {

    std::size_t line_of(std::string_view text, std::size_t byte) {
      byte = std::min(byte, text.size());
      return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
    }

    json const& field(json const& obj, char const* key, std::string const& path) {
      auto it = obj.find(key);
      if (it == obj.end()) {
        throw ParseError(path + "." + key + ": missing");
      }
      return *it;
    }

    std::string symbol_of(json const& v, std::string const& path) {
      if (v.is_string()) {
        return v.get<std::string>();
      }
      if (v.is_number_integer()) {
        return std::to_string(v.get<long long>());
      }
      throw ParseError(path + ": expected a symbol (string or integer)");
    }

    std::string quoted(std::string const& s) {
      return json(s).dump();
    }

  }  // namespace

  FinAlgebra parse_algebra_text(std::string_view text, std::string const& origin) {
    json doc;
    try {
      doc = json::parse(text.begin(), text.end());
    } catch (json::parse_error const& e) {
      std::string msg = e.what();
      auto        pos = msg.find("syntax error");
      throw ParseError(origin + ": " + (pos == std::string::npos ? msg : msg.substr(pos)),
                       line_of(text, e.byte == 0 ? 0 : e.byte - 1));
    }
    std::string const root = "$";
    if (!doc.is_object()) {
      throw ParseError(origin + ": " + root + ": expected an object");
    }
    if (auto it = doc.find("format"); it != doc.end() && *it != kAlgebraFormat) {
      throw ParseError(origin + ": $.format: unsupported format " + it->dump());
    }
    if (auto it = doc.find("convention"); it != doc.end() && *it != kAlgebraConvention) {
      throw ParseError(origin + ": $.convention: unsupported convention " + it->dump());
    }
    try {
      std::string name = "algebra";
      if (auto it = doc.find("name"); it != doc.end()) {
        if (!it->is_string()) {
          throw ParseError("$.name: expected a string");
        }
        name = it->get<std::string>();
      }
      auto const& uni = field(doc, "universe", root);
      if (!uni.is_array()) {
        throw ParseError("$.universe: expected an array");
      }
      std::vector<std::string> symbols;
      for (std::size_t i = 0; i < uni.size(); ++i) {
        symbols.push_back(symbol_of(uni[i], "$.universe[" + std::to_string(i) + "]"));
      }
      UniversePtr universe;
      try {
        universe = make_universe(name, symbols);
      } catch (Error const& e) {
        throw ParseError(std::string("$.universe: ") + e.what());
      }

      std::vector<NamedOp> ops;
      if (auto it = doc.find("operations"); it != doc.end()) {
        if (!it->is_array()) {
          throw ParseError("$.operations: expected an array");
        }
        for (std::size_t i = 0; i < it->size(); ++i) {
          std::string const path = "$.operations[" + std::to_string(i) + "]";
          auto const&       o    = (*it)[i];
          if (!o.is_object()) {
            throw ParseError(path + ": expected an object");
          }
          auto const& jn = field(o, "name", path);
          auto const& ja = field(o, "arity", path);
          auto const& jt = field(o, "table", path);
          if (!jn.is_string()) {
            throw ParseError(path + ".name: expected a string");
          }
          std::string const op_name = jn.get<std::string>();
          if (!ja.is_number_unsigned()) {
            throw ParseError(path + ".arity: expected a natural number (operation '" + op_name + "')");
          }
          if (!jt.is_array()) {
            throw ParseError(path + ".table: expected an array (operation '" + op_name + "')");
          }
          std::size_t const arity = ja.get<std::size_t>();
          std::size_t       expected;
          try {
            expected = table_size(universe->size(), arity);
          } catch (CapError const& e) {
            throw ParseError(path + ": operation '" + op_name + "': " + e.what());
          }
          if (jt.size() != expected) {
            throw ParseError(path + ".table: operation '" + op_name + "' has " + std::to_string(jt.size())
                             + " entries, expected " + std::to_string(expected));
          }
          std::vector<Value> table;
          table.reserve(expected);
          for (std::size_t r = 0; r < jt.size(); ++r) {
            std::string const cell = path + ".table[" + std::to_string(r) + "]";
            try {
              table.push_back(universe->index_of(symbol_of(jt[r], cell)));
            } catch (UniverseError const& e) {
              throw ParseError(cell + ": operation '" + op_name + "': " + e.what());
            }
          }
          ops.push_back({op_name, OpTable(universe, arity, std::move(table))});
        }
      }
      try {
        return FinAlgebra(name, universe, std::move(ops));
      } catch (Error const& e) {
        throw ParseError(std::string("$.operations: ") + e.what());
      }
    } catch (ParseError const& e) {
      throw ParseError(origin + ": " + e.what());
    }
  }

  FinAlgebra parse_algebra(std::string const& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw ParseError(path + ": cannot open file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_algebra_text(buf.str(), path);
  }

  std::string serialize_algebra(FinAlgebra const& a) {
    auto const&       u   = *a.universe();
    std::string       out = "{\n";
    out += "  \"format\": " + quoted(kAlgebraFormat) + ",\n";
    out += "  \"convention\": " + quoted(kAlgebraConvention) + ",\n";
    out += "  \"name\": " + quoted(a.name()) + ",\n";
    out += "  \"universe\": [";
    for (std::size_t i = 0; i < u.size(); ++i) {
      out += (i ? ", " : "") + quoted(u.symbol(static_cast<Value>(i)));
    }
    out += "],\n  \"operations\": [";
    for (std::size_t i = 0; i < a.ops().size(); ++i) {
      auto const& op = a.ops()[i];
      out += i ? ",\n" : "\n";
      out += "    {\"name\": " + quoted(op.name) + ", \"arity\": " + std::to_string(op.op.arity()) + ", \"table\": [";
      auto const& t = op.op.table();
      for (std::size_t r = 0; r < t.size(); ++r) {
        out += (r ? ", " : "") + quoted(u.symbol(t[r]));
      }
      out += "]}";
    }
    out += a.ops().empty() ? "]\n}\n" : "\n  ]\n}\n";
    return out;
  }

  void write_atomic(std::string const& path, std::string const& content) {
    namespace fs = std::filesystem;
    fs::path const target(path);
    fs::path       tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) {
        throw Error("cannot write " + tmp.string());
      }
      out << content;
      out.flush();
      if (!out) {
        throw Error("short write to " + tmp.string());
      }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
      fs::remove(tmp);
      throw Error("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
    }
  }

}  // namespace clonealg
