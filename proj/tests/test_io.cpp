#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "clonealg/io.hpp"
#include "fixtures.hpp"

using namespace clonealg;
using namespace fixtures;

#ifndef CLONEALG_DATA_DIR
#error "CLONEALG_DATA_DIR must be defined"
#endif

namespace {

  std::string slurp(std::filesystem::path const& p) {
    std::ifstream      in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  std::size_t error_line(std::string const& text) {
    try {
      parse_algebra_text(text);
    } catch (ParseError const& e) {
      return e.line();
    }
    return 0;
  }

  std::string error_text(std::string const& text) {
    try {
      parse_algebra_text(text);
    } catch (ParseError const& e) {
      return e.what();
    }
    return "";
  }

}  // namespace

TEST_CASE("shipped algebra files parse and round trip byte for byte") {
  std::size_t files = 0;
  for (auto const& entry : std::filesystem::directory_iterator(CLONEALG_DATA_DIR)) {
    if (entry.path().extension() != ".alg") {
      continue;
    }
    ++files;
    auto const text = slurp(entry.path());
    auto const a    = parse_algebra(entry.path().string());
    CHECK(serialize_algebra(a) == text);
    auto const again = parse_algebra_text(serialize_algebra(a));
    CHECK(again.signature() == a.signature());
  }
  CHECK(files >= 10);
  CHECK(parse_algebra(std::string(CLONEALG_DATA_DIR) + "/ba.alg").ops().size() == 5);
  CHECK(parse_algebra(std::string(CLONEALG_DATA_DIR) + "/sets.alg").ops().empty());
}

TEST_CASE("serialization round trips in-memory algebras") {
  for (auto const& a : {nand(), ba(), sets(), left_zero()}) {
    auto const text = serialize_algebra(a);
    auto const b    = parse_algebra_text(text);
    CHECK(serialize_algebra(b) == text);
    REQUIRE(b.ops().size() == a.ops().size());
    for (std::size_t i = 0; i < a.ops().size(); ++i) {
      CHECK(b.ops()[i].op.table() == a.ops()[i].op.table());
    }
  }
}

TEST_CASE("diagnostics") {
  CHECK(error_line("{\n  \"universe\": [\"0\", \"1\"],\n  \"operations\": [\n    {\"name\": \"f\" \"arity\": 1}\n  ]\n}") == 4);
  auto const msg = error_text(R"({"universe": ["0", "1"], "operations": [{"name": "f", "arity": 2, "table": ["0", "1", "1"]}]})");
  CHECK(msg.find("operations[0].table") != std::string::npos);
  CHECK(msg.find("'f'") != std::string::npos);
  CHECK(error_text(R"({"operations": []})").find("$.universe: missing") != std::string::npos);
  CHECK(error_text(R"({"universe": ["0"], "operations": [{"name": "f", "arity": 1, "table": ["2"]}]})")
            .find("table[0]") != std::string::npos);
  CHECK(error_text(R"({"universe": ["0", "0"]})").find("$.universe") != std::string::npos);
  CHECK(error_text(R"({"universe": ["0"], "operations": [{"name": "f", "arity": 0, "table": ["0"]}, {"name": "f", "arity": 0, "table": ["0"]}]})")
            .find("twice") != std::string::npos);
  CHECK(error_text(R"({"format": "other", "universe": ["0"]})").find("format") != std::string::npos);
  CHECK(parse_algebra_text(R"({"universe": [0, 1], "operations": []})").universe()->symbol(1) == "1");
  CHECK_THROWS_AS(parse_algebra("/nonexistent/file.alg"), ParseError);
}

TEST_CASE("atomic writes replace the target") {
  auto const dir  = std::filesystem::temp_directory_path() / "clonealg_io_test";
  std::filesystem::create_directories(dir);
  auto const path = (dir / "out.txt").string();
  write_atomic(path, "first\n");
  write_atomic(path, "second\n");
  CHECK(slurp(path) == "second\n");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  std::filesystem::remove_all(dir);
}
