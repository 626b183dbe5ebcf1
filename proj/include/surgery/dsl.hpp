#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace surgery::dsl {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Expr;

struct Arg {
  std::string name;  // empty for positional arguments
  std::shared_ptr<Expr> value;
};

struct Expr {
  enum class Kind { Int, Real, String, Ident, Call, List, With };
  Kind kind = Kind::Int;
  Position pos;
  long long int_value = 0;
  double real_value = 0.0;
  /// String literal, identifier, called function, or `with` clause name.
  std::string text;
  /// Call and `with` arguments.
  std::vector<Arg> args;
  /// List items; for `with`, the single base expression.
  std::vector<std::shared_ptr<Expr>> items;
};

struct Statement {
  enum class Kind { Bind, Print, Mesh, MeshSeq };
  Kind kind = Kind::Bind;
  Position pos;
  /// Declared type for `link K = ...` and friends; empty for a bare rebind.
  std::string declared;
  std::string name;
  /// Output path for mesh statements.
  std::string path;
  std::shared_ptr<Expr> expr;
};

struct Program {
  std::vector<Statement> statements;
};

/// Statements end with `;`, and `#` comments run to the end of a line.
/// Syntax errors and names used before any binding throw ParseError.
Program parse_program(std::string_view text);

struct RunOptions {
  std::size_t max_cosets = 100000;
  std::uint64_t seed = 1;
  /// Relative mesh paths are resolved against this directory.
  std::filesystem::path mesh_root = ".";
  bool write_meshes = true;
};

struct Report {
  nlohmann::ordered_json json;
  std::size_t error_count = 0;
  /// Two-space indented JSON with a trailing newline.
  std::string dump() const;
};

/// Executes statements in order. A failing statement is recorded in the
/// report's error list and execution continues; names it would have bound
/// stay unbound.
Report run_program(const Program& p, const RunOptions& options = {});

/// Parses and runs; a syntax error yields a report with that one error.
Report run_source(std::string_view text, const RunOptions& options = {});

}  // namespace surgery::dsl
