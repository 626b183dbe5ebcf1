#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surgery/dsl.hpp"

namespace surgery::corpus {

struct Script {
  std::string_view name;
  std::string_view source;
  /// Golden report bytes.
  std::string_view expected;
};

/// Scripts compiled into the binary, sorted by name.
std::span<const Script> scripts();

struct Outcome {
  std::string name;
  std::string report;
  bool matches = false;
  std::size_t error_count = 0;
};

/// Runs every embedded script with meshes written below `mesh_dir` and
/// compares each report with its golden copy.
std::vector<Outcome> check(const std::filesystem::path& mesh_dir, const dsl::RunOptions& base = {});

}  // namespace surgery::corpus
