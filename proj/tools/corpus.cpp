#include "surgery/corpus.hpp"

namespace surgery::corpus {

std::vector<Outcome> check(const std::filesystem::path& mesh_dir, const dsl::RunOptions& base) {
  std::vector<Outcome> out;
  for (const auto& s : scripts()) {
    dsl::RunOptions opts = base;
    opts.mesh_root = mesh_dir / std::string(s.name);
    auto report = dsl::run_source(s.source, opts);
    Outcome o;
    o.name = std::string(s.name);
    o.report = report.dump();
    o.error_count = report.error_count;
    o.matches = o.report == s.expected;
    out.push_back(std::move(o));
  }
  return out;
}

}  // namespace surgery::corpus
