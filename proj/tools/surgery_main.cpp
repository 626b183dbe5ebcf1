#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "surgery/corpus.hpp"
#include "surgery/dsl.hpp"
#include "surgery/group.hpp"

namespace fs = std::filesystem;
using namespace surgery;

namespace {

constexpr int kScriptError = 1;
constexpr int kUsageError = 2;

std::size_t default_max_cosets() {
  if (const char* env = std::getenv("SURGERY_MAX_COSETS")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
    std::cerr << "warning: ignoring invalid SURGERY_MAX_COSETS='" << env << "'\n";
  }
  return kDefaultMaxCosets;
}

void print_errors(const std::string& file, const dsl::Report& r) {
  for (const auto& e : r.json["errors"])
    std::cerr << file << ":" << e["line"].get<std::size_t>() << ":" << e["column"].get<std::size_t>()
              << ": error: " << e["message"].get<std::string>() << "\n";
}

int run(const std::string& file, const std::string& out, std::size_t max_cosets, std::uint64_t seed,
        const std::string& mesh_dir) {
  std::ifstream in(file, std::ios::binary);
  if (!in) {
    std::cerr << "surgery: cannot open '" << file << "'\n";
    return kUsageError;
  }
  std::stringstream ss;
  ss << in.rdbuf();
  dsl::RunOptions opts;
  opts.max_cosets = max_cosets;
  opts.seed = seed;
  opts.mesh_root = mesh_dir.empty() ? fs::path(".") : fs::path(mesh_dir);
  auto report = dsl::run_source(ss.str(), opts);
  std::string bytes = report.dump();
  if (out.empty()) {
    std::cout << bytes;
  } else {
    std::ofstream o(out, std::ios::binary);
    if (!o || !(o << bytes)) {
      std::cerr << "surgery: cannot write '" << out << "'\n";
      return kScriptError;
    }
  }
  print_errors(file, report);
  return report.error_count == 0 ? 0 : kScriptError;
}

int check(const std::string& report_path) {
  std::error_code ec;
  fs::path dir = fs::temp_directory_path(ec);
  if (ec) dir = ".";
  std::random_device rd;
  dir /= "surgery-check-" + std::to_string(rd());
  fs::create_directories(dir, ec);
  auto outcomes = corpus::check(dir);
  fs::remove_all(dir, ec);
  int failures = 0;
  std::string combined;
  for (const auto& o : outcomes) {
    bool ok = o.matches && o.error_count == 0;
    std::cout << (ok ? "PASS " : "FAIL ") << o.name;
    if (!o.matches) std::cout << " (report differs from golden)";
    if (o.error_count) std::cout << " (" << o.error_count << " script errors)";
    std::cout << "\n";
    failures += !ok;
    combined += "== " + o.name + "\n" + o.report;
  }
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    out << combined;
    if (!out) {
      std::cerr << "surgery: cannot write '" << report_path << "'\n";
      return kScriptError;
    }
  }
  std::cout << outcomes.size() - static_cast<std::size_t>(failures) << "/" << outcomes.size()
            << " corpus scripts match\n";
  return failures == 0 ? 0 : kScriptError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surgery-program interpreter"};
  app.require_subcommand(1);

  std::string file, out, mesh_dir, check_report;
  std::size_t max_cosets = default_max_cosets();
  std::uint64_t seed = 1;

  auto* run_cmd = app.add_subcommand("run", "Execute a script and print or write its JSON report");
  run_cmd->add_option("FILE", file, "Script file")->required();
  run_cmd->add_option("--out", out, "Write the report here instead of stdout");
  run_cmd->add_option("--max-cosets", max_cosets, "Default coset bound for order queries")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--seed", seed, "Seed for random_braid");
  run_cmd->add_option("--mesh-dir", mesh_dir, "Directory for relative mesh paths");

  auto* check_cmd = app.add_subcommand("check", "Run the built-in corpus against golden reports");
  check_cmd->add_option("--report", check_report, "Write all corpus reports to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }
  if (*run_cmd) return run(file, out, max_cosets, seed, mesh_dir);
  return check(check_report);
}
