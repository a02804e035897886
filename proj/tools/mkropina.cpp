#include "mkropina/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitResidual = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw mkropina::ParseError("cannot open scenario file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Options {
  std::string scenario;
  std::string format = "csv";
  std::string methods;
  int count = -1;
  long long seed = -1;
  double tolerance = -1.0;
  int sigma = 0;
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Flag curvature of homogeneous spaces with generalized m-Kropina metrics"};
  app.require_subcommand(1);
  Options opt;
  app.add_option("--scenario", opt.scenario, "scenario JSON file")->required();
  app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--methods", opt.methods, "comma list of general,thm31,natred,biinv (default: scenario)");
  app.add_option("--count", opt.count, "number of sampled flags (scan, verify)")->check(CLI::NonNegativeNumber);
  app.add_option("--seed", opt.seed, "sampling seed (scan, verify)")->check(CLI::NonNegativeNumber);
  app.add_option("--tolerance", opt.tolerance, "closed-form tolerance, overrides the scenario")
      ->check(CLI::PositiveNumber);
  app.add_option("--sigma", opt.sigma, "sign applied to the invariant-metric curvature formula")
      ->check(CLI::IsMember({-1, 1}));

  auto* check = app.add_subcommand("check", "structural and natural-reductivity checks");
  auto* curvature = app.add_subcommand("curvature", "flag curvature of the scenario's flags");
  auto* scan = app.add_subcommand("scan", "flag curvature of seeded random flags");
  auto* verify = app.add_subcommand("verify", "oracle cross-checks with residuals");
  for (auto* sub : {check, curvature, scan, verify}) sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  try {
    auto s = mkropina::load_scenario(read_file(opt.scenario));
    if (opt.sigma != 0) {
      s.sigma = opt.sigma;
      s.backend.sigma = opt.sigma;
    }
    if (opt.tolerance > 0.0) s.tolerances.closed_form = opt.tolerance;
    const auto methods = opt.methods.empty() ? s.methods : mkropina::parse_method_list(opt.methods);
    const bool json = opt.format == "json";
    for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';

    if (*check) {
      const auto rows = mkropina::structural_checks(s);
      std::cout << (json ? mkropina::checks_to_json(s.name, rows) : mkropina::checks_to_csv(rows, false));
      for (const auto& r : rows)
        if (r.check == "reductivity_equivalence" && !r.passed) return kExitResidual;
      return kExitOk;
    }
    if (*curvature || *scan) {
      std::vector<mkropina::ReportRow> rows;
      if (*curvature) {
        rows = mkropina::curvature_rows(s, methods);
      } else {
        const int count = opt.count >= 0 ? opt.count : s.scan.count;
        const auto seed = opt.seed >= 0 ? static_cast<std::uint64_t>(opt.seed) : s.scan.seed;
        rows = mkropina::scan_rows(s, methods, count, seed);
      }
      std::cout << (json ? mkropina::rows_to_json(s.name, rows) : mkropina::rows_to_csv(rows));
      return kExitOk;
    }
    const int count = opt.count >= 0 ? opt.count : 100;
    const auto seed = opt.seed >= 0 ? static_cast<std::uint64_t>(opt.seed) : s.scan.seed;
    const auto rows = mkropina::verify_checks(s, count, seed);
    std::cout << (json ? mkropina::checks_to_json(s.name, rows) : mkropina::checks_to_csv(rows, true));
    for (const auto& r : rows)
      if (!r.passed) return kExitResidual;
    return kExitOk;
  } catch (const mkropina::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
}
