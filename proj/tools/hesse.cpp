#include <chrono>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hesse/errors.hpp"
#include "hesse/run.hpp"

namespace {

void print_summary(const hesse::Report& report) {
  for (const auto& r : report.records()) {
    const char* status = r.comparison == hesse::Comparison::Info ? "INFO" : (r.pass ? "PASS" : "FAIL");
    std::cout << status << "  " << r.name << "  " << r.value;
    if (r.comparison != hesse::Comparison::Info) std::cout << " " << hesse::to_string(r.comparison) << " " << r.tolerance;
    std::cout << "\n";
  }
  std::cout << (report.all_pass() ? "all checks passed" : std::to_string(report.failures()) + " check(s) failed")
            << "  " << report.determinism_hash() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hessian geometry toolkit"};
  app.require_subcommand(1);

  std::string manifest_path, json_path, csv_path;
  hesse::RunOptions options;
  bool quiet = false;
  double tolerance = 0;
  std::uint64_t seed = 0;
  int points = 0;

  for (const char* name : {"analyze", "verify", "soliton", "flow", "infogeo"}) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("manifest", manifest_path, "manifest file")->required()->check(CLI::ExistingFile);
    sub->add_option("--tolerance", tolerance, "override every residual tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--json", json_path, "write the JSON report here");
    sub->add_option("--csv", csv_path, "write flow diagnostics as CSV (flow only)");
    sub->add_option("--seed", seed, "random seed");
    sub->add_option("--points", points, "number of random sample points")->check(CLI::NonNegativeNumber);
    sub->add_flag("--quiet", quiet, "no console summary");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* sub = app.get_subcommands().front();
  if (sub->count("--tolerance")) options.tolerance = tolerance;
  if (sub->count("--seed")) options.seed = seed;
  if (sub->count("--points")) options.points = points;

  try {
    const auto manifest = hesse::Manifest::load(manifest_path);
    const auto out = hesse::run(sub->get_name(), manifest, options);
    const auto report_json = out.report.to_json();
    if (!json_path.empty()) {
      std::ofstream f(json_path);
      if (!f) throw hesse::InvalidArgument("cannot write " + json_path);
      auto j = report_json;
      if (!out.snapshot.is_null()) j["snapshot"] = out.snapshot;
      f << j.dump(2) << "\n";
    }
    if (!csv_path.empty()) {
      if (sub->get_name() != "flow") throw hesse::InvalidArgument("--csv applies to flow only");
      std::ofstream f(csv_path);
      if (!f) throw hesse::InvalidArgument("cannot write " + csv_path);
      hesse::write_csv(f, out.flow_records);
    }
    if (!quiet) print_summary(out.report);
    return hesse::exit_code(out.report);
  } catch (const hesse::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
