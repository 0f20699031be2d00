#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "hesse/flow.hpp"
#include "hesse/manifest.hpp"
#include "hesse/potential.hpp"
#include "hesse/report.hpp"

namespace hesse {

// Command-line overrides of manifest settings.
struct RunOptions {
  std::optional<double> tolerance;  // replaces every "<" tolerance
  std::optional<std::uint64_t> seed;
  std::optional<int> points;        // random sample count
};

struct RunOutput {
  Report report;
  std::vector<FlowRecord> flow_records;  // flow command only
  Json snapshot;                         // final flow state, flow command only
};

// Runs analyze | verify | soliton | flow | infogeo. Input problems throw
// hesse::Error; failed checks are report records.
RunOutput run(std::string_view command, const Manifest& manifest, const RunOptions& options = {});

// 0 when every check passes, 1 otherwise.
int exit_code(const Report& report);

PotentialPtr potential_from(const Manifest& manifest);
Json manifest_echo(const Manifest& manifest);

// Uniform doubles in [0, 1) from the top 53 bits of mt19937_64, identical on
// every platform.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

// Explicit [samples] points followed by `random` draws from `box` that fall in
// the field's domain.
std::vector<Eigen::VectorXd> samples_from(const Manifest& manifest, const PotentialField& field, std::uint64_t seed,
                                          std::optional<int> points);

}  // namespace hesse
