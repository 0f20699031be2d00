#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace hesse {

using Json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;
inline constexpr std::string_view kToolVersion = "0.1.0";

// How a record's pass flag follows from its value and tolerance.
enum class Comparison { Below, Above, AtLeast, Info };

std::string to_string(Comparison c);

struct Record {
  std::string name;
  std::string anchor;  // the formula or statement being checked
  double value = 0;
  double tolerance = 0;
  Comparison comparison = Comparison::Below;
  bool pass = true;
  Json detail = Json::object();
};

// pass = value < tolerance.
Record below(std::string name, std::string anchor, double value, double tolerance, Json detail = Json::object());
// pass = value > threshold.
Record above(std::string name, std::string anchor, double value, double threshold, Json detail = Json::object());
// pass = value >= bound.
Record at_least(std::string name, std::string anchor, double value, double bound, Json detail = Json::object());
// Always passes; carries a measurement.
Record info(std::string name, std::string anchor, double value, Json detail = Json::object());

class Report {
 public:
  Report(std::string command, Json manifest, std::uint64_t seed);

  void add(Record r) { records_.push_back(std::move(r)); }
  void add_dump(Json dump) { dumps_.push_back(std::move(dump)); }
  void set(const std::string& key, Json value) { extra_[key] = std::move(value); }
  void set_wall_seconds(double s) { wall_seconds_ = s; }

  const std::vector<Record>& records() const { return records_; }
  const Record& find(std::string_view name) const;
  bool all_pass() const;
  std::size_t failures() const;

  // Everything except timing; hashed for the determinism check.
  Json deterministic_json() const;
  std::string determinism_hash() const;
  Json to_json() const;

 private:
  std::string command_;
  Json manifest_;
  std::uint64_t seed_;
  std::vector<Record> records_;
  std::vector<Json> dumps_;
  Json extra_ = Json::object();
  double wall_seconds_ = 0;
};

std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace hesse
