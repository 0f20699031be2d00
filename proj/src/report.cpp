#include "hesse/report.hpp"

#include <algorithm>
#include <cstdio>

#include "hesse/errors.hpp"

namespace hesse {

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::Below: return "<";
    case Comparison::Above: return ">";
    case Comparison::AtLeast: return ">=";
    case Comparison::Info: return "info";
  }
  return "";
}

Record below(std::string name, std::string anchor, double value, double tolerance, Json detail) {
  return {std::move(name), std::move(anchor), value, tolerance, Comparison::Below, value < tolerance, std::move(detail)};
}

Record above(std::string name, std::string anchor, double value, double threshold, Json detail) {
  return {std::move(name), std::move(anchor), value, threshold, Comparison::Above, value > threshold, std::move(detail)};
}

Record at_least(std::string name, std::string anchor, double value, double bound, Json detail) {
  return {std::move(name), std::move(anchor), value, bound, Comparison::AtLeast, value >= bound, std::move(detail)};
}

Record info(std::string name, std::string anchor, double value, Json detail) {
  return {std::move(name), std::move(anchor), value, 0.0, Comparison::Info, true, std::move(detail)};
}

Report::Report(std::string command, Json manifest, std::uint64_t seed)
    : command_(std::move(command)), manifest_(std::move(manifest)), seed_(seed) {}

const Record& Report::find(std::string_view name) const {
  for (const auto& r : records_)
    if (r.name == name) return r;
  throw InvalidArgument("no report record named " + std::string(name));
}

bool Report::all_pass() const {
  return std::all_of(records_.begin(), records_.end(), [](const Record& r) { return r.pass; });
}

std::size_t Report::failures() const {
  return static_cast<std::size_t>(std::count_if(records_.begin(), records_.end(), [](const Record& r) { return !r.pass; }));
}

Json Report::deterministic_json() const {
  Json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = "hesse";
  j["tool_version"] = kToolVersion;
  j["command"] = command_;
  j["seed"] = seed_;
  j["manifest"] = manifest_;
  Json records = Json::array();
  for (const auto& r : records_) {
    Json rec;
    rec["name"] = r.name;
    rec["anchor"] = r.anchor;
    rec["residual"] = r.value;
    rec["tolerance"] = r.tolerance;
    rec["comparison"] = to_string(r.comparison);
    rec["pass"] = r.pass;
    if (!r.detail.empty()) rec["detail"] = r.detail;
    records.push_back(std::move(rec));
  }
  j["records"] = std::move(records);
  j["summary"] = {{"checks", records_.size()}, {"failed", failures()}, {"pass", all_pass()}};
  if (!extra_.empty()) j["results"] = extra_;
  if (!dumps_.empty()) j["tensors"] = dumps_;
  return j;
}

std::string Report::determinism_hash() const {
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(fnv1a64(deterministic_json().dump())));
  return buf;
}

Json Report::to_json() const {
  Json j = deterministic_json();
  j["determinism_hash"] = determinism_hash();
  j["timing"] = {{"wall_seconds", wall_seconds_}};
  return j;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace hesse
