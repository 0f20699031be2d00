#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hesse/errors.hpp"

namespace hesse {

class ManifestError : public Error {
 public:
  ManifestError(const std::string& message, int line)
      : Error(line > 0 ? "manifest line " + std::to_string(line) + ": " + message : "manifest: " + message),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Line-oriented manifest:
//
//   # comment
//   [section]
//   key = value
//
// Values are numbers, bare words, "quoted strings", lists [a, b, ...] and
// point lists (x1, x2), (y1, y2). Typed accessors parse on demand and report
// the line of the offending entry.
class Manifest {
 public:
  struct Entry {
    std::string key;
    std::string value;
    int line = 0;
  };
  struct Section {
    std::string name;
    int line = 0;
    std::vector<Entry> entries;
    const Entry* find(std::string_view key) const;
  };

  static Manifest parse(std::string_view text);
  static Manifest load(const std::string& path);

  const std::vector<Section>& sections() const { return sections_; }
  bool has(std::string_view section) const { return find(section) != nullptr; }
  const Section* find(std::string_view section) const;
  bool has(std::string_view section, std::string_view key) const;

  std::string text(std::string_view section, std::string_view key) const;  // unquotes strings
  double number(std::string_view section, std::string_view key) const;
  long long integer(std::string_view section, std::string_view key) const;
  std::uint64_t unsigned_integer(std::string_view section, std::string_view key) const;
  bool boolean(std::string_view section, std::string_view key) const;
  std::vector<std::string> texts(std::string_view section, std::string_view key) const;
  std::vector<double> numbers(std::string_view section, std::string_view key) const;
  std::vector<Eigen::VectorXd> points(std::string_view section, std::string_view key) const;

  std::string text_or(std::string_view section, std::string_view key, std::string fallback) const;
  double number_or(std::string_view section, std::string_view key, double fallback) const;
  long long integer_or(std::string_view section, std::string_view key, long long fallback) const;

  // Throws unless every key of `section` is in `allowed`.
  void require_keys(std::string_view section, const std::vector<std::string_view>& allowed) const;

 private:
  const Entry& entry(std::string_view section, std::string_view key) const;

  std::vector<Section> sections_;
};

}  // namespace hesse
