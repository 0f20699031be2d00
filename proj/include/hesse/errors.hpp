#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hesse {

// Base for every error raised by the library. Input problems (bad manifests,
// bad expressions) and numerical problems (domain, definiteness) both derive
// from it so the CLI can map them to exit codes in one place.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

// Evaluation left the domain of a function (log of a non-positive number,
// real power of a non-positive base, point outside the chart domain).
class DomainError : public Error {
 public:
  using Error::Error;
};

class NotPositiveDefinite : public Error {
 public:
  NotPositiveDefinite(const std::string& message, int leading_minor)
      : Error(message + " (leading minor " + std::to_string(leading_minor) + ")"),
        leading_minor_(leading_minor) {}
  int leading_minor() const { return leading_minor_; }

 private:
  int leading_minor_;
};

// Requested jet order, slot, dimension or family parameter is invalid.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// The flow state lost positive definiteness at some node.
class FlowBlowUp : public Error {
 public:
  FlowBlowUp(const std::string& message, int node, double time)
      : Error(message + " at node " + std::to_string(node) + ", t = " + std::to_string(time)),
        node_(node),
        time_(time) {}
  int node() const { return node_; }
  double time() const { return time_; }

 private:
  int node_;
  double time_;
};

}  // namespace hesse
