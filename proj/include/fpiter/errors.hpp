#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fpiter {

/// Base class for all toolkit errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Points from different spaces (or of different dimension) were mixed.
class SpaceMismatchError : public Error {
 public:
  using Error::Error;
};

/// A numeric argument lies outside its permitted range.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// A mapping received or produced a point outside its domain.
class DomainViolationError : public Error {
 public:
  DomainViolationError(const std::string& msg, std::vector<double> offending)
      : Error(msg), offending_(std::move(offending)) {}

  const std::vector<double>& offending_point() const { return offending_; }

 private:
  std::vector<double> offending_;
};

/// The integral operator fails the contraction condition (theta >= 1).
class NotAContractionError : public Error {
 public:
  explicit NotAContractionError(double theta)
      : Error("operator is not a contraction: theta = " + std::to_string(theta) +
              " >= 1"),
        theta_(theta) {}

  double theta() const { return theta_; }

 private:
  double theta_;
};

/// A problem function returned a non-finite value at a node.
class EvaluationError : public Error {
 public:
  EvaluationError(const std::string& msg, std::vector<double> node)
      : Error(msg), node_(std::move(node)) {}

  const std::vector<double>& node() const { return node_; }

 private:
  std::vector<double> node_;
};

}  // namespace fpiter
