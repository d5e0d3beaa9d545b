#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace curveopt {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Objective returned a non-finite value or gradient, or was asked to
// evaluate at a non-finite point.
class EvaluationFailure : public Error {
 public:
  EvaluationFailure(const std::string& what, std::vector<double> point)
      : Error(what), point_(std::move(point)) {}

  const std::vector<double>& point() const noexcept { return point_; }

 private:
  std::vector<double> point_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class NotDescent : public Error {
 public:
  using Error::Error;
};

class SearchStalled : public Error {
 public:
  SearchStalled(const std::string& what, double best_t)
      : Error(what), best_t_(best_t) {}

  double best_t() const noexcept { return best_t_; }

 private:
  double best_t_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(what + " (line " + std::to_string(line) + ")"), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace curveopt
