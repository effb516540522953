#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eosq {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation (e.g. a waveplate
// phase with cos(theta) > 0).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Adaptive quadrature exhausted its subdivision budget above tolerance.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double worst_a, double worst_b,
                   double worst_error)
      : Error(what), worst_a_(worst_a), worst_b_(worst_b),
        worst_error_(worst_error) {}

  double worst_a() const noexcept { return worst_a_; }
  double worst_b() const noexcept { return worst_b_; }
  double worst_error() const noexcept { return worst_error_; }

 private:
  double worst_a_;
  double worst_b_;
  double worst_error_;
};

using QuadratureError = ConvergenceError;

class ParseError : public Error {
 public:
  ParseError(const std::string& what, int line, std::string key)
      : Error(what), line_(line), key_(std::move(key)) {}

  int line() const noexcept { return line_; }
  const std::string& key() const noexcept { return key_; }

 private:
  int line_;
  std::string key_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const noexcept {
    return violations_;
  }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string out = "invalid configuration:";
    for (const auto& s : v) out += "\n  - " + s;
    return out;
  }

  std::vector<std::string> violations_;
};

// Gaussian deconvolution refused: nothing to deconvolve, or the
// state-independent corrections are too large relative to the sampled part.
class ReconstructionError : public Error {
 public:
  ReconstructionError(const std::string& what, double ratio)
      : Error(what), ratio_(ratio) {}

  double ratio() const noexcept { return ratio_; }

 private:
  double ratio_;
};

}  // namespace eosq
