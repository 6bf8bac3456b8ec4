#pragma once

#include <stdexcept>
#include <string>

namespace twf {

// Process exit codes shared by the CLI and the acceptance suite.
enum class ExitCode : int {
  success = 0,
  model_failure = 2,
  prerequisite_missing = 3,
  non_convergence = 4,
};

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  [[nodiscard]] virtual ExitCode exit_code() const noexcept = 0;
};

/// The model is malformed or violates a standing assumption.
class ModelError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode exit_code() const noexcept override { return ExitCode::model_failure; }
};

/// A quantity the operation depends on does not exist for this model
/// (e.g. an endpoint derivative of q), so the operation refuses to run.
class Refusal : public Error {
 public:
  Refusal(const std::string& what, std::string citation)
      : Error(what), citation_(std::move(citation)) {}
  [[nodiscard]] ExitCode exit_code() const noexcept override {
    return ExitCode::prerequisite_missing;
  }
  [[nodiscard]] const std::string& citation() const noexcept { return citation_; }

 private:
  std::string citation_;
};

/// The speed lies below the range where the slope pair at 0 is real and
/// non-positive.
class BelowAdmissibleRange : public Refusal {
 public:
  using Refusal::Refusal;
};

/// Bisection bracket invalid, step underflow, iteration caps.
class ConvergenceError : public Error {
 public:
  using Error::Error;
  [[nodiscard]] ExitCode exit_code() const noexcept override {
    return ExitCode::non_convergence;
  }
};

}  // namespace twf
