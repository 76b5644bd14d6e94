#pragma once

#include <stdexcept>
#include <string>

namespace turinglab {

/// Coarse grouping used by the CLI to pick an exit code.
enum class ErrorCategory {
  config,    // unreadable/malformed input, bad parameters
  model,     // model evaluation or hypothesis-level failures
  solver,    // critical point, cGL and wave computations
  spectrum,  // Bloch assembly, sweeps, fits, verdicts
  agreement  // prediction/measurement disagreement
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCategory category, const std::string& what)
      : std::runtime_error(what), category_(category) {}
  ErrorCategory category() const noexcept { return category_; }

 private:
  ErrorCategory category_;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& what, int line = 0, int column = 0)
      : Error(ErrorCategory::config, what), line_(line), column_(column) {}
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

class ModelDomainError : public Error {
 public:
  explicit ModelDomainError(const std::string& what) : Error(ErrorCategory::model, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ErrorCategory::model, what) {}
};

class BranchTrackingError : public Error {
 public:
  BranchTrackingError(const std::string& what, double k)
      : Error(ErrorCategory::solver, what), k_(k) {}
  double k() const noexcept { return k_; }

 private:
  double k_;
};

/// max Re of the critical branch at mu = 0 is not zero; offset() is the
/// amount by which mu would have to be re-centred.
class NotAtBifurcationError : public Error {
 public:
  NotAtBifurcationError(const std::string& what, double offset, double k)
      : Error(ErrorCategory::solver, what), offset_(offset), k_(k) {}
  double offset() const noexcept { return offset_; }
  double k() const noexcept { return k_; }

 private:
  double offset_;
  double k_;
};

class UniquenessError : public Error {
 public:
  explicit UniquenessError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

class DegenerateResonanceError : public Error {
 public:
  DegenerateResonanceError(const std::string& what, int eta)
      : Error(ErrorCategory::solver, what), eta_(eta) {}
  int eta() const noexcept { return eta_; }

 private:
  int eta_;
};

class SubcriticalError : public Error {
 public:
  explicit SubcriticalError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

class DegenerateAmplitudeError : public Error {
 public:
  explicit DegenerateAmplitudeError(const std::string& what)
      : Error(ErrorCategory::solver, what) {}
};

class PreconditionError : public Error {
 public:
  PreconditionError(ErrorCategory category, const std::string& what) : Error(category, what) {}
};

class NoWaveError : public Error {
 public:
  explicit NoWaveError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

class TruncationError : public Error {
 public:
  explicit TruncationError(const std::string& what) : Error(ErrorCategory::solver, what) {}
};

class CurveTrackingError : public Error {
 public:
  CurveTrackingError(const std::string& what, double sigma)
      : Error(ErrorCategory::spectrum, what), sigma_(sigma) {}
  double sigma() const noexcept { return sigma_; }

 private:
  double sigma_;
};

class GapViolationError : public Error {
 public:
  GapViolationError(const std::string& what, double sigma)
      : Error(ErrorCategory::spectrum, what), sigma_(sigma) {}
  double sigma() const noexcept { return sigma_; }

 private:
  double sigma_;
};

class FitError : public Error {
 public:
  explicit FitError(const std::string& what) : Error(ErrorCategory::spectrum, what) {}
};

class DisagreementError : public Error {
 public:
  explicit DisagreementError(const std::string& what) : Error(ErrorCategory::agreement, what) {}
};

}  // namespace turinglab
