#pragma once

#include <stdexcept>
#include <string>

namespace mtc {

// Argument outside the mathematical domain of a function (non-finite input,
// probability outside its open interval, beta >= 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Caller broke a documented precondition (length mismatch, empty batch).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Binary outcome vector holds a single class.
class DegenerateOutcomeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Covariate has zero variance.
class DegenerateCovariateError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class GenerationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CalibrationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by a study when too many replicates failed to produce records.
class SimulationQualityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace mtc
