#ifndef CFBAC_ERROR_HPP
#define CFBAC_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cfbac {

enum class ErrorCode {
  DivisionByZero,
  DistinctRadicands,
  DomainError,
  OutOfRegion,
  UnsupportedParameter,
  ExactnessRequired,
  PrecisionExhausted,
  Undecidable,
  TheoremViolation,
  ParseError,
  NotInField,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by interval floors and comparisons that the current enclosure cannot decide.
// Callers either escalate precision or convert it into PrecisionExhausted.
class Undecidable : public Error {
 public:
  explicit Undecidable(const std::string& what) : Error(ErrorCode::Undecidable, what) {}
};

class PrecisionExhausted : public Error {
 public:
  PrecisionExhausted(std::size_t step, const std::string& what)
      : Error(ErrorCode::PrecisionExhausted, what + " (certified steps: " + std::to_string(step) + ")"),
        step_(step) {}
  // Number of steps that were certified before the enclosure gave out.
  std::size_t step() const { return step_; }

 private:
  std::size_t step_;
};

}  // namespace cfbac

#endif
