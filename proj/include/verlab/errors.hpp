#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace verlab {

// Every library failure derives from Error. code() is a stable
// machine-readable tag; the CLI emits it in structured error output.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct NonSymmetricInput : Error {
  explicit NonSymmetricInput(const std::string& m) : Error("NonSymmetricInput", m) {}
};

struct InvalidPrime : Error {
  explicit InvalidPrime(const std::string& m) : Error("InvalidPrime", m) {}
};

struct LabelOutOfRange : Error {
  explicit LabelOutOfRange(const std::string& m) : Error("LabelOutOfRange", m) {}
};

struct NoSuchSimple : Error {
  explicit NoSuchSimple(const std::string& m) : Error("NoSuchSimple", m) {}
};

struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& m) : Error("BudgetExceeded", m) {}
};

struct OutsideFrobeniusDomain : Error {
  explicit OutsideFrobeniusDomain(const std::string& m) : Error("OutsideFrobeniusDomain", m) {}
};

struct BoundViolated : Error {
  explicit BoundViolated(const std::string& m) : Error("BoundViolated", m) {}
};

struct StabilityFailure : Error {
  explicit StabilityFailure(const std::string& m) : Error("StabilityFailure", m) {}
};

struct NegativeMultiplicity : Error {
  explicit NegativeMultiplicity(const std::string& m) : Error("NegativeMultiplicity", m) {}
};

struct NoConvergence : Error {
  explicit NoConvergence(const std::string& m) : Error("NoConvergence", m) {}
};

struct UnknownCheckId : Error {
  explicit UnknownCheckId(const std::string& m) : Error("UnknownCheckId", m) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& m) : Error("ParseError", m) {}
};

struct CacheError : Error {
  explicit CacheError(const std::string& m) : Error("CacheError", m) {}
};

}  // namespace verlab
