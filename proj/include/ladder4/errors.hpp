#pragma once

#include <stdexcept>
#include <string>

namespace ladder4 {

// Base class for all library errors. `code()` is a stable machine-readable
// tag; sweep holes and CLI exit paths key off it.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

struct InvalidRabi : Error {
  explicit InvalidRabi(const std::string& what) : Error("InvalidRabi", what) {}
};

struct InvalidDecay : Error {
  explicit InvalidDecay(const std::string& what) : Error("InvalidDecay", what) {}
};

struct NonFiniteParam : Error {
  explicit NonFiniteParam(const std::string& what) : Error("NonFiniteParam", what) {}
};

struct SingularSystem : Error {
  explicit SingularSystem(const std::string& what) : Error("SingularSystem", what) {}
};

struct StepTooLarge : Error {
  explicit StepTooLarge(const std::string& what) : Error("StepTooLarge", what) {}
};

struct ResonantDenominator : Error {
  explicit ResonantDenominator(const std::string& what)
      : Error("ResonantDenominator", what) {}
};

struct DivergentApproximation : Error {
  explicit DivergentApproximation(const std::string& what)
      : Error("DivergentApproximation", what) {}
};

struct TooFewSamples : Error {
  explicit TooFewSamples(const std::string& what) : Error("TooFewSamples", what) {}
};

// Caller violated a documented domain restriction (e.g. an evaluator that is
// only defined at zero detuning).
struct PreconditionError : Error {
  explicit PreconditionError(const std::string& what)
      : Error("PreconditionError", what) {}
};

struct BadSweepSpec : Error {
  explicit BadSweepSpec(const std::string& what) : Error("BadSweepSpec", what) {}
};

}  // namespace ladder4
