#pragma once

#include <stdexcept>
#include <string>

namespace convpow {

// Exit-code category a failure maps to on the command line.
enum class ErrorCategory {
  internal = 1,
  assumption = 2,
};

class Error : public std::runtime_error {
 public:
  Error(std::string name, const std::string& what,
        ErrorCategory category = ErrorCategory::internal)
      : std::runtime_error(what), name_(std::move(name)), category_(category) {}

  const std::string& name() const noexcept { return name_; }
  ErrorCategory category() const noexcept { return category_; }

 private:
  std::string name_;
  ErrorCategory category_;
};

class InvalidArgument : public Error {
 public:
  explicit InvalidArgument(const std::string& what) : Error("InvalidArgument", what) {}
};

class ParamOutOfRange : public Error {
 public:
  explicit ParamOutOfRange(const std::string& what) : Error("ParamOutOfRange", what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error("ParseError", what) {}
};

class ZeroConstantTerm : public Error {
 public:
  explicit ZeroConstantTerm(const std::string& what) : Error("ZeroConstantTerm", what) {}
};

// sup |F_a| on the unit circle differs from 1. factor() is the positive
// multiplier that would normalize the sequence.
class NotNormalized : public Error {
 public:
  NotNormalized(double sup_modulus, const std::string& what)
      : Error("NotNormalized", what, ErrorCategory::assumption), sup_modulus_(sup_modulus) {}

  double sup_modulus() const noexcept { return sup_modulus_; }
  double factor() const noexcept { return 1.0 / sup_modulus_; }

 private:
  double sup_modulus_;
};

// |F_a| == 1 on the whole circle (e.g. a pure shift).
class AllModulusOne : public Error {
 public:
  explicit AllModulusOne(const std::string& what)
      : Error("AllModulusOne", what, ErrorCategory::assumption) {}
};

class DriftNotReal : public Error {
 public:
  explicit DriftNotReal(const std::string& what)
      : Error("DriftNotReal", what, ErrorCategory::assumption) {}
};

class DispersiveCase : public Error {
 public:
  explicit DispersiveCase(const std::string& what)
      : Error("DispersiveCase", what, ErrorCategory::assumption) {}
};

class DegenerateSymbol : public Error {
 public:
  explicit DegenerateSymbol(const std::string& what)
      : Error("DegenerateSymbol", what, ErrorCategory::assumption) {}
};

class InsufficientCumulants : public Error {
 public:
  explicit InsufficientCumulants(const std::string& what)
      : Error("InsufficientCumulants", what) {}
};

class PlanIncomplete : public Error {
 public:
  explicit PlanIncomplete(const std::string& what) : Error("PlanIncomplete", what) {}
};

class DegenerateData : public Error {
 public:
  explicit DegenerateData(const std::string& what) : Error("DegenerateData", what) {}
};

}  // namespace convpow
