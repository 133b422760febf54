#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace speedlab {

// Every failure raised by the library derives from Error so callers can map
// the category onto an exit status without string matching.
class Error : public std::runtime_error {
public:
  enum class Category { validation, numerical, guard };

  Error(Category category, const std::string& what)
      : std::runtime_error(what), category_(category) {}

  Category category() const noexcept { return category_; }

private:
  Category category_;
};

class ValidationError : public Error {
public:
  explicit ValidationError(const std::string& what)
      : Error(Category::validation, what) {}
};

class ParseError : public ValidationError {
public:
  ParseError(const std::string& what, std::size_t position)
      : ValidationError(what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

private:
  std::size_t position_;
};

class EvalError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NonEllipticError : public ValidationError {
public:
  using ValidationError::ValidationError;
};

class NumericalError : public Error {
public:
  explicit NumericalError(const std::string& what)
      : Error(Category::numerical, what) {}
};

class SingularSolve : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NoConvergence : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class BlowupError : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class NoInteriorMinimum : public NumericalError {
public:
  NoInteriorMinimum(const std::string& what, bool at_lower)
      : NumericalError(what), at_lower_(at_lower) {}

  bool at_lower() const noexcept { return at_lower_; }

private:
  bool at_lower_;
};

class NotMonostable : public NumericalError {
public:
  NotMonostable(const std::string& what, double margin)
      : NumericalError(what), margin_(margin) {}

  double margin() const noexcept { return margin_; }

private:
  double margin_;
};

class D1Violated : public NumericalError {
public:
  D1Violated(const std::string& what, double margin)
      : NumericalError(what), margin_(margin) {}

  double margin() const noexcept { return margin_; }

private:
  double margin_;
};

class NoCrossing : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class TooFewPoints : public NumericalError {
public:
  using NumericalError::NumericalError;
};

class GuardError : public Error {
public:
  explicit GuardError(const std::string& what) : Error(Category::guard, what) {}
};

class ShiftOutOfRange : public GuardError {
public:
  using GuardError::GuardError;
};

class InconsistentClassification : public GuardError {
public:
  using GuardError::GuardError;
};

class DomainTooSmall : public GuardError {
public:
  using GuardError::GuardError;
};

} // namespace speedlab
