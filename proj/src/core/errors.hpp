#ifndef FBH_CORE_ERRORS_HPP
#define FBH_CORE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fbh {

// Base of everything the engine throws on purpose.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Bad user input: unparseable expression, unknown family, invalid flag value.
// Maps to exit code 2 at the CLI boundary.
struct UsageError : Error {
  explicit UsageError(const std::string& msg) : Error(msg) {}
};

struct ParseError : UsageError {
  ParseError(const std::string& msg, std::size_t position)
      : UsageError(msg + " (at position " + std::to_string(position) + ")"),
        pos(position) {}
  std::size_t pos;
};

// Evaluation outside the domain of an elementary function (ln of a
// non-positive value, abs at zero, ...). Carries the offending value and,
// when raised by the evaluator, the subexpression text.
struct DomainError : Error {
  DomainError(const std::string& msg, double offending)
      : Error(msg), value(offending) {}
  double value;
};

// Division by a value indistinguishable from zero.
struct SingularPointError : DomainError {
  explicit SingularPointError(const std::string& msg, double offending = 0.0)
      : DomainError(msg, offending) {}
};

// dphi loses rank, or a linear solve meets a vanishing pivot.
struct RankError : Error {
  explicit RankError(const std::string& msg) : Error(msg) {}
};

// X and Y fail to span a 2-plane.
struct DegeneratePlaneError : Error {
  explicit DegeneratePlaneError(const std::string& msg) : Error(msg) {}
};

// Family parameters outside their admissible range.
struct ConstraintError : UsageError {
  explicit ConstraintError(const std::string& msg) : UsageError(msg) {}
};

}  // namespace fbh

#endif
