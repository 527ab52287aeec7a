#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace zslab {

// Error taxonomy shared by the library and the CLI. kind() feeds the CLI's
// exit-code mapping and the structured error object printed on stderr.
class Error : public std::runtime_error {
public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

private:
  std::string kind_;
};

// Malformed input text (group name, element, sequence literal).
struct ParseError : Error {
  explicit ParseError(const std::string& w) : Error("parse", w) {}
};

// Structurally invalid request (wrong rank, element outside group, ...).
struct DomainError : Error {
  explicit DomainError(const std::string& w) : Error("domain", w) {}
};

// Sequence division t | s requested where t does not divide s.
struct NotDivisibleError : Error {
  explicit NotDivisibleError(const std::string& w) : Error("not-divisible", w) {}
};

// A node or work budget ran out before the computation finished.
struct BudgetExceeded : Error {
  explicit BudgetExceeded(const std::string& w) : Error("budget-exceeded", w) {}
};

// A hard size cap was hit (subsequence-sum length cap, automorphism caps).
struct CapExceeded : Error {
  explicit CapExceeded(const std::string& w) : Error("cap-exceeded", w) {}
};

// A derived quantity would be reported from a sweep that itself failed a
// per-subset budget; the value cannot be certified even as a lower bound.
struct IncompleteResult : Error {
  explicit IncompleteResult(const std::string& w) : Error("incomplete-result", w) {}
};

}  // namespace zslab
