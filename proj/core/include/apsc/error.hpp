#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace apsc {

/// Evaluation left the domain of a function (log of a non-positive value,
/// inverted element, ...). `where()` names the offending operation.
class DomainError : public std::domain_error {
public:
  DomainError(std::string where, const std::string& what)
      : std::domain_error(where + ": " + what), where_(std::move(where)) {}

  const std::string& where() const noexcept { return where_; }

private:
  std::string where_;
};

/// Parse failure in the energy expression language; `offset()` is the
/// zero-based character position in the source text.
class ParseError : public std::runtime_error {
public:
  ParseError(std::size_t offset, const std::string& what)
      : std::runtime_error("parse error at offset " + std::to_string(offset) + ": " + what),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

private:
  std::size_t offset_;
};

/// A nonlinear solve gave up. Carries the residual norm per iteration.
class SolverError : public std::runtime_error {
public:
  SolverError(const std::string& what, std::vector<double> history)
      : std::runtime_error(what), history_(std::move(history)) {}

  const std::vector<double>& residual_history() const noexcept { return history_; }
  double last_residual() const noexcept { return history_.empty() ? 0.0 : history_.back(); }

private:
  std::vector<double> history_;
};

}  // namespace apsc
