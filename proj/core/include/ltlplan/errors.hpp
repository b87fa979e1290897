#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ltlplan {

/// Syntax error while parsing an LTL or board/task file. Carries the byte
/// offset of the offending token.
class ParseError : public std::runtime_error {
public:
  ParseError(std::string message, std::size_t offset)
      : std::runtime_error(std::move(message)), offset_(offset) {}

  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

/// An identifier in a formula is not part of the declared proposition set.
class UnknownPropositionError : public std::runtime_error {
public:
  UnknownPropositionError(const std::string& name, std::size_t offset)
      : std::runtime_error("unknown proposition: " + name),
        name_(name),
        offset_(offset) {}

  const std::string& name() const { return name_; }
  std::size_t offset() const { return offset_; }

private:
  std::string name_;
  std::size_t offset_;
};

/// The formula is outside the fragment the automaton construction handles.
/// Names the offending subformula.
class UnsupportedFragmentError : public std::runtime_error {
public:
  explicit UnsupportedFragmentError(const std::string& subformula)
      : std::runtime_error("unsupported fragment: " + subformula),
        subformula_(subformula) {}

  const std::string& subformula() const { return subformula_; }

private:
  std::string subformula_;
};

/// A run edge has no satisfying assignment in the environment universe; the
/// run cannot be taken and must be discarded.
class InfeasibleRunError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// No feasible accepting run exists from the current state.
class UnsatisfiableTaskError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (board layout, CLI arguments, task files).
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace ltlplan
