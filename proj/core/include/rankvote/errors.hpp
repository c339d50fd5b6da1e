#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankvote {

/// Ballot-file syntax or content error. `line()` is 1-based; 0 when the error
/// is not tied to a particular line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A profile or transform argument is malformed (unknown candidate, bad
/// permutation, id collision, ...).
class ProfileError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The rule reached a decision that depends on breaking a tie.
class TieError : public std::runtime_error {
 public:
  TieError(std::string context, std::vector<std::string> tied, std::optional<std::size_t> round = {})
      : std::runtime_error(format(context, tied, round)),
        context_(std::move(context)),
        tied_(std::move(tied)),
        round_(round) {}

  const std::string& context() const noexcept { return context_; }
  const std::vector<std::string>& tied() const noexcept { return tied_; }
  std::optional<std::size_t> round() const noexcept { return round_; }

 private:
  static std::string format(const std::string& context, const std::vector<std::string>& tied,
                            std::optional<std::size_t> round) {
    std::string msg = "tie in " + context;
    if (round) msg += " at round " + std::to_string(*round);
    msg += ":";
    for (const auto& t : tied) msg += " " + t;
    return msg;
  }

  std::string context_;
  std::vector<std::string> tied_;
  std::optional<std::size_t> round_;
};

/// A state the algorithms guarantee cannot occur was reached.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// No profile realizes the requested pairwise template.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rankvote
