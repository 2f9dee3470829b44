#pragma once

#include <algorithm>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lenslab {

/// One violated law together with the identifiers that witness it.
struct Violation {
  std::string law;
  std::vector<std::string> witnesses;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Validators never short-circuit; an empty report means every law holds.
using Report = std::vector<Violation>;

inline bool has_violation(const Report& report, std::string_view law) {
  return std::any_of(report.begin(), report.end(),
                     [&](const Violation& v) { return v.law == law; });
}

inline bool has_violation(const Report& report, std::string_view law,
                          const std::vector<std::string>& witnesses) {
  return std::any_of(report.begin(), report.end(), [&](const Violation& v) {
    return v.law == law && v.witnesses == witnesses;
  });
}

inline std::ostream& operator<<(std::ostream& os, const Violation& v) {
  os << v.law;
  if (!v.witnesses.empty()) {
    os << ":";
    for (const auto& w : v.witnesses) os << " " << w;
  }
  return os;
}

inline std::string to_string(const Report& report) {
  std::ostringstream os;
  for (const auto& v : report) os << v << "\n";
  return os.str();
}

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, Report report)
      : Error(what + "\n" + to_string(report)), report_(std::move(report)) {}
  const Report& report() const noexcept { return report_; }

 private:
  Report report_;
};

class UnknownIdentifier : public Error {
 public:
  explicit UnknownIdentifier(std::string id)
      : Error("unknown identifier '" + id + "'"), id_(std::move(id)) {}
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class BoundaryMismatch : public Error {
 public:
  using Error::Error;
};

class NotAcyclic : public Error {
 public:
  using Error::Error;
};

class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(std::size_t budget)
      : Error("enumeration budget of " + std::to_string(budget) + " exceeded"),
        budget_(budget) {}
  std::size_t budget() const noexcept { return budget_; }

 private:
  std::size_t budget_;
};

/// Raised when an operation's mathematical hypotheses do not hold.
class PreconditionViolated : public Error {
 public:
  explicit PreconditionViolated(std::vector<std::string> failed)
      : Error(message(failed)), failed_(std::move(failed)) {}
  const std::vector<std::string>& failed() const noexcept { return failed_; }

 private:
  static std::string message(const std::vector<std::string>& failed) {
    std::string msg = "precondition violated:";
    for (const auto& f : failed) msg += " " + f;
    return msg;
  }
  std::vector<std::string> failed_;
};

class GenerationExhausted : public Error {
 public:
  using Error::Error;
};

}  // namespace lenslab
