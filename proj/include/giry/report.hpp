#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

namespace giry {

enum class Status { pass, fail, skipped };

std::string to_string(Status s);

struct CheckResult {
  std::string id;
  Status status = Status::pass;
  std::string witness;  // always set on failure
  double millis = 0;
  std::size_t cases = 0;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;

  std::size_t count(Status s) const;
  std::size_t failures() const { return count(Status::fail); }

  /// {suite, counts: {pass, fail, skipped}, millis, checks: [{id, status, witness?, millis, cases}]}
  nlohmann::json to_json() const;
  /// One line per check.
  std::string to_text() const;
};

/// The outcome of one check body: the number of cases examined, and the
/// first failure (empty witness means pass).
struct CheckOutcome {
  std::size_t cases = 0;
  bool passed = true;
  std::string witness;

  static CheckOutcome skipped(std::string why);
  bool is_skipped = false;

  /// Records a failure unless one is already recorded.
  void fail(std::string w) {
    if (passed) {
      passed = false;
      witness = std::move(w);
    }
  }
};

struct CheckSpec {
  std::string id;
  std::function<CheckOutcome()> body;
};

/// Runs every check on its own thread (bounded by the hardware concurrency),
/// timing each one. Exceptions become failures with the message as witness.
/// Results keep the order of `checks`.
SuiteReport run_checks(std::string suite, const std::vector<CheckSpec>& checks);

}  // namespace giry
