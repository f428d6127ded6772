#include "giry/report.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

namespace giry {

std::string to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::skipped:
      return "skipped";
  }
  return "unknown";
}

std::size_t SuiteReport::count(Status s) const {
  return static_cast<std::size_t>(std::count_if(checks.begin(), checks.end(), [s](const auto& c) { return c.status == s; }));
}

nlohmann::json SuiteReport::to_json() const {
  nlohmann::json out;
  out["suite"] = suite;
  out["counts"] = {{"pass", count(Status::pass)}, {"fail", count(Status::fail)}, {"skipped", count(Status::skipped)}};
  double total = 0;
  out["checks"] = nlohmann::json::array();
  for (const auto& c : checks) {
    nlohmann::json j{{"id", c.id}, {"status", to_string(c.status)}, {"millis", c.millis}, {"cases", c.cases}};
    if (!c.witness.empty()) j["witness"] = c.witness;
    out["checks"].push_back(std::move(j));
    total += c.millis;
  }
  out["millis"] = total;
  return out;
}

std::string SuiteReport::to_text() const {
  std::string out;
  for (const auto& c : checks) {
    out += "[" + to_string(c.status) + "] " + suite + "/" + c.id + " (" + std::to_string(c.cases) + " cases)";
    if (!c.witness.empty()) out += ": " + c.witness;
    out += "\n";
  }
  out += suite + ": " + std::to_string(count(Status::pass)) + " passed, " + std::to_string(failures()) + " failed, " +
         std::to_string(count(Status::skipped)) + " skipped\n";
  return out;
}

CheckOutcome CheckOutcome::skipped(std::string why) {
  CheckOutcome o;
  o.is_skipped = true;
  o.witness = std::move(why);
  return o;
}

SuiteReport run_checks(std::string suite, const std::vector<CheckSpec>& checks) {
  SuiteReport report{std::move(suite), std::vector<CheckResult>(checks.size())};
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < checks.size(); i = next++) {
      CheckResult& r = report.checks[i];
      r.id = checks[i].id;
      const auto start = std::chrono::steady_clock::now();
      try {
        CheckOutcome o = checks[i].body();
        r.cases = o.cases;
        r.status = o.is_skipped ? Status::skipped : (o.passed ? Status::pass : Status::fail);
        r.witness = std::move(o.witness);
        if (r.status == Status::fail && r.witness.empty()) r.witness = "failed without a witness";
      } catch (const std::exception& e) {
        r.status = Status::fail;
        r.witness = std::string("exception: ") + e.what();
      }
      r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const std::size_t n_threads =
      std::max<std::size_t>(1, std::min<std::size_t>(checks.size(), std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

}  // namespace giry
