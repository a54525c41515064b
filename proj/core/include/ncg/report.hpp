#pragma once

#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ncg {

enum class CheckStatus { pass, fail, skip, xfail_pass };

const char* check_status_name(CheckStatus s);

struct CheckRecord {
  std::string id;
  std::string law;
  CheckStatus status = CheckStatus::pass;
  std::string counterexample;  // nonempty iff status == fail
  double elapsed_ms = 0;
};

struct Report {
  std::string model;
  std::map<std::string, std::string> parameters;
  int cutoff = 0;
  std::string engine_version;
  std::vector<CheckRecord> checks;

  bool ok() const {
    for (const auto& c : checks)
      if (c.status == CheckStatus::fail) return false;
    return true;
  }
  void append(const Report& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
  }
  std::string text() const;
};

// Runs one named check; the callable returns a counterexample description on
// failure and nothing on success.
class CheckRunner {
 public:
  explicit CheckRunner(Report& report) : report_(report) {}

  void run(const std::string& id, const std::string& law,
           const std::function<std::optional<std::string>()>& fn);
  // The identity is expected to fail (a recorded negative result); the check
  // succeeds exactly when a counterexample shows up.
  void expect_fail(const std::string& id, const std::string& law,
                   const std::function<std::optional<std::string>()>& fn);
  void skip(const std::string& id, const std::string& law, const std::string& why);

 private:
  Report& report_;
};

}  // namespace ncg
