#include "ncg/report.hpp"

#include <sstream>

namespace ncg {

const char* check_status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::skip: return "skip";
    case CheckStatus::xfail_pass: return "xfail-pass";
  }
  return "?";
}

namespace {
double ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}
}  // namespace

void CheckRunner::run(const std::string& id, const std::string& law,
                      const std::function<std::optional<std::string>()>& fn) {
  CheckRecord rec;
  rec.id = id;
  rec.law = law;
  auto t0 = std::chrono::steady_clock::now();
  auto counterexample = fn();
  rec.elapsed_ms = ms_since(t0);
  if (counterexample) {
    rec.status = CheckStatus::fail;
    rec.counterexample = *counterexample;
  }
  report_.checks.push_back(std::move(rec));
}

void CheckRunner::expect_fail(const std::string& id, const std::string& law,
                              const std::function<std::optional<std::string>()>& fn) {
  CheckRecord rec;
  rec.id = id;
  rec.law = law + " [expected failure]";
  auto t0 = std::chrono::steady_clock::now();
  auto counterexample = fn();
  rec.elapsed_ms = ms_since(t0);
  if (counterexample) {
    rec.status = CheckStatus::xfail_pass;
    rec.counterexample = *counterexample;
  } else {
    rec.status = CheckStatus::fail;
    rec.counterexample = "expected failure did not occur";
  }
  report_.checks.push_back(std::move(rec));
}

void CheckRunner::skip(const std::string& id, const std::string& law, const std::string& why) {
  CheckRecord rec;
  rec.id = id;
  rec.law = law;
  rec.status = CheckStatus::skip;
  rec.counterexample = why;
  report_.checks.push_back(std::move(rec));
}

std::string Report::text() const {
  std::ostringstream os;
  if (!model.empty()) {
    os << "model: " << model;
    if (cutoff) os << "  (cutoff " << cutoff << ")";
    os << "\n";
    for (const auto& [k, v] : parameters) os << "  " << k << " = " << v << "\n";
  }
  for (const auto& c : checks) {
    os << "  [" << check_status_name(c.status) << "] " << c.id << ": " << c.law;
    if (c.status == CheckStatus::fail || c.status == CheckStatus::xfail_pass ||
        c.status == CheckStatus::skip) {
      if (!c.counterexample.empty()) os << "\n      " << c.counterexample;
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace ncg
