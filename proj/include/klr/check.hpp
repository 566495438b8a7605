#pragma once

#include <string>
#include <utility>
#include <vector>

namespace klr {

/// Outcome of one verification on one instance.
struct CheckResult {
  enum class Status { Pass, Fail, Skip };

  std::string id;
  Status status = Status::Pass;
  std::vector<std::pair<std::string, std::string>> witnesses;
  std::vector<std::string> failures;
  std::vector<std::string> notes;

  bool passed() const { return status != Status::Fail; }
  void fail(const std::string& why) {
    status = Status::Fail;
    failures.push_back(why);
  }
  void expect(bool ok, const std::string& why) {
    if (!ok) fail(why);
  }
  void witness(const std::string& key, const std::string& value) { witnesses.emplace_back(key, value); }
};

inline const char* status_name(CheckResult::Status s) {
  switch (s) {
    case CheckResult::Status::Pass:
      return "PASS";
    case CheckResult::Status::Fail:
      return "FAIL";
    case CheckResult::Status::Skip:
      return "SKIP";
  }
  return "?";
}

}  // namespace klr
