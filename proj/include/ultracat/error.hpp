#pragma once

#include <json.hpp>
#include <stdexcept>
#include <string>

namespace ultracat {

// Domain-level failure: carries a stable machine-readable kind plus detail
// fields, so the CLI can emit {"error": {...}} and exit 1.
class DomainError : public std::runtime_error {
 public:
  DomainError(std::string kind, nlohmann::json detail = nlohmann::json::object())
      : std::runtime_error(kind + (detail.empty() ? "" : ": " + detail.dump())),
        kind_(std::move(kind)),
        detail_(std::move(detail)) {}

  const std::string& kind() const { return kind_; }
  const nlohmann::json& detail() const { return detail_; }

  nlohmann::json to_json() const {
    nlohmann::json e = detail_;
    e["kind"] = kind_;
    return nlohmann::json{{"error", e}};
  }

 private:
  std::string kind_;
  nlohmann::json detail_;
};

}  // namespace ultracat
