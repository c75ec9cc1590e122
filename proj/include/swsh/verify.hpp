#pragma once

// Batch verification suites behind `swsh verify <suite>`.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace swsh {

struct RunReport {
  std::string command;
  nlohmann::ordered_json parameters = nlohmann::ordered_json::object();
  nlohmann::ordered_json results = nlohmann::ordered_json::array();
  std::optional<double> max_residual;
  std::optional<double> tolerance;
  bool pass = false;

  nlohmann::ordered_json to_json() const;
};

struct VerifyOptions {
  std::optional<int> band_limit;
  std::optional<int> spin_weight;
  std::optional<int> j;
  std::optional<double> tolerance;
  std::uint64_t seed = 0;
};

const std::vector<std::string>& suite_names();
bool is_known_suite(std::string_view name);

/// Runs one suite. Throws Error{DomainError} for an unknown name.
RunReport run_suite(std::string_view name, const VerifyOptions& options);

inline constexpr double kDefectFloor = 0.1;

}  // namespace swsh
