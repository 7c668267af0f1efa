#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cartanlie/linalg.hpp"
#include "cartanlie/structure.hpp"

namespace cartanlie {

using Json = nlohmann::json;

inline constexpr int kReportSchema = 1;
inline constexpr const char* kToolVersion = "0.1.0";

enum class Status { Pass, Fail, Skipped, TheoremViolation };
const char* to_string(Status s) noexcept;

struct Report {
  std::string name;
  Json parameters = Json::object();
  Status status = Status::Pass;
  Json evidence = Json::object();
  std::string message;
  /// Non-gating reports are informative and never fail a run.
  bool gating = true;
  /// Wall clock; printed to stderr, never serialized.
  double seconds = 0;
};

Json to_json(const Report& r);

struct RunConfig {
  std::string command;
  std::optional<char> type;
  std::uint32_t p = 5;
  std::optional<unsigned> m;
  std::optional<std::vector<unsigned>> n;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  unsigned max_ext = kDefaultMaxExt;
  std::size_t dim_cap = kDefaultDimCap;
  std::vector<std::string> suites;
  std::optional<std::string> elem;
};

/// Everything that affects the computation; the output path is left out.
Json to_json(const RunConfig& c);

struct ReportDocument {
  Json config;
  std::vector<Report> reports;

  /// Pass unless a gating report failed or violated a theorem.
  bool passed() const noexcept;
  /// Sorted keys, two-space indent, trailing newline.
  std::string serialize() const;
};

}  // namespace cartanlie
