#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "symdyn/transition_matrix.hpp"

namespace symdyn {

inline constexpr const char* kSchemaVersion = "1.0";

struct AnalysisOptions {
  int depth = 12;
  int n_max = 12;
  double tol = 1e-9;
  std::size_t enumeration_cap = 1'000'000;
  std::vector<std::string> emit_csv;  // "diameters", "entropy"
  std::optional<std::string> output_path;
  int preimage_samples = 0;
  std::uint64_t seed = 0;
};

/// Parsed job description. The raw document is kept for the report echo.
struct AnalysisConfig {
  nlohmann::json map;                      // {"builtin": ..} or {"piecewise_linear": ..}
  nlohmann::json partition = "canonical";  // "canonical" or [[a, b], ...]
  nlohmann::json matrix = "infer";         // "infer" or [[0/1 ...], ...]
  AnalysisOptions options;
  nlohmann::json raw;
};

/// Throws Error(ConfigParse) with the offending field in the message.
AnalysisConfig parse_config(const nlohmann::json& doc);
AnalysisConfig load_config(const std::string& path);

struct AnalysisResult {
  nlohmann::json report;
  std::map<std::string, std::string> csv;  // series name -> CSV text
  bool ok() const { return report.at("errors").empty(); }
};

/// Full pipeline: build, infer or validate the matrix, verify, singleton
/// evidence, cylinder entropy estimates, verdicts. Module errors are
/// recorded in report["errors"] rather than thrown.
AnalysisResult run_analysis(const AnalysisConfig& config);

/// Cylinder entropy estimates only.
AnalysisResult run_entropy(const AnalysisConfig& config);

/// Spectral and graph facts for a bare matrix; word counts up to n_words.
nlohmann::json matrix_report(const TransitionMatrix& a, int n_words = 10);

/// The Kasner numbers: pipeline verdicts, derivative bounds, preimage counts
/// and a scrambled-pair witness.
nlohmann::json kasner_report(int depth = 12, int horizon = 200, int samples = 100, std::uint64_t seed = 0);

/// Writes the report (pretty, trailing newline) and any CSV series next to it.
void write_outputs(const AnalysisResult& result, const std::string& path);

std::string version_string();

}  // namespace symdyn
