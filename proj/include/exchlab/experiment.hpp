#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace exchlab {

using Json = nlohmann::json;

inline constexpr std::size_t kDefaultReplicas = 1000;

/// Names accepted in the "scenario" field.
const std::vector<std::string>& scenario_names();

struct ExperimentConfig {
    std::string scenario;
    std::uint64_t seed = 0;
    std::size_t replicas = kDefaultReplicas;
    /// Worker threads for replica loops; results do not depend on it.
    std::size_t threads = 1;
    /// Scenario parameters with defaults filled in.
    Json params = Json::object();
    std::string out_path;
    std::string format = "csv";

    /// Everything that determines the report, echoed into its header.
    Json echo() const;
};

/// Validates and fills defaults. Errors are ConfigError naming the field
/// path, e.g. "params.models[0].r". `seed_override` wins over the file.
ExperimentConfig parse_config(const Json& doc, std::optional<std::uint64_t> seed_override = std::nullopt);
ExperimentConfig load_config(const std::filesystem::path& path,
                             std::optional<std::uint64_t> seed_override = std::nullopt);

struct ReportCell {
    std::vector<std::pair<std::string, std::string>> keys;
    std::string metric;
    double estimate = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t replicas = 0;
    /// Set for cells that carry an assertion.
    std::optional<bool> pass;
};

struct Report {
    std::string scenario;
    Json config; ///< null for ad-hoc reports
    std::vector<ReportCell> cells;

    bool all_pass() const;
    std::vector<const ReportCell*> failures() const;
};

Report run_scenario(const ExperimentConfig& config);

enum class ReportFormat { csv, jsonl };

ReportFormat parse_format(const std::string& name);

/// CSV columns: scenario,cell,metric,estimate,ci_lo,ci_hi,replicas,pass.
/// "cell" joins keys as k1=v1;k2=v2. The config echo is written as a
/// leading "# config: {...}" comment. Confidence intervals use the normal
/// approximation with z = 2.576.
void emit_report(const Report& report, ReportFormat format, std::ostream& os);
/// Throws IoError when the file cannot be written.
void emit_report(const Report& report, ReportFormat format, const std::filesystem::path& path);

} // namespace exchlab
