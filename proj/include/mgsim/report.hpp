#ifndef MGSIM_REPORT_HPP
#define MGSIM_REPORT_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "mgsim/sim.hpp"

namespace mgsim {

// Fully resolved run configuration: simulation parameters plus I/O paths and
// the (scenario, seed, target) grid to run.
struct RunConfig {
    SimConfig sim;
    std::string input_csv;
    std::string out_dir = "out";
    std::vector<ScenarioKind> scenarios{kAllScenarios, kAllScenarios + 5};
    std::vector<std::uint64_t> seeds;                // empty -> {sim.seed}
    std::vector<std::optional<double>> targets;      // empty -> {sim.target}

    void validate() const;  // throws InvalidValue / MissingInputPath
    std::string to_manifest_json() const;
};

// Flat key = value text ('#' comments) or a run_manifest.json. Unrecognised
// keys raise UnknownKey, out-of-range values InvalidValue.
RunConfig parse_config_text(std::istream& in);
RunConfig parse_config_file(const std::filesystem::path& path);
RunConfig parse_manifest_json(const std::string& json_text);

// Writes summary.csv, per_house.csv, timeseries.csv and run_manifest.json for
// one comparison into `dir`. Throws IoFailure.
void write_reports(const std::filesystem::path& dir, const ComparisonTable& table,
                   const RunConfig& config);

// Batch layout: one subdirectory per (seed, target) cell, manifest at the top.
void write_batch_reports(const std::filesystem::path& dir, const BatchReport& report,
                         const RunConfig& config);

}  // namespace mgsim

#endif
