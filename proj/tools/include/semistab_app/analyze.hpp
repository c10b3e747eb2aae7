#pragma once

// Config-driven analysis runs and the scenario preset catalogue.

#include "semistab_app/io.hpp"

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace semistab::app {

inline constexpr const char* kSchemaVersion = "1.0";

struct PresetInfo {
    std::string name;
    std::string backend;
    std::string construction;
    std::string defaults;
};

const std::vector<PresetInfo>& presets();

/// Text table of presets (name, backend, construction, defaults).
std::string list_presets();

/// The full RunConfig for a preset. seed and horizon override the defaults.
Json preset_config(const std::string& name, std::optional<std::uint64_t> seed = {},
                   std::optional<double> horizon = {});

struct AnalysisArtifacts {
    Json report;
    struct SignalFile {
        std::string stem;
        std::string title;
        Signal values;
        Signal running;
    };
    std::vector<SignalFile> signals;
    /// Extra CSV tables: file name and contents.
    std::vector<std::pair<std::string, std::string>> tables;
};

/// Runs every analysis requested by the config. Throws ValidationError on
/// malformed configs and NumericalError on numerical failure.
AnalysisArtifacts analyze(const Json& config);

/// Writes report.json, signals/*.csv and plots/*.gp under out_dir.
void write_artifacts(const AnalysisArtifacts& artifacts, const std::filesystem::path& out_dir);

/// analyze + write_artifacts with exit-code mapping: 0 ok, 2 validation
/// error, 3 numerical failure. Messages go to err.
int run_analyze(const Json& config, const std::filesystem::path& out_dir, std::ostream& out,
                std::ostream& err);

} // namespace semistab::app
