#pragma once

// Bit-stable CSV and JSON outputs. Every value is serialized with 17
// significant decimal digits, which round-trips IEEE doubles exactly;
// identical configurations therefore produce byte-identical CSVs. Wall
// times never enter a CSV, only the manifest.

#include <filesystem>
#include <string>
#include <vector>

#include "bo/experiments.hpp"

namespace bo::io {

inline constexpr int kCsvFormatVersion = 1;
inline constexpr const char* kToolVersion = "bo-waves 0.1.0";

std::string format17(double v);

// experiment records -> "<out>/<name>.csv"; the schema line carries the
// format version
std::filesystem::path write_records_csv(const std::filesystem::path& out_dir,
                                        const ExperimentResult& result);

// two-column field dump (x, u) with '#'-prefixed grid metadata
void export_field(const Field& f, const std::filesystem::path& path);
Field import_field(const std::filesystem::path& path);

// verdict summary; exit-0 contract is "every verdict whose name does not end
// in _supplementary passes"
void write_verdicts(const std::filesystem::path& out_dir,
                    const std::vector<ExperimentResult>& results);
bool all_required_pass(const std::vector<ExperimentResult>& results);

struct ManifestEntry {
  std::string experiment;
  std::string resolved_config;  // flat key=value lines
  double wall_seconds = 0.0;
};

void write_manifest(const std::filesystem::path& out_dir,
                    const std::vector<ExperimentResult>& results,
                    const std::vector<ManifestEntry>& entries,
                    const std::string& tolerances_echo);

}  // namespace bo::io
