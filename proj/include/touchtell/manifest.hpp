#pragma once

#include <map>
#include <string>
#include <vector>

#include "touchtell/types.hpp"

namespace touchtell {

// manifest.jsonl: one TrialRecord per line with fields exactly
// participant_id, round, task, label, tactile_path, audio_path.
// Study metadata (seed, schema_version) lives in a sidecar
// <manifest>_meta.json so trial lines stay pure records.
void write_manifest(const DatasetManifest& m, const std::string& path);
DatasetManifest read_manifest(const std::string& path);

struct ManifestReport {
    std::vector<std::string> missing_files;
    std::vector<std::string> violations;
    // per task, per label trial counts
    std::map<std::string, std::map<std::string, int>> label_counts;
    int n_participants = 0;

    bool clean() const { return missing_files.empty() && violations.empty(); }
};

// Non-throwing validation: the report carries all findings. Paths are
// resolved relative to base_dir when they are not absolute.
ManifestReport validate_manifest(const DatasetManifest& m, const std::string& base_dir = ".");

std::string meta_path_for(const std::string& manifest_path);

}  // namespace touchtell
