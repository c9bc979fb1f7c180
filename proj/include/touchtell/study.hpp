#pragma once

#include <string>
#include <vector>

#include "touchtell/audio_features.hpp"
#include "touchtell/manifest.hpp"
#include "touchtell/stats.hpp"
#include "touchtell/synth.hpp"
#include "touchtell/tactile_features.hpp"
#include "touchtell/types.hpp"

namespace touchtell {

struct FeatureConfigs {
    TactileFeatureConfig tactile;
    AudioFeatureConfig audio;
};

// Extracts the fused 30-feature vector for one trial.
FeatureVector extract_trial_features(const TouchRecording& rec, const AudioClip& clip,
                                     const FeatureConfigs& cfg);

// Reads every trial named by the manifest and extracts features.
// Deterministic; trials are processed independently (jobs > 1 allowed).
std::vector<FeatureRow> extract_features(const DatasetManifest& manifest,
                                         const std::string& base_dir, const FeatureConfigs& cfg,
                                         int jobs = 1);

// In-memory study: generates every trial of a task and extracts features
// without touching the filesystem. Identical to gen_dataset + extract on
// the same seed because CSV/WAV round-trips are lossless.
std::vector<FeatureRow> run_study_features(const SynthConfig& synth, Task task,
                                           const FeatureConfigs& cfg, int jobs = 1);

// ---- consistency analysis ---------------------------------------------------

struct IccTableRow {
    std::string label;
    IccResult icc;
};

// Z-score the task's feature rows, take PC1 scores, and for each label form
// the rounds x participants matrix (rows = rounds) feeding ICC(C,1).
std::vector<IccTableRow> icc_table(const std::vector<FeatureRow>& rows, Task task);

// ---- variability analysis ---------------------------------------------------

struct PermanovaTable {
    PermanovaResult overall;
    std::vector<std::string> group_labels;
    std::vector<PairwisePermanovaRow> pairwise;
};

PermanovaTable permanova_table(const std::vector<FeatureRow>& rows, Task task, int n_permutations,
                               std::uint64_t seed);

}  // namespace touchtell
