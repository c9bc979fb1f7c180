#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "touchtell/error.hpp"
#include "touchtell/labels.hpp"

namespace touchtell {

inline constexpr int kGridRows = 5;
inline constexpr int kGridCols = 5;
inline constexpr int kNumTaxels = kGridRows * kGridCols;
inline constexpr int kAdcMax = 4095;

inline constexpr int kSampleRateHz = 44100;
inline constexpr double kNominalFrameRateHz = 45.0;
inline constexpr double kNominalTrialSeconds = 10.0;
inline constexpr int kNominalClipSamples = 441000;
inline constexpr int kClipSampleTolerance = 1024;  // one capture buffer

// One scan of the 5x5 grid. Counts are raw ADC values, row-major.
struct SensorFrame {
    std::uint32_t seq = 0;
    std::uint32_t timestamp_ms = 0;
    std::array<std::uint16_t, kNumTaxels> counts{};
};

struct TouchRecording {
    std::vector<SensorFrame> frames;
    double nominal_rate_hz = kNominalFrameRateHz;

    double duration_s() const {
        if (frames.size() < 2) return 0.0;
        return (frames.back().timestamp_ms - frames.front().timestamp_ms) / 1000.0;
    }
};

// Validates the TouchRecording invariants; throws on the first violation.
void validate_recording(const TouchRecording& rec);

struct AudioClip {
    std::vector<std::int16_t> samples;
    int sample_rate_hz = kSampleRateHz;
};

void validate_clip(const AudioClip& clip);

struct TrialRecord {
    std::string participant_id;
    int round = 0;  // 1..3
    Task task = Task::Emotion;
    std::string label;
    std::string tactile_path;
    std::string audio_path;
};

struct DatasetManifest {
    std::vector<TrialRecord> trials;
    std::uint64_t seed = 0;
    int schema_version = 1;
};

// Frozen feature-vector contract: 13 tactile values then 17 audio values.
inline constexpr int kNumTactileFeatures = 13;
inline constexpr int kNumAudioFeatures = 17;
inline constexpr int kNumFeatures = kNumTactileFeatures + kNumAudioFeatures;

inline constexpr std::array<const char*, kNumFeatures> kFeatureNames = {
    "mean_pressure",
    "max_pressure",
    "pressure_variance",
    "pressure_gradient",
    "median_force",
    "iqr_force",
    "contact_area",
    "rate_of_pressure_change",
    "pressure_std",
    "num_touches",
    "max_touch_duration",
    "min_touch_duration",
    "mean_touch_duration",
    "mfcc_1",
    "mfcc_2",
    "mfcc_3",
    "mfcc_4",
    "mfcc_5",
    "mfcc_6",
    "mfcc_7",
    "mfcc_8",
    "mfcc_9",
    "mfcc_10",
    "mfcc_11",
    "mfcc_12",
    "mfcc_13",
    "spectral_centroid",
    "spectral_bandwidth",
    "zero_crossing_rate",
    "rmse",
};

using FeatureVector = std::array<double, kNumFeatures>;

// Fuses the two per-modality blocks in the frozen order.
FeatureVector fuse_features(const std::array<double, kNumTactileFeatures>& tactile,
                            const std::array<double, kNumAudioFeatures>& audio);

// Inverse projections of fuse_features.
std::array<double, kNumTactileFeatures> tactile_block(const FeatureVector& v);
std::array<double, kNumAudioFeatures> audio_block(const FeatureVector& v);

// One extracted trial row as written/read by the feature table CSV.
struct FeatureRow {
    std::string participant_id;
    int round = 0;
    Task task = Task::Emotion;
    std::string label;
    FeatureVector values{};
};

}  // namespace touchtell
