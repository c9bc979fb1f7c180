#pragma once

#include <array>
#include <vector>

#include "touchtell/types.hpp"

namespace touchtell {

struct TactileFeatureConfig {
    // A taxel is active when its normalized pressure exceeds this.
    double activity_threshold = 0.05;
    // Inactive gaps of at most this many frames are merged into one event.
    int debounce_gap = 2;
    // Baseline frames: per-taxel median of the first baseline_frames frames
    // is subtracted before clamping at zero.
    int baseline_frames = 5;

    void validate() const;
};

struct TouchEvent {
    int start_frame = 0;
    int end_frame = 0;  // inclusive
    double duration_s = 0.0;
};

struct TactileFeatures {
    double mean_pressure = 0.0;
    double max_pressure = 0.0;
    double pressure_variance = 0.0;
    double pressure_gradient = 0.0;
    double median_force = 0.0;
    double iqr_force = 0.0;
    double contact_area = 0.0;
    double rate_of_pressure_change = 0.0;
    double pressure_std = 0.0;
    double num_touches = 0.0;
    double max_touch_duration = 0.0;
    double min_touch_duration = 0.0;
    double mean_touch_duration = 0.0;

    std::array<double, kNumTactileFeatures> to_array() const {
        return {mean_pressure,   max_pressure,       pressure_variance,
                pressure_gradient, median_force,     iqr_force,
                contact_area,    rate_of_pressure_change, pressure_std,
                num_touches,     max_touch_duration, min_touch_duration,
                mean_touch_duration};
    }
};

// Normalized pressure movie: count/4095 minus the per-taxel baseline,
// clamped at 0. Exposed for reuse by tests and the audio coupling checks.
std::vector<std::array<double, kNumTaxels>> normalized_pressure(const TouchRecording& rec,
                                                                const TactileFeatureConfig& cfg);

// A frame is active when any normalized taxel exceeds the threshold;
// maximal active runs are merged across gaps of at most debounce_gap frames.
std::vector<TouchEvent> detect_touch_events(const TouchRecording& rec,
                                            const TactileFeatureConfig& cfg);

TactileFeatures tactile_features(const TouchRecording& rec, const TactileFeatureConfig& cfg);

// Linear-interpolation quantile (type 7) of an unsorted sample.
double quantile_type7(std::vector<double> values, double q);

}  // namespace touchtell
