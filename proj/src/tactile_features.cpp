#include "touchtell/tactile_features.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "touchtell/error.hpp"

namespace touchtell {

void TactileFeatureConfig::validate() const {
    if (!(activity_threshold > 0.0 && activity_threshold < 1.0))
        fail(ErrorKind::Config, "activity_threshold ∈ (0,1)");
    if (debounce_gap < 0) fail(ErrorKind::Config, "debounce_gap ≥ 0");
    if (baseline_frames < 1) fail(ErrorKind::Config, "baseline_frames ≥ 1");
}

namespace {

// Pressures are handled as integer numerators in units of 1/(2*4095):
// doubling keeps the baseline median integral, and integer sums make every
// aggregate independent of taxel iteration order.
constexpr double kDenom = 2.0 * kAdcMax;

std::array<std::int32_t, kNumTaxels> baseline_x2(const TouchRecording& rec,
                                                 const TactileFeatureConfig& cfg) {
    const int n = std::min<int>(cfg.baseline_frames, static_cast<int>(rec.frames.size()));
    std::array<std::int32_t, kNumTaxels> base{};
    std::vector<int> vals(n);
    for (int t = 0; t < kNumTaxels; ++t) {
        for (int i = 0; i < n; ++i) vals[i] = rec.frames[i].counts[t];
        std::sort(vals.begin(), vals.end());
        base[t] = (n % 2 == 1) ? 2 * vals[n / 2] : vals[n / 2 - 1] + vals[n / 2];
    }
    return base;
}

std::vector<std::array<std::int32_t, kNumTaxels>> numerators(const TouchRecording& rec,
                                                             const TactileFeatureConfig& cfg) {
    const auto base = baseline_x2(rec, cfg);
    std::vector<std::array<std::int32_t, kNumTaxels>> num(rec.frames.size());
    for (std::size_t i = 0; i < rec.frames.size(); ++i)
        for (int t = 0; t < kNumTaxels; ++t)
            num[i][t] = std::max(0, 2 * rec.frames[i].counts[t] - base[t]);
    return num;
}

}  // namespace

std::vector<std::array<double, kNumTaxels>> normalized_pressure(const TouchRecording& rec,
                                                                const TactileFeatureConfig& cfg) {
    cfg.validate();
    const auto num = numerators(rec, cfg);
    std::vector<std::array<double, kNumTaxels>> out(num.size());
    for (std::size_t i = 0; i < num.size(); ++i)
        for (int t = 0; t < kNumTaxels; ++t) out[i][t] = num[i][t] / kDenom;
    return out;
}

std::vector<TouchEvent> detect_touch_events(const TouchRecording& rec,
                                            const TactileFeatureConfig& cfg) {
    cfg.validate();
    const auto num = numerators(rec, cfg);
    const int n = static_cast<int>(num.size());

    std::vector<bool> active(n, false);
    for (int i = 0; i < n; ++i)
        for (int t = 0; t < kNumTaxels; ++t)
            if (num[i][t] / kDenom > cfg.activity_threshold) {
                active[i] = true;
                break;
            }

    // maximal active runs
    std::vector<TouchEvent> runs;
    int i = 0;
    while (i < n) {
        if (!active[i]) {
            ++i;
            continue;
        }
        int j = i;
        while (j + 1 < n && active[j + 1]) ++j;
        runs.push_back({i, j, 0.0});
        i = j + 1;
    }

    // merge runs separated by short gaps
    std::vector<TouchEvent> merged;
    for (const auto& run : runs) {
        if (!merged.empty() && run.start_frame - merged.back().end_frame - 1 <= cfg.debounce_gap)
            merged.back().end_frame = run.end_frame;
        else
            merged.push_back(run);
    }

    for (auto& e : merged)
        e.duration_s = (rec.frames[e.end_frame].timestamp_ms -
                        rec.frames[e.start_frame].timestamp_ms) / 1000.0;
    return merged;
}

double quantile_type7(std::vector<double> values, double q) {
    if (values.empty()) fail(ErrorKind::Size, "quantile of empty sample");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * q;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

TactileFeatures tactile_features(const TouchRecording& rec, const TactileFeatureConfig& cfg) {
    cfg.validate();
    const int n_frames = static_cast<int>(rec.frames.size());
    if (n_frames < 2)
        fail(ErrorKind::Size, "recording has fewer than 2 frames; derivatives undefined");

    const auto num = numerators(rec, cfg);
    const double duration_s =
        (rec.frames.back().timestamp_ms - rec.frames.front().timestamp_ms) / 1000.0;
    if (duration_s <= 0.0) fail(ErrorKind::Validation, "timestamps strictly increasing violated");
    const double rate_hz = (n_frames - 1) / duration_s;

    TactileFeatures f;

    // pointwise statistics over all (frame, taxel) cells
    std::int64_t sum = 0, sum_sq = 0;
    std::int32_t max_num = 0;
    for (const auto& frame : num)
        for (int t = 0; t < kNumTaxels; ++t) {
            const std::int64_t v = frame[t];
            sum += v;
            sum_sq += v * v;
            max_num = std::max(max_num, frame[t]);
        }
    const double n_cells = static_cast<double>(n_frames) * kNumTaxels;
    const double mean_num = static_cast<double>(sum) / n_cells;
    f.mean_pressure = mean_num / kDenom;
    f.max_pressure = max_num / kDenom;
    const double var_num = static_cast<double>(sum_sq) / n_cells - mean_num * mean_num;
    f.pressure_variance = std::max(0.0, var_num) / (kDenom * kDenom);
    f.pressure_std = std::sqrt(f.pressure_variance);

    // per-taxel temporal derivative magnitude
    std::int64_t grad_sum = 0;
    for (int i = 0; i + 1 < n_frames; ++i)
        for (int t = 0; t < kNumTaxels; ++t)
            grad_sum += std::abs(num[i + 1][t] - num[i][t]);
    f.pressure_gradient =
        static_cast<double>(grad_sum) / (static_cast<double>(n_frames - 1) * kNumTaxels) / kDenom *
        rate_hz;

    // aggregate force per frame (taxel sum)
    std::vector<std::int64_t> force_num(n_frames, 0);
    for (int i = 0; i < n_frames; ++i)
        for (int t = 0; t < kNumTaxels; ++t) force_num[i] += num[i][t];
    std::int64_t force_diff_sum = 0;
    for (int i = 0; i + 1 < n_frames; ++i)
        force_diff_sum += std::llabs(force_num[i + 1] - force_num[i]);
    f.rate_of_pressure_change =
        static_cast<double>(force_diff_sum) / static_cast<double>(n_frames - 1) / kDenom * rate_hz;

    std::vector<double> force(n_frames);
    for (int i = 0; i < n_frames; ++i) force[i] = static_cast<double>(force_num[i]) / kDenom;
    f.median_force = quantile_type7(force, 0.5);
    f.iqr_force = quantile_type7(force, 0.75) - quantile_type7(force, 0.25);

    std::int64_t active_cells = 0;
    for (const auto& frame : num)
        for (int t = 0; t < kNumTaxels; ++t)
            if (frame[t] / kDenom > cfg.activity_threshold) ++active_cells;
    f.contact_area = static_cast<double>(active_cells) / static_cast<double>(n_frames);

    const auto events = detect_touch_events(rec, cfg);
    f.num_touches = static_cast<double>(events.size());
    if (!events.empty()) {
        double total = 0.0, mx = 0.0, mn = events.front().duration_s;
        for (const auto& e : events) {
            total += e.duration_s;
            mx = std::max(mx, e.duration_s);
            mn = std::min(mn, e.duration_s);
        }
        f.max_touch_duration = mx;
        f.min_touch_duration = mn;
        f.mean_touch_duration = total / static_cast<double>(events.size());
    }
    return f;
}

}  // namespace touchtell
