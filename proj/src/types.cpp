#include "touchtell/types.hpp"

#include <cmath>
#include <string>

namespace touchtell {

void validate_recording(const TouchRecording& rec) {
    const auto& frames = rec.frames;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        for (int t = 0; t < kNumTaxels; ++t) {
            if (frames[i].counts[t] > kAdcMax)
                fail(ErrorKind::Range, "count ∉ [0,4095] at frame " + std::to_string(i));
        }
        if (i > 0) {
            if (frames[i].timestamp_ms <= frames[i - 1].timestamp_ms)
                fail(ErrorKind::Validation,
                     "timestamps strictly increasing violated at frame " + std::to_string(i));
            if (frames[i].seq <= frames[i - 1].seq)
                fail(ErrorKind::Validation,
                     "seq strictly increasing violated at frame " + std::to_string(i));
        }
    }
    if (frames.size() >= 2) {
        const double dur = rec.duration_s();
        if (dur < 9.0 || dur > 11.0)
            fail(ErrorKind::Validation, "duration " + std::to_string(dur) + " s outside [9.0, 11.0]");
        const double expected = rec.nominal_rate_hz * dur;
        const double n = static_cast<double>(frames.size());
        if (n < 0.8 * expected || n > 1.2 * expected)
            fail(ErrorKind::Validation, "frame count " + std::to_string(frames.size()) +
                                            " outside [0.8, 1.2] x rate x duration");
    }
}

void validate_clip(const AudioClip& clip) {
    if (clip.sample_rate_hz != kSampleRateHz)
        fail(ErrorKind::Format, "sample rate " + std::to_string(clip.sample_rate_hz) +
                                    " != " + std::to_string(kSampleRateHz));
    const long long n = static_cast<long long>(clip.samples.size());
    if (std::llabs(n - kNominalClipSamples) > kClipSampleTolerance)
        fail(ErrorKind::Validation,
             "sample count " + std::to_string(n) + " outside 441000 ± 1024");
}

FeatureVector fuse_features(const std::array<double, kNumTactileFeatures>& tactile,
                            const std::array<double, kNumAudioFeatures>& audio) {
    FeatureVector out{};
    for (int i = 0; i < kNumTactileFeatures; ++i) {
        if (!std::isfinite(tactile[i])) fail(ErrorKind::Domain, "non-finite tactile feature");
        out[i] = tactile[i];
    }
    for (int i = 0; i < kNumAudioFeatures; ++i) {
        if (!std::isfinite(audio[i])) fail(ErrorKind::Domain, "non-finite audio feature");
        out[kNumTactileFeatures + i] = audio[i];
    }
    return out;
}

std::array<double, kNumTactileFeatures> tactile_block(const FeatureVector& v) {
    std::array<double, kNumTactileFeatures> out{};
    for (int i = 0; i < kNumTactileFeatures; ++i) out[i] = v[i];
    return out;
}

std::array<double, kNumAudioFeatures> audio_block(const FeatureVector& v) {
    std::array<double, kNumAudioFeatures> out{};
    for (int i = 0; i < kNumAudioFeatures; ++i) out[i] = v[kNumTactileFeatures + i];
    return out;
}

}  // namespace touchtell
