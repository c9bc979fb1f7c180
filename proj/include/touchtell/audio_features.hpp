#pragma once

#include <array>
#include <vector>

#include "touchtell/types.hpp"

namespace touchtell {

struct AudioFeatureConfig {
    int frame_size = 2048;  // power of two
    int hop = 512;
    int n_mel_filters = 26;
    int n_mfcc = 13;
    // Window: symmetric Hann, w[n] = 0.5*(1 - cos(2*pi*n/(N-1))).
    // Mel range: 0 Hz to Nyquist. Aggregation: arithmetic mean over frames.

    void validate() const;
};

struct AudioFeatures {
    std::array<double, 13> mfcc{};      // coefficient 0 reported as mfcc_1
    double spectral_centroid = 0.0;     // Hz
    double spectral_bandwidth = 0.0;    // Hz
    double zero_crossing_rate = 0.0;    // sign changes per sample, [0,1]
    double rmse = 0.0;                  // on [-1,1]-normalized samples

    std::array<double, kNumAudioFeatures> to_array() const {
        std::array<double, kNumAudioFeatures> out{};
        for (int i = 0; i < 13; ++i) out[i] = mfcc[i];
        out[13] = spectral_centroid;
        out[14] = spectral_bandwidth;
        out[15] = zero_crossing_rate;
        out[16] = rmse;
        return out;
    }
};

// Hann-windowed magnitude spectra (bins 0..N/2), one row per frame; frame i
// covers samples [i*hop, i*hop + frame_size). No padding or centering, so
// frame count = 1 + floor((N - frame_size)/hop).
std::vector<std::vector<double>> stft_frames(const std::vector<double>& samples,
                                             const AudioFeatureConfig& cfg);

// Feature definitions (per frame, then averaged over frames):
//   centroid  = sum(f*|X|) / sum(|X|), 0 for an all-zero frame
//   bandwidth = sqrt(sum((f-centroid)^2*|X|) / sum(|X|))
//   zcr       = sign-change count of the raw frame / (frame_size - 1)
//   rmse      = sqrt(mean(x^2)) of the raw frame
//   mfcc      = orthonormal DCT-II of log mel-filter energies (power
//               spectrum, triangular filters, natural log, floor 1e-10)
AudioFeatures audio_features(const std::vector<double>& samples, int sample_rate_hz,
                             const AudioFeatureConfig& cfg);
AudioFeatures audio_features(const AudioClip& clip, const AudioFeatureConfig& cfg);

// In-place iterative radix-2 FFT helpers (shared with the synth module).
void fft_magnitudes(const std::vector<double>& frame, std::vector<double>& mags_out);

}  // namespace touchtell
