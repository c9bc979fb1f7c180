#pragma once

// Independent reference extractor for the audio feature definitions.
// Spectra come from a naive O(N^2) DFT and every downstream formula is a
// direct transcription, sharing no code with the library extractor.

#include <array>
#include <cmath>
#include <vector>

namespace oracle {

struct AudioRef {
    std::array<double, 13> mfcc{};
    double centroid = 0.0;
    double bandwidth = 0.0;
    double zcr = 0.0;
    double rmse = 0.0;
};

inline std::vector<double> dft_magnitudes(const std::vector<double>& frame) {
    const std::size_t n = frame.size();
    std::vector<double> mags(n / 2 + 1);
    for (std::size_t k = 0; k <= n / 2; ++k) {
        double re = 0.0, im = 0.0;
        for (std::size_t t = 0; t < n; ++t) {
            const double ang = -2.0 * M_PI * static_cast<double>(k) * static_cast<double>(t) /
                               static_cast<double>(n);
            re += frame[t] * std::cos(ang);
            im += frame[t] * std::sin(ang);
        }
        mags[k] = std::hypot(re, im);
    }
    return mags;
}

inline AudioRef audio_features_reference(const std::vector<double>& samples, int sample_rate,
                                         int frame_size, int hop, int n_mel, int n_mfcc) {
    const int n = static_cast<int>(samples.size());
    const int n_frames = 1 + (n - frame_size) / hop;
    const int n_bins = frame_size / 2 + 1;

    std::vector<double> window(frame_size);
    for (int i = 0; i < frame_size; ++i)
        window[i] = 0.5 * (1.0 - std::cos(2.0 * M_PI * i / (frame_size - 1)));

    // mel filterbank: peak-1 triangles over [0, Nyquist], HTK mel scale
    auto mel = [](double f) { return 2595.0 * std::log10(1.0 + f / 700.0); };
    auto imel = [](double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); };
    const double mel_top = mel(sample_rate / 2.0);
    std::vector<double> edge(n_mel + 2);
    for (int i = 0; i < n_mel + 2; ++i) edge[i] = imel(mel_top * i / (n_mel + 1));

    AudioRef acc;
    std::vector<double> mfcc_acc(n_mfcc, 0.0);
    for (int fi = 0; fi < n_frames; ++fi) {
        std::vector<double> frame(frame_size);
        for (int i = 0; i < frame_size; ++i) frame[i] = samples[fi * hop + i] * window[i];
        const std::vector<double> mag = dft_magnitudes(frame);

        double msum = 0.0, wsum = 0.0;
        for (int b = 0; b < n_bins; ++b) {
            const double f = static_cast<double>(b) * sample_rate / frame_size;
            msum += mag[b];
            wsum += f * mag[b];
        }
        if (msum > 0.0) {
            const double c = wsum / msum;
            acc.centroid += c;
            double spread = 0.0;
            for (int b = 0; b < n_bins; ++b) {
                const double f = static_cast<double>(b) * sample_rate / frame_size;
                spread += (f - c) * (f - c) * mag[b];
            }
            acc.bandwidth += std::sqrt(spread / msum);
        }

        int crossings = 0;
        double energy = 0.0;
        for (int i = 0; i < frame_size; ++i) {
            const double x = samples[fi * hop + i];
            energy += x * x;
            if (i > 0 && ((samples[fi * hop + i - 1] >= 0.0) != (x >= 0.0))) ++crossings;
        }
        acc.zcr += static_cast<double>(crossings) / (frame_size - 1);
        acc.rmse += std::sqrt(energy / frame_size);

        std::vector<double> log_e(n_mel);
        for (int k = 0; k < n_mel; ++k) {
            double e = 0.0;
            for (int b = 0; b < n_bins; ++b) {
                const double f = static_cast<double>(b) * sample_rate / frame_size;
                double w = 0.0;
                if (f > edge[k] && f < edge[k + 2])
                    w = (f <= edge[k + 1]) ? (f - edge[k]) / (edge[k + 1] - edge[k])
                                           : (edge[k + 2] - f) / (edge[k + 2] - edge[k + 1]);
                e += w * mag[b] * mag[b];
            }
            log_e[k] = std::log(std::max(e, 1e-10));
        }
        for (int j = 0; j < n_mfcc; ++j) {
            double c = 0.0;
            for (int k = 0; k < n_mel; ++k)
                c += log_e[k] * std::cos(M_PI * j * (2.0 * k + 1.0) / (2.0 * n_mel));
            c *= (j == 0) ? std::sqrt(1.0 / n_mel) : std::sqrt(2.0 / n_mel);
            mfcc_acc[j] += c;
        }
    }

    for (int j = 0; j < n_mfcc && j < 13; ++j) acc.mfcc[j] = mfcc_acc[j] / n_frames;
    acc.centroid /= n_frames;
    acc.bandwidth /= n_frames;
    acc.zcr /= n_frames;
    acc.rmse /= n_frames;
    return acc;
}

}  // namespace oracle
