#include "touchtell/audio_features.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "touchtell/error.hpp"

namespace touchtell {

void AudioFeatureConfig::validate() const {
    if (frame_size < 2 || (frame_size & (frame_size - 1)) != 0)
        fail(ErrorKind::Config, "frame_size must be a power of two");
    if (hop < 1 || hop > frame_size) fail(ErrorKind::Config, "require 1 ≤ hop ≤ frame_size");
    if (n_mfcc < 1 || n_mfcc > n_mel_filters)
        fail(ErrorKind::Config, "require 1 ≤ n_mfcc ≤ n_mel_filters");
}

namespace {

void fft_inplace(std::vector<std::complex<double>>& a) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
        const std::complex<double> wlen(std::cos(ang), std::sin(ang));
        for (std::size_t i = 0; i < n; i += len) {
            std::complex<double> w(1.0, 0.0);
            for (std::size_t k = 0; k < len / 2; ++k) {
                const std::complex<double> u = a[i + k];
                const std::complex<double> v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
                w *= wlen;
            }
        }
    }
}

double hz_to_mel(double f) { return 2595.0 * std::log10(1.0 + f / 700.0); }
double mel_to_hz(double m) { return 700.0 * (std::pow(10.0, m / 2595.0) - 1.0); }

// Triangular filterbank (peak 1) over [0, Nyquist] on the mel scale,
// evaluated at the FFT bin centers.
std::vector<std::vector<double>> mel_filterbank(int n_filters, int n_bins, int frame_size,
                                                int sample_rate_hz) {
    const double nyquist = sample_rate_hz / 2.0;
    const double mel_hi = hz_to_mel(nyquist);
    std::vector<double> edges(n_filters + 2);
    for (int i = 0; i < n_filters + 2; ++i)
        edges[i] = mel_to_hz(mel_hi * static_cast<double>(i) / (n_filters + 1));

    std::vector<std::vector<double>> fb(n_filters, std::vector<double>(n_bins, 0.0));
    for (int k = 0; k < n_filters; ++k) {
        const double lo = edges[k], mid = edges[k + 1], hi = edges[k + 2];
        for (int b = 0; b < n_bins; ++b) {
            const double f = static_cast<double>(b) * sample_rate_hz / frame_size;
            if (f <= lo || f >= hi) continue;
            fb[k][b] = (f <= mid) ? (f - lo) / (mid - lo) : (hi - f) / (hi - mid);
        }
    }
    return fb;
}

}  // namespace

void fft_magnitudes(const std::vector<double>& frame, std::vector<double>& mags_out) {
    const std::size_t n = frame.size();
    std::vector<std::complex<double>> buf(n);
    for (std::size_t i = 0; i < n; ++i) buf[i] = frame[i];
    fft_inplace(buf);
    mags_out.resize(n / 2 + 1);
    for (std::size_t b = 0; b <= n / 2; ++b) mags_out[b] = std::abs(buf[b]);
}

std::vector<std::vector<double>> stft_frames(const std::vector<double>& samples,
                                             const AudioFeatureConfig& cfg) {
    cfg.validate();
    const int n = static_cast<int>(samples.size());
    if (n < cfg.frame_size)
        fail(ErrorKind::Size, "clip shorter than one frame (" + std::to_string(n) + " < " +
                                  std::to_string(cfg.frame_size) + ")");
    const int n_frames = 1 + (n - cfg.frame_size) / cfg.hop;

    std::vector<double> window(cfg.frame_size);
    for (int i = 0; i < cfg.frame_size; ++i)
        window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (cfg.frame_size - 1)));

    std::vector<std::vector<double>> out(n_frames);
    std::vector<std::complex<double>> buf(cfg.frame_size);
    for (int fi = 0; fi < n_frames; ++fi) {
        const int off = fi * cfg.hop;
        for (int i = 0; i < cfg.frame_size; ++i) buf[i] = samples[off + i] * window[i];
        fft_inplace(buf);
        out[fi].resize(cfg.frame_size / 2 + 1);
        for (int b = 0; b <= cfg.frame_size / 2; ++b) out[fi][b] = std::abs(buf[b]);
    }
    return out;
}

AudioFeatures audio_features(const std::vector<double>& samples, int sample_rate_hz,
                             const AudioFeatureConfig& cfg) {
    cfg.validate();
    const int n = static_cast<int>(samples.size());
    if (n < cfg.frame_size)
        fail(ErrorKind::Size, "clip shorter than one frame (" + std::to_string(n) + " < " +
                                  std::to_string(cfg.frame_size) + ")");
    const int n_frames = 1 + (n - cfg.frame_size) / cfg.hop;
    const int n_bins = cfg.frame_size / 2 + 1;
    const auto fb = mel_filterbank(cfg.n_mel_filters, n_bins, cfg.frame_size, sample_rate_hz);

    // sparse filter ranges
    std::vector<int> fb_begin(cfg.n_mel_filters, 0), fb_end(cfg.n_mel_filters, 0);
    for (int k = 0; k < cfg.n_mel_filters; ++k) {
        int b0 = 0;
        while (b0 < n_bins && fb[k][b0] == 0.0) ++b0;
        int b1 = n_bins;
        while (b1 > b0 && fb[k][b1 - 1] == 0.0) --b1;
        fb_begin[k] = b0;
        fb_end[k] = b1;
    }

    // orthonormal DCT-II table
    std::vector<double> dct(static_cast<std::size_t>(cfg.n_mfcc) * cfg.n_mel_filters);
    for (int j = 0; j < cfg.n_mfcc; ++j) {
        const double scale =
            (j == 0) ? std::sqrt(1.0 / cfg.n_mel_filters) : std::sqrt(2.0 / cfg.n_mel_filters);
        for (int k = 0; k < cfg.n_mel_filters; ++k)
            dct[static_cast<std::size_t>(j) * cfg.n_mel_filters + k] =
                scale *
                std::cos(std::numbers::pi * j * (2.0 * k + 1.0) / (2.0 * cfg.n_mel_filters));
    }

    std::vector<double> window(cfg.frame_size);
    for (int i = 0; i < cfg.frame_size; ++i)
        window[i] = 0.5 * (1.0 - std::cos(2.0 * std::numbers::pi * i / (cfg.frame_size - 1)));
    std::vector<double> bin_hz(n_bins);
    for (int b = 0; b < n_bins; ++b)
        bin_hz[b] = static_cast<double>(b) * sample_rate_hz / cfg.frame_size;

    AudioFeatures acc;
    std::vector<double> mfcc_sum(cfg.n_mfcc, 0.0);
    std::vector<double> log_energy(cfg.n_mel_filters);

    auto accumulate_frame = [&](int fi, const std::vector<double>& mag) {
        double mag_sum = 0.0, weighted = 0.0;
        for (int b = 0; b < n_bins; ++b) {
            mag_sum += mag[b];
            weighted += bin_hz[b] * mag[b];
        }
        double centroid = 0.0, bandwidth = 0.0;
        if (mag_sum > 0.0) {
            centroid = weighted / mag_sum;
            double spread = 0.0;
            for (int b = 0; b < n_bins; ++b)
                spread += (bin_hz[b] - centroid) * (bin_hz[b] - centroid) * mag[b];
            bandwidth = std::sqrt(spread / mag_sum);
        }
        acc.spectral_centroid += centroid;
        acc.spectral_bandwidth += bandwidth;

        const int off = fi * cfg.hop;
        int crossings = 0;
        double energy = 0.0;
        for (int i = 0; i < cfg.frame_size; ++i) {
            const double x = samples[off + i];
            energy += x * x;
            if (i > 0 && ((samples[off + i - 1] >= 0.0) != (x >= 0.0))) ++crossings;
        }
        acc.zero_crossing_rate += static_cast<double>(crossings) / (cfg.frame_size - 1);
        acc.rmse += std::sqrt(energy / cfg.frame_size);

        for (int k = 0; k < cfg.n_mel_filters; ++k) {
            double e = 0.0;
            for (int b = fb_begin[k]; b < fb_end[k]; ++b) e += fb[k][b] * mag[b] * mag[b];
            log_energy[k] = std::log(std::max(e, 1e-10));
        }
        for (int j = 0; j < cfg.n_mfcc; ++j) {
            double c = 0.0;
            const double* row = &dct[static_cast<std::size_t>(j) * cfg.n_mel_filters];
            for (int k = 0; k < cfg.n_mel_filters; ++k) c += log_energy[k] * row[k];
            mfcc_sum[j] += c;
        }
    };

    // two real frames share one complex FFT
    const int fsz = cfg.frame_size;
    std::vector<std::complex<double>> buf(fsz);
    std::vector<double> mag_a(n_bins), mag_b(n_bins);
    for (int fi = 0; fi < n_frames; fi += 2) {
        const bool pair = (fi + 1 < n_frames);
        const int off_a = fi * cfg.hop;
        const int off_b = pair ? (fi + 1) * cfg.hop : 0;
        for (int i = 0; i < fsz; ++i)
            buf[i] = {samples[off_a + i] * window[i],
                      pair ? samples[off_b + i] * window[i] : 0.0};
        fft_inplace(buf);
        mag_a[0] = std::abs(buf[0].real());
        mag_b[0] = std::abs(buf[0].imag());
        for (int b = 1; b < n_bins; ++b) {
            const std::complex<double> zk = buf[b];
            const std::complex<double> znk = std::conj(buf[fsz - b]);
            mag_a[b] = 0.5 * std::abs(zk + znk);
            mag_b[b] = 0.5 * std::abs(zk - znk);
        }
        accumulate_frame(fi, mag_a);
        if (pair) accumulate_frame(fi + 1, mag_b);
    }

    AudioFeatures out;
    for (int j = 0; j < cfg.n_mfcc && j < 13; ++j) out.mfcc[j] = mfcc_sum[j] / n_frames;
    out.spectral_centroid = acc.spectral_centroid / n_frames;
    out.spectral_bandwidth = acc.spectral_bandwidth / n_frames;
    out.zero_crossing_rate = acc.zero_crossing_rate / n_frames;
    out.rmse = acc.rmse / n_frames;
    return out;
}

AudioFeatures audio_features(const AudioClip& clip, const AudioFeatureConfig& cfg) {
    std::vector<double> samples(clip.samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) samples[i] = clip.samples[i] / 32768.0;
    return audio_features(samples, clip.sample_rate_hz, cfg);
}

}  // namespace touchtell
