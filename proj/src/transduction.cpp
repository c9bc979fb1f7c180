#include "touchtell/transduction.hpp"

#include <cmath>
#include <string>

#include "touchtell/error.hpp"

namespace touchtell {

void TransductionConfig::validate() const {
    if (!(r_max > r_min && r_min > 0.0))
        fail(ErrorKind::Config, "require r_max > r_min > 0");
    if (!(v_supply > 0.0)) fail(ErrorKind::Config, "require v_supply > 0");
    if (adc_bits < 8 || adc_bits > 16) fail(ErrorKind::Config, "adc_bits ∈ [8,16]");
    if (noise_std_counts < 0.0) fail(ErrorKind::Config, "noise_std_counts ≥ 0");
}

double resistance_from_activation(double activation, const TransductionConfig& cfg) {
    if (!(activation >= 0.0 && activation <= 1.0))
        fail(ErrorKind::Domain, "activation ∉ [0,1]: " + std::to_string(activation));
    return cfg.r_max * std::pow(cfg.r_min / cfg.r_max, activation);
}

double taxel_voltage(double r_x, const TransductionConfig& cfg) {
    if (!(r_x >= 0.0)) fail(ErrorKind::Domain, "negative resistance: " + std::to_string(r_x));
    return cfg.r_pulldown / (cfg.r_pulldown + r_x) * cfg.v_supply;
}

int adc_quantize(double v, const TransductionConfig& cfg) {
    const int max_count = cfg.adc_max();
    const double scaled = v / cfg.v_supply * max_count;
    int count = static_cast<int>(std::floor(scaled + 0.5));  // round half up
    if (count < 0) count = 0;
    if (count > max_count) count = max_count;
    return count;
}

SensorFrame scan_field(const ActivationField& field, std::uint32_t seq, std::uint32_t timestamp_ms,
                       const TransductionConfig& cfg, Rng& rng) {
    SensorFrame frame;
    frame.seq = seq;
    frame.timestamp_ms = timestamp_ms;
    for (int t = 0; t < kNumTaxels; ++t) {
        const double r = resistance_from_activation(field[t], cfg);
        const double v = taxel_voltage(r, cfg);
        double count = adc_quantize(v, cfg);
        if (cfg.noise_std_counts > 0.0) count += rng.normal(0.0, cfg.noise_std_counts);
        int c = static_cast<int>(std::floor(count + 0.5));
        if (c < 0) c = 0;
        if (c > cfg.adc_max()) c = cfg.adc_max();
        frame.counts[t] = static_cast<std::uint16_t>(c);
    }
    return frame;
}

SensorFrame scan_field(const std::vector<double>& field, std::uint32_t seq,
                       std::uint32_t timestamp_ms, const TransductionConfig& cfg, Rng& rng) {
    if (field.size() != kNumTaxels)
        fail(ErrorKind::Shape, "activation field must have 25 values, got " +
                                   std::to_string(field.size()));
    ActivationField fixed{};
    for (int i = 0; i < kNumTaxels; ++i) fixed[i] = field[i];
    return scan_field(fixed, seq, timestamp_ms, cfg, rng);
}

}  // namespace touchtell
