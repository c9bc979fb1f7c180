#pragma once

#include <array>

#include "touchtell/rng.hpp"
#include "touchtell/types.hpp"

namespace touchtell {

// Electrical model of one taxel readout: the pressed sheet acts as a
// variable resistor R_x against a fixed pulldown, and the divider voltage
// is sampled by the ADC. r_max/r_min are the calibration endpoints of the
// log-linear resistance law.
struct TransductionConfig {
    double v_supply = 3.3;        // drive level, volts
    double r_pulldown = 1400.0;   // ohms
    double r_max = 200000.0;      // ohms at zero activation
    double r_min = 1000.0;        // ohms at full activation
    int adc_bits = 12;
    double noise_std_counts = 2.0;

    int adc_max() const { return (1 << adc_bits) - 1; }
    void validate() const;
};

using ActivationField = std::array<double, kNumTaxels>;  // row-major, each in [0,1]

// R(a) = r_max * (r_min/r_max)^a. Strictly decreasing; spans the
// calibration decades geometrically.
double resistance_from_activation(double activation, const TransductionConfig& cfg);

// V_A = r_pulldown / (r_pulldown + r_x) * v_supply.
double taxel_voltage(double r_x, const TransductionConfig& cfg);

// count = round_half_up(v / v_supply * adc_max), clamped to [0, adc_max].
int adc_quantize(double v, const TransductionConfig& cfg);

// Scans all 25 taxels of an activation field through the full chain and
// adds Gaussian read noise in count units. Deterministic given the rng.
SensorFrame scan_field(const ActivationField& field, std::uint32_t seq, std::uint32_t timestamp_ms,
                       const TransductionConfig& cfg, Rng& rng);

// Dynamic-shape entry point; rejects anything that is not 5x5 = 25 values.
SensorFrame scan_field(const std::vector<double>& field, std::uint32_t seq,
                       std::uint32_t timestamp_ms, const TransductionConfig& cfg, Rng& rng);

}  // namespace touchtell
