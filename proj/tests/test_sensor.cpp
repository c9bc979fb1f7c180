#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "touchtell/transduction.hpp"
#include "touchtell/wire.hpp"
#include "support/tmpdir.hpp"

using namespace touchtell;

TEST_CASE("resistance law endpoints and geometric midpoint") {
    TransductionConfig cfg;
    CHECK(resistance_from_activation(0.0, cfg) == doctest::Approx(200000.0).epsilon(1e-12));
    CHECK(resistance_from_activation(1.0, cfg) == doctest::Approx(1000.0).epsilon(1e-12));
    CHECK(resistance_from_activation(0.5, cfg) ==
          doctest::Approx(std::sqrt(200000.0 * 1000.0)).epsilon(1e-12));
    CHECK_THROWS_AS(resistance_from_activation(-0.1, cfg), Error);
    CHECK_THROWS_AS(resistance_from_activation(1.1, cfg), Error);
}

TEST_CASE("resistance law is strictly decreasing") {
    TransductionConfig cfg;
    double prev = resistance_from_activation(0.0, cfg);
    for (int i = 1; i <= 1000; ++i) {
        const double r = resistance_from_activation(i / 1000.0, cfg);
        CHECK(r < prev);
        prev = r;
    }
}

TEST_CASE("divider voltage matches the stated formula") {
    TransductionConfig cfg;
    CHECK(taxel_voltage(0.0, cfg) == doctest::Approx(3.3).epsilon(1e-12));
    CHECK(taxel_voltage(1400.0, cfg) == doctest::Approx(1.65).epsilon(1e-12));
    // hand evaluation at the geometric midpoint resistance
    const double r_mid = std::sqrt(200000.0 * 1000.0);
    CHECK(taxel_voltage(r_mid, cfg) ==
          doctest::Approx(3.3 * 1400.0 / (1400.0 + r_mid)).epsilon(1e-12));
    CHECK(taxel_voltage(14142.0, cfg) == doctest::Approx(0.2973).epsilon(1e-3));
    CHECK_THROWS_AS(taxel_voltage(-1.0, cfg), Error);
}

TEST_CASE("adc quantization: endpoints and round-half-up") {
    TransductionConfig cfg;
    CHECK(adc_quantize(0.0, cfg) == 0);
    CHECK(adc_quantize(3.3, cfg) == 4095);
    // 1.65 V maps to exactly 2047.5 counts: round half up
    CHECK(adc_quantize(1.65, cfg) == 2048);
    // clamping absorbs noise overshoot
    CHECK(adc_quantize(3.5, cfg) == 4095);
}

TEST_CASE("scan_field composes the chain: idle and saturated fields") {
    TransductionConfig cfg;
    cfg.noise_std_counts = 0.0;
    Rng rng(1);

    ActivationField zeros{};
    const SensorFrame idle = scan_field(zeros, 0, 0, cfg, rng);
    // round(4095 * 1400 / 201400) = round(28.47) = 28
    for (int t = 0; t < kNumTaxels; ++t) CHECK(idle.counts[t] == 28);

    ActivationField ones{};
    ones.fill(1.0);
    const SensorFrame full = scan_field(ones, 1, 22, cfg, rng);
    // round(4095 * 1400 / 2400) = round(2388.75) = 2389
    for (int t = 0; t < kNumTaxels; ++t) CHECK(full.counts[t] == 2389);
}

TEST_CASE("scan_field is deterministic under a fixed seed") {
    TransductionConfig cfg;
    ActivationField field{};
    for (int t = 0; t < kNumTaxels; ++t) field[t] = (t % 5) / 5.0;
    Rng a(77), b(77);
    const SensorFrame fa = scan_field(field, 3, 66, cfg, a);
    const SensorFrame fb = scan_field(field, 3, 66, cfg, b);
    CHECK(fa.counts == fb.counts);
}

TEST_CASE("scan_field monotone in activation with noise off") {
    TransductionConfig cfg;
    cfg.noise_std_counts = 0.0;
    Rng rng(1);
    int prev = -1;
    for (int i = 0; i <= 100; ++i) {
        ActivationField f{};
        f.fill(i / 100.0);
        const SensorFrame frame = scan_field(f, 0, 0, cfg, rng);
        CHECK(frame.counts[0] >= prev);
        prev = frame.counts[0];
    }
}

TEST_CASE("scan_field rejects non-5x5 dynamic fields") {
    TransductionConfig cfg;
    Rng rng(1);
    std::vector<double> wrong(24, 0.0);
    CHECK_THROWS_AS(scan_field(wrong, 0, 0, cfg, rng), Error);
}

namespace {

SensorFrame random_frame(Rng& rng) {
    SensorFrame f;
    f.seq = static_cast<std::uint32_t>(rng.uniform_index(65536));
    f.timestamp_ms = static_cast<std::uint32_t>(rng.next_u64());
    for (int t = 0; t < kNumTaxels; ++t)
        f.counts[t] = static_cast<std::uint16_t>(rng.uniform_index(4096));
    return f;
}

}  // namespace

TEST_CASE("wire codec: frame layout is 59 bytes with the documented magic") {
    Rng rng(5);
    const SensorFrame f = random_frame(rng);
    const auto bytes = encode_frame(f);
    REQUIRE(bytes.size() == kWireFrameSize);
    CHECK(bytes[0] == 0xA5);
    CHECK(bytes[1] == 0x5A);
}

TEST_CASE("wire codec: decode(encode(f)) == f over 10000 random frames") {
    Rng rng(20240812);
    for (int k = 0; k < 10000; ++k) {
        const SensorFrame f = random_frame(rng);
        const SensorFrame back = decode_frame(encode_frame(f));
        REQUIRE(back.seq == f.seq);
        REQUIRE(back.timestamp_ms == f.timestamp_ms);
        REQUIRE(back.counts == f.counts);
    }
}

TEST_CASE("wire codec: every single-bit flip is detected") {
    Rng rng(99);
    const SensorFrame f = random_frame(rng);
    const auto good = encode_frame(f);
    int caught = 0;
    for (std::size_t byte = 0; byte < good.size(); ++byte)
        for (int bit = 0; bit < 8; ++bit) {
            auto corrupted = good;
            corrupted[byte] ^= static_cast<std::uint8_t>(1u << bit);
            try {
                decode_frame(corrupted);
            } catch (const Error& e) {
                const bool expected = e.kind() == ErrorKind::Framing ||
                                      e.kind() == ErrorKind::Integrity;
                CHECK(expected);
                ++caught;
            }
        }
    CHECK(caught == static_cast<int>(good.size() * 8));
}

TEST_CASE("wire codec: short buffer is a length error") {
    Rng rng(4);
    auto bytes = encode_frame(random_frame(rng));
    bytes.pop_back();
    try {
        decode_frame(bytes);
        FAIL("expected length error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Length);
    }
}

TEST_CASE("wire codec: bad magic is a framing error, bad crc an integrity error") {
    Rng rng(6);
    const auto good = encode_frame(random_frame(rng));
    auto bad_magic = good;
    bad_magic[0] = 0x00;
    try {
        decode_frame(bad_magic);
        FAIL("expected framing error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Framing);
    }
    auto bad_crc = good;
    bad_crc[58] ^= 0xFF;
    try {
        decode_frame(bad_crc);
        FAIL("expected integrity error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Integrity);
    }
}

TEST_CASE("stream_session: byte count, schedule, and exact reconstruction") {
    TouchRecording rec;
    Rng rng(12);
    TransductionConfig cfg;
    std::uint32_t ts = 0;
    for (int i = 0; i < 450; ++i) {
        ActivationField field{};
        field.fill((i % 10) / 10.0);
        rec.frames.push_back(scan_field(field, i, ts, cfg, rng));
        ts += 22;
    }

    const SessionStream s = stream_session(rec);
    CHECK(s.bytes.size() == 450 * kWireFrameSize);
    REQUIRE(s.emission_ms.size() == 450);
    for (int i = 0; i < 450; ++i) CHECK(s.emission_ms[i] == rec.frames[i].timestamp_ms);

    const TouchRecording back = decode_stream(s.bytes);
    REQUIRE(back.frames.size() == rec.frames.size());
    for (std::size_t i = 0; i < rec.frames.size(); ++i) {
        CHECK(back.frames[i].seq == rec.frames[i].seq);
        CHECK(back.frames[i].timestamp_ms == rec.frames[i].timestamp_ms);
        CHECK(back.frames[i].counts == rec.frames[i].counts);
    }

    // mean wire gap tracks the recording clock
    double mean_gap = 0.0;
    for (std::size_t i = 1; i < s.emission_ms.size(); ++i)
        mean_gap += s.emission_ms[i] - s.emission_ms[i - 1];
    mean_gap /= static_cast<double>(s.emission_ms.size() - 1);
    CHECK(mean_gap == doctest::Approx(22.0).epsilon(0.01));
}

TEST_CASE("stream_session: empty recording gives an empty stream") {
    TouchRecording rec;
    const SessionStream s = stream_session(rec);
    CHECK(s.bytes.empty());
    CHECK(decode_stream(s.bytes).frames.empty());
}

TEST_CASE("wire log files round-trip") {
    TmpDir tmp;
    TouchRecording rec;
    Rng rng(3);
    TransductionConfig cfg;
    for (int i = 0; i < 10; ++i) {
        ActivationField field{};
        rec.frames.push_back(scan_field(field, i, i * 22, cfg, rng));
    }
    const SessionStream s = stream_session(rec);
    const std::string path = tmp.file("log.tws");
    write_wire_log(s, path);
    CHECK(read_wire_log(path) == s.bytes);
}
