#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "touchtell/rng.hpp"
#include "touchtell/tactile_features.hpp"
#include "support/tactile_oracle.hpp"

using namespace touchtell;

namespace {

TouchRecording recording_from_counts(const std::vector<std::array<std::uint16_t, kNumTaxels>>& c,
                                     std::uint32_t gap_ms = 22) {
    TouchRecording rec;
    for (std::size_t i = 0; i < c.size(); ++i) {
        SensorFrame f;
        f.seq = static_cast<std::uint32_t>(i);
        f.timestamp_ms = static_cast<std::uint32_t>(i * gap_ms);
        f.counts = c[i];
        rec.frames.push_back(f);
    }
    return rec;
}

TouchRecording random_recording(Rng& rng, int min_frames = 50, int max_frames = 120) {
    const int T = min_frames + static_cast<int>(rng.uniform_index(max_frames - min_frames + 1));
    std::vector<std::array<std::uint16_t, kNumTaxels>> counts(T);
    for (auto& frame : counts)
        for (auto& v : frame) v = static_cast<std::uint16_t>(rng.uniform_index(4096));
    // jittered but strictly increasing clock
    TouchRecording rec = recording_from_counts(counts);
    std::uint32_t ts = 0;
    for (auto& f : rec.frames) {
        f.timestamp_ms = ts;
        ts += 19 + static_cast<std::uint32_t>(rng.uniform_index(7));
    }
    return rec;
}

}  // namespace

TEST_CASE("touch events: empty, merged, and separate runs") {
    TactileFeatureConfig cfg;
    const int T = 60;
    std::vector<std::array<std::uint16_t, kNumTaxels>> counts(T);
    for (auto& f : counts) f.fill(0);

    SUBCASE("all-zero recording has no events") {
        const auto events = detect_touch_events(recording_from_counts(counts), cfg);
        CHECK(events.empty());
    }

    SUBCASE("gap of debounce_gap frames merges into one event") {
        for (int i = 10; i <= 20; ++i) counts[i][12] = 2000;
        for (int i = 23; i <= 30; ++i) counts[i][12] = 2000;
        const auto events = detect_touch_events(recording_from_counts(counts), cfg);
        REQUIRE(events.size() == 1);
        CHECK(events[0].start_frame == 10);
        CHECK(events[0].end_frame == 30);
    }

    SUBCASE("longer gap keeps two events") {
        for (int i = 10; i <= 20; ++i) counts[i][12] = 2000;
        for (int i = 40; i <= 50; ++i) counts[i][12] = 2000;
        const auto events = detect_touch_events(recording_from_counts(counts), cfg);
        REQUIRE(events.size() == 2);
        CHECK(events[0].start_frame == 10);
        CHECK(events[1].start_frame == 40);
    }
}

TEST_CASE("tactile features: zero recording gives all-zero features") {
    TactileFeatureConfig cfg;
    std::vector<std::array<std::uint16_t, kNumTaxels>> counts(450);
    for (auto& f : counts) f.fill(0);
    const TactileFeatures f = tactile_features(recording_from_counts(counts), cfg);
    for (double v : f.to_array()) CHECK(v == 0.0);
}

TEST_CASE("tactile features: one saturated taxel for the whole trial") {
    TactileFeatureConfig cfg;
    std::vector<std::array<std::uint16_t, kNumTaxels>> counts(450);
    for (auto& f : counts) {
        f.fill(0);
        f[12] = 4095;
    }
    // saturated from frame 0, so the baseline sees it too; use a ramp-free
    // variant with a zero baseline window instead
    for (int i = 0; i < 5; ++i) counts[i][12] = 0;
    TouchRecording rec = recording_from_counts(counts);
    const TactileFeatures f = tactile_features(rec, cfg);
    CHECK(f.num_touches == 1);
    CHECK(f.mean_touch_duration > 9.7);
    CHECK(f.contact_area == doctest::Approx(445.0 / 450.0));
    CHECK(f.max_pressure == doctest::Approx(1.0));
    // constant during the event: gradient only sees the single step
    CHECK(f.pressure_gradient < 0.01);
}

TEST_CASE("tactile features: need at least two frames") {
    TactileFeatureConfig cfg;
    std::vector<std::array<std::uint16_t, kNumTaxels>> counts(1);
    counts[0].fill(0);
    try {
        tactile_features(recording_from_counts(counts), cfg);
        FAIL("expected size error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Size);
    }
}

TEST_CASE("tactile features match the brute-force oracle on 200 random recordings") {
    TactileFeatureConfig cfg;
    Rng rng(20240813);
    for (int k = 0; k < 200; ++k) {
        const TouchRecording rec = random_recording(rng);
        const auto got = tactile_features(rec, cfg).to_array();
        const auto want = oracle::tactile_features_bruteforce(rec, cfg);
        for (int i = 0; i < kNumTactileFeatures; ++i)
            REQUIRE(got[i] == doctest::Approx(want[i]).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("pressure_std squared equals pressure_variance") {
    TactileFeatureConfig cfg;
    Rng rng(7);
    for (int k = 0; k < 20; ++k) {
        const TactileFeatures f = tactile_features(random_recording(rng), cfg);
        CHECK(std::abs(f.pressure_std * f.pressure_std - f.pressure_variance) <= 1e-12);
        CHECK(f.max_pressure >= f.mean_pressure);
        CHECK(f.mean_pressure >= 0.0);
        CHECK(f.min_touch_duration <= f.mean_touch_duration);
        CHECK(f.mean_touch_duration <= f.max_touch_duration);
    }
}

TEST_CASE("taxel permutation leaves every feature exactly unchanged") {
    TactileFeatureConfig cfg;
    Rng rng(20240814);
    // a fixed permutation of the 25 taxels
    std::vector<int> perm(kNumTaxels);
    for (int i = 0; i < kNumTaxels; ++i) perm[i] = i;
    rng.shuffle(perm);

    for (int k = 0; k < 20; ++k) {
        const TouchRecording rec = random_recording(rng);
        TouchRecording permuted = rec;
        for (std::size_t i = 0; i < rec.frames.size(); ++i)
            for (int t = 0; t < kNumTaxels; ++t)
                permuted.frames[i].counts[perm[t]] = rec.frames[i].counts[t];
        const auto a = tactile_features(rec, cfg).to_array();
        const auto b = tactile_features(permuted, cfg).to_array();
        for (int i = 0; i < kNumTactileFeatures; ++i) REQUIRE(a[i] == b[i]);
    }
}

TEST_CASE("halving all pressures scales the pressure block accordingly") {
    TactileFeatureConfig cfg;
    // margin from the threshold: active values far above theta, scaled
    // values still far above theta
    std::vector<std::array<std::uint16_t, kNumTaxels>> big(100), half(100);
    Rng rng(5);
    for (int i = 0; i < 100; ++i) {
        big[i].fill(0);
        half[i].fill(0);
        if (i >= 10 && i < 90) {
            for (int t = 0; t < 8; ++t) {
                const std::uint16_t v = static_cast<std::uint16_t>(
                    2000 + 2 * static_cast<int>(rng.uniform_index(1000)));
                big[i][t] = v;
                half[i][t] = static_cast<std::uint16_t>(v / 2);
            }
        }
    }
    const auto fb = tactile_features(recording_from_counts(big), cfg);
    const auto fh = tactile_features(recording_from_counts(half), cfg);
    CHECK(fh.mean_pressure == doctest::Approx(0.5 * fb.mean_pressure).epsilon(1e-12));
    CHECK(fh.max_pressure == doctest::Approx(0.5 * fb.max_pressure).epsilon(1e-12));
    CHECK(fh.pressure_std == doctest::Approx(0.5 * fb.pressure_std).epsilon(1e-12));
    CHECK(fh.pressure_variance == doctest::Approx(0.25 * fb.pressure_variance).epsilon(1e-12));
    // thresholded counts unchanged because both stay above theta
    CHECK(fh.contact_area == fb.contact_area);
    CHECK(fh.num_touches == fb.num_touches);
}

TEST_CASE("quantile_type7 matches linear interpolation by hand") {
    CHECK(quantile_type7({1, 2, 3, 4}, 0.5) == doctest::Approx(2.5));
    CHECK(quantile_type7({1, 2, 3, 4, 5}, 0.25) == doctest::Approx(2.0));
    CHECK(quantile_type7({3, 1, 2}, 0.75) == doctest::Approx(2.5));
}
