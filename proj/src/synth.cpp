#include "touchtell/synth.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>
#include <thread>

#include <json.hpp>

#include "touchtell/csv_io.hpp"
#include "touchtell/error.hpp"
#include "touchtell/manifest.hpp"
#include "touchtell/wav_io.hpp"

namespace touchtell {

namespace fs = std::filesystem;
using nlohmann::json;

std::string to_string(Motion m) {
    switch (m) {
        case Motion::Static: return "static";
        case Motion::Oscillating: return "oscillating";
        case Motion::Jittered: return "jittered";
    }
    return "?";
}

Motion parse_motion(const std::string& s) {
    if (s == "static") return Motion::Static;
    if (s == "oscillating") return Motion::Oscillating;
    if (s == "jittered") return Motion::Jittered;
    fail(ErrorKind::Parse, "unknown motion '" + s + "'");
}

void GestureTemplate::validate() const {
    if (!(event_rate_hz > 0.0 && event_duration_s > 0.0 && peak_activation > 0.0))
        fail(ErrorKind::Config, "gesture template fields must be positive");
    if (peak_activation > 1.0) fail(ErrorKind::Config, "peak_activation ≤ 1");
    if (contact_radius_taxels < 0) fail(ErrorKind::Config, "contact radius ≥ 0");
}

void EmotionRecipe::validate() const {
    double sum = 0.0;
    for (double w : weights) {
        if (w < 0.0) fail(ErrorKind::Config, "recipe weights must be non-negative");
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) fail(ErrorKind::Config, "recipe weights must sum to 1");
    if (!(intensity > 0.0 && tempo > 0.0)) fail(ErrorKind::Config, "multipliers must be positive");
}

void SynthConfig::validate() const {
    if (n_participants < 2) fail(ErrorKind::Config, "n_participants ≥ 2");
    if (n_rounds < 1 || n_rounds > 3) fail(ErrorKind::Config, "n_rounds ∈ [1,3]");
    if (between_participant_std < 0.0 || within_round_std < 0.0)
        fail(ErrorKind::Config, "variance knobs ≥ 0");
    transduction.validate();
}

const std::array<GestureTemplate, kNumGestures>& default_gesture_templates() {
    // rate Hz / event s / peak / radius / motion. Peaks sit high enough that
    // an event survives the divider + threshold chain for a median
    // participant; Pat/Tap/Tickle stay close so they can confuse at high
    // variance.
    static const std::array<GestureTemplate, kNumGestures> t = {{
        {GestureLabel::Hold, 0.1, 9.0, 0.60, 2, Motion::Static},
        {GestureLabel::Pat, 2.0, 0.15, 0.70, 2, Motion::Static},
        {GestureLabel::Poke, 0.3, 0.12, 0.95, 0, Motion::Static},
        {GestureLabel::Rub, 0.5, 8.0, 0.55, 1, Motion::Oscillating},
        {GestureLabel::Tap, 3.5, 0.08, 0.55, 0, Motion::Static},
        {GestureLabel::Tickle, 6.0, 0.06, 0.50, 1, Motion::Jittered},
    }};
    return t;
}

const std::array<EmotionRecipe, kNumEmotions>& default_emotion_recipes() {
    // Weights are over {Hold, Pat, Poke, Rub, Tap, Tickle}. Quadrant mates
    // share most of their mass so same-quadrant pairs stay hard to tell
    // apart; intensity/tempo carry the arousal axis.
    static const std::array<EmotionRecipe, kNumEmotions> r = {{
        // Anger: strong patting/poking, fast and hard
        {EmotionLabel::Anger, {0.00, 0.45, 0.30, 0.00, 0.15, 0.10}, 1.30, 1.15},
        // Attention: tapping and poking dominate
        {EmotionLabel::Attention, {0.00, 0.10, 0.30, 0.00, 0.60, 0.00}, 1.10, 1.10},
        // Calming: long holds and slow rubs, light
        {EmotionLabel::Calming, {0.60, 0.10, 0.00, 0.30, 0.00, 0.00}, 0.85, 0.70},
        // Comfort: like calming with a bit more pat
        {EmotionLabel::Comfort, {0.50, 0.15, 0.00, 0.35, 0.00, 0.00}, 0.90, 0.85},
        // Confusion: diffuse, no dominant gesture
        {EmotionLabel::Confusion, {0.25, 0.15, 0.10, 0.30, 0.10, 0.10}, 0.90, 1.00},
        // Disgust: pushing pokes and flicks
        {EmotionLabel::Disgust, {0.00, 0.35, 0.40, 0.00, 0.15, 0.10}, 1.00, 0.90},
        // Fear: trembling contact, quick and shallow
        {EmotionLabel::Fear, {0.00, 0.25, 0.35, 0.00, 0.15, 0.25}, 0.95, 1.50},
        // Happiness: rhythmic light taps and tickles
        {EmotionLabel::Happiness, {0.00, 0.20, 0.10, 0.00, 0.30, 0.40}, 1.00, 1.15},
        // Sadness: slow faint holds
        {EmotionLabel::Sadness, {0.45, 0.20, 0.00, 0.35, 0.00, 0.00}, 0.80, 0.55},
        // Surprise: abrupt taps/pokes, fast
        {EmotionLabel::Surprise, {0.00, 0.10, 0.20, 0.00, 0.40, 0.30}, 1.05, 1.45},
    }};
    return r;
}

std::string recipes_to_json(const std::array<GestureTemplate, kNumGestures>& templates,
                            const std::array<EmotionRecipe, kNumEmotions>& recipes) {
    json j;
    j["schema_version"] = 1;
    j["templates"] = json::array();
    for (const auto& t : templates) {
        json e;
        e["gesture"] = to_string(t.gesture);
        e["event_rate_hz"] = t.event_rate_hz;
        e["event_duration_s"] = t.event_duration_s;
        e["peak_activation"] = t.peak_activation;
        e["contact_radius_taxels"] = t.contact_radius_taxels;
        e["motion"] = to_string(t.motion);
        j["templates"].push_back(e);
    }
    j["recipes"] = json::array();
    for (const auto& r : recipes) {
        json e;
        e["emotion"] = to_string(r.emotion);
        json w;
        for (int g = 0; g < kNumGestures; ++g) w[to_string(kAllGestures[g])] = r.weights[g];
        e["weights"] = w;
        e["intensity"] = r.intensity;
        e["tempo"] = r.tempo;
        j["recipes"].push_back(e);
    }
    return j.dump(2) + "\n";
}

void recipes_from_json(const std::string& text,
                       std::array<GestureTemplate, kNumGestures>& templates,
                       std::array<EmotionRecipe, kNumEmotions>& recipes) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, std::string("recipe config: ") + e.what());
    }
    try {
        for (const auto& e : j.at("templates")) {
            GestureLabel g = parse_gesture(e.at("gesture").get<std::string>());
            GestureTemplate t;
            t.gesture = g;
            t.event_rate_hz = e.at("event_rate_hz").get<double>();
            t.event_duration_s = e.at("event_duration_s").get<double>();
            t.peak_activation = e.at("peak_activation").get<double>();
            t.contact_radius_taxels = e.at("contact_radius_taxels").get<int>();
            t.motion = parse_motion(e.at("motion").get<std::string>());
            t.validate();
            templates[static_cast<int>(g)] = t;
        }
        for (const auto& e : j.at("recipes")) {
            EmotionLabel emo = parse_emotion(e.at("emotion").get<std::string>());
            EmotionRecipe r;
            r.emotion = emo;
            for (int g = 0; g < kNumGestures; ++g)
                r.weights[g] = e.at("weights").value(to_string(kAllGestures[g]), 0.0);
            r.intensity = e.at("intensity").get<double>();
            r.tempo = e.at("tempo").get<double>();
            r.validate();
            recipes[static_cast<int>(emo)] = r;
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, std::string("recipe config: ") + e.what());
    }
}

ParticipantProfile make_profile(std::uint64_t study_seed, int participant_index,
                                const SynthConfig& cfg) {
    if (participant_index < 0 || participant_index >= cfg.n_participants)
        fail(ErrorKind::Range, "participant index out of range");
    ParticipantProfile p;
    p.seed = derive_seed(study_seed, {0x70726f66ULL, static_cast<std::uint64_t>(participant_index)});
    Rng rng(p.seed);
    p.amplitude_scale = rng.lognormal(cfg.between_participant_std);
    p.tempo_scale = rng.lognormal(cfg.between_participant_std);
    const double u = rng.uniform01();
    p.area_bias = (u < 0.25) ? -1 : (u > 0.75 ? 1 : 0);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "P%02d", participant_index + 1);
    p.participant_id = buf;
    return p;
}

namespace {

struct ContactEvent {
    double start_s = 0.0;
    double duration_s = 0.0;
    double peak = 0.0;
    double radius = 0.0;
    double row = 2.0, col = 2.0;       // center at event start
    Motion motion = Motion::Static;
    double osc_freq_hz = 0.0, osc_amp = 0.0, osc_phase = 0.0;
    double osc_dir_row = 0.0, osc_dir_col = 1.0;
    std::vector<std::array<double, 2>> walk;  // per-frame centers for jittered motion
};

double envelope(double t_in_event, double duration, double attack, double release) {
    if (t_in_event < 0.0 || t_in_event > duration) return 0.0;
    if (t_in_event < attack)
        return 0.5 * (1.0 - std::cos(std::numbers::pi * t_in_event / attack));
    if (t_in_event > duration - release)
        return 0.5 * (1.0 - std::cos(std::numbers::pi * (duration - t_in_event) / release));
    return 1.0;
}

// Tempo compresses short percussive events but a sustained press spans its
// templated duration regardless of how briskly someone moves.
constexpr double kSustainedEventSeconds = 5.0;

// Taxel gain around a contact point: flat core, linear skirt fading out
// 0.8 taxels past the nominal radius.
double spatial_kernel(double dist, double radius) {
    const double inner = 0.6 * radius;
    const double outer = radius + 0.8;
    if (dist <= inner) return 1.0;
    if (dist >= outer) return 0.0;
    return (outer - dist) / (outer - inner);
}

ActivationMovie render_gesture_movie(const GestureTemplate& tmpl, double amplitude, double tempo,
                                     int area_bias, const SynthConfig& cfg, Rng& rng) {
    ActivationMovie movie;

    // jittered 45 Hz clock
    double t_ms = 0.0;
    while (t_ms < kNominalTrialSeconds * 1000.0) {
        movie.timestamps_ms.push_back(static_cast<std::uint32_t>(std::llround(t_ms)));
        t_ms += cfg.frame_gap_ms + rng.uniform(-cfg.frame_jitter_ms, cfg.frame_jitter_ms);
    }
    const int n_frames = static_cast<int>(movie.timestamps_ms.size());
    movie.fields.assign(n_frames, ActivationField{});

    // event schedule
    const bool sustained = tmpl.event_duration_s >= kSustainedEventSeconds;
    const double dur_eff = sustained ? tmpl.event_duration_s : tmpl.event_duration_s / tempo;
    int n_events = std::max(
        1, static_cast<int>(std::floor(tmpl.event_rate_hz * tempo * kNominalTrialSeconds +
                                       rng.uniform01())));
    const int n_fit = std::max(1, static_cast<int>(std::floor(kNominalTrialSeconds /
                                                              (dur_eff + 0.04))));
    n_events = std::min(n_events, n_fit);
    const double period = kNominalTrialSeconds / n_events;

    // contact geometry wanders per trial (grip angle, finger pad area);
    // audio aggregates over the grid, so this noise is touch-only
    const int radius_jitter = static_cast<int>(std::round(rng.uniform(-0.7, 0.7)));
    const double radius = std::clamp(tmpl.contact_radius_taxels + area_bias + radius_jitter, 0, 3);
    const double base_row = 2.0 + rng.uniform(-1.2, 1.2);
    const double base_col = 2.0 + rng.uniform(-1.2, 1.2);

    std::vector<ContactEvent> events;
    for (int i = 0; i < n_events; ++i) {
        ContactEvent e;
        const double slack =
            std::max(0.01, std::min(period - dur_eff - 0.04, 9.65 - dur_eff - 0.2));
        e.start_s = i * period + rng.uniform(0.0, slack) + 0.2;
        e.duration_s = std::min(dur_eff, 9.9 - e.start_s);
        if (e.duration_s <= 0.02) continue;
        e.peak = std::clamp(tmpl.peak_activation * amplitude * rng.lognormal(0.05), 0.0, 1.0);
        e.radius = radius;
        e.row = std::clamp(base_row + rng.uniform(-0.7, 0.7), 0.0, 4.0);
        e.col = std::clamp(base_col + rng.uniform(-0.7, 0.7), 0.0, 4.0);
        if (e.radius == 0.0) {
            // a point contact presses the nearest taxel squarely
            e.row = std::round(e.row);
            e.col = std::round(e.col);
        }
        e.motion = tmpl.motion;
        if (e.motion == Motion::Oscillating) {
            e.osc_freq_hz = 1.2 * tempo * rng.lognormal(0.1);
            e.osc_amp = 1.5;
            e.osc_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
            const double ang = rng.uniform(0.0, 2.0 * std::numbers::pi);
            e.osc_dir_row = std::sin(ang);
            e.osc_dir_col = std::cos(ang);
        } else if (e.motion == Motion::Jittered) {
            // precompute a bounded random walk sampled per frame
            double r = e.row, c = e.col;
            e.walk.resize(n_frames);
            for (int f = 0; f < n_frames; ++f) {
                r = std::clamp(r + rng.uniform(-0.45, 0.45), 0.5, 3.5);
                c = std::clamp(c + rng.uniform(-0.45, 0.45), 0.5, 3.5);
                e.walk[f] = {r, c};
            }
        }
        events.push_back(std::move(e));
    }

    for (int f = 0; f < n_frames; ++f) {
        const double t = movie.timestamps_ms[f] / 1000.0;
        auto& field = movie.fields[f];
        for (const auto& e : events) {
            const double local = t - e.start_s;
            if (local < 0.0 || local > e.duration_s) continue;
            const double attack = std::min(0.35, 0.2 * e.duration_s);
            const double release = std::min(0.35, 0.2 * e.duration_s);
            const double env = envelope(local, e.duration_s, attack, release);
            if (env <= 0.0) continue;

            double row = e.row, col = e.col;
            if (e.motion == Motion::Oscillating) {
                const double s =
                    e.osc_amp * std::sin(2.0 * std::numbers::pi * e.osc_freq_hz * local +
                                         e.osc_phase);
                row = std::clamp(e.row + s * e.osc_dir_row, 0.0, 4.0);
                col = std::clamp(e.col + s * e.osc_dir_col, 0.0, 4.0);
            } else if (e.motion == Motion::Jittered) {
                row = e.walk[f][0];
                col = e.walk[f][1];
            }

            for (int r = 0; r < kGridRows; ++r)
                for (int c = 0; c < kGridCols; ++c) {
                    const double d = std::hypot(r - row, c - col);
                    const double a = e.peak * env * spatial_kernel(d, e.radius);
                    if (a > 0.0) {
                        double& cell = field[r * kGridCols + c];
                        cell = std::min(1.0, cell + a);
                    }
                }
        }
    }
    return movie;
}

TouchRecording scan_movie(const ActivationMovie& movie, const TransductionConfig& cfg, Rng& rng) {
    TouchRecording rec;
    rec.frames.reserve(movie.fields.size());
    for (std::size_t i = 0; i < movie.fields.size(); ++i)
        rec.frames.push_back(scan_field(movie.fields[i], static_cast<std::uint32_t>(i),
                                        movie.timestamps_ms[i], cfg, rng));
    return rec;
}

GeneratedTrial render_trial(const GestureTemplate& tmpl, double amplitude, double tempo,
                            const ParticipantProfile& profile, int round_index,
                            std::uint64_t trial_seed, const SynthConfig& cfg) {
    Rng movie_rng(derive_seed(trial_seed, {1}));
    Rng scan_rng(derive_seed(trial_seed, {2}));
    Rng audio_rng(derive_seed(trial_seed, {3}));

    const double round_gain =
        cfg.round_amplitude_gains[std::clamp(round_index - 1, 0, 2)];
    const double amp = amplitude * profile.amplitude_scale * round_gain *
                       movie_rng.lognormal(cfg.within_round_std);
    const double tmp = tempo * profile.tempo_scale * movie_rng.lognormal(cfg.within_round_std);

    GeneratedTrial out;
    out.rendered_gesture = tmpl.gesture;
    const ActivationMovie movie =
        render_gesture_movie(tmpl, amp, tmp, profile.area_bias, cfg, movie_rng);
    out.recording = scan_movie(movie, cfg.transduction, scan_rng);
    out.audio = synth_audio_from_events(movie, cfg, audio_rng);
    return out;
}

}  // namespace

RenderedAudio render_audio(const ActivationMovie& movie, const SynthConfig& cfg, Rng& rng) {
    RenderedAudio out;
    out.samples.assign(kNominalClipSamples, 0.0);
    const int n = kNominalClipSamples;
    const int n_frames = static_cast<int>(movie.fields.size());

    const double motion_trial_jitter = rng.lognormal(cfg.audio_motion_jitter_std);

    // constant noise floor (uniform noise scaled to the configured RMS)
    const double floor_amp = cfg.audio_noise_floor_rms * std::sqrt(3.0);
    for (int i = 0; i < n; ++i) out.samples[i] = floor_amp * rng.uniform(-1.0, 1.0);
    if (n_frames < 2) return out;

    // per-frame aggregate activation and motion speed
    std::vector<double> aggregate(n_frames, 0.0), motion(n_frames, 0.0);
    for (int f = 0; f < n_frames; ++f) {
        for (int t = 0; t < kNumTaxels; ++t) aggregate[f] += movie.fields[f][t];
        if (f > 0)
            for (int t = 0; t < kNumTaxels; ++t)
                motion[f] += std::abs(movie.fields[f][t] - movie.fields[f - 1][t]);
    }

    auto frame_sample = [&](int f) {
        const long long s = std::llround(movie.timestamps_ms[f] * (kSampleRateHz / 1000.0));
        return static_cast<int>(std::clamp<long long>(s, 0, n - 1));
    };

    // sustained motion bed: low-passed noise, amplitude interpolated
    // between frame speeds
    {
        double lp = 0.0;
        const double alpha = 1.0 - std::exp(-2.0 * std::numbers::pi * 600.0 / kSampleRateHz);
        for (int f = 0; f + 1 < n_frames; ++f) {
            const int s0 = frame_sample(f), s1 = frame_sample(f + 1);
            const double gain = cfg.audio_motion_gain * motion_trial_jitter;
            const double m0 = gain * motion[f];
            const double m1 = gain * motion[f + 1];
            for (int s = s0; s < s1; ++s) {
                lp += alpha * (rng.uniform(-1.0, 1.0) - lp);
                const double w = (s1 > s0) ? static_cast<double>(s - s0) / (s1 - s0) : 0.0;
                out.samples[s] += (m0 + (m1 - m0) * w) * lp * 3.0;
            }
        }
    }

    // one decaying band-limited burst per rising edge of the aggregate
    // activation derivative; faster touch sequences ring brighter, so the
    // burst cutoff follows the trial's onset count
    const int burst_len = static_cast<int>(0.06 * kSampleRateHz);
    const double tau_samples = 0.02 * kSampleRateHz;
    std::vector<int> onset_frames;
    {
        bool above = false;
        for (int f = 1; f < n_frames; ++f) {
            const double rise = aggregate[f] - aggregate[f - 1];
            if (rise > cfg.audio_onset_threshold && !above) {
                onset_frames.push_back(f);
                above = true;
            } else if (rise <= cfg.audio_onset_threshold) {
                above = false;
            }
        }
    }
    const double cutoff_hz =
        700.0 + 600.0 * std::log2(1.0 + std::min<double>(60.0, onset_frames.size()));
    const double alpha_burst = 1.0 - std::exp(-2.0 * std::numbers::pi * cutoff_hz / kSampleRateHz);
    for (int f : onset_frames) {
        const double rise = aggregate[f] - aggregate[f - 1];
        const double amp = cfg.audio_burst_gain * rng.lognormal(cfg.audio_burst_jitter_std) * rise;
        out.bursts.push_back({f, amp});
        const int s0 = frame_sample(f);
        double lp = 0.0;
        for (int i = 0; i < burst_len && s0 + i < n; ++i) {
            lp += alpha_burst * (rng.uniform(-1.0, 1.0) - lp);
            out.samples[s0 + i] += amp * std::exp(-i / tau_samples) * lp * 3.0;
        }
    }
    return out;
}

AudioClip synth_audio_from_events(const ActivationMovie& movie, const SynthConfig& cfg, Rng& rng) {
    RenderedAudio rendered = render_audio(movie, cfg, rng);
    double peak = 0.0;
    for (double s : rendered.samples) peak = std::max(peak, std::abs(s));
    const double cap = std::pow(10.0, -1.0 / 20.0);  // -1 dBFS
    const double gain = (peak > cap) ? cap / peak : 1.0;

    AudioClip clip;
    clip.samples.resize(rendered.samples.size());
    for (std::size_t i = 0; i < rendered.samples.size(); ++i) {
        const double v = rendered.samples[i] * gain;
        clip.samples[i] = static_cast<std::int16_t>(std::llround(v * 32767.0));
    }
    return clip;
}

GeneratedTrial gen_gesture_recording(GestureLabel gesture, const ParticipantProfile& profile,
                                     int round_index, const SynthConfig& cfg) {
    cfg.validate();
    const std::uint64_t trial_seed =
        derive_seed(profile.seed, {0x67657374ULL, static_cast<std::uint64_t>(round_index),
                                   static_cast<std::uint64_t>(gesture)});
    return render_trial(default_gesture_templates()[static_cast<int>(gesture)], 1.0, 1.0, profile,
                        round_index, trial_seed, cfg);
}

GeneratedTrial gen_emotion_recording(EmotionLabel emotion, const ParticipantProfile& profile,
                                     int round_index, const SynthConfig& cfg) {
    cfg.validate();
    const std::uint64_t trial_seed =
        derive_seed(profile.seed, {0x656d6f74ULL, static_cast<std::uint64_t>(round_index),
                                   static_cast<std::uint64_t>(emotion)});
    const EmotionRecipe& recipe = default_emotion_recipes()[static_cast<int>(emotion)];

    Rng pick_rng(derive_seed(trial_seed, {0}));
    std::vector<double> w(recipe.weights.begin(), recipe.weights.end());
    const GestureLabel gesture = kAllGestures[pick_rng.weighted_index(w)];

    return render_trial(default_gesture_templates()[static_cast<int>(gesture)], recipe.intensity,
                        recipe.tempo, profile, round_index, trial_seed, cfg);
}

DatasetManifest gen_dataset(const SynthConfig& cfg, Task task, const std::string& out_dir,
                            int jobs) {
    cfg.validate();
    std::error_code ec;
    fs::create_directories(fs::path(out_dir) / "trials" / to_string(task), ec);
    if (ec) fail(ErrorKind::Io, "cannot create output directory " + out_dir + ": " + ec.message());

    const int n_labels = (task == Task::Emotion) ? kNumEmotions : kNumGestures;
    std::vector<ParticipantProfile> profiles;
    for (int p = 0; p < cfg.n_participants; ++p)
        profiles.push_back(make_profile(cfg.master_seed, p, cfg));

    struct Job {
        int participant, round, label;
    };
    std::vector<Job> jobs_list;
    for (int p = 0; p < cfg.n_participants; ++p)
        for (int r = 1; r <= cfg.n_rounds; ++r)
            for (int l = 0; l < n_labels; ++l) jobs_list.push_back({p, r, l});

    DatasetManifest manifest;
    manifest.seed = cfg.master_seed;
    manifest.trials.resize(jobs_list.size());

    const int n_workers = std::max(1, jobs);
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(n_workers);
    auto worker = [&](int wid) {
        try {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= jobs_list.size()) break;
                const Job& job = jobs_list[i];
                const std::string label = (task == Task::Emotion)
                                              ? to_string(kAllEmotions[job.label])
                                              : to_string(kAllGestures[job.label]);
                GeneratedTrial trial =
                    (task == Task::Emotion)
                        ? gen_emotion_recording(kAllEmotions[job.label], profiles[job.participant],
                                                job.round, cfg)
                        : gen_gesture_recording(kAllGestures[job.label], profiles[job.participant],
                                                job.round, cfg);
                const std::string stem = profiles[job.participant].participant_id + "_r" +
                                         std::to_string(job.round) + "_" + label;
                const std::string rel_csv = "trials/" + to_string(task) + "/" + stem + ".csv";
                const std::string rel_wav = "trials/" + to_string(task) + "/" + stem + ".wav";
                write_recording_csv(trial.recording, (fs::path(out_dir) / rel_csv).string());
                write_wav(trial.audio, (fs::path(out_dir) / rel_wav).string());

                TrialRecord rec;
                rec.participant_id = profiles[job.participant].participant_id;
                rec.round = job.round;
                rec.task = task;
                rec.label = label;
                rec.tactile_path = rel_csv;
                rec.audio_path = rel_wav;
                manifest.trials[i] = std::move(rec);
            }
        } catch (const std::exception& e) {
            errors[wid] = e.what();
        }
    };
    if (n_workers == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker, w);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (!e.empty()) fail(ErrorKind::Io, "dataset generation failed: " + e);

    write_manifest(manifest, (fs::path(out_dir) / "manifest.jsonl").string());
    return manifest;
}

}  // namespace touchtell
