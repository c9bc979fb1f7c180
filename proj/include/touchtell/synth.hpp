#pragma once

#include <array>
#include <string>
#include <vector>

#include "touchtell/rng.hpp"
#include "touchtell/transduction.hpp"
#include "touchtell/types.hpp"

namespace touchtell {

enum class Motion { Static, Oscillating, Jittered };

std::string to_string(Motion m);
Motion parse_motion(const std::string& s);

struct GestureTemplate {
    GestureLabel gesture = GestureLabel::Hold;
    double event_rate_hz = 1.0;
    double event_duration_s = 1.0;
    double peak_activation = 0.5;
    int contact_radius_taxels = 1;
    Motion motion = Motion::Static;

    void validate() const;
};

struct EmotionRecipe {
    EmotionLabel emotion = EmotionLabel::Attention;
    std::array<double, kNumGestures> weights{};  // over kAllGestures order, sum 1
    double intensity = 1.0;
    double tempo = 1.0;

    void validate() const;
};

// Per-participant style: multiplicative amplitude/tempo scales plus a
// contact-radius offset, all derived deterministically from the study seed.
struct ParticipantProfile {
    std::string participant_id;
    double amplitude_scale = 1.0;
    double tempo_scale = 1.0;
    int area_bias = 0;  // added to template radius, clamped at [0,3]
    std::uint64_t seed = 0;
};

struct SynthConfig {
    int n_participants = 28;
    int n_rounds = 3;
    double between_participant_std = 0.28;  // std of log amplitude/tempo scales
    double within_round_std = 0.08;         // per-trial lognormal jitter
    // Shared per-round amplitude progression (participants press harder as
    // they habituate); this is what makes round effects detectable at all.
    std::array<double, 3> round_amplitude_gains = {0.88, 1.0, 1.12};

    // audio coupling gains
    double audio_noise_floor_rms = 0.002;
    double audio_burst_gain = 0.5;       // x aggregate activation rise per frame
    double audio_motion_gain = 0.02;      // x per-frame total |field delta|
    double audio_onset_threshold = 0.15;  // aggregate rise per frame that counts as an onset
    // lognormal jitter stds; contact sound is a lossy proxy of the touch,
    // so coupling strengths wobble per burst and per trial
    double audio_burst_jitter_std = 0.25;
    double audio_motion_jitter_std = 0.25;

    // frame timing: gap = frame_gap_ms + uniform(-frame_jitter_ms, +frame_jitter_ms)
    double frame_gap_ms = 22.2;
    double frame_jitter_ms = 3.0;

    std::uint64_t master_seed = 0;
    TransductionConfig transduction;

    void validate() const;
};

const std::array<GestureTemplate, kNumGestures>& default_gesture_templates();
const std::array<EmotionRecipe, kNumEmotions>& default_emotion_recipes();

// JSON (de)serialization of the template/recipe tables so they ship as data.
std::string recipes_to_json(const std::array<GestureTemplate, kNumGestures>& templates,
                            const std::array<EmotionRecipe, kNumEmotions>& recipes);
void recipes_from_json(const std::string& text,
                       std::array<GestureTemplate, kNumGestures>& templates,
                       std::array<EmotionRecipe, kNumEmotions>& recipes);

ParticipantProfile make_profile(std::uint64_t study_seed, int participant_index,
                                const SynthConfig& cfg);

// A 45 Hz activation-field movie with jittered integer-ms timestamps.
struct ActivationMovie {
    std::vector<ActivationField> fields;
    std::vector<std::uint32_t> timestamps_ms;
};

// Pre-normalization audio render; bursts carry their linear coupling
// amplitude so tests can check the coupling directly.
struct RenderedAudio {
    std::vector<double> samples;  // [-1, 1] float render before peak cap
    struct Burst {
        int frame_index;
        double amplitude;
    };
    std::vector<Burst> bursts;
};

RenderedAudio render_audio(const ActivationMovie& movie, const SynthConfig& cfg, Rng& rng);

// Renders, caps at -1 dBFS and quantizes to 16-bit PCM.
AudioClip synth_audio_from_events(const ActivationMovie& movie, const SynthConfig& cfg, Rng& rng);

struct GeneratedTrial {
    TouchRecording recording;
    AudioClip audio;
    GestureLabel rendered_gesture;  // for emotions: the gesture sampled from the recipe
};

GeneratedTrial gen_gesture_recording(GestureLabel gesture, const ParticipantProfile& profile,
                                     int round_index, const SynthConfig& cfg);
GeneratedTrial gen_emotion_recording(EmotionLabel emotion, const ParticipantProfile& profile,
                                     int round_index, const SynthConfig& cfg);

// Writes n_participants x n_rounds x n_labels trials (CSV + WAV) plus
// manifest.jsonl under out_dir. Fully reproducible from cfg.master_seed.
DatasetManifest gen_dataset(const SynthConfig& cfg, Task task, const std::string& out_dir,
                            int jobs = 1);

}  // namespace touchtell
