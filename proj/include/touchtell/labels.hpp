#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "touchtell/error.hpp"

namespace touchtell {

enum class EmotionLabel {
    Anger,
    Attention,
    Calming,
    Comfort,
    Confusion,
    Disgust,
    Fear,
    Happiness,
    Sadness,
    Surprise,
};

enum class GestureLabel {
    Hold,
    Pat,
    Poke,
    Rub,
    Tap,
    Tickle,
};

enum class Task { Emotion, Gesture };

inline constexpr int kNumEmotions = 10;
inline constexpr int kNumGestures = 6;

inline constexpr std::array<EmotionLabel, kNumEmotions> kAllEmotions = {
    EmotionLabel::Anger,     EmotionLabel::Attention, EmotionLabel::Calming,
    EmotionLabel::Comfort,   EmotionLabel::Confusion, EmotionLabel::Disgust,
    EmotionLabel::Fear,      EmotionLabel::Happiness, EmotionLabel::Sadness,
    EmotionLabel::Surprise,
};

inline constexpr std::array<GestureLabel, kNumGestures> kAllGestures = {
    GestureLabel::Hold, GestureLabel::Pat, GestureLabel::Poke,
    GestureLabel::Rub,  GestureLabel::Tap, GestureLabel::Tickle,
};

// Arousal/valence quadrant. Q0 is the neutral bucket.
// Q1 = high arousal, positive valence; Q2 = high arousal, negative valence;
// Q3 = low arousal, negative valence;  Q4 = low arousal, positive valence.
inline constexpr int quadrant(EmotionLabel e) {
    switch (e) {
        case EmotionLabel::Happiness:
        case EmotionLabel::Surprise: return 1;
        case EmotionLabel::Anger:
        case EmotionLabel::Fear:
        case EmotionLabel::Disgust: return 2;
        case EmotionLabel::Sadness:
        case EmotionLabel::Confusion: return 3;
        case EmotionLabel::Comfort:
        case EmotionLabel::Calming: return 4;
        case EmotionLabel::Attention: return 0;
    }
    return -1;
}

inline std::string to_string(EmotionLabel e) {
    switch (e) {
        case EmotionLabel::Anger: return "Anger";
        case EmotionLabel::Attention: return "Attention";
        case EmotionLabel::Calming: return "Calming";
        case EmotionLabel::Comfort: return "Comfort";
        case EmotionLabel::Confusion: return "Confusion";
        case EmotionLabel::Disgust: return "Disgust";
        case EmotionLabel::Fear: return "Fear";
        case EmotionLabel::Happiness: return "Happiness";
        case EmotionLabel::Sadness: return "Sadness";
        case EmotionLabel::Surprise: return "Surprise";
    }
    return "?";
}

inline std::string to_string(GestureLabel g) {
    switch (g) {
        case GestureLabel::Hold: return "Hold";
        case GestureLabel::Pat: return "Pat";
        case GestureLabel::Poke: return "Poke";
        case GestureLabel::Rub: return "Rub";
        case GestureLabel::Tap: return "Tap";
        case GestureLabel::Tickle: return "Tickle";
    }
    return "?";
}

inline std::string to_string(Task t) { return t == Task::Emotion ? "emotion" : "gesture"; }

inline EmotionLabel parse_emotion(std::string_view s) {
    for (EmotionLabel e : kAllEmotions)
        if (to_string(e) == s) return e;
    fail(ErrorKind::Vocabulary, "unknown emotion label '" + std::string(s) + "'");
}

inline GestureLabel parse_gesture(std::string_view s) {
    for (GestureLabel g : kAllGestures)
        if (to_string(g) == s) return g;
    fail(ErrorKind::Vocabulary, "unknown gesture label '" + std::string(s) + "'");
}

inline Task parse_task(std::string_view s) {
    if (s == "emotion") return Task::Emotion;
    if (s == "gesture") return Task::Gesture;
    fail(ErrorKind::Vocabulary, "unknown task '" + std::string(s) + "' (expected emotion|gesture)");
}

// Label names for a task, in the fixed order used throughout reports.
inline std::vector<std::string> label_order(Task t) {
    std::vector<std::string> out;
    if (t == Task::Emotion)
        for (EmotionLabel e : kAllEmotions) out.push_back(to_string(e));
    else
        for (GestureLabel g : kAllGestures) out.push_back(to_string(g));
    return out;
}

}  // namespace touchtell
