#include "touchtell/study.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <map>
#include <set>
#include <thread>

#include "touchtell/csv_io.hpp"
#include "touchtell/wav_io.hpp"

namespace touchtell {

namespace fs = std::filesystem;

FeatureVector extract_trial_features(const TouchRecording& rec, const AudioClip& clip,
                                     const FeatureConfigs& cfg) {
    const TactileFeatures tf = tactile_features(rec, cfg.tactile);
    const AudioFeatures af = audio_features(clip, cfg.audio);
    return fuse_features(tf.to_array(), af.to_array());
}

namespace {

template <typename Fn>
void parallel_for(std::size_t count, int jobs, Fn&& fn) {
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(count)));
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::string> errors(workers);
    auto loop = [&](int wid) {
        try {
            while (true) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                fn(i);
            }
        } catch (const std::exception& e) {
            errors[wid] = e.what();
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(loop, w);
    for (auto& t : pool) t.join();
    for (const auto& e : errors)
        if (!e.empty()) throw Error(ErrorKind::Dependency, e);
}

}  // namespace

std::vector<FeatureRow> extract_features(const DatasetManifest& manifest,
                                         const std::string& base_dir, const FeatureConfigs& cfg,
                                         int jobs) {
    std::vector<FeatureRow> rows(manifest.trials.size());
    parallel_for(manifest.trials.size(), jobs, [&](std::size_t i) {
        const TrialRecord& t = manifest.trials[i];
        auto resolve = [&](const std::string& rel) {
            fs::path p(rel);
            if (p.is_relative()) p = fs::path(base_dir) / p;
            if (!fs::exists(p))
                fail(ErrorKind::Dependency, "missing trial file " + rel + " (participant " +
                                                t.participant_id + ", label " + t.label + ")");
            return p.string();
        };
        const TouchRecording rec = read_recording_csv(resolve(t.tactile_path));
        const AudioClip clip = read_wav(resolve(t.audio_path));
        FeatureRow row;
        row.participant_id = t.participant_id;
        row.round = t.round;
        row.task = t.task;
        row.label = t.label;
        row.values = extract_trial_features(rec, clip, cfg);
        rows[i] = std::move(row);
    });
    return rows;
}

std::vector<FeatureRow> run_study_features(const SynthConfig& synth, Task task,
                                           const FeatureConfigs& cfg, int jobs) {
    synth.validate();
    const int n_labels = (task == Task::Emotion) ? kNumEmotions : kNumGestures;
    std::vector<ParticipantProfile> profiles;
    for (int p = 0; p < synth.n_participants; ++p)
        profiles.push_back(make_profile(synth.master_seed, p, synth));

    struct Key {
        int participant, round, label;
    };
    std::vector<Key> keys;
    for (int p = 0; p < synth.n_participants; ++p)
        for (int r = 1; r <= synth.n_rounds; ++r)
            for (int l = 0; l < n_labels; ++l) keys.push_back({p, r, l});

    std::vector<FeatureRow> rows(keys.size());
    parallel_for(keys.size(), jobs, [&](std::size_t i) {
        const Key& k = keys[i];
        const GeneratedTrial trial =
            (task == Task::Emotion)
                ? gen_emotion_recording(kAllEmotions[k.label], profiles[k.participant], k.round,
                                        synth)
                : gen_gesture_recording(kAllGestures[k.label], profiles[k.participant], k.round,
                                        synth);
        FeatureRow row;
        row.participant_id = profiles[k.participant].participant_id;
        row.round = k.round;
        row.task = task;
        row.label = (task == Task::Emotion) ? to_string(kAllEmotions[k.label])
                                            : to_string(kAllGestures[k.label]);
        row.values = extract_trial_features(trial.recording, trial.audio, cfg);
        rows[i] = std::move(row);
    });
    return rows;
}

namespace {

struct TaskRows {
    std::vector<const FeatureRow*> rows;
    std::vector<std::string> labels_order;
};

TaskRows select_task(const std::vector<FeatureRow>& rows, Task task) {
    TaskRows out;
    out.labels_order = label_order(task);
    for (const auto& r : rows)
        if (r.task == task) out.rows.push_back(&r);
    if (out.rows.empty()) fail(ErrorKind::Dependency, "no rows for task " + to_string(task));
    return out;
}

}  // namespace

std::vector<IccTableRow> icc_table(const std::vector<FeatureRow>& rows, Task task) {
    const TaskRows tr = select_task(rows, task);

    Matrix x(tr.rows.size(), kNumFeatures);
    for (std::size_t i = 0; i < tr.rows.size(); ++i)
        for (int c = 0; c < kNumFeatures; ++c) x(i, c) = tr.rows[i]->values[c];

    const ZscoreModel z = zscore_fit(x);
    const Matrix xz = zscore_apply(z, x);
    const PcaModel pca = pca_fit(xz);
    const Matrix scores = pca_transform(pca, xz);

    // distinct participants and rounds, fixed order
    std::set<std::string> pset;
    std::set<int> rset;
    for (const auto* r : tr.rows) {
        pset.insert(r->participant_id);
        rset.insert(r->round);
    }
    std::vector<std::string> participants(pset.begin(), pset.end());
    std::vector<int> rounds(rset.begin(), rset.end());
    std::map<std::string, int> pindex;
    for (std::size_t i = 0; i < participants.size(); ++i)
        pindex[participants[i]] = static_cast<int>(i);
    std::map<int, int> rindex;
    for (std::size_t i = 0; i < rounds.size(); ++i) rindex[rounds[i]] = static_cast<int>(i);

    std::vector<IccTableRow> table;
    for (const auto& label : tr.labels_order) {
        // rows = rounds (targets), columns = participants (raters), cell = PC1
        Matrix cells(rounds.size(), participants.size());
        Matrix filled(rounds.size(), participants.size(), 0.0);
        for (std::size_t i = 0; i < tr.rows.size(); ++i) {
            if (tr.rows[i]->label != label) continue;
            const int ri = rindex[tr.rows[i]->round];
            const int pi = pindex[tr.rows[i]->participant_id];
            cells(ri, pi) = scores(i, 0);
            filled(ri, pi) += 1.0;
        }
        for (std::size_t a = 0; a < cells.rows; ++a)
            for (std::size_t b = 0; b < cells.cols; ++b)
                if (filled(a, b) != 1.0)
                    fail(ErrorKind::Config, "icc needs exactly one trial per (round, participant) "
                                            "cell for label '" + label + "'");
        table.push_back({label, icc_consistency(cells)});
    }
    return table;
}

PermanovaTable permanova_table(const std::vector<FeatureRow>& rows, Task task, int n_permutations,
                               std::uint64_t seed) {
    const TaskRows tr = select_task(rows, task);

    Matrix x(tr.rows.size(), kNumFeatures);
    std::vector<int> groups(tr.rows.size());
    std::map<std::string, int> lindex;
    for (std::size_t i = 0; i < tr.labels_order.size(); ++i)
        lindex[tr.labels_order[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < tr.rows.size(); ++i) {
        for (int c = 0; c < kNumFeatures; ++c) x(i, c) = tr.rows[i]->values[c];
        groups[i] = lindex.at(tr.rows[i]->label);
    }

    const ZscoreModel z = zscore_fit(x);
    const Matrix xz = zscore_apply(z, x);

    PermanovaTable out;
    out.group_labels = tr.labels_order;
    out.overall = permanova(xz, groups, n_permutations, seed);
    out.pairwise = pairwise_permanova_holm(xz, groups, n_permutations, seed);
    return out;
}

}  // namespace touchtell
