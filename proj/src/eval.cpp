#include "touchtell/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "touchtell/rng.hpp"
#include "touchtell/stats.hpp"

namespace touchtell {

Split split_by_participant(const std::vector<std::string>& participant_ids, int n_train,
                           std::uint64_t seed) {
    std::vector<std::string> distinct(participant_ids.begin(), participant_ids.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    const int total = static_cast<int>(distinct.size());
    if (n_train < 1 || n_train >= total)
        fail(ErrorKind::Config, "n_train must be in [1, total) with total=" + std::to_string(total));

    Rng rng(derive_seed(seed, {0x73706c74ULL}));
    rng.shuffle(distinct);
    Split s;
    s.seed = seed;
    s.train_participants.assign(distinct.begin(), distinct.begin() + n_train);
    s.test_participants.assign(distinct.begin() + n_train, distinct.end());
    std::sort(s.train_participants.begin(), s.train_participants.end());
    std::sort(s.test_participants.begin(), s.test_participants.end());
    return s;
}

void verify_split(const Split& split) {
    std::set<std::string> train(split.train_participants.begin(), split.train_participants.end());
    for (const auto& p : split.test_participants)
        if (train.count(p))
            fail(ErrorKind::Validation, "participant '" + p + "' appears on both split sides");
}

ConfusionMatrix confusion_matrix(const std::vector<std::string>& y_true,
                                 const std::vector<std::string>& y_pred,
                                 const std::vector<std::string>& label_order) {
    if (y_true.size() != y_pred.size())
        fail(ErrorKind::Shape, "y_true and y_pred lengths differ");
    ConfusionMatrix cm;
    cm.labels = label_order;
    cm.counts.assign(label_order.size(), std::vector<int>(label_order.size(), 0));
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < label_order.size(); ++i) index[label_order[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < y_true.size(); ++i) {
        auto t = index.find(y_true[i]);
        auto p = index.find(y_pred[i]);
        if (t == index.end())
            fail(ErrorKind::Vocabulary, "unknown true label '" + y_true[i] + "'");
        if (p == index.end())
            fail(ErrorKind::Vocabulary, "unknown predicted label '" + y_pred[i] + "'");
        ++cm.counts[t->second][p->second];
    }
    return cm;
}

double accuracy(const ConfusionMatrix& cm) {
    const int total = cm.total();
    if (total == 0) fail(ErrorKind::Size, "empty confusion matrix");
    int diag = 0;
    for (std::size_t i = 0; i < cm.counts.size(); ++i) diag += cm.counts[i][i];
    return static_cast<double>(diag) / total;
}

double balanced_accuracy(const ConfusionMatrix& cm, std::vector<std::string>* excluded_out) {
    if (cm.total() == 0) fail(ErrorKind::Size, "empty confusion matrix");
    double sum = 0.0;
    int used = 0;
    for (std::size_t c = 0; c < cm.counts.size(); ++c) {
        int support = 0;
        for (int v : cm.counts[c]) support += v;
        if (support == 0) {
            if (excluded_out) excluded_out->push_back(cm.labels[c]);
            continue;
        }
        sum += static_cast<double>(cm.counts[c][c]) / support;
        ++used;
    }
    if (used == 0) fail(ErrorKind::Degenerate, "no class has support");
    return sum / used;
}

double per_class_balanced_accuracy(const ConfusionMatrix& cm, const std::string& label) {
    std::size_t c = cm.labels.size();
    for (std::size_t i = 0; i < cm.labels.size(); ++i)
        if (cm.labels[i] == label) c = i;
    if (c == cm.labels.size()) fail(ErrorKind::Vocabulary, "unknown label '" + label + "'");

    int tp = cm.counts[c][c];
    int fn = 0, fp = 0, tn = 0;
    for (std::size_t i = 0; i < cm.counts.size(); ++i)
        for (std::size_t j = 0; j < cm.counts.size(); ++j) {
            if (i == c && j != c) fn += cm.counts[i][j];
            if (i != c && j == c) fp += cm.counts[i][j];
            if (i != c && j != c) tn += cm.counts[i][j];
        }
    if (tp + fn == 0) fail(ErrorKind::Degenerate, "class '" + label + "' has zero support");
    const double recall = static_cast<double>(tp) / (tp + fn);
    const double specificity = (fp + tn == 0) ? 0.0 : static_cast<double>(tn) / (fp + tn);
    return 0.5 * (recall + specificity);
}

std::string to_string(Modality m) {
    switch (m) {
        case Modality::Touch: return "touch";
        case Modality::Sound: return "sound";
        case Modality::Fused: return "fused";
    }
    return "?";
}

Modality parse_modality(const std::string& s) {
    if (s == "touch") return Modality::Touch;
    if (s == "sound") return Modality::Sound;
    if (s == "fused") return Modality::Fused;
    fail(ErrorKind::Vocabulary, "unknown modality '" + s + "' (expected touch|sound|fused)");
}

std::vector<std::size_t> modality_columns(Modality m) {
    std::vector<std::size_t> cols;
    if (m == Modality::Touch || m == Modality::Fused)
        for (int i = 0; i < kNumTactileFeatures; ++i) cols.push_back(i);
    if (m == Modality::Sound || m == Modality::Fused)
        for (int i = 0; i < kNumAudioFeatures; ++i) cols.push_back(kNumTactileFeatures + i);
    return cols;
}

namespace {

struct TaskData {
    Matrix x;                           // all rows of this task, all 30 features
    std::vector<int> y;                 // label indices in label_order
    std::vector<std::string> labels;    // label strings per row
    std::vector<std::string> groups;    // participant per row
    std::vector<std::string> label_order;
};

TaskData collect_task(const std::vector<FeatureRow>& rows, Task task) {
    TaskData d;
    d.label_order = label_order(task);
    std::map<std::string, int> index;
    for (std::size_t i = 0; i < d.label_order.size(); ++i)
        index[d.label_order[i]] = static_cast<int>(i);

    std::vector<const FeatureRow*> selected;
    for (const auto& r : rows)
        if (r.task == task) selected.push_back(&r);
    d.x = Matrix(selected.size(), kNumFeatures);
    for (std::size_t i = 0; i < selected.size(); ++i) {
        for (int c = 0; c < kNumFeatures; ++c) d.x(i, c) = selected[i]->values[c];
        auto it = index.find(selected[i]->label);
        if (it == index.end())
            fail(ErrorKind::Vocabulary, "label '" + selected[i]->label + "' not valid for task");
        d.y.push_back(it->second);
        d.labels.push_back(selected[i]->label);
        d.groups.push_back(selected[i]->participant_id);
    }
    return d;
}

}  // namespace

ModalityReport modality_report(const std::vector<FeatureRow>& rows, const Split& split,
                               const ReportConfig& cfg) {
    verify_split(split);
    if (cfg.training_seeds.empty()) fail(ErrorKind::Config, "at least one training seed required");

    std::set<std::string> train_set(split.train_participants.begin(),
                                    split.train_participants.end());
    std::set<std::string> test_set(split.test_participants.begin(),
                                   split.test_participants.end());

    // which tasks are present
    std::vector<Task> tasks;
    for (Task t : {Task::Emotion, Task::Gesture}) {
        for (const auto& r : rows)
            if (r.task == t) {
                tasks.push_back(t);
                break;
            }
    }
    if (tasks.empty()) fail(ErrorKind::Dependency, "no feature rows provided");

    struct CellJob {
        Task task;
        Modality modality;
        ModelKind model;
    };
    std::vector<CellJob> jobs;
    for (Task t : tasks)
        for (Modality m : {Modality::Fused, Modality::Sound, Modality::Touch})
            for (ModelKind k : cfg.models) jobs.push_back({t, m, k});

    std::map<Task, TaskData> data;
    for (Task t : tasks) data.emplace(t, collect_task(rows, t));

    ModalityReport report;
    report.split = split;
    report.cells.resize(jobs.size());

    auto run_cell = [&](std::size_t ji) {
        const CellJob& job = jobs[ji];
        const TaskData& td = data.at(job.task);
        const auto cols = modality_columns(job.modality);

        std::vector<std::size_t> train_idx, test_idx;
        for (std::size_t i = 0; i < td.groups.size(); ++i) {
            if (train_set.count(td.groups[i])) train_idx.push_back(i);
            else if (test_set.count(td.groups[i])) test_idx.push_back(i);
        }
        if (train_idx.empty() || test_idx.empty())
            fail(ErrorKind::Dependency, "split leaves an empty side for task " + to_string(job.task));

        const Matrix x_train = td.x.select_rows(train_idx).select_cols(cols);
        const Matrix x_test = td.x.select_rows(test_idx).select_cols(cols);
        std::vector<int> y_train, y_test;
        std::vector<std::string> g_train, true_test;
        for (auto i : train_idx) {
            y_train.push_back(td.y[i]);
            g_train.push_back(td.groups[i]);
        }
        for (auto i : test_idx) {
            y_test.push_back(td.y[i]);
            true_test.push_back(td.labels[i]);
        }
        const int n_classes = static_cast<int>(td.label_order.size());

        ReportCell cell;
        cell.task = job.task;
        cell.modality = job.modality;
        cell.model = job.model;
        cell.baseline = cfg.chance_baseline;
        cell.confusion.labels = td.label_order;
        cell.confusion.counts.assign(n_classes, std::vector<int>(n_classes, 0));

        GridSpec grid;
        auto git = cfg.grids.find(job.model);
        grid = (git != cfg.grids.end()) ? git->second : default_grid(job.model);

        std::map<std::string, std::vector<double>> per_class_acc;
        for (std::size_t si = 0; si < cfg.training_seeds.size(); ++si) {
            const std::uint64_t seed = cfg.training_seeds[si];
            const CvReport cv = grid_search_cv(job.model, grid, x_train, y_train, n_classes,
                                               g_train, cfg.cv_folds, seed);
            if (si == 0) cell.chosen_params = cv.chosen_setting();

            const ZscoreModel z = zscore_fit(x_train);
            const Model model =
                train_model(job.model, cv.chosen_setting(), zscore_apply(z, x_train), y_train,
                            n_classes, derive_seed(seed, {0x66697431ULL}));
            const std::vector<int> pred = predict(model, zscore_apply(z, x_test));

            std::vector<std::string> pred_labels;
            for (int p : pred) pred_labels.push_back(td.label_order[p]);
            const ConfusionMatrix cm = confusion_matrix(true_test, pred_labels, td.label_order);
            for (int a = 0; a < n_classes; ++a)
                for (int b = 0; b < n_classes; ++b) cell.confusion.counts[a][b] += cm.counts[a][b];

            cell.per_seed_accuracy.push_back(accuracy(cm));
            cell.per_seed_balanced_accuracy.push_back(balanced_accuracy(cm));
            for (const auto& label : td.label_order) {
                int support = 0;
                for (std::size_t i = 0; i < true_test.size(); ++i)
                    if (true_test[i] == label) ++support;
                if (support > 0)
                    per_class_acc[label].push_back(per_class_balanced_accuracy(cm, label));
            }
        }

        const auto mean_of = [](const std::vector<double>& v) {
            double s = 0.0;
            for (double a : v) s += a;
            return s / v.size();
        };
        cell.accuracy_mean = mean_of(cell.per_seed_accuracy);
        double ss = 0.0;
        for (double a : cell.per_seed_accuracy)
            ss += (a - cell.accuracy_mean) * (a - cell.accuracy_mean);
        cell.accuracy_std = std::sqrt(ss / cell.per_seed_accuracy.size());
        cell.balanced_accuracy_mean = mean_of(cell.per_seed_balanced_accuracy);
        for (const auto& [label, vals] : per_class_acc)
            cell.per_class_balanced_mean[label] = mean_of(vals);

        if (cell.per_seed_accuracy.size() >= 2) {
            try {
                const TTestResult t =
                    t_test_one_sample(cell.per_seed_accuracy, cfg.chance_baseline,
                                      Alternative::Greater);
                cell.t_vs_baseline = t.t;
                cell.t_df = t.df;
                cell.p_vs_baseline = t.p;
            } catch (const Error&) {
                // identical accuracies across seeds: no variance, test undefined
                cell.t_vs_baseline = std::numeric_limits<double>::quiet_NaN();
                cell.t_df = static_cast<int>(cell.per_seed_accuracy.size()) - 1;
                cell.p_vs_baseline = std::numeric_limits<double>::quiet_NaN();
            }
        }
        report.cells[ji] = std::move(cell);
    };

    const int workers = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(jobs.size())));
    if (workers == 1) {
        for (std::size_t ji = 0; ji < jobs.size(); ++ji) run_cell(ji);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::string> errors(workers);
        auto loop = [&](int wid) {
            try {
                while (true) {
                    const std::size_t ji = next.fetch_add(1);
                    if (ji >= jobs.size()) break;
                    run_cell(ji);
                }
            } catch (const std::exception& e) {
                errors[wid] = e.what();
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(loop, w);
        for (auto& t : pool) t.join();
        for (const auto& e : errors)
            if (!e.empty()) fail(ErrorKind::Dependency, "report cell failed: " + e);
    }
    return report;
}

}  // namespace touchtell
