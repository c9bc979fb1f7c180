#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "touchtell/decoders.hpp"
#include "touchtell/types.hpp"

namespace touchtell {

struct Split {
    std::vector<std::string> train_participants;
    std::vector<std::string> test_participants;
    std::uint64_t seed = 0;
};

// Uniform random participant sample without replacement; every trial of a
// participant lands on that participant's side.
Split split_by_participant(const std::vector<std::string>& participant_ids, int n_train,
                           std::uint64_t seed);

// Throws if the two sides intersect.
void verify_split(const Split& split);

struct ConfusionMatrix {
    std::vector<std::string> labels;          // fixed order; row = true, col = predicted
    std::vector<std::vector<int>> counts;

    int total() const {
        int t = 0;
        for (const auto& row : counts)
            for (int v : row) t += v;
        return t;
    }
};

ConfusionMatrix confusion_matrix(const std::vector<std::string>& y_true,
                                 const std::vector<std::string>& y_pred,
                                 const std::vector<std::string>& label_order);

double accuracy(const ConfusionMatrix& cm);
// Mean of per-class recall; classes with zero support are excluded and
// reported through excluded_out when given.
double balanced_accuracy(const ConfusionMatrix& cm,
                         std::vector<std::string>* excluded_out = nullptr);
// One-vs-rest (recall + specificity)/2 for a single class.
double per_class_balanced_accuracy(const ConfusionMatrix& cm, const std::string& label);

enum class Modality { Touch, Sound, Fused };

std::string to_string(Modality m);
Modality parse_modality(const std::string& s);

// Feature column indices for a modality, in frozen order.
std::vector<std::size_t> modality_columns(Modality m);

struct ReportCell {
    Task task = Task::Emotion;
    Modality modality = Modality::Fused;
    ModelKind model = ModelKind::LinearSvm;
    std::vector<double> per_seed_accuracy;
    std::vector<double> per_seed_balanced_accuracy;
    double accuracy_mean = 0.0;
    double accuracy_std = 0.0;
    double balanced_accuracy_mean = 0.0;
    std::map<std::string, double> per_class_balanced_mean;  // label -> mean over seeds
    ConfusionMatrix confusion;                              // summed over seeds
    ParamMap chosen_params;                                 // from the first seed's grid search
    // one-sided t-test of per-seed accuracies against the chance baseline
    double baseline = 0.0;
    double t_vs_baseline = 0.0;
    int t_df = 0;
    double p_vs_baseline = 1.0;
};

struct ReportConfig {
    std::vector<std::uint64_t> training_seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    int cv_folds = 10;
    double chance_baseline = 0.375;
    std::map<ModelKind, GridSpec> grids;  // empty -> default_grid per kind
    std::vector<ModelKind> models = {ModelKind::DecisionTree, ModelKind::RandomForest,
                                     ModelKind::LinearSvm};
    int jobs = 1;
};

struct ModalityReport {
    Split split;
    std::vector<ReportCell> cells;  // task x modality x model

    const ReportCell* find(Task t, Modality m, ModelKind k) const {
        for (const auto& c : cells)
            if (c.task == t && c.modality == m && c.model == k) return &c;
        return nullptr;
    }
};

// Full pipeline per cell and seed: grouped-CV grid search on the training
// participants, refit on the whole training side (z-scoring fit on train
// only), evaluate on the held-out participants.
ModalityReport modality_report(const std::vector<FeatureRow>& rows, const Split& split,
                               const ReportConfig& cfg);

}  // namespace touchtell
