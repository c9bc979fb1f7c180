#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "touchtell/matrix.hpp"

namespace touchtell {

enum class ModelKind { DecisionTree, RandomForest, LinearSvm };

std::string to_string(ModelKind k);
ModelKind parse_model_kind(const std::string& s);

// ---- decision tree -----------------------------------------------------

struct TreeNode {
    int feature = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    std::vector<double> class_probs;  // leaf distribution, sums to 1
};

struct TreeParams {
    int max_depth = 0;  // 0 = unlimited
    int min_samples_split = 2;
};

struct TreeModel {
    std::vector<TreeNode> nodes;  // nodes[0] is the root
    int n_classes = 0;
    int n_features = 0;
    TreeParams params;
};

// Greedy CART with Gini impurity. Split ties break toward the lowest
// feature index, then the lowest threshold, so training is deterministic.
TreeModel train_decision_tree(const Matrix& x, const std::vector<int>& y, const TreeParams& params,
                              std::uint64_t seed);

// ---- random forest -------------------------------------------------------

struct ForestParams {
    int n_estimators = 100;
    int max_depth = 0;
    int min_samples_split = 2;
    bool bootstrap = true;
    int features_per_split = 0;  // 0 = floor(sqrt(d))
};

struct ForestModel {
    std::vector<TreeModel> trees;
    std::vector<std::uint64_t> tree_seeds;
    int n_classes = 0;
    int n_features = 0;
    ForestParams params;
};

ForestModel train_random_forest(const Matrix& x, const std::vector<int>& y,
                                const ForestParams& params, std::uint64_t seed, int jobs = 1);

// ---- linear SVM ------------------------------------------------------------

struct SvmParams {
    double c = 1.0;   // regularization; lambda = 1/(c*n)
    int epochs = 40;
};

struct LinearSvmModel {
    std::vector<std::vector<double>> weights;  // one vector per class
    std::vector<double> bias;
    int n_classes = 0;
    int n_features = 0;
    SvmParams params;
    bool standardization_warning = false;   // input columns look unscaled
    std::vector<double> epoch_objective;    // summed over classes, per epoch
};

// One-vs-rest hinge loss with L2 regularization, trained by epoch-shuffled
// subgradient descent on the 1/(lambda*t) schedule.
LinearSvmModel train_linear_svm(const Matrix& x, const std::vector<int>& y,
                                const SvmParams& params, std::uint64_t seed);

// ---- common prediction surface ---------------------------------------------

using Model = std::variant<TreeModel, ForestModel, LinearSvmModel>;

int model_n_features(const Model& m);
int model_n_classes(const Model& m);

std::vector<int> predict(const Model& m, const Matrix& x);
// Per-class scores: class distributions for trees, vote fractions for
// forests, raw margins for the SVM. Argmax with lowest-index tie break
// reproduces predict().
Matrix predict_scores(const Model& m, const Matrix& x);

// JSON persistence (self-describing, round-trips exactly).
std::string model_to_json(const Model& m);
Model model_from_json(const std::string& text);
void save_model(const Model& m, const std::string& path);
Model load_model(const std::string& path);

// ---- grid search with grouped CV -----------------------------------------

struct GridSpec {
    // axis name -> ordered candidate values; cartesian product is explored
    // in declaration order, ties in CV accuracy break toward the earlier
    // setting.
    std::vector<std::pair<std::string, std::vector<double>>> axes;
};

GridSpec default_grid(ModelKind kind);

using ParamMap = std::map<std::string, double>;

Model train_model(ModelKind kind, const ParamMap& params, const Matrix& x,
                  const std::vector<int>& y, int n_classes, std::uint64_t seed);

struct CvReport {
    struct Entry {
        ParamMap setting;
        double mean_accuracy = 0.0;
        double std_accuracy = 0.0;
        std::vector<double> fold_accuracy;
    };
    std::vector<Entry> entries;
    std::size_t chosen = 0;

    const ParamMap& chosen_setting() const { return entries[chosen].setting; }
};

// Folds partition by group (participant): no group ever spans folds, and
// groups are spread to balance label counts as evenly as the constraint
// allows. Z-scoring is fit inside each training fold only.
std::vector<std::vector<int>> grouped_folds(const std::vector<std::string>& groups, int k,
                                            const std::vector<int>& y, int n_classes,
                                            std::uint64_t seed);

// Throws if any group appears in more than one fold or any sample is
// missing/duplicated.
void verify_grouped_folds(const std::vector<std::vector<int>>& folds,
                          const std::vector<std::string>& groups);

CvReport grid_search_cv(ModelKind kind, const GridSpec& grid, const Matrix& x,
                        const std::vector<int>& y, int n_classes,
                        const std::vector<std::string>& groups, int k, std::uint64_t seed);

}  // namespace touchtell
