#include "touchtell/decoders.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "touchtell/rng.hpp"
#include "touchtell/stats.hpp"

namespace touchtell {

using nlohmann::json;

std::string to_string(ModelKind k) {
    switch (k) {
        case ModelKind::DecisionTree: return "dt";
        case ModelKind::RandomForest: return "rf";
        case ModelKind::LinearSvm: return "svm";
    }
    return "?";
}

ModelKind parse_model_kind(const std::string& s) {
    if (s == "dt") return ModelKind::DecisionTree;
    if (s == "rf") return ModelKind::RandomForest;
    if (s == "svm") return ModelKind::LinearSvm;
    fail(ErrorKind::Vocabulary, "unknown model kind '" + s + "' (expected dt|rf|svm)");
}

// ---- decision tree -----------------------------------------------------

namespace {

int count_classes(const std::vector<int>& y) {
    int n = 0;
    for (int v : y) {
        if (v < 0) fail(ErrorKind::Domain, "class labels must be non-negative");
        n = std::max(n, v + 1);
    }
    return n;
}

struct TreeBuilder {
    const Matrix& x;
    const std::vector<int>& y;
    int n_classes;
    int max_depth;
    int min_samples_split;
    int mtry;  // 0 = all features
    Rng* rng;  // only consulted when mtry > 0
    std::vector<TreeNode> nodes;
    std::vector<std::pair<double, int>> scratch;
    std::vector<int> feature_pool;

    int make_leaf(const std::vector<int>& idx) {
        TreeNode leaf;
        leaf.class_probs.assign(n_classes, 0.0);
        for (int i : idx) leaf.class_probs[y[i]] += 1.0;
        for (double& p : leaf.class_probs) p /= static_cast<double>(idx.size());
        nodes.push_back(std::move(leaf));
        return static_cast<int>(nodes.size()) - 1;
    }

    int build(std::vector<int>& idx, int depth) {
        const int n = static_cast<int>(idx.size());
        bool pure = true;
        for (int i = 1; i < n && pure; ++i) pure = (y[idx[i]] == y[idx[0]]);
        if (pure || n < min_samples_split || (max_depth > 0 && depth >= max_depth))
            return make_leaf(idx);

        // candidate features, ascending so ties resolve to the lowest index
        const int d = static_cast<int>(x.cols);
        feature_pool.resize(d);
        std::iota(feature_pool.begin(), feature_pool.end(), 0);
        int n_candidates = d;
        if (mtry > 0 && mtry < d) {
            for (int i = 0; i < mtry; ++i) {
                const int j = i + static_cast<int>(rng->uniform_index(d - i));
                std::swap(feature_pool[i], feature_pool[j]);
            }
            n_candidates = mtry;
            std::sort(feature_pool.begin(), feature_pool.begin() + n_candidates);
        }

        std::vector<double> parent_counts(n_classes, 0.0);
        for (int i : idx) parent_counts[y[i]] += 1.0;
        double parent_gini = 1.0;
        for (double c : parent_counts) parent_gini -= (c / n) * (c / n);

        int best_feature = -1;
        double best_threshold = 0.0;
        double best_gain = 1e-12;

        std::vector<double> left_counts(n_classes);
        for (int fi = 0; fi < n_candidates; ++fi) {
            const int f = feature_pool[fi];
            scratch.resize(n);
            for (int i = 0; i < n; ++i) scratch[i] = {x(idx[i], f), y[idx[i]]};
            std::sort(scratch.begin(), scratch.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            if (scratch.front().first == scratch.back().first) continue;

            std::fill(left_counts.begin(), left_counts.end(), 0.0);
            for (int i = 0; i + 1 < n; ++i) {
                left_counts[scratch[i].second] += 1.0;
                if (scratch[i].first == scratch[i + 1].first) continue;
                const double nl = i + 1, nr = n - nl;
                double gl = 1.0, gr = 1.0;
                for (int c = 0; c < n_classes; ++c) {
                    const double l = left_counts[c];
                    const double r = parent_counts[c] - l;
                    gl -= (l / nl) * (l / nl);
                    gr -= (r / nr) * (r / nr);
                }
                const double gain = parent_gini - (nl * gl + nr * gr) / n;
                if (gain > best_gain) {
                    best_gain = gain;
                    best_feature = f;
                    best_threshold = scratch[i].first + 0.5 * (scratch[i + 1].first - scratch[i].first);
                }
            }
        }

        if (best_feature < 0) return make_leaf(idx);

        std::vector<int> left_idx, right_idx;
        left_idx.reserve(n);
        right_idx.reserve(n);
        for (int i : idx)
            (x(i, best_feature) <= best_threshold ? left_idx : right_idx).push_back(i);
        if (left_idx.empty() || right_idx.empty()) return make_leaf(idx);

        const int node_index = static_cast<int>(nodes.size());
        nodes.emplace_back();
        nodes[node_index].feature = best_feature;
        nodes[node_index].threshold = best_threshold;
        const int left = build(left_idx, depth + 1);
        const int right = build(right_idx, depth + 1);
        nodes[node_index].left = left;
        nodes[node_index].right = right;
        return node_index;
    }
};

TreeModel build_tree(const Matrix& x, const std::vector<int>& y, int n_classes,
                     const TreeParams& params, int mtry, Rng* rng,
                     const std::vector<int>& sample_idx) {
    TreeBuilder builder{x, y, n_classes, params.max_depth, params.min_samples_split, mtry, rng};
    std::vector<int> idx = sample_idx;
    builder.build(idx, 0);
    TreeModel model;
    model.nodes = std::move(builder.nodes);
    model.n_classes = n_classes;
    model.n_features = static_cast<int>(x.cols);
    model.params = params;
    return model;
}

const std::vector<double>& tree_leaf_probs(const TreeModel& t, const double* row) {
    int node = 0;
    while (t.nodes[node].feature >= 0)
        node = (row[t.nodes[node].feature] <= t.nodes[node].threshold) ? t.nodes[node].left
                                                                       : t.nodes[node].right;
    return t.nodes[node].class_probs;
}

int argmax_lowest(const std::vector<double>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v[i] > v[best]) best = i;
    return best;
}

void check_training_inputs(const Matrix& x, const std::vector<int>& y) {
    if (x.rows != y.size()) fail(ErrorKind::Shape, "X rows and y length differ");
    if (x.rows < 2) fail(ErrorKind::Size, "training requires at least 2 samples");
    std::set<int> classes(y.begin(), y.end());
    if (classes.size() < 2) fail(ErrorKind::Degenerate, "training requires at least 2 classes");
}

}  // namespace

TreeModel train_decision_tree(const Matrix& x, const std::vector<int>& y, const TreeParams& params,
                              std::uint64_t seed) {
    (void)seed;  // CART here is fully deterministic; kept for API uniformity
    check_training_inputs(x, y);
    const int n_classes = count_classes(y);
    std::vector<int> idx(x.rows);
    std::iota(idx.begin(), idx.end(), 0);
    return build_tree(x, y, n_classes, params, 0, nullptr, idx);
}

ForestModel train_random_forest(const Matrix& x, const std::vector<int>& y,
                                const ForestParams& params, std::uint64_t seed, int jobs) {
    check_training_inputs(x, y);
    if (params.n_estimators < 1) fail(ErrorKind::Config, "n_estimators >= 1");
    const int n_classes = count_classes(y);
    const int n = static_cast<int>(x.rows);
    const int d = static_cast<int>(x.cols);
    int mtry = params.features_per_split > 0 ? params.features_per_split
                                             : static_cast<int>(std::floor(std::sqrt(d)));
    mtry = std::min(mtry, d);

    ForestModel forest;
    forest.n_classes = n_classes;
    forest.n_features = d;
    forest.params = params;
    forest.trees.resize(params.n_estimators);
    forest.tree_seeds.resize(params.n_estimators);
    for (int t = 0; t < params.n_estimators; ++t)
        forest.tree_seeds[t] = derive_seed(seed, {0x74726565ULL, static_cast<std::uint64_t>(t)});

    TreeParams tree_params{params.max_depth, params.min_samples_split};
    auto build_one = [&](int t) {
        Rng rng(forest.tree_seeds[t]);
        std::vector<int> idx(n);
        if (params.bootstrap)
            for (int i = 0; i < n; ++i) idx[i] = static_cast<int>(rng.uniform_index(n));
        else
            std::iota(idx.begin(), idx.end(), 0);
        forest.trees[t] =
            build_tree(x, y, n_classes, tree_params, mtry < d ? mtry : 0, &rng, idx);
    };

    const int workers = std::max(1, std::min(jobs, params.n_estimators));
    if (workers == 1) {
        for (int t = 0; t < params.n_estimators; ++t) build_one(t);
    } else {
        std::atomic<int> next{0};
        auto loop = [&] {
            while (true) {
                const int t = next.fetch_add(1);
                if (t >= params.n_estimators) break;
                build_one(t);
            }
        };
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(loop);
        for (auto& th : pool) th.join();
    }
    return forest;
}

LinearSvmModel train_linear_svm(const Matrix& x, const std::vector<int>& y,
                                const SvmParams& params, std::uint64_t seed) {
    check_training_inputs(x, y);
    if (!(params.c > 0.0)) fail(ErrorKind::Config, "C must be positive");
    if (params.epochs < 1) fail(ErrorKind::Config, "epochs >= 1");
    const int n = static_cast<int>(x.rows);
    const int d = static_cast<int>(x.cols);
    const int n_classes = count_classes(y);

    LinearSvmModel model;
    model.n_classes = n_classes;
    model.n_features = d;
    model.params = params;
    model.weights.assign(n_classes, std::vector<double>(d, 0.0));
    model.bias.assign(n_classes, 0.0);

    // flag unscaled inputs (zero-variance columns are already informationless)
    for (int c = 0; c < d; ++c) {
        double mean = 0.0;
        for (int i = 0; i < n; ++i) mean += x(i, c);
        mean /= n;
        double ss = 0.0;
        for (int i = 0; i < n; ++i) ss += (x(i, c) - mean) * (x(i, c) - mean);
        const double std = std::sqrt(ss / n);
        if (std > 0.0 && std::abs(std - 1.0) > 0.5) model.standardization_warning = true;
    }

    const double lambda = 1.0 / (params.c * n);
    const double ball_radius = 1.0 / std::sqrt(lambda);
    Rng rng(derive_seed(seed, {0x73766dULL}));
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);

    // averaged subgradient descent: iterates from the second half of
    // training are averaged into the returned weights
    const long long total_steps = static_cast<long long>(n) * params.epochs;
    const long long avg_start = total_steps / 2;
    std::vector<std::vector<double>> w_sum(n_classes, std::vector<double>(d, 0.0));
    std::vector<double> b_sum(n_classes, 0.0);
    long long avg_count = 0;

    double t_step = 1.0;
    for (int epoch = 0; epoch < params.epochs; ++epoch) {
        rng.shuffle(order);
        for (int oi = 0; oi < n; ++oi) {
            const int i = order[oi];
            const double* row = x.row_ptr(i);
            const double eta = 1.0 / (lambda * t_step);
            const double decay = 1.0 - eta * lambda;
            for (int c = 0; c < n_classes; ++c) {
                const double target = (y[i] == c) ? 1.0 : -1.0;
                auto& w = model.weights[c];
                double score = model.bias[c];
                for (int f = 0; f < d; ++f) score += w[f] * row[f];
                if (target * score < 1.0) {
                    for (int f = 0; f < d; ++f) w[f] = decay * w[f] + eta * target * row[f];
                    model.bias[c] += eta * target;
                } else {
                    for (int f = 0; f < d; ++f) w[f] *= decay;
                }
                // project onto the ||w|| <= 1/sqrt(lambda) ball
                double norm_sq = 0.0;
                for (double v : w) norm_sq += v * v;
                if (norm_sq > ball_radius * ball_radius) {
                    const double scale = ball_radius / std::sqrt(norm_sq);
                    for (double& v : w) v *= scale;
                }
            }
            if (static_cast<long long>(t_step) > avg_start) {
                for (int c = 0; c < n_classes; ++c) {
                    for (int f = 0; f < d; ++f) w_sum[c][f] += model.weights[c][f];
                    b_sum[c] += model.bias[c];
                }
                ++avg_count;
            }
            t_step += 1.0;
        }

        double objective = 0.0;
        for (int c = 0; c < n_classes; ++c) {
            const auto& w = model.weights[c];
            double norm_sq = 0.0;
            for (double v : w) norm_sq += v * v;
            double hinge = 0.0;
            for (int i = 0; i < n; ++i) {
                const double target = (y[i] == c) ? 1.0 : -1.0;
                double score = model.bias[c];
                const double* row = x.row_ptr(i);
                for (int f = 0; f < d; ++f) score += w[f] * row[f];
                hinge += std::max(0.0, 1.0 - target * score);
            }
            objective += 0.5 * lambda * norm_sq + hinge / n;
        }
        model.epoch_objective.push_back(objective);
    }

    if (avg_count > 0) {
        for (int c = 0; c < n_classes; ++c) {
            for (int f = 0; f < d; ++f) model.weights[c][f] = w_sum[c][f] / avg_count;
            model.bias[c] = b_sum[c] / avg_count;
        }
    }
    return model;
}

// ---- common prediction surface ---------------------------------------------

int model_n_features(const Model& m) {
    return std::visit([](const auto& v) { return v.n_features; }, m);
}

int model_n_classes(const Model& m) {
    return std::visit([](const auto& v) { return v.n_classes; }, m);
}

Matrix predict_scores(const Model& m, const Matrix& x) {
    if (static_cast<int>(x.cols) != model_n_features(m))
        fail(ErrorKind::Shape, "feature dimension mismatch: model expects " +
                                   std::to_string(model_n_features(m)) + ", got " +
                                   std::to_string(x.cols));
    const int n_classes = model_n_classes(m);
    Matrix scores(x.rows, n_classes);

    if (std::holds_alternative<TreeModel>(m)) {
        const auto& tree = std::get<TreeModel>(m);
        for (std::size_t i = 0; i < x.rows; ++i) {
            const auto& probs = tree_leaf_probs(tree, x.row_ptr(i));
            for (int c = 0; c < n_classes; ++c) scores(i, c) = probs[c];
        }
    } else if (std::holds_alternative<ForestModel>(m)) {
        const auto& forest = std::get<ForestModel>(m);
        for (std::size_t i = 0; i < x.rows; ++i) {
            const double* row = x.row_ptr(i);
            for (const auto& tree : forest.trees) {
                const auto& probs = tree_leaf_probs(tree, row);
                scores(i, argmax_lowest(probs)) += 1.0;  // one vote per tree
            }
            for (int c = 0; c < n_classes; ++c) scores(i, c) /= forest.trees.size();
        }
    } else {
        const auto& svm = std::get<LinearSvmModel>(m);
        for (std::size_t i = 0; i < x.rows; ++i) {
            const double* row = x.row_ptr(i);
            for (int c = 0; c < n_classes; ++c) {
                double s = svm.bias[c];
                for (int f = 0; f < svm.n_features; ++f) s += svm.weights[c][f] * row[f];
                scores(i, c) = s;
            }
        }
    }
    return scores;
}

std::vector<int> predict(const Model& m, const Matrix& x) {
    const Matrix scores = predict_scores(m, x);
    std::vector<int> labels(x.rows);
    std::vector<double> row(scores.cols);
    for (std::size_t i = 0; i < x.rows; ++i) {
        for (std::size_t c = 0; c < scores.cols; ++c) row[c] = scores(i, c);
        labels[i] = argmax_lowest(row);
    }
    return labels;
}

// ---- JSON persistence -----------------------------------------------------

namespace {

json tree_to_json(const TreeModel& t) {
    json j;
    j["kind"] = "dt";
    j["n_classes"] = t.n_classes;
    j["n_features"] = t.n_features;
    j["max_depth"] = t.params.max_depth;
    j["min_samples_split"] = t.params.min_samples_split;
    json nodes = json::array();
    for (const auto& node : t.nodes) {
        json e;
        e["feature"] = node.feature;
        e["threshold"] = node.threshold;
        e["left"] = node.left;
        e["right"] = node.right;
        e["probs"] = node.class_probs;
        nodes.push_back(e);
    }
    j["nodes"] = nodes;
    return j;
}

}  // namespace

std::string model_to_json(const Model& m) {
    json j;
    if (std::holds_alternative<TreeModel>(m)) {
        j = tree_to_json(std::get<TreeModel>(m));
    } else if (std::holds_alternative<ForestModel>(m)) {
        const auto& f = std::get<ForestModel>(m);
        j["kind"] = "rf";
        j["n_classes"] = f.n_classes;
        j["n_features"] = f.n_features;
        j["n_estimators"] = f.params.n_estimators;
        j["max_depth"] = f.params.max_depth;
        j["min_samples_split"] = f.params.min_samples_split;
        j["bootstrap"] = f.params.bootstrap;
        j["features_per_split"] = f.params.features_per_split;
        j["tree_seeds"] = f.tree_seeds;
        json trees = json::array();
        for (const auto& tree : f.trees) trees.push_back(tree_to_json(tree));
        j["trees"] = trees;
    } else {
        const auto& s = std::get<LinearSvmModel>(m);
        j["kind"] = "svm";
        j["n_classes"] = s.n_classes;
        j["n_features"] = s.n_features;
        j["c"] = s.params.c;
        j["epochs"] = s.params.epochs;
        j["weights"] = s.weights;
        j["bias"] = s.bias;
        j["standardization_warning"] = s.standardization_warning;
        j["epoch_objective"] = s.epoch_objective;
    }
    return j.dump();
}

namespace {

Model model_from_json_obj(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "dt") {
        TreeModel t;
        t.n_classes = j.at("n_classes").get<int>();
        t.n_features = j.at("n_features").get<int>();
        t.params.max_depth = j.at("max_depth").get<int>();
        t.params.min_samples_split = j.at("min_samples_split").get<int>();
        for (const auto& e : j.at("nodes")) {
            TreeNode node;
            node.feature = e.at("feature").get<int>();
            node.threshold = e.at("threshold").get<double>();
            node.left = e.at("left").get<int>();
            node.right = e.at("right").get<int>();
            node.class_probs = e.at("probs").get<std::vector<double>>();
            t.nodes.push_back(std::move(node));
        }
        return t;
    }
    if (kind == "rf") {
        ForestModel f;
        f.n_classes = j.at("n_classes").get<int>();
        f.n_features = j.at("n_features").get<int>();
        f.params.n_estimators = j.at("n_estimators").get<int>();
        f.params.max_depth = j.at("max_depth").get<int>();
        f.params.min_samples_split = j.at("min_samples_split").get<int>();
        f.params.bootstrap = j.at("bootstrap").get<bool>();
        f.params.features_per_split = j.at("features_per_split").get<int>();
        f.tree_seeds = j.at("tree_seeds").get<std::vector<std::uint64_t>>();
        for (const auto& tj : j.at("trees"))
            f.trees.push_back(std::get<TreeModel>(model_from_json_obj(tj)));
        return f;
    }
    if (kind == "svm") {
        LinearSvmModel s;
        s.n_classes = j.at("n_classes").get<int>();
        s.n_features = j.at("n_features").get<int>();
        s.params.c = j.at("c").get<double>();
        s.params.epochs = j.at("epochs").get<int>();
        s.weights = j.at("weights").get<std::vector<std::vector<double>>>();
        s.bias = j.at("bias").get<std::vector<double>>();
        s.standardization_warning = j.at("standardization_warning").get<bool>();
        s.epoch_objective = j.at("epoch_objective").get<std::vector<double>>();
        return s;
    }
    fail(ErrorKind::Parse, "unknown model kind '" + kind + "'");
}

}  // namespace

Model model_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, std::string("model json: ") + e.what());
    }
    try {
        return model_from_json_obj(j);
    } catch (const json::exception& e) {
        fail(ErrorKind::Parse, std::string("model json: ") + e.what());
    }
}

void save_model(const Model& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Io, "cannot write " + path);
    out << model_to_json(m) << '\n';
}

Model load_model(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Io, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return model_from_json(ss.str());
}

// ---- grid search with grouped CV -----------------------------------------

GridSpec default_grid(ModelKind kind) {
    switch (kind) {
        case ModelKind::DecisionTree:
            return {{{"max_depth", {3, 5, 8, 12, 0}}}};  // 0 = unlimited
        case ModelKind::RandomForest:
            return {{{"n_estimators", {50, 100, 200}}, {"max_depth", {5, 10, 0}}}};
        case ModelKind::LinearSvm:
            return {{{"C", {0.01, 0.1, 1.0, 10.0}}}};
    }
    fail(ErrorKind::Config, "unknown model kind");
}

Model train_model(ModelKind kind, const ParamMap& params, const Matrix& x,
                  const std::vector<int>& y, int n_classes, std::uint64_t seed) {
    auto get = [&](const std::string& name, double fallback) {
        auto it = params.find(name);
        return it == params.end() ? fallback : it->second;
    };
    for (const auto& [name, value] : params) {
        (void)value;
        static const std::set<std::string> known = {"max_depth", "min_samples_split",
                                                    "n_estimators", "C", "epochs",
                                                    "features_per_split"};
        if (!known.count(name)) fail(ErrorKind::Config, "unknown hyperparameter '" + name + "'");
    }
    (void)n_classes;  // inferred from y by the trainers
    switch (kind) {
        case ModelKind::DecisionTree: {
            TreeParams p;
            p.max_depth = static_cast<int>(get("max_depth", 0));
            p.min_samples_split = static_cast<int>(get("min_samples_split", 2));
            return train_decision_tree(x, y, p, seed);
        }
        case ModelKind::RandomForest: {
            ForestParams p;
            p.n_estimators = static_cast<int>(get("n_estimators", 100));
            p.max_depth = static_cast<int>(get("max_depth", 0));
            p.min_samples_split = static_cast<int>(get("min_samples_split", 2));
            p.features_per_split = static_cast<int>(get("features_per_split", 0));
            return train_random_forest(x, y, p, seed);
        }
        case ModelKind::LinearSvm: {
            SvmParams p;
            p.c = get("C", 1.0);
            p.epochs = static_cast<int>(get("epochs", 40));
            return train_linear_svm(x, y, p, seed);
        }
    }
    fail(ErrorKind::Config, "unknown model kind");
}

std::vector<std::vector<int>> grouped_folds(const std::vector<std::string>& groups, int k,
                                            const std::vector<int>& y, int n_classes,
                                            std::uint64_t seed) {
    if (k < 2) fail(ErrorKind::Config, "k >= 2 folds required");
    std::vector<std::string> distinct(groups.begin(), groups.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (static_cast<int>(distinct.size()) < k)
        fail(ErrorKind::Config, "fewer groups (" + std::to_string(distinct.size()) +
                                    ") than folds (" + std::to_string(k) + ")");

    std::map<std::string, std::vector<int>> members;
    for (std::size_t i = 0; i < groups.size(); ++i) members[groups[i]].push_back(static_cast<int>(i));

    // seed-shuffled order, then largest groups first so they are placed
    // while there is still room to balance
    Rng rng(derive_seed(seed, {0x666f6c64ULL}));
    rng.shuffle(distinct);
    std::stable_sort(distinct.begin(), distinct.end(), [&](const auto& a, const auto& b) {
        return members[a].size() > members[b].size();
    });

    std::vector<std::vector<int>> folds(k);
    std::vector<std::vector<double>> fold_label_counts(k, std::vector<double>(n_classes, 0.0));
    for (const auto& g : distinct) {
        std::vector<double> g_counts(n_classes, 0.0);
        for (int i : members[g]) g_counts[y[i]] += 1.0;
        int best_fold = 0;
        double best_cost = 0.0;
        for (int f = 0; f < k; ++f) {
            double cost = 0.0;
            for (int c = 0; c < n_classes; ++c) {
                const double v = fold_label_counts[f][c] + g_counts[c];
                cost += v * v;
            }
            if (f == 0 || cost < best_cost) {
                best_cost = cost;
                best_fold = f;
            }
        }
        for (int i : members[g]) folds[best_fold].push_back(i);
        for (int c = 0; c < n_classes; ++c) fold_label_counts[best_fold][c] += g_counts[c];
    }
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

void verify_grouped_folds(const std::vector<std::vector<int>>& folds,
                          const std::vector<std::string>& groups) {
    std::vector<int> seen(groups.size(), 0);
    std::map<std::string, int> group_fold;
    for (std::size_t f = 0; f < folds.size(); ++f) {
        for (int i : folds[f]) {
            if (i < 0 || i >= static_cast<int>(groups.size()))
                fail(ErrorKind::Validation, "fold index out of range");
            ++seen[i];
            auto [it, inserted] = group_fold.emplace(groups[i], static_cast<int>(f));
            if (!inserted && it->second != static_cast<int>(f))
                fail(ErrorKind::Validation,
                     "group '" + groups[i] + "' appears in folds " +
                         std::to_string(it->second) + " and " + std::to_string(f));
        }
    }
    for (std::size_t i = 0; i < seen.size(); ++i)
        if (seen[i] != 1)
            fail(ErrorKind::Validation, "sample " + std::to_string(i) + " appears " +
                                            std::to_string(seen[i]) + " times across folds");
}

CvReport grid_search_cv(ModelKind kind, const GridSpec& grid, const Matrix& x,
                        const std::vector<int>& y, int n_classes,
                        const std::vector<std::string>& groups, int k, std::uint64_t seed) {
    if (x.rows != y.size() || x.rows != groups.size())
        fail(ErrorKind::Shape, "X, y, groups must have matching lengths");
    const auto folds = grouped_folds(groups, k, y, n_classes, seed);
    verify_grouped_folds(folds, groups);

    // cartesian product of axis values, earlier axes varying slowest
    std::vector<ParamMap> settings;
    settings.emplace_back();
    for (const auto& [name, values] : grid.axes) {
        std::vector<ParamMap> expanded;
        for (const auto& base : settings)
            for (double v : values) {
                ParamMap p = base;
                p[name] = v;
                expanded.push_back(std::move(p));
            }
        settings = std::move(expanded);
    }
    if (settings.empty()) fail(ErrorKind::Config, "empty grid");

    CvReport report;
    for (std::size_t si = 0; si < settings.size(); ++si) {
        CvReport::Entry entry;
        entry.setting = settings[si];
        for (std::size_t fi = 0; fi < folds.size(); ++fi) {
            std::vector<std::size_t> train_idx;
            for (std::size_t fj = 0; fj < folds.size(); ++fj)
                if (fj != fi)
                    for (int i : folds[fj]) train_idx.push_back(static_cast<std::size_t>(i));
            std::vector<std::size_t> val_idx(folds[fi].begin(), folds[fi].end());
            if (val_idx.empty()) continue;

            Matrix x_train = x.select_rows(train_idx);
            Matrix x_val = x.select_rows(val_idx);
            std::vector<int> y_train, y_val;
            for (auto i : train_idx) y_train.push_back(y[i]);
            for (auto i : val_idx) y_val.push_back(y[i]);

            const ZscoreModel z = zscore_fit(x_train);
            const Model model = train_model(
                kind, settings[si], zscore_apply(z, x_train), y_train, n_classes,
                derive_seed(seed, {0x67726964ULL, si, fi}));
            const std::vector<int> pred = predict(model, zscore_apply(z, x_val));
            int correct = 0;
            for (std::size_t i = 0; i < pred.size(); ++i)
                if (pred[i] == y_val[i]) ++correct;
            entry.fold_accuracy.push_back(static_cast<double>(correct) / pred.size());
        }
        double mean = 0.0;
        for (double a : entry.fold_accuracy) mean += a;
        mean /= entry.fold_accuracy.size();
        double ss = 0.0;
        for (double a : entry.fold_accuracy) ss += (a - mean) * (a - mean);
        entry.mean_accuracy = mean;
        entry.std_accuracy = std::sqrt(ss / entry.fold_accuracy.size());
        report.entries.push_back(std::move(entry));
    }

    report.chosen = 0;
    for (std::size_t si = 1; si < report.entries.size(); ++si)
        if (report.entries[si].mean_accuracy > report.entries[report.chosen].mean_accuracy)
            report.chosen = si;
    return report;
}

}  // namespace touchtell
