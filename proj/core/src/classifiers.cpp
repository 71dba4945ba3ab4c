#include "cfs/classifiers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "cfs/errors.hpp"

namespace cfs {
namespace {

void check_fit_input(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                     int n_classes) {
    if (n_classes < 1) throw ConfigError("classifier: n_classes must be >= 1");
    if (features.rows() == 0) throw DataError("classifier: cannot fit on an empty matrix");
    if (static_cast<std::size_t>(features.rows()) != labels.size()) {
        throw ConfigError("classifier: row count and label count differ");
    }
    if (!features.allFinite()) throw DataError("classifier: non-finite feature value");
    for (int y : labels) {
        if (y < 0 || y >= n_classes) {
            throw ConfigError("classifier: label " + std::to_string(y) +
                              " outside [0, " + std::to_string(n_classes) + ")");
        }
    }
}

// n_features < 0 skips the width check (trees only look up the columns
// they split on).
void check_predict_input(const Eigen::MatrixXd& features, Eigen::Index n_features,
                         int n_classes) {
    if (n_classes == 0) throw ConfigError("classifier: predict before fit");
    if (n_features >= 0 && features.cols() != n_features) {
        throw ConfigError("classifier: feature count does not match fitted model");
    }
    if (!features.allFinite()) throw DataError("classifier: non-finite feature value");
}

double stable_sigmoid(double z) {
    if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

// log(1 + exp(z)) - t*z without overflow for large |z|.
double logistic_loss_term(double z, double t) {
    if (z > 0.0) return (1.0 - t) * z + std::log1p(std::exp(-z));
    return -t * z + std::log1p(std::exp(z));
}

} // namespace

GaussianNb::GaussianNb(const ClassifierConfig& config) : var_floor_(config.gnb_var_floor) {
    if (var_floor_ <= 0.0) throw ConfigError("gnb: variance floor must be positive");
}

void GaussianNb::fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                     int n_classes) {
    check_fit_input(features, labels, n_classes);
    n_classes_ = n_classes;
    const Eigen::Index d = features.cols();
    means_ = Eigen::MatrixXd::Zero(n_classes, d);
    variances_ = Eigen::MatrixXd::Constant(n_classes, d, var_floor_);
    priors_ = Eigen::VectorXd::Zero(n_classes);

    std::vector<long> counts(static_cast<std::size_t>(n_classes), 0);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        counts[static_cast<std::size_t>(labels[i])]++;
        means_.row(labels[i]) += features.row(static_cast<Eigen::Index>(i));
    }
    for (int c = 0; c < n_classes; ++c) {
        if (counts[static_cast<std::size_t>(c)] > 0) {
            means_.row(c) /= static_cast<double>(counts[static_cast<std::size_t>(c)]);
        }
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const Eigen::ArrayXd diff =
            (features.row(static_cast<Eigen::Index>(i)) - means_.row(labels[i])).array();
        variances_.row(labels[i]) += (diff * diff).matrix();
    }
    for (int c = 0; c < n_classes; ++c) {
        const long n = counts[static_cast<std::size_t>(c)];
        if (n > 0) {
            variances_.row(c) =
                ((variances_.row(c).array() - var_floor_) / static_cast<double>(n))
                    .max(var_floor_);
        }
        priors_[c] = static_cast<double>(n) / static_cast<double>(labels.size());
    }
}

std::vector<int> GaussianNb::predict(const Eigen::MatrixXd& features) const {
    check_predict_input(features, means_.cols(), n_classes_);
    constexpr double kLog2Pi = 1.8378770664093453;
    std::vector<int> out(static_cast<std::size_t>(features.rows()), 0);
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        double best = -std::numeric_limits<double>::infinity();
        int best_class = 0;
        for (int c = 0; c < n_classes_; ++c) {
            if (priors_[c] == 0.0) continue;
            double logp = std::log(priors_[c]);
            for (Eigen::Index j = 0; j < features.cols(); ++j) {
                const double var = variances_(c, j);
                const double diff = features(i, j) - means_(c, j);
                logp -= 0.5 * (kLog2Pi + std::log(var) + diff * diff / var);
            }
            if (logp > best) {
                best = logp;
                best_class = c;
            }
        }
        out[static_cast<std::size_t>(i)] = best_class;
    }
    return out;
}

KNearest::KNearest(const ClassifierConfig& config) : k_(config.k_neighbors) {
    if (k_ < 1) throw ConfigError("knn: k must be >= 1");
}

void KNearest::fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                   int n_classes) {
    check_fit_input(features, labels, n_classes);
    n_classes_ = n_classes;
    train_ = features;
    labels_ = labels;
}

std::vector<int> KNearest::predict(const Eigen::MatrixXd& features) const {
    check_predict_input(features, train_.cols(), n_classes_);
    const Eigen::Index m = train_.rows();
    const Eigen::Index kk = std::min<Eigen::Index>(k_, m);
    std::vector<int> out(static_cast<std::size_t>(features.rows()), 0);
    std::vector<double> dist(static_cast<std::size_t>(m));
    std::vector<double> scratch(static_cast<std::size_t>(m));
    std::vector<long> votes(static_cast<std::size_t>(n_classes_));

    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        for (Eigen::Index r = 0; r < m; ++r) {
            dist[static_cast<std::size_t>(r)] = (train_.row(r) - features.row(i)).squaredNorm();
        }
        scratch = dist;
        std::nth_element(scratch.begin(), scratch.begin() + (kk - 1), scratch.end());
        // Everything tied with the k-th distance votes, so the outcome is
        // independent of how equidistant training rows happen to be ordered.
        const double boundary = scratch[static_cast<std::size_t>(kk - 1)];
        std::fill(votes.begin(), votes.end(), 0);
        for (Eigen::Index r = 0; r < m; ++r) {
            if (dist[static_cast<std::size_t>(r)] <= boundary) {
                votes[static_cast<std::size_t>(labels_[static_cast<std::size_t>(r)])]++;
            }
        }
        int best_class = 0;
        long best_votes = -1;
        for (int c = 0; c < n_classes_; ++c) {
            if (votes[static_cast<std::size_t>(c)] > best_votes) {
                best_votes = votes[static_cast<std::size_t>(c)];
                best_class = c;
            }
        }
        out[static_cast<std::size_t>(i)] = best_class;
    }
    return out;
}

DecisionTree::DecisionTree(const ClassifierConfig& config) : max_depth_(config.dt_max_depth) {
    if (max_depth_ < 0) throw ConfigError("dt: max depth must be >= 0");
}

namespace {

// Gini impurity of a count vector, scaled by the sample count: the split
// criterion only ever compares sums of these, so the common 1/m factor is
// dropped.
double gini_times_n(const std::vector<long>& counts, long n) {
    if (n == 0) return 0.0;
    double sum_sq = 0.0;
    for (long c : counts) sum_sq += static_cast<double>(c) * static_cast<double>(c);
    return static_cast<double>(n) - sum_sq / static_cast<double>(n);
}

int majority_label(const std::vector<long>& counts) {
    int best = 0;
    long best_count = -1;
    for (std::size_t c = 0; c < counts.size(); ++c) {
        if (counts[c] > best_count) {
            best_count = counts[c];
            best = static_cast<int>(c);
        }
    }
    return best;
}

} // namespace

int DecisionTree::build(const Eigen::MatrixXd& features, const std::vector<int>& rows,
                        const std::vector<int>& labels, int depth) {
    std::vector<long> counts(static_cast<std::size_t>(n_classes_), 0);
    for (int r : rows) counts[static_cast<std::size_t>(labels[static_cast<std::size_t>(r)])]++;
    const long n = static_cast<long>(rows.size());

    const int node_id = static_cast<int>(nodes_.size());
    nodes_.emplace_back();
    nodes_[static_cast<std::size_t>(node_id)].label = majority_label(counts);

    const bool pure = std::count_if(counts.begin(), counts.end(),
                                    [](long c) { return c > 0; }) <= 1;
    if (depth >= max_depth_ || pure || n < 2) return node_id;

    double best_score = std::numeric_limits<double>::infinity();
    int best_feature = -1;
    double best_threshold = 0.0;

    std::vector<std::pair<double, int>> order(rows.size());
    std::vector<long> left_counts(static_cast<std::size_t>(n_classes_));
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
        for (std::size_t i = 0; i < rows.size(); ++i) {
            order[i] = {features(rows[i], j), labels[static_cast<std::size_t>(rows[i])]};
        }
        std::sort(order.begin(), order.end());
        std::fill(left_counts.begin(), left_counts.end(), 0);
        std::vector<long> right_counts = counts;
        for (std::size_t i = 0; i + 1 < order.size(); ++i) {
            left_counts[static_cast<std::size_t>(order[i].second)]++;
            right_counts[static_cast<std::size_t>(order[i].second)]--;
            const double a = order[i].first;
            const double b = order[i + 1].first;
            if (a == b) continue;
            const long n_left = static_cast<long>(i) + 1;
            const double score =
                gini_times_n(left_counts, n_left) + gini_times_n(right_counts, n - n_left);
            if (score < best_score) {
                double threshold = a + (b - a) / 2.0;
                // The midpoint can round up to b; x <= threshold must still
                // send exactly the first i+1 sorted rows left.
                if (threshold >= b) threshold = a;
                best_score = score;
                best_feature = static_cast<int>(j);
                best_threshold = threshold;
            }
        }
    }
    if (best_feature < 0) return node_id;

    std::vector<int> left_rows;
    std::vector<int> right_rows;
    for (int r : rows) {
        if (features(r, best_feature) <= best_threshold) {
            left_rows.push_back(r);
        } else {
            right_rows.push_back(r);
        }
    }
    const int left_id = build(features, left_rows, labels, depth + 1);
    const int right_id = build(features, right_rows, labels, depth + 1);
    DtNode& node = nodes_[static_cast<std::size_t>(node_id)];
    node.feature = best_feature;
    node.threshold = best_threshold;
    node.left = left_id;
    node.right = right_id;
    return node_id;
}

void DecisionTree::fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                       int n_classes) {
    check_fit_input(features, labels, n_classes);
    n_classes_ = n_classes;
    n_features_ = features.cols();
    nodes_.clear();
    std::vector<int> rows(static_cast<std::size_t>(features.rows()));
    std::iota(rows.begin(), rows.end(), 0);
    build(features, rows, labels, 0);
}

std::vector<int> DecisionTree::predict(const Eigen::MatrixXd& features) const {
    check_predict_input(features, n_features_, n_classes_);
    if (nodes_.empty()) throw ConfigError("dt: predict before fit");
    std::vector<int> out(static_cast<std::size_t>(features.rows()), 0);
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        int node = 0;
        while (nodes_[static_cast<std::size_t>(node)].feature >= 0) {
            const DtNode& cur = nodes_[static_cast<std::size_t>(node)];
            node = features(i, cur.feature) <= cur.threshold ? cur.left : cur.right;
        }
        out[static_cast<std::size_t>(i)] = nodes_[static_cast<std::size_t>(node)].label;
    }
    return out;
}

LogisticRegressionOvr::LogisticRegressionOvr(const ClassifierConfig& config)
    : l1_strength_(config.lr_l1_strength), max_iters_(config.lr_max_iters) {
    if (l1_strength_ < 0.0) throw ConfigError("lr: l1 strength must be >= 0");
    if (max_iters_ < 1) throw ConfigError("lr: max iterations must be >= 1");
}

void LogisticRegressionOvr::fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                                int n_classes) {
    check_fit_input(features, labels, n_classes);
    n_classes_ = n_classes;
    const Eigen::Index m = features.rows();
    const Eigen::Index d = features.cols();

    Eigen::MatrixXd design(m, d + 1);
    design.leftCols(d) = features;
    design.col(d).setOnes();

    // Fixed step 1/L, where L bounds the logistic Hessian: sigmoid' <= 1/4.
    const Eigen::MatrixXd gram = design.transpose() * design / (4.0 * static_cast<double>(m));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
    if (solver.info() != Eigen::Success) throw DataError("lr: step-size eigensolve failed");
    const double lipschitz = std::max(solver.eigenvalues().maxCoeff(), 1e-12);
    const double step = 1.0 / lipschitz;
    const double lambda = l1_strength_ / static_cast<double>(m);
    const double shrink = step * lambda;

    weights_ = Eigen::MatrixXd::Zero(n_classes, d + 1);
    loss_traces_.assign(static_cast<std::size_t>(n_classes), {});

    Eigen::VectorXd target(m);
    for (int c = 0; c < n_classes; ++c) {
        for (Eigen::Index i = 0; i < m; ++i) {
            target[i] = labels[static_cast<std::size_t>(i)] == c ? 1.0 : 0.0;
        }
        Eigen::VectorXd w = Eigen::VectorXd::Zero(d + 1);
        auto objective = [&](const Eigen::VectorXd& wv) {
            const Eigen::VectorXd z = design * wv;
            double loss = 0.0;
            for (Eigen::Index i = 0; i < m; ++i) loss += logistic_loss_term(z[i], target[i]);
            return loss / static_cast<double>(m) + lambda * wv.head(d).lpNorm<1>();
        };
        auto& trace = loss_traces_[static_cast<std::size_t>(c)];
        trace.push_back(objective(w));
        for (int iter = 0; iter < max_iters_; ++iter) {
            const Eigen::VectorXd z = design * w;
            Eigen::VectorXd residual(m);
            for (Eigen::Index i = 0; i < m; ++i) {
                residual[i] = stable_sigmoid(z[i]) - target[i];
            }
            w -= step / static_cast<double>(m) * (design.transpose() * residual);
            for (Eigen::Index j = 0; j < d; ++j) {
                if (w[j] > shrink) {
                    w[j] -= shrink;
                } else if (w[j] < -shrink) {
                    w[j] += shrink;
                } else {
                    w[j] = 0.0;
                }
            }
            const double obj = objective(w);
            trace.push_back(obj);
            const double prev = trace[trace.size() - 2];
            if (prev - obj <= 1e-10 * std::max(1.0, std::abs(prev))) break;
        }
        weights_.row(c) = w.transpose();
    }
}

std::vector<int> LogisticRegressionOvr::predict(const Eigen::MatrixXd& features) const {
    check_predict_input(features, weights_.cols() - 1, n_classes_);
    std::vector<int> out(static_cast<std::size_t>(features.rows()), 0);
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        double best = -std::numeric_limits<double>::infinity();
        int best_class = 0;
        for (int c = 0; c < n_classes_; ++c) {
            const double score =
                weights_.row(c).head(features.cols()).dot(features.row(i)) +
                weights_(c, weights_.cols() - 1);
            if (score > best) {
                best = score;
                best_class = c;
            }
        }
        out[static_cast<std::size_t>(i)] = best_class;
    }
    return out;
}

namespace {

std::map<std::string, ClassifierFactory>& registry_storage() {
    static std::map<std::string, ClassifierFactory> registry = {
        {"gnb", [](const ClassifierConfig& c) { return std::make_unique<GaussianNb>(c); }},
        {"knn", [](const ClassifierConfig& c) { return std::make_unique<KNearest>(c); }},
        {"dt", [](const ClassifierConfig& c) { return std::make_unique<DecisionTree>(c); }},
        {"lr",
         [](const ClassifierConfig& c) { return std::make_unique<LogisticRegressionOvr>(c); }},
    };
    return registry;
}

std::mutex& registry_mutex() {
    static std::mutex mutex;
    return mutex;
}

} // namespace

void register_classifier(const std::string& name, ClassifierFactory factory) {
    if (name.empty()) throw ConfigError("classifier registry: empty name");
    if (!factory) throw ConfigError("classifier registry: empty factory");
    std::lock_guard<std::mutex> lock(registry_mutex());
    registry_storage()[name] = std::move(factory);
}

std::unique_ptr<Classifier> make_classifier(std::string_view name,
                                            const ClassifierConfig& config) {
    ClassifierFactory factory;
    {
        std::lock_guard<std::mutex> lock(registry_mutex());
        auto& registry = registry_storage();
        const auto it = registry.find(std::string(name));
        if (it == registry.end()) {
            std::string known;
            for (const auto& [key, value] : registry) {
                if (!known.empty()) known += ", ";
                known += key;
            }
            throw ConfigError("unknown classifier '" + std::string(name) + "' (registered: " +
                              known + ")");
        }
        factory = it->second;
    }
    return factory(config);
}

std::vector<std::string> registered_classifiers() {
    std::lock_guard<std::mutex> lock(registry_mutex());
    std::vector<std::string> names;
    names.reserve(registry_storage().size());
    for (const auto& [key, value] : registry_storage()) names.push_back(key);
    return names;
}

const std::vector<std::string>& default_classifier_names() {
    static const std::vector<std::string> names = {"gnb", "knn", "dt", "lr"};
    return names;
}

} // namespace cfs
