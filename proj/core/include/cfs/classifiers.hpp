#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace cfs {

// Tunables for the built-in classifiers. Defaults follow the evaluation
// protocol: 3 neighbors, depth-5 trees, unit l1 strength.
struct ClassifierConfig {
    int k_neighbors = 3;
    int dt_max_depth = 5;
    double lr_l1_strength = 1.0;
    int lr_max_iters = 1000;
    double gnb_var_floor = 1e-9;
};

// Minimal supervised-learning interface. Labels are dense ids in
// [0, n_classes); predict returns one id per input row.
class Classifier {
  public:
    virtual ~Classifier() = default;
    virtual void fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                     int n_classes) = 0;
    virtual std::vector<int> predict(const Eigen::MatrixXd& features) const = 0;
    virtual std::string name() const = 0;
};

// Gaussian naive Bayes. Per-class feature means and maximum-likelihood
// variances (floored to keep densities finite), log-space posterior,
// ties broken toward the smallest class id.
class GaussianNb final : public Classifier {
  public:
    explicit GaussianNb(const ClassifierConfig& config = {});
    void fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
             int n_classes) override;
    std::vector<int> predict(const Eigen::MatrixXd& features) const override;
    std::string name() const override { return "gnb"; }

    // Fitted parameters, one row per class.
    const Eigen::MatrixXd& class_means() const { return means_; }
    const Eigen::MatrixXd& class_variances() const { return variances_; }
    const Eigen::VectorXd& class_priors() const { return priors_; }

  private:
    double var_floor_;
    int n_classes_ = 0;
    Eigen::MatrixXd means_;
    Eigen::MatrixXd variances_;
    Eigen::VectorXd priors_;
};

// k-nearest neighbors with Euclidean distance. Every training row tied
// with the k-th smallest distance is included, so predictions do not
// depend on training-row order; vote ties go to the smallest class id.
class KNearest final : public Classifier {
  public:
    explicit KNearest(const ClassifierConfig& config = {});
    void fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
             int n_classes) override;
    std::vector<int> predict(const Eigen::MatrixXd& features) const override;
    std::string name() const override { return "knn"; }

    int k() const { return k_; }

  private:
    int k_;
    int n_classes_ = 0;
    Eigen::MatrixXd train_;
    std::vector<int> labels_;
};

// One node of a fitted decision tree; feature == -1 marks a leaf.
struct DtNode {
    int feature = -1;
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int label = -1;
};

// CART-style tree on the Gini criterion. Split thresholds are midpoints
// between consecutive distinct feature values; equally good splits go to
// the lowest feature id, then the lowest threshold. Depth counts from
// the root at 0.
class DecisionTree final : public Classifier {
  public:
    explicit DecisionTree(const ClassifierConfig& config = {});
    void fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
             int n_classes) override;
    std::vector<int> predict(const Eigen::MatrixXd& features) const override;
    std::string name() const override { return "dt"; }

    // Flattened tree; node 0 is the root.
    const std::vector<DtNode>& nodes() const { return nodes_; }
    int max_depth() const { return max_depth_; }

  private:
    int max_depth_;
    int n_classes_ = 0;
    Eigen::Index n_features_ = -1;
    std::vector<DtNode> nodes_;

    int build(const Eigen::MatrixXd& features, const std::vector<int>& rows,
              const std::vector<int>& labels, int depth);
};

// One-vs-rest l1-regularized logistic regression, solved by proximal
// gradient descent with a fixed 1/L step. The intercept is never
// penalized. Each binary problem logs its objective once per iteration;
// the trace is non-increasing by construction.
class LogisticRegressionOvr final : public Classifier {
  public:
    explicit LogisticRegressionOvr(const ClassifierConfig& config = {});
    void fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
             int n_classes) override;
    std::vector<int> predict(const Eigen::MatrixXd& features) const override;
    std::string name() const override { return "lr"; }

    // One row per class: feature weights then the intercept.
    const Eigen::MatrixXd& weights() const { return weights_; }
    const std::vector<std::vector<double>>& loss_traces() const { return loss_traces_; }

  private:
    double l1_strength_;
    int max_iters_;
    int n_classes_ = 0;
    Eigen::MatrixXd weights_;
    std::vector<std::vector<double>> loss_traces_;
};

// Plug-in registry keyed by short name. The four built-ins (gnb, knn,
// dt, lr) are always present; registering an existing name replaces it,
// which is how tests install doubles.
using ClassifierFactory = std::function<std::unique_ptr<Classifier>(const ClassifierConfig&)>;

void register_classifier(const std::string& name, ClassifierFactory factory);
std::unique_ptr<Classifier> make_classifier(std::string_view name,
                                            const ClassifierConfig& config = {});
std::vector<std::string> registered_classifiers();
const std::vector<std::string>& default_classifier_names();

} // namespace cfs
