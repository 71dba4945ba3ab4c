#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cfs/dataset.hpp"
#include "cfs/ranker.hpp"

namespace cfs {

/// Feature selection methods on the benchmark grid. Cfs ranks by mean Menger
/// curvature; Pca is feature extraction; the rest are univariate filters.
enum class SelectorKind { Cfs, Pca, InfoGain, MutualInfo, ChiSquare };

/// CLI spellings: cfs, pca, ig, mi, cst.
std::string to_string(SelectorKind kind);
SelectorKind parse_selector(std::string_view name);
const std::vector<SelectorKind>& all_selectors();

inline constexpr int kDefaultBinCount = 10;

/// Principal axes of the sample covariance of mean-centered data. Rows of
/// `components` are the axes, sorted by descending eigenvalue, each with its
/// largest-magnitude entry made positive so results are reproducible.
struct PcaModel {
    Eigen::VectorXd column_means;
    Eigen::MatrixXd components;  // k x k, orthonormal rows
    Eigen::VectorXd eigenvalues; // non-negative, non-increasing
};

PcaModel pca_fit(const Eigen::MatrixXd& features);

/// Centered data projected onto the top n_components axes.
Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& features,
                              int n_components);

/// Inverse of a full projection; used by round-trip checks.
Eigen::MatrixXd pca_inverse_transform(const PcaModel& model, const Eigen::MatrixXd& projected);

enum class BinPolicy {
    EqualWidth,     // bin_count equal slices of [min, max]
    EqualFrequency, // quantile edges
};

/// Maps real values to bin ids in [0, bin_count). A constant vector lands in
/// a single bin. Equal values always share a bin under either policy.
std::vector<int> discretize(const Eigen::VectorXd& values, int bin_count, BinPolicy policy);

/// Shannon entropy (bits) of a discrete sample given as ids.
double entropy_bits(std::span<const int> ids);

/// I(bins; labels) in bits; 0*log 0 terms contribute 0.
double mutual_information_bits(std::span<const int> bins, std::span<const int> labels);

/// Information gain H(Y) - H(Y|F) with equal-width binning. Identical to
/// mutual information as a quantity; the battery distinguishes IG from MI
/// only by bin policy.
double score_ig(const Eigen::VectorXd& feature, std::span<const int> labels,
                int bin_count = kDefaultBinCount);

/// Mutual information with equal-frequency (quantile) binning.
double score_mi(const Eigen::VectorXd& feature, std::span<const int> labels,
                int bin_count = kDefaultBinCount);

struct Chi2Result {
    double statistic = 0.0;
    /// Cells of the contingency table whose expected count was zero; they
    /// contribute 0 to the statistic.
    int zero_expected_cells = 0;
};

/// Pearson chi-square of the (equal-width feature bin) x class contingency
/// table.
Chi2Result score_chi2(const Eigen::VectorXd& feature, std::span<const int> labels,
                      int bin_count = kDefaultBinCount);

/// Ranks all features with a filter selector. Filters score Min-Max
/// normalized features; Cfs delegates to rank_features. Throws ConfigError
/// for Pca, which extracts rather than ranks.
RankedFeatures rank_with(SelectorKind kind, const Dataset& ds, int bin_count = kDefaultBinCount);

struct SelectionResult {
    Dataset data;
    RankedFeatures ranking;
    /// True for Pca: `data` holds projected components (pc0..pc{k-1}), not
    /// original columns, and the ranking lists eigenvalues per component.
    bool extracted = false;
};

/// Top-k selection with any selector. Filter kinds rank on Min-Max normalized
/// features and take the top k raw columns; Pca fits on Min-Max normalized
/// features and returns the projection.
SelectionResult select_with(SelectorKind kind, const Dataset& ds, int k,
                            int bin_count = kDefaultBinCount);

} // namespace cfs
