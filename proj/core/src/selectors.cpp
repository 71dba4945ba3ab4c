#include "cfs/selectors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "cfs/errors.hpp"
#include "cfs/normalize.hpp"

namespace cfs {

std::string to_string(SelectorKind kind) {
    switch (kind) {
        case SelectorKind::Cfs: return "cfs";
        case SelectorKind::Pca: return "pca";
        case SelectorKind::InfoGain: return "ig";
        case SelectorKind::MutualInfo: return "mi";
        case SelectorKind::ChiSquare: return "cst";
    }
    throw ConfigError("unknown selector kind");
}

SelectorKind parse_selector(std::string_view name) {
    for (SelectorKind kind : all_selectors()) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown selector '" + std::string(name) +
                      "' (valid: cfs, pca, ig, mi, cst)");
}

const std::vector<SelectorKind>& all_selectors() {
    static const std::vector<SelectorKind> kinds = {
        SelectorKind::Cfs, SelectorKind::Pca, SelectorKind::InfoGain,
        SelectorKind::MutualInfo, SelectorKind::ChiSquare,
    };
    return kinds;
}

PcaModel pca_fit(const Eigen::MatrixXd& features) {
    if (features.rows() < 2) {
        throw DataError("pca needs at least 2 rows, got " + std::to_string(features.rows()));
    }
    if (!features.allFinite()) {
        throw DataError("pca: non-finite input value");
    }
    PcaModel model;
    model.column_means = features.colwise().mean();
    const Eigen::MatrixXd centered = features.rowwise() - model.column_means.transpose();
    const Eigen::MatrixXd cov =
        (centered.transpose() * centered) / static_cast<double>(features.rows() - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success) {
        throw DataError("pca: eigendecomposition failed");
    }
    // SelfAdjointEigenSolver sorts ascending; reverse for descending variance.
    const Eigen::Index k = cov.rows();
    model.eigenvalues.resize(k);
    model.components.resize(k, k);
    for (Eigen::Index i = 0; i < k; ++i) {
        const Eigen::Index src = k - 1 - i;
        // Rank-deficient covariance is fine; clamp eigensolver jitter below zero.
        model.eigenvalues[i] = std::max(0.0, solver.eigenvalues()[src]);
        Eigen::VectorXd axis = solver.eigenvectors().col(src);
        Eigen::Index argmax = 0;
        axis.cwiseAbs().maxCoeff(&argmax);
        if (axis[argmax] < 0.0) axis = -axis;
        model.components.row(i) = axis.transpose();
    }
    return model;
}

Eigen::MatrixXd pca_transform(const PcaModel& model, const Eigen::MatrixXd& features,
                              int n_components) {
    const Eigen::Index k = model.components.rows();
    if (features.cols() != k) {
        throw ConfigError("pca: feature count does not match fitted model");
    }
    if (n_components < 1 || n_components > k) {
        throw ConfigError("pca: n_components " + std::to_string(n_components) +
                          " out of range [1, " + std::to_string(k) + "]");
    }
    const Eigen::MatrixXd centered = features.rowwise() - model.column_means.transpose();
    return centered * model.components.topRows(n_components).transpose();
}

Eigen::MatrixXd pca_inverse_transform(const PcaModel& model, const Eigen::MatrixXd& projected) {
    if (projected.cols() != model.components.rows()) {
        throw ConfigError("pca: inverse transform needs a full projection");
    }
    return (projected * model.components).rowwise() + model.column_means.transpose();
}

std::vector<int> discretize(const Eigen::VectorXd& values, int bin_count, BinPolicy policy) {
    if (bin_count < 2) throw ConfigError("bin count must be >= 2");
    if (!values.allFinite()) throw DataError("discretize: non-finite value");
    const Eigen::Index m = values.size();
    std::vector<int> bins(static_cast<std::size_t>(m), 0);
    if (m == 0) return bins;

    if (policy == BinPolicy::EqualWidth) {
        const double lo = values.minCoeff();
        const double range = values.maxCoeff() - lo;
        if (range == 0.0) return bins;
        for (Eigen::Index i = 0; i < m; ++i) {
            const int b = static_cast<int>((values[i] - lo) / range * bin_count);
            bins[static_cast<std::size_t>(i)] = std::clamp(b, 0, bin_count - 1);
        }
        return bins;
    }

    // Equal frequency: nearest-rank quantile edges. Bin b's inclusive upper
    // edge is the sorted value at index m*b/bins - 1, so a balanced sample
    // splits evenly and equal values always share a bin.
    std::vector<double> sorted(values.data(), values.data() + m);
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> edges;
    edges.reserve(static_cast<std::size_t>(bin_count - 1));
    for (int b = 1; b < bin_count; ++b) {
        const std::size_t rank = static_cast<std::size_t>(m) * static_cast<std::size_t>(b) /
                                 static_cast<std::size_t>(bin_count);
        edges.push_back(sorted[rank == 0 ? 0 : rank - 1]);
    }
    for (Eigen::Index i = 0; i < m; ++i) {
        const auto it = std::lower_bound(edges.begin(), edges.end(), values[i]);
        bins[static_cast<std::size_t>(i)] = static_cast<int>(it - edges.begin());
    }
    return bins;
}

double entropy_bits(std::span<const int> ids) {
    if (ids.empty()) return 0.0;
    int max_id = 0;
    for (int id : ids) max_id = std::max(max_id, id);
    std::vector<long> counts(static_cast<std::size_t>(max_id) + 1, 0);
    for (int id : ids) counts[static_cast<std::size_t>(id)]++;
    const double m = static_cast<double>(ids.size());
    double h = 0.0;
    for (long c : counts) {
        if (c == 0) continue;
        const double p = static_cast<double>(c) / m;
        h -= p * std::log2(p);
    }
    return h;
}

double mutual_information_bits(std::span<const int> bins, std::span<const int> labels) {
    if (bins.size() != labels.size()) {
        throw ConfigError("mutual information: bins and labels sizes differ");
    }
    if (bins.empty()) return 0.0;
    int n_bins = 0;
    int n_classes = 0;
    for (int b : bins) n_bins = std::max(n_bins, b + 1);
    for (int y : labels) n_classes = std::max(n_classes, y + 1);

    std::vector<long> joint(static_cast<std::size_t>(n_bins) * n_classes, 0);
    std::vector<long> bin_counts(static_cast<std::size_t>(n_bins), 0);
    std::vector<long> class_counts(static_cast<std::size_t>(n_classes), 0);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        joint[static_cast<std::size_t>(bins[i]) * n_classes + labels[i]]++;
        bin_counts[static_cast<std::size_t>(bins[i])]++;
        class_counts[static_cast<std::size_t>(labels[i])]++;
    }
    const double m = static_cast<double>(bins.size());
    double mi = 0.0;
    for (int b = 0; b < n_bins; ++b) {
        for (int y = 0; y < n_classes; ++y) {
            const long c = joint[static_cast<std::size_t>(b) * n_classes + y];
            if (c == 0) continue;
            const double p_joint = static_cast<double>(c) / m;
            const double p_bin = static_cast<double>(bin_counts[static_cast<std::size_t>(b)]) / m;
            const double p_class =
                static_cast<double>(class_counts[static_cast<std::size_t>(y)]) / m;
            mi += p_joint * std::log2(p_joint / (p_bin * p_class));
        }
    }
    return std::max(0.0, mi);
}

double score_ig(const Eigen::VectorXd& feature, std::span<const int> labels, int bin_count) {
    if (feature.size() < 2) throw DataError("ig: needs at least 2 values");
    const auto bins = discretize(feature, bin_count, BinPolicy::EqualWidth);
    return mutual_information_bits(bins, labels);
}

double score_mi(const Eigen::VectorXd& feature, std::span<const int> labels, int bin_count) {
    if (feature.size() < 2) throw DataError("mi: needs at least 2 values");
    const auto bins = discretize(feature, bin_count, BinPolicy::EqualFrequency);
    return mutual_information_bits(bins, labels);
}

Chi2Result score_chi2(const Eigen::VectorXd& feature, std::span<const int> labels,
                      int bin_count) {
    if (static_cast<std::size_t>(feature.size()) != labels.size()) {
        throw ConfigError("chi2: feature and labels sizes differ");
    }
    if (feature.size() < 2) throw DataError("chi2: needs at least 2 values");
    const auto bins = discretize(feature, bin_count, BinPolicy::EqualWidth);
    int n_bins = 0;
    int n_classes = 0;
    for (int b : bins) n_bins = std::max(n_bins, b + 1);
    for (int y : labels) n_classes = std::max(n_classes, y + 1);

    std::vector<long> observed(static_cast<std::size_t>(n_bins) * n_classes, 0);
    std::vector<long> bin_counts(static_cast<std::size_t>(n_bins), 0);
    std::vector<long> class_counts(static_cast<std::size_t>(n_classes), 0);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        observed[static_cast<std::size_t>(bins[i]) * n_classes + labels[i]]++;
        bin_counts[static_cast<std::size_t>(bins[i])]++;
        class_counts[static_cast<std::size_t>(labels[i])]++;
    }
    const double m = static_cast<double>(bins.size());
    Chi2Result result;
    for (int b = 0; b < n_bins; ++b) {
        for (int y = 0; y < n_classes; ++y) {
            const double expected =
                static_cast<double>(bin_counts[static_cast<std::size_t>(b)]) *
                static_cast<double>(class_counts[static_cast<std::size_t>(y)]) / m;
            if (expected == 0.0) {
                ++result.zero_expected_cells;
                continue;
            }
            const double o = static_cast<double>(observed[static_cast<std::size_t>(b) * n_classes + y]);
            result.statistic += (o - expected) * (o - expected) / expected;
        }
    }
    return result;
}

RankedFeatures rank_with(SelectorKind kind, const Dataset& ds, int bin_count) {
    if (kind == SelectorKind::Cfs) {
        return rank_features(ds);
    }
    if (kind == SelectorKind::Pca) {
        throw ConfigError("pca extracts components and does not rank original features");
    }
    const Eigen::MatrixXd normalized = minmax_per_feature(ds.features);
    RankedFeatures ranks;
    ranks.ordered.reserve(static_cast<std::size_t>(ds.n_features()));
    for (int j = 0; j < ds.n_features(); ++j) {
        double score = 0.0;
        switch (kind) {
            case SelectorKind::InfoGain:
                score = score_ig(normalized.col(j), ds.labels, bin_count);
                break;
            case SelectorKind::MutualInfo:
                score = score_mi(normalized.col(j), ds.labels, bin_count);
                break;
            case SelectorKind::ChiSquare:
                score = score_chi2(normalized.col(j), ds.labels, bin_count).statistic;
                break;
            default:
                throw ConfigError("unreachable selector");
        }
        ranks.ordered.push_back({j, score});
    }
    std::stable_sort(ranks.ordered.begin(), ranks.ordered.end(),
                     [](const FeatureWeight& a, const FeatureWeight& b) {
                         if (a.weight != b.weight) return a.weight > b.weight;
                         return a.feature_id < b.feature_id;
                     });
    return ranks;
}

SelectionResult select_with(SelectorKind kind, const Dataset& ds, int k, int bin_count) {
    if (kind == SelectorKind::Pca) {
        if (k < 1 || k > ds.n_features()) {
            throw ConfigError("pca components " + std::to_string(k) + " out of range [1, " +
                              std::to_string(ds.n_features()) + "]");
        }
        // Covariance of raw clinical features is scale-dominated; extract on
        // the Min-Max normalized matrix.
        const Eigen::MatrixXd normalized = minmax_per_feature(ds.features);
        const PcaModel model = pca_fit(normalized);
        SelectionResult result;
        result.extracted = true;
        result.data.features = pca_transform(model, normalized, k);
        result.data.labels = ds.labels;
        result.data.class_names = ds.class_names;
        result.data.dropped_columns = ds.dropped_columns;
        for (int c = 0; c < k; ++c) result.data.feature_names.push_back("pc" + std::to_string(c));
        result.data.provenance = ds.provenance + "; pca projection to " + std::to_string(k) +
                                 " component(s)";
        for (int c = 0; c < static_cast<int>(model.eigenvalues.size()); ++c) {
            result.ranking.ordered.push_back({c, model.eigenvalues[c]});
        }
        result.ranking.tie_policy = "eigenvalue order";
        return result;
    }
    SelectionResult result;
    result.ranking = rank_with(kind, ds, bin_count);
    result.data = select_top_k(ds, result.ranking, k);
    result.data.provenance += "; selected top " + std::to_string(k) + " by " + to_string(kind);
    return result;
}

} // namespace cfs
