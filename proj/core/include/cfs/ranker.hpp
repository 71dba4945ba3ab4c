#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cfs/curvature.hpp"
#include "cfs/dataset.hpp"

namespace cfs {

struct FeatureWeight {
    int feature_id = 0;
    double weight = 0.0; // mean Menger curvature, always >= 0
};

/// All features ordered by weight descending; ties broken by ascending
/// feature id.
struct RankedFeatures {
    std::vector<FeatureWeight> ordered;
    std::string tie_policy = "ascending feature_id";
};

/// Breaks a Min-Max normalized dataset into one 2-D plane per feature: the
/// (feature value, normalized class id) pairs in dataset row order. Class ids
/// are mapped onto [0,1] like any column so multi-class label scales stay
/// comparable. The plane at index i belongs to feature i. Requires every
/// feature value in [0,1] (caller contract) and at least 3 rows.
std::vector<std::vector<Point2>> decompose_planes(const Dataset& normalized);

/// Mean Menger curvature over the sliding interior triples of a plane:
/// (1/(m-2)) * sum of MC(p[j-1], p[j], p[j+1]) for j = 1..m-2. The first and
/// last points are boundary points and get no curvature of their own.
/// Degenerate triples contribute 0 while keeping the m-2 divisor. Requires
/// at least 3 points.
double mean_curvature_weight(std::span<const Point2> plane);

struct RankOptions {
    /// Sort each plane by feature value before walking triples, instead of
    /// using dataset row order. Off by default; row order is the reference
    /// procedure.
    bool sort_planes_by_value = false;
};

/// Min-Max normalizes a copy of the dataset, weights every feature by its
/// plane's mean curvature, and sorts descending. Per-feature weights are
/// computed in parallel with output order fixed by feature id.
RankedFeatures rank_features(const Dataset& ds, const RankOptions& options = {});

/// Restricts the raw (un-normalized) dataset to the top-k ranked feature
/// columns, in rank order, preserving rows and labels. Selection always
/// indexes the original data; normalization is a separate downstream stage.
Dataset select_top_k(const Dataset& ds_raw, const RankedFeatures& ranks, int k);

/// Columns whose weight is strictly greater than the threshold, in rank
/// order. Returns nullopt when nothing clears the threshold.
std::optional<Dataset> select_by_threshold(const Dataset& ds_raw, const RankedFeatures& ranks,
                                           double threshold);

/// Ranking report: one line per feature as (rank, feature_name, feature_id,
/// weight), descending.
void write_ranking_csv(const RankedFeatures& ranks,
                       const std::vector<std::string>& feature_names, std::ostream& out);
std::string ranking_to_csv(const RankedFeatures& ranks,
                           const std::vector<std::string>& feature_names);
std::string ranking_to_json(const RankedFeatures& ranks,
                            const std::vector<std::string>& feature_names);

} // namespace cfs
