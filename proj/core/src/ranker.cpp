#include "cfs/ranker.hpp"

#include <algorithm>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cfs/errors.hpp"
#include "cfs/normalize.hpp"
#include "parallel_for.hpp"

namespace cfs {

std::vector<std::vector<Point2>> decompose_planes(const Dataset& normalized) {
    const int m = normalized.n_instances();
    if (m < 3) {
        throw DataError("plane decomposition needs at least 3 rows, got " + std::to_string(m));
    }
    const auto& x = normalized.features;
    if ((x.array() < 0.0).any() || (x.array() > 1.0).any()) {
        throw DataError("plane decomposition expects Min-Max normalized values in [0,1]");
    }

    // Class ids are Min-Max normalized over [0, n_classes-1]; a single class
    // collapses to 0 like any constant column.
    const int n_classes = normalized.n_classes();
    std::vector<double> y(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        y[static_cast<std::size_t>(i)] =
            n_classes > 1
                ? static_cast<double>(normalized.labels[static_cast<std::size_t>(i)]) /
                      (n_classes - 1)
                : 0.0;
    }

    std::vector<std::vector<Point2>> planes(static_cast<std::size_t>(normalized.n_features()));
    for (int j = 0; j < normalized.n_features(); ++j) {
        auto& plane = planes[static_cast<std::size_t>(j)];
        plane.resize(static_cast<std::size_t>(m));
        for (int i = 0; i < m; ++i) {
            plane[static_cast<std::size_t>(i)] = {x(i, j), y[static_cast<std::size_t>(i)]};
        }
    }
    return planes;
}

double mean_curvature_weight(std::span<const Point2> plane) {
    const std::size_t m = plane.size();
    if (m < 3) {
        throw DataError("mean curvature needs at least 3 points, got " + std::to_string(m));
    }
    double sum = 0.0;
    for (std::size_t j = 1; j + 1 < m; ++j) {
        sum += menger_curvature({plane[j - 1], plane[j], plane[j + 1]});
    }
    return sum / static_cast<double>(m - 2);
}

RankedFeatures rank_features(const Dataset& ds, const RankOptions& options) {
    Dataset normalized = ds;
    normalized.features = minmax_per_feature(ds.features);
    auto planes = decompose_planes(normalized);

    std::vector<FeatureWeight> weights(planes.size());
    detail::parallel_for(static_cast<int>(planes.size()), [&](int j) {
        auto& plane = planes[static_cast<std::size_t>(j)];
        if (options.sort_planes_by_value) {
            std::stable_sort(plane.begin(), plane.end(),
                             [](const Point2& a, const Point2& b) { return a.x < b.x; });
        }
        weights[static_cast<std::size_t>(j)] = {j, mean_curvature_weight(plane)};
    });

    RankedFeatures ranks;
    ranks.ordered = std::move(weights);
    std::stable_sort(ranks.ordered.begin(), ranks.ordered.end(),
                     [](const FeatureWeight& a, const FeatureWeight& b) {
                         if (a.weight != b.weight) return a.weight > b.weight;
                         return a.feature_id < b.feature_id;
                     });
    return ranks;
}

Dataset select_top_k(const Dataset& ds_raw, const RankedFeatures& ranks, int k) {
    const int n = static_cast<int>(ranks.ordered.size());
    if (k < 1 || k > n) {
        throw ConfigError("top-k of " + std::to_string(k) + " out of range [1, " +
                          std::to_string(n) + "]");
    }
    if (n != ds_raw.n_features()) {
        throw ConfigError("ranking covers " + std::to_string(n) + " features, dataset has " +
                          std::to_string(ds_raw.n_features()));
    }
    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) ids.push_back(ranks.ordered[static_cast<std::size_t>(i)].feature_id);
    return subset_columns(ds_raw, ids);
}

std::optional<Dataset> select_by_threshold(const Dataset& ds_raw, const RankedFeatures& ranks,
                                           double threshold) {
    if (threshold < 0.0) {
        throw ConfigError("selection threshold must be >= 0");
    }
    std::vector<int> ids;
    for (const auto& fw : ranks.ordered) {
        if (fw.weight > threshold) ids.push_back(fw.feature_id);
    }
    if (ids.empty()) return std::nullopt;
    return subset_columns(ds_raw, ids);
}

void write_ranking_csv(const RankedFeatures& ranks,
                       const std::vector<std::string>& feature_names, std::ostream& out) {
    out << "rank,feature_name,feature_id,weight\n";
    for (std::size_t i = 0; i < ranks.ordered.size(); ++i) {
        const auto& fw = ranks.ordered[i];
        out << (i + 1) << ',' << feature_names.at(static_cast<std::size_t>(fw.feature_id)) << ','
            << fw.feature_id << ',' << format_double(fw.weight) << '\n';
    }
}

std::string ranking_to_csv(const RankedFeatures& ranks,
                           const std::vector<std::string>& feature_names) {
    std::ostringstream out;
    write_ranking_csv(ranks, feature_names, out);
    return out.str();
}

std::string ranking_to_json(const RankedFeatures& ranks,
                            const std::vector<std::string>& feature_names) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < ranks.ordered.size(); ++i) {
        const auto& fw = ranks.ordered[i];
        nlohmann::ordered_json row;
        row["rank"] = i + 1;
        row["feature_name"] = feature_names.at(static_cast<std::size_t>(fw.feature_id));
        row["feature_id"] = fw.feature_id;
        row["weight"] = fw.weight;
        arr.push_back(std::move(row));
    }
    nlohmann::ordered_json j;
    j["tie_policy"] = ranks.tie_policy;
    j["ranking"] = std::move(arr);
    return j.dump(2);
}

} // namespace cfs
