#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace cfs {

/// Power-normalization exponent used throughout unless overridden.
inline constexpr double kDefaultPowerAlpha = 0.1;

/// The eight post-selection feature normalizations. Composition names read
/// left to right in application order: L1Power applies the row-wise l1 scaling
/// first and the elementwise power map second; PowerL1 is the reverse.
enum class NormKind {
    MinMax,  // per-feature (x - min)/(max - min)
    L1,      // per-instance row / ||row||_1
    L2,      // per-instance row / ||row||_2
    Power,   // elementwise sign(x)*|x|^alpha
    L1Power,
    L2Power,
    PowerL1,
    PowerL2,
};

/// CLI spellings: mm, l1, l2, pn, l1pn, l2pn, pnl1, pnl2.
std::string to_string(NormKind kind);
NormKind parse_norm(std::string_view name);
const std::vector<NormKind>& all_normalizers();

/// Min-Max normalization applied per feature column, mapping each column onto
/// [0,1]. A constant column maps to all zeros, keeping the map idempotent and
/// ranking such features last downstream. Throws DataError on non-finite
/// input.
Eigen::MatrixXd minmax_per_feature(const Eigen::MatrixXd& features);

struct NormOutput {
    Eigen::MatrixXd values;
    /// Rows with zero l1/l2 norm are left unchanged instead of emitting NaN;
    /// this counts them.
    int zero_rows = 0;
};

/// Applies one of the eight normalizations to a matrix. MinMax is
/// per-feature; the others are row-wise or elementwise and need no fitted
/// statistics.
NormOutput apply_normalizer(NormKind kind, const Eigen::MatrixXd& features,
                            double power_alpha = kDefaultPowerAlpha);

/// Column statistics for MinMax fitted on one partition and applied to
/// another (cross-validation never fits on test data).
struct MinMaxStats {
    Eigen::VectorXd col_min;
    Eigen::VectorXd col_max;
};

MinMaxStats fit_minmax(const Eigen::MatrixXd& features);

/// Applies fitted MinMax statistics. With clip=true, values outside the
/// fitted range (possible on held-out data) are clipped to [0,1].
Eigen::MatrixXd apply_minmax(const MinMaxStats& stats, const Eigen::MatrixXd& features,
                             bool clip);

/// Elementwise signed power map sign(x)*|x|^alpha; odd, sign- and
/// order-preserving.
Eigen::MatrixXd power_normalize(const Eigen::MatrixXd& features, double alpha);

} // namespace cfs
