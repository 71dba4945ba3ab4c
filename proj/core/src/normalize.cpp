#include "cfs/normalize.hpp"

#include <cmath>

#include "cfs/errors.hpp"

namespace cfs {

std::string to_string(NormKind kind) {
    switch (kind) {
        case NormKind::MinMax: return "mm";
        case NormKind::L1: return "l1";
        case NormKind::L2: return "l2";
        case NormKind::Power: return "pn";
        case NormKind::L1Power: return "l1pn";
        case NormKind::L2Power: return "l2pn";
        case NormKind::PowerL1: return "pnl1";
        case NormKind::PowerL2: return "pnl2";
    }
    throw ConfigError("unknown normalizer kind");
}

NormKind parse_norm(std::string_view name) {
    for (NormKind kind : all_normalizers()) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown normalizer '" + std::string(name) +
                      "' (valid: mm, l1, l2, pn, l1pn, l2pn, pnl1, pnl2)");
}

const std::vector<NormKind>& all_normalizers() {
    static const std::vector<NormKind> kinds = {
        NormKind::MinMax, NormKind::L1,      NormKind::L2,      NormKind::Power,
        NormKind::L1Power, NormKind::L2Power, NormKind::PowerL1, NormKind::PowerL2,
    };
    return kinds;
}

namespace {

void require_finite(const Eigen::MatrixXd& m, const char* who) {
    if (!m.allFinite()) {
        throw DataError(std::string(who) + ": non-finite input value");
    }
}

// Row-wise lp scaling. Zero-norm rows stay unchanged and are counted.
NormOutput row_normalize(const Eigen::MatrixXd& features, int p) {
    NormOutput out{features, 0};
    for (Eigen::Index i = 0; i < features.rows(); ++i) {
        const double norm = p == 1 ? features.row(i).lpNorm<1>() : features.row(i).norm();
        if (norm == 0.0) {
            ++out.zero_rows;
            continue;
        }
        out.values.row(i) /= norm;
    }
    return out;
}

} // namespace

MinMaxStats fit_minmax(const Eigen::MatrixXd& features) {
    require_finite(features, "minmax");
    if (features.rows() < 1) throw DataError("minmax: empty matrix");
    return {features.colwise().minCoeff(), features.colwise().maxCoeff()};
}

Eigen::MatrixXd apply_minmax(const MinMaxStats& stats, const Eigen::MatrixXd& features,
                             bool clip) {
    require_finite(features, "minmax");
    if (features.cols() != stats.col_min.size()) {
        throw ConfigError("minmax: column count does not match fitted statistics");
    }
    Eigen::MatrixXd out(features.rows(), features.cols());
    for (Eigen::Index j = 0; j < features.cols(); ++j) {
        const double lo = stats.col_min[j];
        const double range = stats.col_max[j] - lo;
        if (range == 0.0) {
            out.col(j).setZero();
            continue;
        }
        out.col(j) = (features.col(j).array() - lo) / range;
        if (clip) {
            out.col(j) = out.col(j).array().max(0.0).min(1.0);
        }
    }
    return out;
}

Eigen::MatrixXd minmax_per_feature(const Eigen::MatrixXd& features) {
    return apply_minmax(fit_minmax(features), features, /*clip=*/false);
}

Eigen::MatrixXd power_normalize(const Eigen::MatrixXd& features, double alpha) {
    require_finite(features, "power normalization");
    return features.unaryExpr([alpha](double v) {
        return std::copysign(std::pow(std::abs(v), alpha), v);
    });
}

NormOutput apply_normalizer(NormKind kind, const Eigen::MatrixXd& features,
                            double power_alpha) {
    require_finite(features, "normalizer");
    if (power_alpha <= 0.0 || power_alpha > 1.0) {
        throw ConfigError("power alpha must be in (0, 1]");
    }
    switch (kind) {
        case NormKind::MinMax:
            return {minmax_per_feature(features), 0};
        case NormKind::L1:
            return row_normalize(features, 1);
        case NormKind::L2:
            return row_normalize(features, 2);
        case NormKind::Power:
            return {power_normalize(features, power_alpha), 0};
        case NormKind::L1Power: {
            NormOutput out = row_normalize(features, 1);
            out.values = power_normalize(out.values, power_alpha);
            return out;
        }
        case NormKind::L2Power: {
            NormOutput out = row_normalize(features, 2);
            out.values = power_normalize(out.values, power_alpha);
            return out;
        }
        case NormKind::PowerL1:
            return row_normalize(power_normalize(features, power_alpha), 1);
        case NormKind::PowerL2:
            return row_normalize(power_normalize(features, power_alpha), 2);
    }
    throw ConfigError("unknown normalizer kind");
}

} // namespace cfs
