#include "cfs/cross_validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "cfs/errors.hpp"
#include "parallel_for.hpp"

namespace cfs {

std::string to_string(SelectionScope scope) {
    switch (scope) {
        case SelectionScope::Global: return "global";
        case SelectionScope::PerFold: return "per-fold";
    }
    throw ConfigError("unknown selection scope");
}

SelectionScope parse_scope(std::string_view name) {
    if (name == "global") return SelectionScope::Global;
    if (name == "per-fold") return SelectionScope::PerFold;
    throw ConfigError("unknown selection scope '" + std::string(name) +
                      "' (valid: global, per-fold)");
}

std::vector<Fold> make_folds(const std::vector<int>& labels, int n_classes, int n_folds,
                             std::uint64_t seed, std::vector<std::string>* warnings) {
    if (n_folds < 2) throw ConfigError("cross-validation needs at least 2 folds");
    if (static_cast<std::size_t>(n_folds) > labels.size()) {
        throw ConfigError("more folds (" + std::to_string(n_folds) + ") than rows (" +
                          std::to_string(labels.size()) + ")");
    }
    std::vector<std::vector<int>> by_class(static_cast<std::size_t>(n_classes));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const int y = labels[i];
        if (y < 0 || y >= n_classes) {
            throw ConfigError("label " + std::to_string(y) + " outside [0, " +
                              std::to_string(n_classes) + ")");
        }
        by_class[static_cast<std::size_t>(y)].push_back(static_cast<int>(i));
    }

    std::mt19937_64 rng(seed);
    std::vector<int> fold_of(labels.size(), 0);
    int cursor = 0;
    for (int c = 0; c < n_classes; ++c) {
        auto& rows = by_class[static_cast<std::size_t>(c)];
        if (warnings != nullptr && !rows.empty() &&
            rows.size() < static_cast<std::size_t>(n_folds)) {
            warnings->push_back("class " + std::to_string(c) + " has " +
                                std::to_string(rows.size()) + " instance(s) across " +
                                std::to_string(n_folds) + " folds; some folds will lack it");
        }
        for (std::size_t i = rows.size(); i > 1; --i) {
            const std::size_t j = static_cast<std::size_t>(rng() % i);
            std::swap(rows[i - 1], rows[j]);
        }
        for (int row : rows) {
            fold_of[static_cast<std::size_t>(row)] = cursor % n_folds;
            ++cursor;
        }
    }

    std::vector<Fold> folds(static_cast<std::size_t>(n_folds));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        for (int f = 0; f < n_folds; ++f) {
            if (fold_of[i] == f) {
                folds[static_cast<std::size_t>(f)].test_rows.push_back(static_cast<int>(i));
            } else {
                folds[static_cast<std::size_t>(f)].train_rows.push_back(static_cast<int>(i));
            }
        }
    }
    return folds;
}

namespace {

Eigen::MatrixXd take_rows(const Eigen::MatrixXd& m, const std::vector<int>& rows) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Eigen::Index>(i)) = m.row(rows[i]);
    }
    return out;
}

std::vector<int> take_labels(const std::vector<int>& labels, const std::vector<int>& rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (int r : rows) out.push_back(labels[static_cast<std::size_t>(r)]);
    return out;
}

struct StagedFold {
    Eigen::MatrixXd train_x;
    Eigen::MatrixXd test_x;
    std::vector<int> train_y;
    std::vector<int> test_y;
};

struct StagedSelector {
    SelectorInfo info;
    std::vector<StagedFold> folds;
};

std::vector<int> top_ids(const RankedFeatures& ranking, int k) {
    std::vector<int> ids;
    ids.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        ids.push_back(ranking.ordered[static_cast<std::size_t>(i)].feature_id);
    }
    return ids;
}

StagedSelector stage_selector(SelectorKind kind, const Dataset& ds, const GridSpec& spec,
                              const std::vector<Fold>& folds) {
    StagedSelector staged;
    staged.info.selector = kind;
    staged.folds.resize(folds.size());

    if (spec.scope == SelectionScope::Global) {
        const SelectionResult sel = select_with(kind, ds, spec.top_k, spec.bin_count);
        staged.info.extracted = sel.extracted;
        if (sel.extracted) {
            staged.info.selected_names = sel.data.feature_names;
        } else {
            staged.info.selected = top_ids(sel.ranking, spec.top_k);
            for (int id : staged.info.selected) {
                staged.info.selected_names.push_back(
                    ds.feature_names[static_cast<std::size_t>(id)]);
            }
        }
        for (std::size_t f = 0; f < folds.size(); ++f) {
            staged.folds[f].train_x = take_rows(sel.data.features, folds[f].train_rows);
            staged.folds[f].test_x = take_rows(sel.data.features, folds[f].test_rows);
            staged.folds[f].train_y = take_labels(ds.labels, folds[f].train_rows);
            staged.folds[f].test_y = take_labels(ds.labels, folds[f].test_rows);
        }
        return staged;
    }

    // Per-fold scope: everything the selector learns comes from the training
    // partition; held-out rows are transformed with the fitted statistics.
    staged.info.extracted = (kind == SelectorKind::Pca);
    for (std::size_t f = 0; f < folds.size(); ++f) {
        StagedFold& out = staged.folds[f];
        out.train_y = take_labels(ds.labels, folds[f].train_rows);
        out.test_y = take_labels(ds.labels, folds[f].test_rows);
        const Eigen::MatrixXd train_raw = take_rows(ds.features, folds[f].train_rows);
        const Eigen::MatrixXd test_raw = take_rows(ds.features, folds[f].test_rows);

        if (kind == SelectorKind::Pca) {
            const MinMaxStats stats = fit_minmax(train_raw);
            const Eigen::MatrixXd train_n = apply_minmax(stats, train_raw, false);
            const Eigen::MatrixXd test_n = apply_minmax(stats, test_raw, true);
            const PcaModel model = pca_fit(train_n);
            out.train_x = pca_transform(model, train_n, spec.top_k);
            out.test_x = pca_transform(model, test_n, spec.top_k);
            continue;
        }
        const Dataset train_ds = subset_rows(ds, folds[f].train_rows);
        const RankedFeatures ranking = rank_with(kind, train_ds, spec.bin_count);
        const std::vector<int> ids = top_ids(ranking, spec.top_k);
        staged.info.fold_selected.push_back(ids);
        out.train_x.resize(train_raw.rows(), static_cast<Eigen::Index>(ids.size()));
        out.test_x.resize(test_raw.rows(), static_cast<Eigen::Index>(ids.size()));
        for (std::size_t j = 0; j < ids.size(); ++j) {
            out.train_x.col(static_cast<Eigen::Index>(j)) = train_raw.col(ids[j]);
            out.test_x.col(static_cast<Eigen::Index>(j)) = test_raw.col(ids[j]);
        }
    }
    return staged;
}

} // namespace

CVReport run_grid(const Dataset& ds, const GridSpec& spec, const std::string& dataset_name) {
    const auto t0 = std::chrono::steady_clock::now();
    if (spec.selectors.empty() || spec.normalizers.empty() || spec.classifiers.empty()) {
        throw ConfigError("grid needs at least one selector, normalizer and classifier");
    }
    if (spec.top_k < 1 || spec.top_k > ds.n_features()) {
        throw ConfigError("top_k " + std::to_string(spec.top_k) + " out of range [1, " +
                          std::to_string(ds.n_features()) + "]");
    }
    if (spec.bin_count < 2) throw ConfigError("bin count must be >= 2");

    CVReport report;
    report.dataset_name = dataset_name.empty() ? ds.provenance : dataset_name;
    report.n_instances = ds.n_instances();
    report.n_features = ds.n_features();
    report.n_classes = ds.n_classes();
    report.top_k = spec.top_k;
    report.n_folds = spec.n_folds;
    report.seed = spec.seed;
    report.scope = spec.scope;

    const std::vector<Fold> folds =
        make_folds(ds.labels, ds.n_classes(), spec.n_folds, spec.seed, &report.warnings);

    // Selection is shared by the 8x|classifiers| cells of each selector, so
    // stage it once up front. A selector that throws poisons only its cells.
    std::vector<StagedSelector> staged(spec.selectors.size());
    for (std::size_t s = 0; s < spec.selectors.size(); ++s) {
        try {
            staged[s] = stage_selector(spec.selectors[s], ds, spec, folds);
        } catch (const std::exception& e) {
            staged[s].info.selector = spec.selectors[s];
            staged[s].info.error = e.what();
        }
        report.selectors.push_back(staged[s].info);
    }

    const int n_norm = static_cast<int>(spec.normalizers.size());
    const int n_clf = static_cast<int>(spec.classifiers.size());
    const int n_cells = static_cast<int>(spec.selectors.size()) * n_norm * n_clf;
    report.cells.resize(static_cast<std::size_t>(n_cells));

    detail::parallel_for(n_cells, [&](int cell_idx) {
        const int s = cell_idx / (n_norm * n_clf);
        const int n = (cell_idx / n_clf) % n_norm;
        const int c = cell_idx % n_clf;
        CellResult& cell = report.cells[static_cast<std::size_t>(cell_idx)];
        cell.key = {spec.selectors[static_cast<std::size_t>(s)],
                    spec.normalizers[static_cast<std::size_t>(n)],
                    spec.classifiers[static_cast<std::size_t>(c)]};
        const auto cell_t0 = std::chrono::steady_clock::now();
        try {
            const StagedSelector& sel = staged[static_cast<std::size_t>(s)];
            if (!sel.info.error.empty()) {
                throw ConfigError("selector failed: " + sel.info.error);
            }
            const NormKind norm = cell.key.normalizer;
            cell.confusion = Eigen::MatrixXi::Zero(ds.n_classes(), ds.n_classes());
            for (const StagedFold& fold : sel.folds) {
                Eigen::MatrixXd train_n;
                Eigen::MatrixXd test_n;
                if (norm == NormKind::MinMax) {
                    const MinMaxStats stats = fit_minmax(fold.train_x);
                    train_n = apply_minmax(stats, fold.train_x, false);
                    test_n = apply_minmax(stats, fold.test_x, true);
                } else {
                    NormOutput train_out = apply_normalizer(norm, fold.train_x, spec.power_alpha);
                    NormOutput test_out = apply_normalizer(norm, fold.test_x, spec.power_alpha);
                    cell.zero_norm_rows += train_out.zero_rows + test_out.zero_rows;
                    train_n = std::move(train_out.values);
                    test_n = std::move(test_out.values);
                }
                const auto clf = make_classifier(cell.key.classifier, spec.classifier_config);
                clf->fit(train_n, fold.train_y, ds.n_classes());
                const std::vector<int> predicted = clf->predict(test_n);
                long correct = 0;
                for (std::size_t i = 0; i < predicted.size(); ++i) {
                    cell.confusion(fold.test_y[i], predicted[i])++;
                    if (predicted[i] == fold.test_y[i]) ++correct;
                }
                cell.fold_accuracies.push_back(static_cast<double>(correct) /
                                               static_cast<double>(predicted.size()));
            }
            cell.mean_accuracy =
                std::accumulate(cell.fold_accuracies.begin(), cell.fold_accuracies.end(), 0.0) /
                static_cast<double>(cell.fold_accuracies.size());
            for (int y = 0; y < ds.n_classes(); ++y) {
                const long total = cell.confusion.row(y).sum();
                cell.per_class_recall.push_back(
                    total == 0 ? 0.0
                               : static_cast<double>(cell.confusion(y, y)) /
                                     static_cast<double>(total));
            }
        } catch (const std::exception& e) {
            cell.error = e.what();
            cell.mean_accuracy = 0.0;
            cell.fold_accuracies.clear();
            cell.per_class_recall.clear();
        }
        cell.wall_time_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - cell_t0).count();
    });

    report.metadata = {
        {"dataset", report.dataset_name},
        {"instances", std::to_string(report.n_instances)},
        {"features", std::to_string(report.n_features)},
        {"classes", std::to_string(report.n_classes)},
        {"top_k", std::to_string(spec.top_k)},
        {"folds", std::to_string(spec.n_folds)},
        {"seed", std::to_string(spec.seed)},
        {"scope", to_string(spec.scope)},
        {"bin_count", std::to_string(spec.bin_count)},
        {"power_alpha", format_double(spec.power_alpha)},
        {"k_neighbors", std::to_string(spec.classifier_config.k_neighbors)},
        {"dt_max_depth", std::to_string(spec.classifier_config.dt_max_depth)},
        {"lr_l1_strength", format_double(spec.classifier_config.lr_l1_strength)},
        {"lr_max_iters", std::to_string(spec.classifier_config.lr_max_iters)},
        {"gnb_var_floor", format_double(spec.classifier_config.gnb_var_floor)},
    };
    std::string names;
    for (const SelectorKind kind : spec.selectors) {
        if (!names.empty()) names += ",";
        names += to_string(kind);
    }
    report.metadata.emplace_back("selectors", names);
    names.clear();
    for (const NormKind kind : spec.normalizers) {
        if (!names.empty()) names += ",";
        names += to_string(kind);
    }
    report.metadata.emplace_back("normalizers", names);
    names.clear();
    for (const std::string& clf : spec.classifiers) {
        if (!names.empty()) names += ",";
        names += clf;
    }
    report.metadata.emplace_back("classifiers", names);

    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return report;
}

std::vector<TmaEntry> summarize_tma(const CVReport& report) {
    std::vector<TmaEntry> entries;
    std::vector<SelectorKind> seen;
    for (const CellResult& cell : report.cells) {
        if (std::find(seen.begin(), seen.end(), cell.key.selector) == seen.end()) {
            seen.push_back(cell.key.selector);
        }
    }
    for (const SelectorKind kind : seen) {
        const CellResult* best = nullptr;
        for (const CellResult& cell : report.cells) {
            if (cell.key.selector != kind || !cell.error.empty()) continue;
            if (best == nullptr) {
                best = &cell;
                continue;
            }
            if (cell.mean_accuracy > best->mean_accuracy) {
                best = &cell;
            } else if (cell.mean_accuracy == best->mean_accuracy) {
                const auto tie = std::pair(to_string(cell.key.normalizer), cell.key.classifier);
                const auto cur = std::pair(to_string(best->key.normalizer), best->key.classifier);
                if (tie < cur) best = &cell;
            }
        }
        if (best != nullptr) {
            entries.push_back({kind, best->key.normalizer, best->key.classifier,
                               best->mean_accuracy});
        }
    }
    return entries;
}

std::vector<SelectorAverage> selector_averages(const CVReport& report) {
    std::vector<SelectorAverage> averages;
    std::vector<SelectorKind> seen;
    for (const CellResult& cell : report.cells) {
        if (std::find(seen.begin(), seen.end(), cell.key.selector) == seen.end()) {
            seen.push_back(cell.key.selector);
        }
    }
    for (const SelectorKind kind : seen) {
        SelectorAverage avg;
        avg.selector = kind;
        double sum = 0.0;
        for (const CellResult& cell : report.cells) {
            if (cell.key.selector != kind || !cell.error.empty()) continue;
            sum += cell.mean_accuracy;
            ++avg.cells_included;
        }
        if (avg.cells_included > 0) avg.averaged_mean_accuracy = sum / avg.cells_included;
        averages.push_back(avg);
    }
    return averages;
}

} // namespace cfs
