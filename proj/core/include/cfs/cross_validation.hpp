#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "cfs/classifiers.hpp"
#include "cfs/dataset.hpp"
#include "cfs/normalize.hpp"
#include "cfs/selectors.hpp"

namespace cfs {

/// Where selector fitting happens. Global fits once on the full dataset
/// before folding (the benchmark protocol); PerFold refits on each training
/// partition so held-out rows never influence selection.
enum class SelectionScope { Global, PerFold };

/// CLI spellings: global, per-fold.
std::string to_string(SelectionScope scope);
SelectionScope parse_scope(std::string_view name);

struct Fold {
    std::vector<int> train_rows;
    std::vector<int> test_rows;
};

/// Stratified k-fold split: per class the rows are shuffled (Fisher-Yates on
/// a seeded mt19937_64) and dealt round-robin, so per-class fold counts
/// differ by at most one. Row ids within each fold come out ascending.
/// Classes with fewer instances than folds produce a warning, not an error.
std::vector<Fold> make_folds(const std::vector<int>& labels, int n_classes, int n_folds,
                             std::uint64_t seed, std::vector<std::string>* warnings = nullptr);

/// One benchmark run: the cross product of selectors, normalizers and
/// classifiers, every cell evaluated on the same folds.
struct GridSpec {
    std::vector<SelectorKind> selectors = all_selectors();
    std::vector<NormKind> normalizers = all_normalizers();
    std::vector<std::string> classifiers = default_classifier_names();
    int top_k = 1;
    int n_folds = 10;
    std::uint64_t seed = 0;
    SelectionScope scope = SelectionScope::Global;
    int bin_count = kDefaultBinCount;
    double power_alpha = kDefaultPowerAlpha;
    ClassifierConfig classifier_config;
};

struct CellKey {
    SelectorKind selector;
    NormKind normalizer;
    std::string classifier;
};

struct CellResult {
    CellKey key;
    std::vector<double> fold_accuracies;
    /// Mean of the per-fold accuracies (the grid's headline number).
    double mean_accuracy = 0.0;
    /// Pooled over all folds; rows are true classes, columns predictions.
    Eigen::MatrixXi confusion;
    /// Diagonal over row sums of the pooled confusion; a class that never
    /// appears in any test partition reports 0.
    std::vector<double> per_class_recall;
    /// Rows the l1/l2 normalizers left unchanged because their norm was zero,
    /// summed over folds and partitions.
    int zero_norm_rows = 0;
    /// Nonempty marks a failed cell; the rest of the grid still runs.
    std::string error;
    /// Informational only; never written to csv so reruns stay byte-identical.
    double wall_time_seconds = 0.0;
};

/// What each selector chose, for the report header.
struct SelectorInfo {
    SelectorKind selector;
    bool extracted = false;
    /// Global scope: selected feature ids in rank order (empty for Pca).
    std::vector<int> selected;
    std::vector<std::string> selected_names;
    /// PerFold scope: ids chosen on each fold's training partition.
    std::vector<std::vector<int>> fold_selected;
    std::string error;
};

struct CVReport {
    std::string dataset_name;
    int n_instances = 0;
    int n_features = 0;
    int n_classes = 0;
    int top_k = 0;
    int n_folds = 0;
    std::uint64_t seed = 0;
    SelectionScope scope = SelectionScope::Global;
    /// Effective configuration echo, in insertion order.
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> warnings;
    std::vector<SelectorInfo> selectors;
    std::vector<CellResult> cells;
    /// Informational only; JSON output only.
    double wall_time_seconds = 0.0;
};

/// Runs the full grid. Selection happens once per selector (Global) or once
/// per selector and fold (PerFold); cells then evaluate concurrently, each
/// writing only its own slot. A throwing cell is captured in its error field.
CVReport run_grid(const Dataset& ds, const GridSpec& spec, const std::string& dataset_name = "");

/// Best cell per selector by mean accuracy; ties go to the lexicographically
/// smaller normalizer name, then classifier name. Errored cells are skipped.
struct TmaEntry {
    SelectorKind selector;
    NormKind normalizer;
    std::string classifier;
    double accuracy = 0.0;
};

std::vector<TmaEntry> summarize_tma(const CVReport& report);

/// Mean accuracy averaged over every successful cell of one selector,
/// normalizers and classifiers pooled.
struct SelectorAverage {
    SelectorKind selector;
    double averaged_mean_accuracy = 0.0;
    int cells_included = 0;
};

std::vector<SelectorAverage> selector_averages(const CVReport& report);

} // namespace cfs
