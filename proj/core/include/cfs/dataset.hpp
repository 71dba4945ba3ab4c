#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace cfs {

struct LoadOptions {
    char delimiter = ',';
    std::string missing_marker = "?";
    bool has_header = true;
    /// Label column by header name or 0-based index (all-digit strings are
    /// indices). Empty selects the last column.
    std::string label_column;
};

/// Verbatim delimiter-separated text, before any cleaning or parsing.
struct RawTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<std::string>> rows;
    std::string missing_marker = "?";
    std::size_t label_column = 0;
    std::string source;

    std::size_t n_rows() const { return rows.size(); }
    std::size_t n_cols() const { return column_names.size(); }
};

RawTable load_csv(const std::filesystem::path& path, const LoadOptions& options = {});
RawTable parse_csv(std::istream& in, const LoadOptions& options, const std::string& source_name);

/// Immutable numeric table: features, contiguous 0-based class ids, names,
/// and the cleaning provenance. Safe to share across concurrent readers.
struct Dataset {
    Eigen::MatrixXd features;               // m x n'
    std::vector<int> labels;                // length m
    std::vector<std::string> feature_names; // length n'
    std::vector<std::string> class_names;   // index = class id
    std::vector<std::string> dropped_columns;
    std::string provenance;

    int n_instances() const { return static_cast<int>(features.rows()); }
    int n_features() const { return static_cast<int>(features.cols()); }
    int n_classes() const { return static_cast<int>(class_names.size()); }
};

/// Drops every feature column containing at least one missing marker, parses
/// the survivors as real numbers, and maps labels to contiguous ids in
/// first-appearance order. Rows are never dropped; a missing label is a hard
/// error. Requires at least 3 rows (curvature needs 3 points) and at least
/// one surviving feature column.
Dataset clean_by_attribute_deletion(const RawTable& raw);

struct DatasetSummary {
    int n_instances = 0;
    int n_features = 0;
    int n_classes = 0;
    std::vector<long> class_counts; // ordered by class id
    int n_dropped_columns = 0;
};

DatasetSummary summarize(const Dataset& ds);

/// Row/column slices used by selection and cross-validation. These are
/// evaluation views: they keep names and class ids but do not re-impose the
/// 3-row minimum (a test fold may be smaller).
Dataset subset_rows(const Dataset& ds, std::span<const int> row_indices);
Dataset subset_columns(const Dataset& ds, std::span<const int> feature_ids);

/// Canonical CSV: header row, '.' decimal separator, shortest round-trip
/// number formatting, label column last under its original name. Re-loading
/// the output reproduces an identical Dataset.
void write_canonical_csv(const Dataset& ds, std::ostream& out,
                         const std::string& label_name = "class");
std::string to_canonical_csv(const Dataset& ds, const std::string& label_name = "class");

/// JSON DatasetSummary including per-class percentages.
std::string summary_to_json(const Dataset& ds);

/// Shortest locale-independent decimal form that parses back to the same
/// double. Shared by every report writer so outputs are byte-reproducible.
std::string format_double(double value);

} // namespace cfs
