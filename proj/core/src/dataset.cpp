#include "cfs/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "cfs/errors.hpp"

namespace cfs {

std::string format_double(double value) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

std::vector<std::string> split_line(const std::string& line, char delimiter) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(delimiter, start);
        if (pos == std::string::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return cells;
}

std::size_t resolve_label_column(const std::string& spec,
                                 const std::vector<std::string>& names,
                                 const std::string& source) {
    if (spec.empty()) return names.size() - 1;
    const bool all_digits = !spec.empty() &&
        std::all_of(spec.begin(), spec.end(),
                    [](unsigned char c) { return std::isdigit(c); });
    if (all_digits) {
        const std::size_t idx = std::stoul(spec);
        if (idx >= names.size()) {
            throw ConfigError("label column index " + spec + " out of range for " +
                              source + " with " + std::to_string(names.size()) + " columns");
        }
        return idx;
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == spec) return i;
    }
    throw ConfigError("label column '" + spec + "' not found in " + source);
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& column) {
    const std::string_view body = trim(cell);
    double value = 0.0;
    const auto* first = body.data();
    const auto* last = body.data() + body.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || body.empty()) {
        throw DataError("cell '" + cell + "' at row " + std::to_string(row) +
                        ", column '" + column + "' is not numeric");
    }
    if (!std::isfinite(value)) {
        throw DataError("cell '" + cell + "' at row " + std::to_string(row) +
                        ", column '" + column + "' is not finite");
    }
    return value;
}

} // namespace

RawTable parse_csv(std::istream& in, const LoadOptions& options, const std::string& source_name) {
    RawTable table;
    table.missing_marker = options.missing_marker;
    table.source = source_name;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && table.column_names.empty() && table.rows.empty()) continue;
        std::vector<std::string> cells = split_line(line, options.delimiter);
        if (table.column_names.empty()) {
            if (options.has_header) {
                for (auto& c : cells) c = std::string(trim(c));
                table.column_names = std::move(cells);
            } else {
                table.column_names.resize(cells.size());
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    table.column_names[i] = "col" + std::to_string(i);
                }
                table.rows.push_back(std::move(cells));
            }
            continue;
        }
        if (cells.size() != table.column_names.size()) {
            throw ParseError(source_name + ": row " + std::to_string(line_no) + " has " +
                             std::to_string(cells.size()) + " cells, expected " +
                             std::to_string(table.column_names.size()));
        }
        table.rows.push_back(std::move(cells));
    }
    if (table.column_names.empty()) {
        throw ParseError(source_name + ": empty input");
    }
    if (table.rows.empty()) {
        throw ParseError(source_name + ": no data rows");
    }
    table.label_column = resolve_label_column(options.label_column, table.column_names, source_name);
    return table;
}

RawTable load_csv(const std::filesystem::path& path, const LoadOptions& options) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open '" + path.string() + "'");
    }
    return parse_csv(in, options, path.string());
}

Dataset clean_by_attribute_deletion(const RawTable& raw) {
    if (raw.rows.empty() || raw.column_names.empty()) {
        throw ParseError(raw.source + ": empty table");
    }
    if (raw.label_column >= raw.n_cols()) {
        throw ConfigError(raw.source + ": label column out of range");
    }
    if (raw.n_rows() < 3) {
        throw DataError(raw.source + ": needs at least 3 rows, got " +
                        std::to_string(raw.n_rows()));
    }

    // The drop decision per column depends only on marker presence.
    std::vector<int> kept;
    Dataset ds;
    for (std::size_t j = 0; j < raw.n_cols(); ++j) {
        if (j == raw.label_column) continue;
        bool has_missing = false;
        for (const auto& row : raw.rows) {
            if (trim(row[j]) == raw.missing_marker) {
                has_missing = true;
                break;
            }
        }
        if (has_missing) {
            ds.dropped_columns.push_back(raw.column_names[j]);
        } else {
            kept.push_back(static_cast<int>(j));
        }
    }
    if (kept.empty()) {
        throw DataError(raw.source + ": every feature column contains the missing marker '" +
                        raw.missing_marker + "'");
    }

    const std::size_t m = raw.n_rows();
    ds.features.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(kept.size()));
    ds.labels.resize(m);
    for (int j : kept) ds.feature_names.push_back(raw.column_names[static_cast<std::size_t>(j)]);

    std::unordered_map<std::string, int> class_ids;
    for (std::size_t i = 0; i < m; ++i) {
        const auto& row = raw.rows[i];
        const std::string label_cell(trim(row[raw.label_column]));
        if (label_cell == raw.missing_marker || label_cell.empty()) {
            throw DataError(raw.source + ": missing label at row " + std::to_string(i + 1));
        }
        auto [it, inserted] = class_ids.try_emplace(label_cell, static_cast<int>(ds.class_names.size()));
        if (inserted) ds.class_names.push_back(label_cell);
        ds.labels[i] = it->second;
        for (std::size_t c = 0; c < kept.size(); ++c) {
            const std::size_t j = static_cast<std::size_t>(kept[c]);
            ds.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) =
                parse_cell(row[j], i + 1, raw.column_names[j]);
        }
    }

    std::string prov = raw.source + "; attribute deletion dropped " +
                       std::to_string(ds.dropped_columns.size()) + " column(s)";
    if (!ds.dropped_columns.empty()) {
        prov += ": ";
        for (std::size_t i = 0; i < ds.dropped_columns.size(); ++i) {
            if (i) prov += ", ";
            prov += ds.dropped_columns[i];
        }
    }
    ds.provenance = std::move(prov);
    return ds;
}

DatasetSummary summarize(const Dataset& ds) {
    DatasetSummary s;
    s.n_instances = ds.n_instances();
    s.n_features = ds.n_features();
    s.n_classes = ds.n_classes();
    s.class_counts.assign(static_cast<std::size_t>(s.n_classes), 0);
    for (int label : ds.labels) s.class_counts[static_cast<std::size_t>(label)]++;
    s.n_dropped_columns = static_cast<int>(ds.dropped_columns.size());
    return s;
}

Dataset subset_rows(const Dataset& ds, std::span<const int> row_indices) {
    Dataset out;
    out.features.resize(static_cast<Eigen::Index>(row_indices.size()), ds.features.cols());
    out.labels.reserve(row_indices.size());
    for (std::size_t i = 0; i < row_indices.size(); ++i) {
        const int r = row_indices[i];
        if (r < 0 || r >= ds.n_instances()) throw ConfigError("row index out of range");
        out.features.row(static_cast<Eigen::Index>(i)) = ds.features.row(r);
        out.labels.push_back(ds.labels[static_cast<std::size_t>(r)]);
    }
    out.feature_names = ds.feature_names;
    out.class_names = ds.class_names;
    out.dropped_columns = ds.dropped_columns;
    out.provenance = ds.provenance;
    return out;
}

Dataset subset_columns(const Dataset& ds, std::span<const int> feature_ids) {
    Dataset out;
    out.features.resize(ds.features.rows(), static_cast<Eigen::Index>(feature_ids.size()));
    for (std::size_t c = 0; c < feature_ids.size(); ++c) {
        const int j = feature_ids[c];
        if (j < 0 || j >= ds.n_features()) throw ConfigError("feature id out of range");
        out.features.col(static_cast<Eigen::Index>(c)) = ds.features.col(j);
        out.feature_names.push_back(ds.feature_names[static_cast<std::size_t>(j)]);
    }
    out.labels = ds.labels;
    out.class_names = ds.class_names;
    out.dropped_columns = ds.dropped_columns;
    out.provenance = ds.provenance;
    return out;
}

void write_canonical_csv(const Dataset& ds, std::ostream& out, const std::string& label_name) {
    for (const auto& name : ds.feature_names) out << name << ',';
    out << label_name << '\n';
    for (int i = 0; i < ds.n_instances(); ++i) {
        for (int j = 0; j < ds.n_features(); ++j) {
            out << format_double(ds.features(i, j)) << ',';
        }
        out << ds.class_names[static_cast<std::size_t>(ds.labels[static_cast<std::size_t>(i)])]
            << '\n';
    }
}

std::string to_canonical_csv(const Dataset& ds, const std::string& label_name) {
    std::ostringstream out;
    write_canonical_csv(ds, out, label_name);
    return out.str();
}

std::string summary_to_json(const Dataset& ds) {
    const DatasetSummary s = summarize(ds);
    nlohmann::ordered_json j;
    j["n_instances"] = s.n_instances;
    j["n_features"] = s.n_features;
    j["n_classes"] = s.n_classes;
    j["class_names"] = ds.class_names;
    j["class_counts"] = s.class_counts;
    std::vector<double> percentages;
    percentages.reserve(s.class_counts.size());
    for (long c : s.class_counts) {
        percentages.push_back(100.0 * static_cast<double>(c) / s.n_instances);
    }
    j["class_percentages"] = percentages;
    j["n_dropped_columns"] = s.n_dropped_columns;
    j["dropped_columns"] = ds.dropped_columns;
    j["feature_names"] = ds.feature_names;
    j["provenance"] = ds.provenance;
    return j.dump(2);
}

} // namespace cfs
