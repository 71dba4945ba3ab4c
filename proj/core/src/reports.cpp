#include "cfs/reports.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace cfs {
namespace {

std::string join_doubles(const std::vector<double>& values, char sep) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out += sep;
        out += format_double(values[i]);
    }
    return out;
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) return field;
    std::string out = "\"";
    for (char ch : field) {
        if (ch == '"') out += '"';
        out += ch;
    }
    out += '"';
    return out;
}

} // namespace

std::string report_to_csv(const CVReport& report) {
    std::string out;
    for (const auto& [key, value] : report.metadata) {
        out += "# " + key + "=" + value + "\n";
    }
    out += "selector,normalizer,classifier,mean_accuracy,fold_accuracies,per_class_recall,"
           "zero_norm_rows,error\n";
    for (const CellResult& cell : report.cells) {
        out += to_string(cell.key.selector);
        out += ',';
        out += to_string(cell.key.normalizer);
        out += ',';
        out += cell.key.classifier;
        out += ',';
        if (cell.error.empty()) {
            out += format_double(cell.mean_accuracy);
            out += ',';
            out += join_doubles(cell.fold_accuracies, ';');
            out += ',';
            out += join_doubles(cell.per_class_recall, ';');
        } else {
            out += ",,";
        }
        out += ',';
        out += std::to_string(cell.zero_norm_rows);
        out += ',';
        out += csv_escape(cell.error);
        out += '\n';
    }
    return out;
}

void write_report_csv(const CVReport& report, std::ostream& out) {
    out << report_to_csv(report);
}

std::string report_to_json(const CVReport& report) {
    nlohmann::ordered_json j;
    j["metadata"] = nlohmann::ordered_json::object();
    for (const auto& [key, value] : report.metadata) j["metadata"][key] = value;
    j["warnings"] = report.warnings;

    j["selectors"] = nlohmann::ordered_json::array();
    for (const SelectorInfo& info : report.selectors) {
        nlohmann::ordered_json s;
        s["selector"] = to_string(info.selector);
        s["extracted"] = info.extracted;
        s["selected"] = info.selected;
        s["selected_names"] = info.selected_names;
        if (!info.fold_selected.empty()) s["fold_selected"] = info.fold_selected;
        if (!info.error.empty()) s["error"] = info.error;
        j["selectors"].push_back(std::move(s));
    }

    j["cells"] = nlohmann::ordered_json::array();
    for (const CellResult& cell : report.cells) {
        nlohmann::ordered_json c;
        c["selector"] = to_string(cell.key.selector);
        c["normalizer"] = to_string(cell.key.normalizer);
        c["classifier"] = cell.key.classifier;
        if (!cell.error.empty()) {
            c["error"] = cell.error;
            j["cells"].push_back(std::move(c));
            continue;
        }
        c["mean_accuracy"] = cell.mean_accuracy;
        c["fold_accuracies"] = cell.fold_accuracies;
        c["per_class_recall"] = cell.per_class_recall;
        c["zero_norm_rows"] = cell.zero_norm_rows;
        auto confusion = nlohmann::ordered_json::array();
        for (Eigen::Index r = 0; r < cell.confusion.rows(); ++r) {
            auto row = nlohmann::ordered_json::array();
            for (Eigen::Index col = 0; col < cell.confusion.cols(); ++col) {
                row.push_back(cell.confusion(r, col));
            }
            confusion.push_back(std::move(row));
        }
        c["confusion"] = std::move(confusion);
        c["wall_time_seconds"] = cell.wall_time_seconds;
        j["cells"].push_back(std::move(c));
    }

    j["top_mean_accuracy"] = nlohmann::ordered_json::array();
    for (const TmaEntry& entry : summarize_tma(report)) {
        j["top_mean_accuracy"].push_back({{"selector", to_string(entry.selector)},
                                          {"normalizer", to_string(entry.normalizer)},
                                          {"classifier", entry.classifier},
                                          {"accuracy", entry.accuracy}});
    }
    j["selector_averages"] = nlohmann::ordered_json::array();
    for (const SelectorAverage& avg : selector_averages(report)) {
        j["selector_averages"].push_back({{"selector", to_string(avg.selector)},
                                          {"averaged_mean_accuracy", avg.averaged_mean_accuracy},
                                          {"cells_included", avg.cells_included}});
    }
    j["wall_time_seconds"] = report.wall_time_seconds;
    return j.dump(2) + "\n";
}

std::string render_matrix(const CVReport& report) {
    std::vector<SelectorKind> selectors;
    std::vector<NormKind> normalizers;
    std::vector<std::string> classifiers;
    for (const CellResult& cell : report.cells) {
        if (std::find(selectors.begin(), selectors.end(), cell.key.selector) == selectors.end()) {
            selectors.push_back(cell.key.selector);
        }
        if (std::find(normalizers.begin(), normalizers.end(), cell.key.normalizer) ==
            normalizers.end()) {
            normalizers.push_back(cell.key.normalizer);
        }
        if (std::find(classifiers.begin(), classifiers.end(), cell.key.classifier) ==
            classifiers.end()) {
            classifiers.push_back(cell.key.classifier);
        }
    }

    std::ostringstream out;
    out << report.dataset_name << ": " << report.n_instances << " rows, " << report.n_features
        << " features, " << report.n_classes << " classes; top " << report.top_k << ", "
        << report.n_folds << "-fold, seed " << report.seed << ", " << to_string(report.scope)
        << " selection\n";
    for (const std::string& warning : report.warnings) out << "warning: " << warning << "\n";

    char buf[32];
    for (const SelectorKind kind : selectors) {
        out << "\n[" << to_string(kind) << "]";
        for (const SelectorInfo& info : report.selectors) {
            if (info.selector != kind) continue;
            if (!info.error.empty()) {
                out << " failed: " << info.error;
            } else if (!info.selected_names.empty()) {
                out << " ->";
                for (const std::string& name : info.selected_names) out << " " << name;
            }
        }
        out << "\n";
        out << "        ";
        for (const std::string& clf : classifiers) {
            std::snprintf(buf, sizeof buf, "%8s", clf.c_str());
            out << buf;
        }
        out << "\n";
        for (const NormKind norm : normalizers) {
            std::snprintf(buf, sizeof buf, "%-8s", to_string(norm).c_str());
            out << buf;
            for (const std::string& clf : classifiers) {
                const CellResult* found = nullptr;
                for (const CellResult& cell : report.cells) {
                    if (cell.key.selector == kind && cell.key.normalizer == norm &&
                        cell.key.classifier == clf) {
                        found = &cell;
                        break;
                    }
                }
                if (found == nullptr) {
                    std::snprintf(buf, sizeof buf, "%8s", "-");
                } else if (!found->error.empty()) {
                    std::snprintf(buf, sizeof buf, "%8s", "err");
                } else {
                    std::snprintf(buf, sizeof buf, "%8.4f", found->mean_accuracy);
                }
                out << buf;
            }
            out << "\n";
        }
    }

    out << "\nbest per selector:\n";
    for (const TmaEntry& entry : summarize_tma(report)) {
        std::snprintf(buf, sizeof buf, "%.4f", entry.accuracy);
        out << "  " << to_string(entry.selector) << ": " << buf << " ("
            << to_string(entry.normalizer) << " + " << entry.classifier << ")\n";
    }
    out << "averaged mean accuracy per selector:\n";
    for (const SelectorAverage& avg : selector_averages(report)) {
        std::snprintf(buf, sizeof buf, "%.4f", avg.averaged_mean_accuracy);
        out << "  " << to_string(avg.selector) << ": " << buf << " over " << avg.cells_included
            << " cells\n";
    }
    return out.str();
}

} // namespace cfs
