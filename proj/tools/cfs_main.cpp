#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cfs/cross_validation.hpp"
#include "cfs/errors.hpp"
#include "cfs/ranker.hpp"
#include "cfs/reports.hpp"
#include "cfs/selectors.hpp"
#include "cfs/synthetic.hpp"

namespace {

struct DataArgs {
    std::string path;
    std::string label_col;
    std::string missing = "?";
    std::string delimiter = ",";
    bool no_header = false;
};

void add_data_flags(CLI::App* cmd, DataArgs& args) {
    cmd->add_option("--data", args.path, "Input delimiter-separated file")->required();
    cmd->add_option("--label-col", args.label_col,
                    "Label column by header name or 0-based index (default: last column)");
    cmd->add_option("--missing", args.missing, "Missing-value marker")->capture_default_str();
    cmd->add_option("--delimiter", args.delimiter, "Field delimiter, one character")
        ->capture_default_str();
    cmd->add_flag("--no-header", args.no_header,
                  "Treat the first line as data; columns are named col0..colN");
}

struct LoadedData {
    cfs::Dataset ds;
    std::string label_name;
};

LoadedData load(const DataArgs& args) {
    if (args.delimiter.size() != 1) {
        throw cfs::ConfigError("delimiter must be a single character");
    }
    cfs::LoadOptions opts;
    opts.delimiter = args.delimiter[0];
    opts.missing_marker = args.missing;
    opts.has_header = !args.no_header;
    opts.label_column = args.label_col;
    const cfs::RawTable raw = cfs::load_csv(args.path, opts);
    LoadedData loaded{cfs::clean_by_attribute_deletion(raw),
                      raw.column_names[raw.label_column]};
    return loaded;
}

void write_out(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw cfs::ConfigError("cannot open output file '" + out_path + "'");
    out << text;
}

std::string stem_of(const std::string& path) {
    return std::filesystem::path(path).stem().string();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Curvature-based feature selection toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "cfs 0.1.0");
    app.set_config("--config", "", "Read option defaults from an ini-style file "
                                   "(key = value, # comments); command-line flags win");
    app.footer("Exit codes: 0 success, 2 malformed input file, 3 invalid configuration,\n"
               "4 bad data values. Other nonzero codes are command-line usage errors.");

    // summary
    auto* cmd_summary = app.add_subcommand("summary", "Load, clean and summarize a dataset");
    DataArgs summary_data;
    add_data_flags(cmd_summary, summary_data);
    std::string summary_out;
    cmd_summary->add_option("--out", summary_out, "Write to a file instead of stdout");
    cmd_summary->callback([&] { write_out(cfs::summary_to_json(load(summary_data).ds), summary_out); });

    // rank
    auto* cmd_rank = app.add_subcommand("rank", "Rank features by a selector's score");
    DataArgs rank_data;
    add_data_flags(cmd_rank, rank_data);
    std::string rank_selector = "cfs";
    std::string rank_format = "csv";
    std::string rank_out;
    int rank_bins = cfs::kDefaultBinCount;
    bool rank_sorted_planes = false;
    cmd_rank->add_option("--selector", rank_selector, "cfs, ig, mi or cst")
        ->capture_default_str();
    cmd_rank->add_option("--bins", rank_bins, "Bin count for ig/mi/cst")->capture_default_str();
    cmd_rank->add_flag("--sorted-planes", rank_sorted_planes,
                       "cfs only: walk each feature plane in value order instead of row order");
    cmd_rank->add_option("--format", rank_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    cmd_rank->add_option("--out", rank_out, "Write to a file instead of stdout");
    cmd_rank->callback([&] {
        const LoadedData loaded = load(rank_data);
        const cfs::SelectorKind kind = cfs::parse_selector(rank_selector);
        cfs::RankedFeatures ranking;
        if (kind == cfs::SelectorKind::Cfs) {
            cfs::RankOptions opts;
            opts.sort_planes_by_value = rank_sorted_planes;
            ranking = cfs::rank_features(loaded.ds, opts);
        } else {
            if (rank_sorted_planes) {
                throw cfs::ConfigError("--sorted-planes only applies to the cfs selector");
            }
            ranking = cfs::rank_with(kind, loaded.ds, rank_bins);
        }
        const std::string text = rank_format == "json"
                                     ? cfs::ranking_to_json(ranking, loaded.ds.feature_names)
                                     : cfs::ranking_to_csv(ranking, loaded.ds.feature_names);
        write_out(text, rank_out);
    });

    // select
    auto* cmd_select = app.add_subcommand(
        "select", "Write the dataset restricted to the selected features as canonical CSV");
    DataArgs select_data;
    add_data_flags(cmd_select, select_data);
    std::string select_selector = "cfs";
    std::string select_out;
    int select_bins = cfs::kDefaultBinCount;
    int select_top_k = 0;
    double select_threshold = 0.0;
    auto* opt_k = cmd_select->add_option("--top-k", select_top_k, "Keep the k best features");
    auto* opt_thr = cmd_select->add_option(
        "--threshold", select_threshold,
        "cfs only: keep features whose weight strictly exceeds this value");
    opt_k->excludes(opt_thr);
    opt_thr->excludes(opt_k);
    cmd_select->add_option("--selector", select_selector, "cfs, pca, ig, mi or cst")
        ->capture_default_str();
    cmd_select->add_option("--bins", select_bins, "Bin count for ig/mi/cst")
        ->capture_default_str();
    cmd_select->add_option("--out", select_out, "Write to a file instead of stdout");
    cmd_select->callback([&] {
        const LoadedData loaded = load(select_data);
        const cfs::SelectorKind kind = cfs::parse_selector(select_selector);
        if (opt_thr->count() > 0) {
            if (kind != cfs::SelectorKind::Cfs) {
                throw cfs::ConfigError("--threshold only applies to the cfs selector");
            }
            const cfs::RankedFeatures ranking = cfs::rank_features(loaded.ds);
            const auto selected =
                cfs::select_by_threshold(loaded.ds, ranking, select_threshold);
            if (!selected.has_value()) {
                std::cerr << "no feature weight exceeds " << select_threshold
                          << "; nothing selected\n";
                return;
            }
            write_out(cfs::to_canonical_csv(*selected, loaded.label_name), select_out);
            return;
        }
        if (opt_k->count() == 0) {
            throw cfs::ConfigError("select needs --top-k or --threshold");
        }
        const cfs::SelectionResult result =
            cfs::select_with(kind, loaded.ds, select_top_k, select_bins);
        write_out(cfs::to_canonical_csv(result.data, loaded.label_name), select_out);
    });

    // bench
    auto* cmd_bench = app.add_subcommand(
        "bench", "Cross-validate the selector x normalizer x classifier grid");
    DataArgs bench_data;
    add_data_flags(cmd_bench, bench_data);
    std::vector<std::string> bench_selectors;
    std::vector<std::string> bench_normalizers;
    std::vector<std::string> bench_classifiers;
    std::string bench_scope = "global";
    std::string bench_out;
    std::string bench_format = "matrix";
    std::string bench_name;
    int bench_top_k = 0;
    int bench_folds = 10;
    std::uint64_t bench_seed = 0;
    int bench_bins = cfs::kDefaultBinCount;
    cfs::GridSpec grid;
    cmd_bench->add_option("--top-k", bench_top_k, "Features (or components) per selector")
        ->required();
    cmd_bench->add_option("--selectors", bench_selectors, "Subset of: cfs,pca,ig,mi,cst")
        ->delimiter(',');
    cmd_bench
        ->add_option("--normalizers", bench_normalizers,
                     "Subset of: mm,l1,l2,pn,l1pn,l2pn,pnl1,pnl2")
        ->delimiter(',');
    cmd_bench->add_option("--classifiers", bench_classifiers, "Subset of: gnb,knn,dt,lr")
        ->delimiter(',');
    cmd_bench->add_option("--folds", bench_folds, "Cross-validation folds")
        ->capture_default_str();
    cmd_bench->add_option("--seed", bench_seed, "Fold-shuffle seed")->capture_default_str();
    cmd_bench->add_option("--scope", bench_scope, "global or per-fold selector fitting")
        ->check(CLI::IsMember({"global", "per-fold"}))
        ->capture_default_str();
    cmd_bench->add_option("--bins", bench_bins, "Bin count for ig/mi/cst")
        ->capture_default_str();
    cmd_bench->add_option("--alpha", grid.power_alpha, "Power-normalization exponent in (0,1]")
        ->capture_default_str();
    cmd_bench->add_option("--knn-k", grid.classifier_config.k_neighbors, "knn neighbor count")
        ->capture_default_str();
    cmd_bench->add_option("--dt-depth", grid.classifier_config.dt_max_depth, "dt depth limit")
        ->capture_default_str();
    cmd_bench
        ->add_option("--lr-strength", grid.classifier_config.lr_l1_strength,
                     "lr l1 regularization strength")
        ->capture_default_str();
    cmd_bench->add_option("--lr-iters", grid.classifier_config.lr_max_iters, "lr iteration cap")
        ->capture_default_str();
    cmd_bench->add_option("--name", bench_name, "Dataset name in reports (default: file stem)");
    cmd_bench->add_option("--out", bench_out,
                          "Report basename; writes <out>.csv and <out>.json");
    cmd_bench->add_option("--format", bench_format, "Stdout view: matrix, csv or json")
        ->check(CLI::IsMember({"matrix", "csv", "json"}))
        ->capture_default_str();
    cmd_bench->callback([&] {
        const LoadedData loaded = load(bench_data);
        grid.top_k = bench_top_k;
        grid.n_folds = bench_folds;
        grid.seed = bench_seed;
        grid.bin_count = bench_bins;
        grid.scope = cfs::parse_scope(bench_scope);
        if (!bench_selectors.empty()) {
            grid.selectors.clear();
            for (const std::string& name : bench_selectors) {
                grid.selectors.push_back(cfs::parse_selector(name));
            }
        }
        if (!bench_normalizers.empty()) {
            grid.normalizers.clear();
            for (const std::string& name : bench_normalizers) {
                grid.normalizers.push_back(cfs::parse_norm(name));
            }
        }
        if (!bench_classifiers.empty()) grid.classifiers = bench_classifiers;
        const std::string name = bench_name.empty() ? stem_of(bench_data.path) : bench_name;
        const cfs::CVReport report = cfs::run_grid(loaded.ds, grid, name);
        if (!bench_out.empty()) {
            write_out(cfs::report_to_csv(report), bench_out + ".csv");
            write_out(cfs::report_to_json(report), bench_out + ".json");
        }
        if (bench_format == "csv") {
            std::cout << cfs::report_to_csv(report);
        } else if (bench_format == "json") {
            std::cout << cfs::report_to_json(report);
        } else {
            std::cout << cfs::render_matrix(report);
        }
    });

    // datagen
    auto* cmd_datagen = app.add_subcommand(
        "datagen", "Write the bundled deterministic datasets and a manifest");
    std::string datagen_dir;
    cmd_datagen->add_option("--out-dir", datagen_dir, "Target directory")->required();
    cmd_datagen->callback([&] {
        std::filesystem::create_directories(datagen_dir);
        nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
        for (const cfs::SyntheticFile& file : cfs::all_synthetic_datasets()) {
            const std::string path =
                (std::filesystem::path(datagen_dir) / (file.name + ".csv")).string();
            write_out(file.csv_text, path);
            const cfs::Dataset ds = cfs::load_synthetic(file);
            manifest.push_back({{"name", file.name},
                                {"file", file.name + ".csv"},
                                {"label_column", file.load_options.label_column},
                                {"has_header", file.load_options.has_header},
                                {"missing_marker", file.load_options.missing_marker},
                                {"instances", ds.n_instances()},
                                {"clean_features", ds.n_features()},
                                {"classes", ds.n_classes()}});
            std::cout << path << ": " << ds.n_instances() << " rows, " << ds.n_features()
                      << " clean features, " << ds.n_classes() << " classes\n";
        }
        write_out(manifest.dump(2) + "\n",
                  (std::filesystem::path(datagen_dir) / "datasets.json").string());
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const cfs::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const cfs::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const cfs::DataError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
