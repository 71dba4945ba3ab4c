#include <doctest.h>

#include <algorithm>
#include <memory>
#include <set>
#include <vector>

#include "cfs/classifiers.hpp"
#include "cfs/cross_validation.hpp"
#include "cfs/errors.hpp"
#include "cfs/synthetic.hpp"

#include "test_support.hpp"

using cfs::GridSpec;
using cfs::NormKind;
using cfs::SelectionScope;
using cfs::SelectorKind;
using test_support::make_dataset;

TEST_SUITE_BEGIN("cross_validation");

TEST_CASE("scope names round trip") {
    CHECK(cfs::parse_scope("global") == SelectionScope::Global);
    CHECK(cfs::parse_scope("per-fold") == SelectionScope::PerFold);
    CHECK(cfs::to_string(SelectionScope::PerFold) == "per-fold");
    CHECK_THROWS_AS(cfs::parse_scope("nested"), cfs::ConfigError);
}

TEST_CASE("folds partition the rows and stratify the classes") {
    std::vector<int> labels;
    for (int i = 0; i < 40; ++i) labels.push_back(i < 25 ? 0 : 1);
    const auto folds = cfs::make_folds(labels, 2, 5, 7);
    REQUIRE(folds.size() == 5);

    std::vector<int> seen(40, 0);
    for (const cfs::Fold& fold : folds) {
        CHECK(fold.train_rows.size() + fold.test_rows.size() == 40);
        CHECK(std::is_sorted(fold.test_rows.begin(), fold.test_rows.end()));
        CHECK(std::is_sorted(fold.train_rows.begin(), fold.train_rows.end()));
        for (int r : fold.test_rows) seen[static_cast<std::size_t>(r)]++;

        int class0 = 0;
        for (int r : fold.test_rows) class0 += labels[static_cast<std::size_t>(r)] == 0;
        CHECK(class0 == 5);
        CHECK(static_cast<int>(fold.test_rows.size()) == 8);
    }
    for (int count : seen) CHECK(count == 1);
}

TEST_CASE("fold assembly is deterministic in the seed") {
    std::vector<int> labels;
    for (int i = 0; i < 30; ++i) labels.push_back(i % 3);
    const auto a = cfs::make_folds(labels, 3, 4, 42);
    const auto b = cfs::make_folds(labels, 3, 4, 42);
    const auto c = cfs::make_folds(labels, 3, 4, 43);
    REQUIRE(a.size() == b.size());
    bool all_equal_ab = true;
    bool all_equal_ac = true;
    for (std::size_t f = 0; f < a.size(); ++f) {
        all_equal_ab = all_equal_ab && a[f].test_rows == b[f].test_rows;
        all_equal_ac = all_equal_ac && a[f].test_rows == c[f].test_rows;
    }
    CHECK(all_equal_ab);
    CHECK_FALSE(all_equal_ac);
}

TEST_CASE("sparse classes trigger a warning instead of an error") {
    std::vector<int> labels = {0, 0, 0, 0, 0, 0, 1, 0, 0, 0};
    std::vector<std::string> warnings;
    const auto folds = cfs::make_folds(labels, 2, 3, 1, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0].find("class 1 has 1 instance(s)") != std::string::npos);
    int appearances = 0;
    for (const auto& fold : folds) {
        appearances += static_cast<int>(std::count(fold.test_rows.begin(), fold.test_rows.end(), 6));
    }
    CHECK(appearances == 1);
}

TEST_CASE("fold validation") {
    std::vector<int> labels = {0, 1, 0, 1};
    CHECK_THROWS_AS(cfs::make_folds(labels, 2, 1, 0), cfs::ConfigError);
    CHECK_THROWS_AS(cfs::make_folds(labels, 2, 5, 0), cfs::ConfigError);
    CHECK_THROWS_AS(cfs::make_folds({0, 2, 0, 1}, 2, 2, 0), cfs::ConfigError);
}

namespace {

GridSpec small_spec() {
    GridSpec spec;
    spec.selectors = {SelectorKind::Cfs, SelectorKind::MutualInfo};
    spec.normalizers = {NormKind::MinMax, NormKind::L2};
    spec.classifiers = {"gnb", "knn"};
    spec.top_k = 3;
    spec.n_folds = 3;
    spec.seed = 5;
    return spec;
}

} // namespace

TEST_CASE("the grid evaluates every selector, normalizer, classifier cell") {
    const cfs::Dataset ds = cfs::load_synthetic(cfs::synthetic_bccds());
    const cfs::CVReport report = cfs::run_grid(ds, small_spec(), "bccds");

    CHECK(report.dataset_name == "bccds");
    CHECK(report.n_instances == ds.n_instances());
    REQUIRE(report.cells.size() == 8);
    REQUIRE(report.selectors.size() == 2);

    std::set<std::string> keys;
    for (const cfs::CellResult& cell : report.cells) {
        CHECK(cell.error.empty());
        keys.insert(cfs::to_string(cell.key.selector) + "/" + cfs::to_string(cell.key.normalizer) +
                    "/" + cell.key.classifier);

        REQUIRE(cell.fold_accuracies.size() == 3);
        double sum = 0.0;
        for (double acc : cell.fold_accuracies) {
            CHECK(acc >= 0.0);
            CHECK(acc <= 1.0);
            sum += acc;
        }
        CHECK(cell.mean_accuracy == doctest::Approx(sum / 3.0).epsilon(1e-15));

        // Pooled confusion covers each row exactly once.
        CHECK(cell.confusion.sum() == ds.n_instances());
        REQUIRE(cell.per_class_recall.size() == 2);
        for (double r : cell.per_class_recall) {
            CHECK(r >= 0.0);
            CHECK(r <= 1.0);
        }
    }
    CHECK(keys.size() == 8);

    for (const cfs::SelectorInfo& info : report.selectors) {
        CHECK(info.error.empty());
        CHECK(info.selected.size() == 3);
        CHECK(info.selected_names.size() == 3);
        CHECK_FALSE(info.extracted);
    }
}

TEST_CASE("grid runs are reproducible") {
    const cfs::Dataset ds = cfs::load_synthetic(cfs::synthetic_bccds());
    const cfs::CVReport a = cfs::run_grid(ds, small_spec());
    const cfs::CVReport b = cfs::run_grid(ds, small_spec());
    REQUIRE(a.cells.size() == b.cells.size());
    for (std::size_t i = 0; i < a.cells.size(); ++i) {
        CHECK(a.cells[i].fold_accuracies == b.cells[i].fold_accuracies);
        CHECK(a.cells[i].mean_accuracy == b.cells[i].mean_accuracy);
        CHECK(a.cells[i].zero_norm_rows == b.cells[i].zero_norm_rows);
    }
}

TEST_CASE("pca cells report component names instead of feature ids") {
    const cfs::Dataset ds = cfs::load_synthetic(cfs::synthetic_bccds());
    GridSpec spec = small_spec();
    spec.selectors = {SelectorKind::Pca};
    const cfs::CVReport report = cfs::run_grid(ds, spec);
    REQUIRE(report.selectors.size() == 1);
    CHECK(report.selectors[0].extracted);
    CHECK(report.selectors[0].selected.empty());
    CHECK(report.selectors[0].selected_names ==
          std::vector<std::string>{"pc0", "pc1", "pc2"});
    for (const auto& cell : report.cells) CHECK(cell.error.empty());
}

TEST_CASE("per-fold scope records a selection for every fold") {
    const cfs::Dataset ds = cfs::load_synthetic(cfs::synthetic_bccds());
    GridSpec spec = small_spec();
    spec.scope = SelectionScope::PerFold;
    const cfs::CVReport report = cfs::run_grid(ds, spec);
    for (const cfs::SelectorInfo& info : report.selectors) {
        CHECK(info.error.empty());
        REQUIRE(info.fold_selected.size() == 3);
        for (const auto& ids : info.fold_selected) CHECK(ids.size() == 3);
    }
    for (const auto& cell : report.cells) CHECK(cell.error.empty());
}

TEST_CASE("a selector that cannot stage poisons only its own cells") {
    // Two folds of a 4-row dataset leave 2-row training partitions, too few
    // for curvature triples; the univariate filter is unaffected.
    const cfs::Dataset ds = make_dataset(
        {
            {0.0, 1.0},
            {1.0, 0.0},
            {0.5, 0.2},
            {0.2, 0.9},
        },
        {0, 1, 0, 1});
    GridSpec spec;
    spec.selectors = {SelectorKind::Cfs, SelectorKind::MutualInfo};
    spec.normalizers = {NormKind::MinMax};
    spec.classifiers = {"gnb"};
    spec.top_k = 1;
    spec.n_folds = 2;
    spec.scope = SelectionScope::PerFold;
    const cfs::CVReport report = cfs::run_grid(ds, spec);

    REQUIRE(report.selectors.size() == 2);
    CHECK_FALSE(report.selectors[0].error.empty());
    CHECK(report.selectors[1].error.empty());
    REQUIRE(report.cells.size() == 2);
    CHECK(report.cells[0].error.find("selector failed") != std::string::npos);
    CHECK(report.cells[0].fold_accuracies.empty());
    CHECK(report.cells[1].error.empty());
}

namespace {

class Misfit : public cfs::Classifier {
  public:
    void fit(const Eigen::MatrixXd&, const std::vector<int>&, int) override {
        throw cfs::DataError("misfit always refuses");
    }
    std::vector<int> predict(const Eigen::MatrixXd&) const override { return {}; }
    std::string name() const override { return "misfit"; }
};

} // namespace

TEST_CASE("a throwing classifier is captured per cell") {
    cfs::register_classifier("misfit", [](const cfs::ClassifierConfig&) {
        return std::make_unique<Misfit>();
    });
    const cfs::Dataset ds = cfs::load_synthetic(cfs::synthetic_bccds());
    GridSpec spec = small_spec();
    spec.classifiers = {"misfit", "gnb"};
    const cfs::CVReport report = cfs::run_grid(ds, spec);
    int errored = 0;
    for (const cfs::CellResult& cell : report.cells) {
        if (cell.key.classifier == "misfit") {
            CHECK(cell.error.find("misfit always refuses") != std::string::npos);
            CHECK(cell.fold_accuracies.empty());
            ++errored;
        } else {
            CHECK(cell.error.empty());
        }
    }
    CHECK(errored == 4);
}

TEST_CASE("grid validation rejects bad shapes up front") {
    const cfs::Dataset ds = cfs::load_synthetic(cfs::synthetic_bccds());
    GridSpec spec = small_spec();
    spec.top_k = 0;
    CHECK_THROWS_AS(cfs::run_grid(ds, spec), cfs::ConfigError);
    spec = small_spec();
    spec.top_k = ds.n_features() + 1;
    CHECK_THROWS_AS(cfs::run_grid(ds, spec), cfs::ConfigError);
    spec = small_spec();
    spec.classifiers.clear();
    CHECK_THROWS_AS(cfs::run_grid(ds, spec), cfs::ConfigError);
    spec = small_spec();
    spec.bin_count = 1;
    CHECK_THROWS_AS(cfs::run_grid(ds, spec), cfs::ConfigError);
}

TEST_CASE("metadata echoes the effective configuration") {
    const cfs::Dataset ds = cfs::load_synthetic(cfs::synthetic_bccds());
    const cfs::CVReport report = cfs::run_grid(ds, small_spec(), "bccds");
    auto value_of = [&](const std::string& key) -> std::string {
        for (const auto& [k, v] : report.metadata) {
            if (k == key) return v;
        }
        return "<missing>";
    };
    CHECK(value_of("dataset") == "bccds");
    CHECK(value_of("top_k") == "3");
    CHECK(value_of("folds") == "3");
    CHECK(value_of("seed") == "5");
    CHECK(value_of("scope") == "global");
    CHECK(value_of("selectors") == "cfs,mi");
    CHECK(value_of("normalizers") == "mm,l2");
    CHECK(value_of("classifiers") == "gnb,knn");
    CHECK(value_of("k_neighbors") == "3");
}

TEST_CASE("top mean accuracy picks each selector's best cell") {
    cfs::CVReport report;
    auto add_cell = [&](SelectorKind s, NormKind n, const std::string& c, double acc,
                        const std::string& err = "") {
        cfs::CellResult cell;
        cell.key = {s, n, c};
        cell.mean_accuracy = acc;
        cell.error = err;
        report.cells.push_back(cell);
    };
    add_cell(SelectorKind::Cfs, NormKind::MinMax, "gnb", 0.8);
    add_cell(SelectorKind::Cfs, NormKind::L1, "knn", 0.9);
    add_cell(SelectorKind::Cfs, NormKind::L2, "dt", 0.95, "exploded");
    add_cell(SelectorKind::MutualInfo, NormKind::L2, "knn", 0.7);
    add_cell(SelectorKind::MutualInfo, NormKind::L1, "gnb", 0.7);

    const std::vector<cfs::TmaEntry> tma = cfs::summarize_tma(report);
    REQUIRE(tma.size() == 2);
    CHECK(tma[0].selector == SelectorKind::Cfs);
    CHECK(tma[0].normalizer == NormKind::L1);
    CHECK(tma[0].classifier == "knn");
    CHECK(tma[0].accuracy == 0.9);

    // 0.7 tie: "l1" sorts before "l2".
    CHECK(tma[1].selector == SelectorKind::MutualInfo);
    CHECK(tma[1].normalizer == NormKind::L1);
    CHECK(tma[1].classifier == "gnb");

    const std::vector<cfs::SelectorAverage> averages = cfs::selector_averages(report);
    REQUIRE(averages.size() == 2);
    CHECK(averages[0].selector == SelectorKind::Cfs);
    CHECK(averages[0].cells_included == 2);
    CHECK(averages[0].averaged_mean_accuracy == doctest::Approx(0.85));
    CHECK(averages[1].cells_included == 2);
    CHECK(averages[1].averaged_mean_accuracy == doctest::Approx(0.7));
}

TEST_SUITE_END();
