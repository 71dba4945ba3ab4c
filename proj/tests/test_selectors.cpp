#include <doctest.h>

#include <cmath>
#include <vector>

#include <Eigen/Core>

#include "cfs/errors.hpp"
#include "cfs/selectors.hpp"

#include "test_support.hpp"

using cfs::BinPolicy;
using cfs::SelectorKind;
using test_support::make_dataset;

TEST_SUITE_BEGIN("selectors");

TEST_CASE("selector names round trip") {
    for (SelectorKind kind : cfs::all_selectors()) {
        CHECK(cfs::parse_selector(cfs::to_string(kind)) == kind);
    }
    CHECK(cfs::to_string(SelectorKind::ChiSquare) == "cst");
    CHECK(cfs::parse_selector("mi") == SelectorKind::MutualInfo);
    CHECK_THROWS_AS(cfs::parse_selector("anova"), cfs::ConfigError);
}

TEST_CASE("pca on a perfect line concentrates all variance in one axis") {
    Eigen::MatrixXd x(4, 2);
    x << 0, 0, 1, 1, 2, 2, 3, 3;
    const cfs::PcaModel model = cfs::pca_fit(x);
    CHECK(model.column_means(0) == doctest::Approx(1.5));
    CHECK(model.column_means(1) == doctest::Approx(1.5));
    CHECK(model.eigenvalues(0) == doctest::Approx(10.0 / 3.0).epsilon(1e-12));
    CHECK(model.eigenvalues(1) == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(model.components(0, 0) == doctest::Approx(inv_sqrt2).epsilon(1e-12));
    CHECK(model.components(0, 1) == doctest::Approx(inv_sqrt2).epsilon(1e-12));

    const Eigen::MatrixXd projected = cfs::pca_transform(model, x, 1);
    REQUIRE(projected.cols() == 1);
    CHECK(projected(0, 0) == doctest::Approx(-3.0 * inv_sqrt2).epsilon(1e-12));
    CHECK(projected(3, 0) == doctest::Approx(3.0 * inv_sqrt2).epsilon(1e-12));
}

TEST_CASE("pca axes are orthonormal and the full projection round trips") {
    test_support::Rng rng(77);
    Eigen::MatrixXd x(40, 5);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) x(i, j) = rng.uniform(-2.0, 3.0);

    const cfs::PcaModel model = cfs::pca_fit(x);
    const Eigen::MatrixXd gram = model.components * model.components.transpose();
    CHECK((gram - Eigen::MatrixXd::Identity(5, 5)).cwiseAbs().maxCoeff() < 1e-10);
    for (int i = 1; i < model.eigenvalues.size(); ++i) {
        CHECK(model.eigenvalues(i - 1) >= model.eigenvalues(i));
        CHECK(model.eigenvalues(i) >= 0.0);
    }

    const Eigen::MatrixXd back = cfs::pca_inverse_transform(model, cfs::pca_transform(model, x, 5));
    CHECK((back - x).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pca input validation") {
    Eigen::MatrixXd one_row(1, 2);
    one_row << 1, 2;
    CHECK_THROWS_AS(cfs::pca_fit(one_row), cfs::DataError);

    Eigen::MatrixXd bad(3, 2);
    bad << 1, 2, 3, std::nan(""), 5, 6;
    CHECK_THROWS_AS(cfs::pca_fit(bad), cfs::DataError);

    Eigen::MatrixXd x(4, 2);
    x << 0, 0, 1, 1, 2, 2, 3, 3;
    const cfs::PcaModel model = cfs::pca_fit(x);
    CHECK_THROWS_AS(cfs::pca_transform(model, x, 0), cfs::ConfigError);
    CHECK_THROWS_AS(cfs::pca_transform(model, x, 3), cfs::ConfigError);
    Eigen::MatrixXd narrow(4, 1);
    narrow << 1, 2, 3, 4;
    CHECK_THROWS_AS(cfs::pca_transform(model, narrow, 1), cfs::ConfigError);
}

TEST_CASE("equal-width bins slice the observed range") {
    Eigen::VectorXd v(5);
    v << 0.0, 0.05, 0.55, 0.95, 1.0;
    const std::vector<int> bins = cfs::discretize(v, 10, BinPolicy::EqualWidth);
    CHECK(bins == std::vector<int>{0, 0, 5, 9, 9});

    Eigen::VectorXd flat = Eigen::VectorXd::Constant(4, 3.25);
    const std::vector<int> flat_bins = cfs::discretize(flat, 10, BinPolicy::EqualWidth);
    CHECK(flat_bins == std::vector<int>{0, 0, 0, 0});
}

TEST_CASE("equal-frequency bins split a balanced sample evenly") {
    Eigen::VectorXd v(4);
    v << 1, 2, 3, 4;
    const std::vector<int> bins = cfs::discretize(v, 2, BinPolicy::EqualFrequency);
    CHECK(bins == std::vector<int>{0, 0, 1, 1});

    // Ties always share a bin, even across a quantile edge.
    Eigen::VectorXd tied(6);
    tied << 1, 1, 1, 1, 2, 3;
    const std::vector<int> tied_bins = cfs::discretize(tied, 2, BinPolicy::EqualFrequency);
    CHECK(tied_bins[0] == tied_bins[3]);
    CHECK_THROWS_AS(cfs::discretize(v, 1, BinPolicy::EqualFrequency), cfs::ConfigError);
}

TEST_CASE("entropy of a fair coin is one bit") {
    const std::vector<int> coin = {0, 1, 0, 1};
    CHECK(cfs::entropy_bits(coin) == doctest::Approx(1.0).epsilon(1e-15));
    const std::vector<int> certain = {2, 2, 2};
    CHECK(cfs::entropy_bits(certain) == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("mutual information of the three-quarters table is pinned") {
    // Joint counts [[3,1],[1,3]] over 8 samples: 0.75*log2(1.5) - 0.25 bits.
    const std::vector<int> bins = {0, 0, 0, 0, 1, 1, 1, 1};
    const std::vector<int> labels = {0, 0, 0, 1, 1, 1, 1, 0};
    CHECK(cfs::mutual_information_bits(bins, labels) ==
          doctest::Approx(0.1887218755408672).epsilon(1e-12));

    // Equal-frequency binning of a matching numeric feature lands in the
    // same table.
    Eigen::VectorXd feature(8);
    feature << 0, 0, 0, 0, 1, 1, 1, 1;
    CHECK(cfs::score_mi(feature, labels, 2) ==
          doctest::Approx(0.1887218755408672).epsilon(1e-12));
}

TEST_CASE("mutual information is non-negative and capped by label entropy") {
    const std::vector<int> labels = {0, 1, 0, 1, 0, 1, 0, 1};
    const std::vector<int> independent = {0, 0, 1, 1, 0, 0, 1, 1};
    CHECK(cfs::mutual_information_bits(independent, labels) >= 0.0);
    const std::vector<int> copy = labels;
    CHECK(cfs::mutual_information_bits(copy, labels) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("chi-square of the three-quarters table is exactly 2") {
    Eigen::VectorXd feature(8);
    feature << 0, 0, 0, 0, 1, 1, 1, 1;
    const std::vector<int> labels = {0, 0, 0, 1, 1, 1, 1, 0};
    const cfs::Chi2Result r = cfs::score_chi2(feature, labels, 2);
    CHECK(r.statistic == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.zero_expected_cells == 0);
}

TEST_CASE("chi-square of a perfect balanced predictor equals the sample count") {
    const int m = 100;
    Eigen::VectorXd feature(m);
    std::vector<int> labels(m);
    for (int i = 0; i < m; ++i) {
        feature(i) = i < m / 2 ? 0.0 : 1.0;
        labels[i] = i < m / 2 ? 0 : 1;
    }
    const cfs::Chi2Result r = cfs::score_chi2(feature, labels, 2);
    CHECK(r.statistic == doctest::Approx(100.0).epsilon(1e-12));
}

TEST_CASE("empty bins are counted and contribute nothing") {
    Eigen::VectorXd feature(8);
    feature << 0, 0, 0, 0, 1, 1, 1, 1;
    const std::vector<int> labels = {0, 0, 0, 1, 1, 1, 1, 0};
    const cfs::Chi2Result r = cfs::score_chi2(feature, labels, 10);
    // Only bins 0 and 9 are populated; the other 8 bins x 2 classes are
    // zero-expected cells.
    CHECK(r.zero_expected_cells == 16);
    CHECK(r.statistic == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("filter rankings sort by descending score with ascending id ties") {
    // f0 mirrors the label, f1 is constant, f2 mirrors it too.
    const cfs::Dataset ds = make_dataset(
        {
            {0.0, 5.0, 0.0},
            {1.0, 5.0, 1.0},
            {0.0, 5.0, 0.0},
            {1.0, 5.0, 1.0},
        },
        {0, 1, 0, 1});
    for (SelectorKind kind :
         {SelectorKind::InfoGain, SelectorKind::MutualInfo, SelectorKind::ChiSquare}) {
        CAPTURE(cfs::to_string(kind));
        const cfs::RankedFeatures ranks = cfs::rank_with(kind, ds);
        REQUIRE(ranks.ordered.size() == 3);
        CHECK(ranks.ordered[0].feature_id == 0);
        CHECK(ranks.ordered[1].feature_id == 2);
        CHECK(ranks.ordered[0].weight == ranks.ordered[1].weight);
        CHECK(ranks.ordered[2].feature_id == 1);
        CHECK(ranks.ordered[2].weight == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
    }
    CHECK_THROWS_AS(cfs::rank_with(SelectorKind::Pca, ds), cfs::ConfigError);
}

TEST_CASE("top-k selection keeps raw columns for filters") {
    const cfs::Dataset ds = make_dataset(
        {
            {0.0, 5.0},
            {10.0, 5.0},
            {0.0, 5.0},
            {10.0, 5.0},
        },
        {0, 1, 0, 1});
    const cfs::SelectionResult r = cfs::select_with(SelectorKind::InfoGain, ds, 1);
    CHECK_FALSE(r.extracted);
    CHECK(r.data.feature_names == std::vector<std::string>{"f0"});
    CHECK(r.data.features(1, 0) == 10.0);
    CHECK(r.data.provenance.find("selected top 1 by ig") != std::string::npos);
    CHECK(r.ranking.ordered.size() == 2);
}

TEST_CASE("pca selection projects instead of picking columns") {
    const cfs::Dataset ds = make_dataset(
        {
            {0.0, 0.0},
            {1.0, 1.0},
            {2.0, 2.0},
            {3.0, 3.0},
        },
        {0, 0, 1, 1});
    const cfs::SelectionResult r = cfs::select_with(SelectorKind::Pca, ds, 1);
    CHECK(r.extracted);
    CHECK(r.data.feature_names == std::vector<std::string>{"pc0"});
    CHECK(r.data.n_features() == 1);
    CHECK(r.data.labels == ds.labels);
    CHECK(r.ranking.tie_policy == "eigenvalue order");
    REQUIRE(r.ranking.ordered.size() == 2);
    CHECK(r.ranking.ordered[0].weight >= r.ranking.ordered[1].weight);
    CHECK(r.data.provenance.find("pca projection") != std::string::npos);

    CHECK_THROWS_AS(cfs::select_with(SelectorKind::Pca, ds, 3), cfs::ConfigError);
    CHECK_THROWS_AS(cfs::select_with(SelectorKind::Pca, ds, 0), cfs::ConfigError);
}

TEST_CASE("cfs selection matches the standalone ranker") {
    const cfs::Dataset ds = make_dataset(
        {
            {0.5, 0.0},
            {0.0, 0.5},
            {0.5, 1.0},
            {1.0, 0.5},
        },
        {0, 1, 2, 1});
    const cfs::SelectionResult r = cfs::select_with(SelectorKind::Cfs, ds, 1);
    CHECK(r.data.feature_names == std::vector<std::string>{"f0"});
    CHECK(r.ranking.ordered[0].weight == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_SUITE_END();
