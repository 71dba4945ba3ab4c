#include <doctest.h>

#include <algorithm>
#include <vector>

#include "cfs/dataset.hpp"
#include "cfs/synthetic.hpp"

TEST_SUITE_BEGIN("synthetic");

TEST_CASE("the corpus holds four datasets with fixed names") {
    const auto all = cfs::all_synthetic_datasets();
    REQUIRE(all.size() == 4);
    std::vector<std::string> names;
    for (const auto& file : all) names.push_back(file.name);
    CHECK(names == std::vector<std::string>{"ccrfds", "bccds", "btds", "drdds"});
    for (const auto& file : all) CHECK(!file.csv_text.empty());
}

TEST_CASE("generation is deterministic") {
    CHECK(cfs::synthetic_ccrfds().csv_text == cfs::synthetic_ccrfds().csv_text);
    CHECK(cfs::synthetic_drdds().csv_text == cfs::synthetic_drdds().csv_text);
}

TEST_CASE("the cervical screening table drops its sparse history block") {
    const cfs::SyntheticFile file = cfs::synthetic_ccrfds();
    CHECK(file.load_options.has_header);
    CHECK(file.load_options.missing_marker == "?");
    CHECK(file.load_options.label_column == "Biopsy");

    const cfs::Dataset ds = cfs::load_synthetic(file);
    CHECK(ds.n_instances() == 858);
    CHECK(ds.n_features() == 9);
    CHECK(ds.dropped_columns.size() == 26);
    CHECK(ds.feature_names ==
          std::vector<std::string>{"Age", "STDs_Number_of_diagnosis", "Dx_Cancer", "Dx_CIN",
                                   "Dx_HPV", "Dx", "Hinselmann", "Schiller", "Citology"});

    REQUIRE(ds.n_classes() == 2);
    const auto counts = cfs::summarize(ds).class_counts;
    const int positives = ds.class_names[0] == "1" ? counts[0] : counts[1];
    CHECK(positives == 18);
    CHECK(ds.provenance.find("attribute deletion dropped 26 column(s)") != std::string::npos);
}

TEST_CASE("the coimbra table matches its published shape") {
    const cfs::Dataset ds = cfs::load_synthetic(cfs::synthetic_bccds());
    CHECK(ds.n_instances() == 116);
    CHECK(ds.n_features() == 9);
    CHECK(ds.dropped_columns.empty());
    CHECK(ds.feature_names ==
          std::vector<std::string>{"Age", "BMI", "Glucose", "Insulin", "HOMA", "Leptin",
                                   "Adiponectin", "Resistin", "MCP.1"});
    REQUIRE(ds.n_classes() == 2);
    const cfs::DatasetSummary s = cfs::summarize(ds);
    REQUIRE(ds.class_names.size() == 2);
    const int healthy = ds.class_names[0] == "1" ? s.class_counts[0] : s.class_counts[1];
    const int patients = ds.class_names[0] == "1" ? s.class_counts[1] : s.class_counts[0];
    CHECK(healthy == 52);
    CHECK(patients == 64);
}

TEST_CASE("the tissue table carries six classes") {
    const cfs::Dataset ds = cfs::load_synthetic(cfs::synthetic_btds());
    CHECK(ds.n_instances() == 106);
    CHECK(ds.n_features() == 9);
    REQUIRE(ds.n_classes() == 6);
    CHECK(ds.feature_names ==
          std::vector<std::string>{"I0", "PA500", "HFS", "DA", "Area", "A_DA", "Max_IP", "DR",
                                   "P"});
    const cfs::DatasetSummary s = cfs::summarize(ds);
    long total = 0;
    for (long c : s.class_counts) total += c;
    CHECK(total == 106);
    auto count_of = [&](const std::string& name) -> long {
        for (std::size_t i = 0; i < ds.class_names.size(); ++i) {
            if (ds.class_names[i] == name) return s.class_counts[i];
        }
        return -1;
    };
    CHECK(count_of("car") == 21);
    CHECK(count_of("fad") == 15);
    CHECK(count_of("mas") == 18);
    CHECK(count_of("gla") == 16);
    CHECK(count_of("con") == 14);
    CHECK(count_of("adi") == 22);
}

TEST_CASE("the retinopathy table is headerless with a numeric label column") {
    const cfs::SyntheticFile file = cfs::synthetic_drdds();
    CHECK_FALSE(file.load_options.has_header);
    CHECK(file.load_options.label_column == "19");

    const cfs::Dataset ds = cfs::load_synthetic(file);
    CHECK(ds.n_instances() == 1151);
    CHECK(ds.n_features() == 19);
    REQUIRE(ds.n_classes() == 2);
    const cfs::DatasetSummary s = cfs::summarize(ds);
    const int zeros = ds.class_names[0] == "0" ? s.class_counts[0] : s.class_counts[1];
    CHECK(zeros == 540);
    CHECK(s.class_counts[0] + s.class_counts[1] == 1151);

    // The lesion area block is written in scientific notation.
    const std::string& text = file.csv_text;
    CHECK(text.find('e') != std::string::npos);
}

TEST_CASE("every dataset loads clean and is fit for the full pipeline") {
    for (const auto& file : cfs::all_synthetic_datasets()) {
        CAPTURE(file.name);
        const cfs::Dataset ds = cfs::load_synthetic(file);
        CHECK(ds.n_instances() >= 100);
        CHECK(ds.n_features() >= 9);
        CHECK(ds.features.allFinite());
        CHECK(static_cast<int>(ds.labels.size()) == ds.n_instances());
        const int n_classes = ds.n_classes();
        for (int y : ds.labels) {
            CHECK(y >= 0);
            CHECK(y < n_classes);
        }
    }
}

TEST_SUITE_END();
