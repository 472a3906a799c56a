#include <catch2/catch_amalgamated.hpp>

#include "featgraph/dataset.hpp"
#include "featgraph/rng.hpp"
#include "support/random_instances.hpp"

using namespace featgraph;

static const char* kSmallCsv =
    "f,g,y\n"
    "0.2,1,1\n"
    "0.9,2,0\n"
    "0.5,3,1\n"
    "0.7,4,0\n";

TEST_CASE("load_csv_text parses a small numeric dataset") {
    const Dataset ds = load_csv_text(kSmallCsv, "y");
    CHECK(ds.n_features() == 2);
    CHECK(ds.n_rows() == 4);
    CHECK(ds.n_classes() == 2);
    CHECK(ds.feature_names() == std::vector<std::string>{"f", "g"});
    CHECK(ds.kind(0) == ColumnKind::numeric);
    CHECK(ds.numeric_at(2, 0) == 0.5);
    // first-appearance order of class labels
    CHECK(ds.class_labels() == std::vector<std::string>{"1", "0"});
}

TEST_CASE("a column with any non-numeric cell is inferred categorical") {
    const Dataset ds = load_csv_text(
        "color,x,y\nred,1,0\n2,2,1\nblue,3,0\n", "y");
    CHECK(ds.kind(0) == ColumnKind::categorical);
    CHECK(ds.kind(1) == ColumnKind::numeric);
    CHECK(ds.categorical_at(1, 0) == "2");
}

TEST_CASE("kind overrides force categorical parsing") {
    LoadOptions opt;
    opt.kind_overrides["x"] = ColumnKind::categorical;
    const Dataset ds = load_csv_text("x,y\n1,0\n2,1\n", "y", opt);
    CHECK(ds.kind(0) == ColumnKind::categorical);
    CHECK(ds.categorical_at(0, 0) == "1");
}

TEST_CASE("missing target column is an error") {
    CHECK_THROWS_WITH(load_csv_text("a,b\n1,2\n", "y"),
                      Catch::Matchers::ContainsSubstring("target column not found"));
}

TEST_CASE("empty document and empty data are errors") {
    CHECK_THROWS(load_csv_text("", "y"));
    CHECK_THROWS(load_csv_text("a,y\n", "y"));
}

TEST_CASE("rows with missing cells are dropped and counted; strict mode throws") {
    LoadReport report;
    const Dataset ds =
        load_csv_text("a,y\n1,0\n,1\n3,0\n", "y", LoadOptions{}, &report);
    CHECK(ds.n_rows() == 2);
    CHECK(report.dropped_rows == 1);

    LoadOptions strict;
    strict.strict = true;
    CHECK_THROWS_WITH(load_csv_text("a,y\n1,0\n,1\n", "y", strict),
                      Catch::Matchers::ContainsSubstring("missing"));
}

TEST_CASE("rfc4180 quoting: commas and escaped quotes inside fields") {
    const Dataset ds = load_csv_text(
        "name,y\n\"a,b\",0\n\"say \"\"hi\"\"\",1\n", "y");
    CHECK(ds.categorical_at(0, 0) == "a,b");
    CHECK(ds.categorical_at(1, 0) == "say \"hi\"");
}

TEST_CASE("duplicate feature names are rejected") {
    CHECK_THROWS_WITH(load_csv_text("a,a,y\n1,2,0\n", "y"),
                      Catch::Matchers::ContainsSubstring("duplicate feature name"));
}

TEST_CASE("class_subset and complement_subset") {
    const Dataset ds = load_csv_text("f,y\n1,a\n2,b\n3,a\n4,b\n", "y");
    const auto sub = ds.class_subset("a");
    CHECK(sub.indices == std::vector<std::size_t>{0, 2});
    const auto comp = ds.complement_subset("a");
    CHECK(comp.indices == std::vector<std::size_t>{1, 3});
    CHECK_THROWS_WITH(ds.class_subset("nope"),
                      Catch::Matchers::ContainsSubstring("unknown class label"));
}

TEST_CASE("single-class dataset: full subset, empty complement") {
    const Dataset ds = load_csv_text("f,y\n1,t\n2,t\n", "y");
    CHECK(ds.class_subset("t").size() == 2);
    CHECK(ds.complement_subset("t").size() == 0);
}

TEST_CASE("class subsets partition the dataset", "[property]") {
    Rng rng(20260810);
    for (int iter = 0; iter < 50; ++iter) {
        const Dataset ds = testgen::random_dataset(rng);
        std::vector<int> seen(ds.n_rows(), 0);
        for (const auto& label : ds.class_labels()) {
            const auto sub = ds.class_subset(label);
            const auto comp = ds.complement_subset(label);
            CHECK(sub.size() + comp.size() == ds.n_rows());
            for (std::size_t i : sub.indices) seen[i]++;
        }
        for (int count : seen) CHECK(count == 1);
    }
}

TEST_CASE("load is deterministic: same bytes, identical dataset") {
    const Dataset a = load_csv_text(kSmallCsv, "y");
    const Dataset b = load_csv_text(kSmallCsv, "y");
    CHECK(a.to_csv() == b.to_csv());
}

TEST_CASE("subset keeps schema and reindexes classes by first appearance") {
    const Dataset ds = load_csv_text("f,y\n1,a\n2,b\n3,a\n4,c\n", "y");
    const Dataset sub = ds.subset({3, 1});
    CHECK(sub.n_rows() == 2);
    CHECK(sub.class_labels() == std::vector<std::string>{"c", "b"});
    CHECK(sub.numeric_at(0, 0) == 4.0);
}

TEST_CASE("select_features keeps the named columns") {
    const Dataset ds = load_csv_text("a,b,c,y\n1,2,3,0\n4,5,6,1\n", "y");
    const Dataset sel = ds.select_features({"c", "a"});
    CHECK(sel.feature_names() == std::vector<std::string>{"c", "a"});
    CHECK(sel.numeric_at(1, 0) == 6.0);
    CHECK_THROWS(ds.select_features({"nope"}));
}
