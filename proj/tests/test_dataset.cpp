#include "doctest.h"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "lbscan/dataset.hpp"

using namespace lbscan;

namespace {

std::string temp_path(const char* stem) {
    return std::string("/tmp/lbscan_test_") + stem + "_" +
           std::to_string(::getpid());
}

}  // namespace

TEST_CASE("csv rows parse into points") {
    std::istringstream in("1.5,2.5\n3,4\n");
    Dataset ds = load_dataset(in, FileFormat::csv);
    REQUIRE(ds.size() == 2);
    CHECK(ds.point(0).x == 1.5);
    CHECK(ds.point(0).y == 2.5);
    CHECK(ds.point(1).x == 3.0);
    CHECK(ds.point(1).y == 4.0);
    CHECK_FALSE(ds.has_truth());
}

TEST_CASE("third column becomes the truth labels") {
    std::istringstream in("0,0,1\n1,0,1\n5,5,-1\n");
    Dataset ds = load_dataset(in, FileFormat::csv);
    REQUIRE(ds.size() == 3);
    REQUIRE(ds.has_truth());
    CHECK(ds.truth() == std::vector<Label>{1, 1, -1});
}

TEST_CASE("tsv accepts tabs and runs of spaces") {
    std::istringstream in("1\t2\n3  4\n");
    Dataset ds = load_dataset(in, FileFormat::tsv);
    REQUIRE(ds.size() == 2);
    CHECK(ds.point(1).x == 3.0);
    CHECK(ds.point(1).y == 4.0);
}

TEST_CASE("blank lines are skipped") {
    std::istringstream in("\n1,2\n\n3,4\n\n");
    Dataset ds = load_dataset(in, FileFormat::csv);
    CHECK(ds.size() == 2);
}

TEST_CASE("malformed rows abort with the line number") {
    std::istringstream in("1,2\nfoo,bar\n");
    try {
        load_dataset(in, FileFormat::csv);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("2") != std::string::npos);
    }
}

TEST_CASE("row with only one column is rejected") {
    std::istringstream in("42\n");
    CHECK_THROWS_AS(load_dataset(in, FileFormat::csv), ParseError);
}

TEST_CASE("rows missing the label column default to noise") {
    std::istringstream in("1,2,0\n3,4\n");
    Dataset ds = load_dataset(in, FileFormat::csv);
    REQUIRE(ds.has_truth());
    CHECK(ds.truth() == std::vector<Label>{0, kNoise});
}

TEST_CASE("format_for_path picks csv only for .csv") {
    CHECK(format_for_path("data/points.csv") == FileFormat::csv);
    CHECK(format_for_path("points.tsv") == FileFormat::tsv);
    CHECK(format_for_path("points.txt") == FileFormat::tsv);
}

TEST_CASE("bounds is the smallest closed box over the points") {
    Dataset ds({{1.0, 5.0}, {-2.0, 3.0}, {4.0, -1.0}});
    BoundingBox b = ds.bounds();
    CHECK(b.x0 == -2.0);
    CHECK(b.y0 == -1.0);
    CHECK(b.x1 == 4.0);
    CHECK(b.y1 == 5.0);
}

TEST_CASE("dataset file round-trip preserves points and labels") {
    const std::string path = temp_path("roundtrip") + ".csv";
    Dataset ds({{0.125, 7.25}, {-3.5, 2.0}}, {0, kNoise});
    save_dataset_file(ds, path);
    Dataset back = load_dataset_file(path, FileFormat::csv);
    REQUIRE(back.size() == 2);
    CHECK(back.point(0).x == 0.125);
    CHECK(back.point(1).y == 2.0);
    CHECK(back.truth() == ds.truth());
    std::remove(path.c_str());
}

TEST_CASE("labels file round-trip") {
    const std::string path = temp_path("labels") + ".csv";
    std::vector<Label> labels{0, 0, kNoise, 2};
    save_labels_file(labels, path);
    CHECK(load_labels_file(path) == labels);
    std::remove(path.c_str());
}

TEST_CASE("missing file raises ParseError") {
    CHECK_THROWS_AS(load_dataset_file("/nonexistent/nope.csv", FileFormat::csv),
                    ParseError);
}
