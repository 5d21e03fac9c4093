#include "covernum/incidence.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

using namespace covernum;

namespace {

struct S4Setup {
    GroupTable g;
    ClassData cd;
    std::vector<SubgroupClass> subs;
    IncidenceMatrices im;
};

S4Setup make_s4() {
    S4Setup s{close_group("S4", 4, {parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)}, 24)};
    s.cd = conjugacy_classes(s.g);
    s.subs = {
        close_subgroup(s.g, "M1", "A4", {parse_perm("(1,2,3)", 4), parse_perm("(1,2)(3,4)", 4)}, 12),
        close_subgroup(s.g, "M2", "D4", {parse_perm("(1,2,3,4)", 4), parse_perm("(1,3)", 4)}, 8),
        close_subgroup(s.g, "M3", "S3", {parse_perm("(1,2)", 4), parse_perm("(1,2,3)", 4)}, 6),
    };
    s.im = incidence_matrices(s.g, s.cd, s.subs);
    return s;
}

const IncidenceMatrices::FusedRow& row(const IncidenceMatrices& im, const std::string& label) {
    for (auto& r : im.fused)
        if (r.label == label) return r;
    throw std::runtime_error("no fused row " + label);
}

}  // namespace

TEST_CASE("incidence counts for the maximal subgroups of S4") {
    S4Setup s = make_s4();
    // principal classes: transpositions, 3-cycles, 4-cycles
    REQUIRE(s.im.fused.size() == 3);
    CHECK(row(s.im, "2B").a == std::vector<int64_t>{0, 1, 2});
    CHECK(row(s.im, "3A").a == std::vector<int64_t>{1, 0, 1});
    CHECK(row(s.im, "4A").a == std::vector<int64_t>{0, 1, 0});
    CHECK(row(s.im, "2B").b_total == std::vector<int64_t>{0, 2, 3});
    CHECK(row(s.im, "3A").b_total == std::vector<int64_t>{8, 0, 2});
    CHECK(row(s.im, "4A").b_total == std::vector<int64_t>{0, 2, 0});
    CHECK(row(s.im, "2B").total_size == 6);

    // full matrices include non-principal classes; the double transpositions
    // (2A: smaller class, larger centralizer) sit inside A4 and every D4
    int i2a = s.cd.index_of("2A");
    REQUIRE(i2a >= 0);
    CHECK(s.cd.classes[i2a].size == 3);
    CHECK_FALSE(s.cd.classes[i2a].principal);
    CHECK(s.im.a[i2a] == std::vector<int64_t>{1, 3, 0});
    CHECK(s.im.b[i2a] == std::vector<int64_t>{3, 3, 0});

    // edge identity holds on every cell of the full matrices
    for (size_t ki = 0; ki < s.cd.classes.size(); ++ki)
        for (size_t j = 0; j < s.subs.size(); ++j)
            CHECK(s.im.a[ki][j] * s.cd.classes[ki].size ==
                  s.im.b[ki][j] * s.subs[j].class_size());
}

TEST_CASE("permutation character route agrees on self-normalizing classes") {
    S4Setup s = make_s4();
    // A4 is normal, so only D4 and S3 columns qualify: 2 columns x 5 classes
    CHECK(check_prop_char(s.g, s.cd, s.subs, s.im) == 10);
}

TEST_CASE("forced columns come from singleton-support rows") {
    S4Setup s = make_s4();
    auto forced = forced_columns(s.im);
    REQUIRE(forced.size() == 1);
    CHECK(forced[0].col == 1);  // the 4-cycles live only in the D4 class
    CHECK(forced[0].reason_class == "4A");
}

TEST_CASE("a cyclic group admits no cover and forced_columns reports it") {
    GroupTable g = close_group("C6", 6, {parse_perm("(1,2,3,4,5,6)", 6)}, 6);
    ClassData cd = conjugacy_classes(g);
    std::vector<SubgroupClass> subs = {
        close_subgroup(g, "M1", "C3", {parse_perm("(1,3,5)(2,4,6)", 6)}, 3),
        close_subgroup(g, "M2", "C2", {parse_perm("(1,4)(2,5)(3,6)", 6)}, 2),
    };
    IncidenceMatrices im = incidence_matrices(g, cd, subs);
    CHECK(row(im, "6AB").a == std::vector<int64_t>{0, 0});
    CHECK_THROWS_WITH_AS(forced_columns(im), doctest::Contains("not covered"),
                         std::runtime_error);
}

TEST_CASE("incidence TSV export shape") {
    S4Setup s = make_s4();
    auto dir = std::filesystem::temp_directory_path() / "covernum_tsv";
    std::filesystem::create_directories(dir);
    write_incidence_tsv(s.im, (dir / "a.tsv").string(), true);
    std::ifstream in(dir / "a.tsv");
    std::string line;
    std::getline(in, line);
    CHECK(line == "class\tM1\tM2\tM3");
    std::getline(in, line);
    CHECK(line == "2B\t0\t1\t2");
    write_fusion_report(s.cd, s.im, (dir / "fusion.txt").string());
    CHECK(std::filesystem::file_size(dir / "fusion.txt") > 0);
    std::filesystem::remove_all(dir);
}
