#include "covernum/mcl.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "covernum/design.hpp"
#include "doctest.h"

using namespace covernum;

namespace {

std::string data_dir() {
    const char* env = std::getenv("COVERNUM_DATA");
    return env ? env : "data";
}

std::string table_path() { return data_dir() + "/mcl/mcl.dat"; }

const TabulatedGroup& tables() {
    static TabulatedGroup t = load_mcl_tables(table_path());
    return t;
}

const SRGraph& graph() {
    static SRGraph g = build_mclaughlin_graph(build_s3622(build_pg24()));
    return g;
}

const std::vector<int>& indep22() {
    static std::vector<int> is = independent_set(graph(), 22);
    return is;
}

// copy of the data file with the first occurrence of `from` replaced by `to`
std::string tampered_copy(const std::string& from, const std::string& to,
                          const std::string& stem) {
    std::ifstream in(table_path());
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    size_t pos = text.find(from);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, from.size(), to);
    auto path = std::filesystem::temp_directory_path() / (stem + ".dat");
    std::ofstream out(path);
    out << text;
    out.close();
    return path.string();
}

const MclBoundPart* part_by_label(const MclLowerBound& lb, const std::string& label) {
    for (const auto& p : lb.parts)
        if (p.label == label) return &p;
    return nullptr;
}

}  // namespace

TEST_CASE("tabulated data loads and cross-checks") {
    const TabulatedGroup& t = tables();
    CHECK(t.name == "McL");
    CHECK(t.order == Int("898128000"));
    CHECK(t.classes.size() == 24);
    CHECK(t.maximals.size() == 12);
    CHECK(t.rows.size() == 8);

    // the one known transcription typo is corrected from the centralizer
    REQUIRE(t.corrections.size() == 1);
    CHECK(t.corrections[0].find("7A") != std::string::npos);
    CHECK(t.corrections[0].find("64125000") != std::string::npos);
    CHECK(t.classes[t.class_index("7A")].size == Int(64152000));

    // spot-check derived per-conjugate counts b = a * |row| / index
    const TabRow& r5 = t.rows[t.row_index("5B")];
    CHECK(r5.total_size == Int(35925120));
    CHECK(r5.b[t.maximal_index("M1")] == Int(653184));
    CHECK(r5.b[t.maximal_index("M12")] == Int(120));
    const TabRow& r9 = t.rows[t.row_index("9AB")];
    CHECK(r9.total_size == Int(66528000));
    CHECK(r9.b[t.maximal_index("M1")] == Int(483840));
    CHECK(r9.b[t.maximal_index("M5")] == Int(4320));
    CHECK(r9.b[t.maximal_index("M6")] == Int(4320));
    const TabRow& r30 = t.rows[t.row_index("30AB")];
    CHECK(r30.b[t.maximal_index("M8")] == Int(2688));
    CHECK(r30.b[t.maximal_index("M12")] == Int(200));

    // facts are recorded with their provenance
    CHECK(t.fact("vertex_stabilizer_class") == "M1");
    CHECK(t.fact("edge_stabilizer_class") == "M6");
    CHECK(t.fact_int("graph_independence_number") == 22);
    CHECK(t.fact_sources.at("graph_independence_number") == "literature");
    CHECK_THROWS_WITH_AS(t.fact("no_such_fact"), doctest::Contains("no_such_fact"),
                         std::runtime_error);
}

TEST_CASE("loader rejects tampered tables") {
    // a size contradicting its centralizer (other than the known 7A typo)
    CHECK_THROWS_WITH_AS(
        load_mcl_tables(tampered_copy("size 22275", "size 22276", "mcl_tamper_size")),
        doctest::Contains("contradicts centralizer"), std::runtime_error);
    // an incidence count whose derived b is not integral
    CHECK_THROWS_WITH_AS(load_mcl_tables(tampered_copy("a 0 1 1 0 0 0 0 0 0 0 1 0",
                                                       "a 1 1 1 0 0 0 0 0 0 0 1 0",
                                                       "mcl_tamper_b")),
                         doctest::Contains("not an integer"), std::runtime_error);
    // a missing class breaks the class equation
    CHECK_THROWS_WITH_AS(
        load_mcl_tables(tampered_copy("class 2A centralizer 40320 size 22275 principal no",
                                      "", "mcl_tamper_eq")),
        doctest::Contains("class equation"), std::runtime_error);
    // order * index must reproduce the group order
    CHECK_THROWS_WITH_AS(
        load_mcl_tables(tampered_copy("maximal M4 order 126000 index 7128",
                                      "maximal M4 order 126000 index 7127", "mcl_tamper_idx")),
        doctest::Contains("order * index"), std::runtime_error);
}

TEST_CASE("lower bound combines disjoint parts") {
    MclLowerBound lb = mcl_lower_bound(tables());
    CHECK(lb.total == 24553);
    REQUIRE(lb.parts.size() == 3);

    const MclBoundPart* p11 = part_by_label(lb, "11AB row");
    REQUIRE(p11 != nullptr);
    CHECK(p11->bound == 2025);
    CHECK(p11->method == "covering row");
    CHECK(p11->columns == std::vector<std::string>{"M2", "M3", "M11"});
    CHECK(p11->result.status == SolveResult::Status::optimal);
    // the row program is replayable
    SolveResult again = solve_integer(p11->program);
    CHECK(again.optimum() == 2025);

    const MclBoundPart* p14 = part_by_label(lb, "14AB row");
    REQUIRE(p14 != nullptr);
    CHECK(p14->bound == 22275);
    CHECK(p14->columns == std::vector<std::string>{"M7", "M8", "M9", "M10"});

    const MclBoundPart* p9 = part_by_label(lb, "9AB graph argument");
    REQUIRE(p9 != nullptr);
    CHECK(p9->bound == 253);
    CHECK(p9->method == "graph argument");
    CHECK(p9->columns == std::vector<std::string>{"M1", "M5", "M6"});

    // the naive covering row for the order-9 classes is reported dominated
    bool naive_noted = false;
    for (const auto& n : lb.notes)
        if (n.find("9AB row") != std::string::npos && n.find("138") != std::string::npos)
            naive_noted = true;
    CHECK(naive_noted);
    CHECK(lb.notes.size() == 6);  // the six unchosen single-row parts
}

TEST_CASE("lower bound tracks the independence number") {
    CHECK(mcl_lower_bound(tables(), 23).total == 24552);

    TabulatedGroup t = tables();
    t.facts.erase("graph_independence_number");
    CHECK_THROWS_WITH_AS(mcl_lower_bound(t), doctest::Contains("graph_independence_number"),
                         std::runtime_error);
}

TEST_CASE("upper bound from the verified graph") {
    const SRGraph& g = graph();
    REQUIRE(g.verified);
    const std::vector<int>& is = indep22();
    REQUIRE(is.size() == 22);

    MclUpperBound ub = mcl_upper_bound(tables(), g, is);
    CHECK(ub.total == 24553);
    CHECK(ub.stabilizers_taken == 253);
    CHECK(ub.vertex_class == "M1");
    CHECK(ub.full_classes == std::vector<std::string>{"M2", "M8"});

    // dropping a full class must name every principal row it leaves exposed
    CHECK_THROWS_WITH_AS(mcl_upper_bound(tables(), g, is, {"M2"}),
                         doctest::Contains("14AB"), std::runtime_error);
    CHECK_THROWS_WITH_AS(mcl_upper_bound(tables(), g, is, {"M2"}),
                         doctest::Contains("12A"), std::runtime_error);
    CHECK_THROWS_WITH_AS(mcl_upper_bound(tables(), g, is, {"M2"}),
                         doctest::Contains("30AB"), std::runtime_error);

    // a claimed independent set with an edge inside is rejected
    int neighbor = -1;
    for (int v = 1; v < g.n && neighbor < 0; ++v)
        if (g.adjacent(0, v)) neighbor = v;
    REQUIRE(neighbor > 0);
    CHECK_THROWS_WITH_AS(mcl_upper_bound(tables(), g, {0, neighbor}),
                         doctest::Contains("contains an edge"), std::runtime_error);

    // the graph must carry verified parameters matching the stabilizer indices
    SRGraph unverified = g;
    unverified.verified = false;
    CHECK_THROWS_WITH_AS(mcl_upper_bound(tables(), unverified, is),
                         doctest::Contains("parameter-verified"), std::runtime_error);
}

TEST_CASE("equality certificate") {
    MclCertificate cert = mcl_sigma(tables(), graph(), indep22());
    CHECK(cert.sigma == 24553);
    CHECK(cert.group == "McL");
    CHECK(cert.lower.total == cert.upper.total);
    CHECK(cert.assumptions.size() == 7);  // every ingested fact is surfaced
    bool correction_noted = false;
    for (const auto& n : cert.notes)
        if (n.find("7A") != std::string::npos) correction_noted = true;
    CHECK(correction_noted);
}
