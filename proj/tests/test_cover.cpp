#include "covernum/cover.hpp"

#include <algorithm>

#include "covernum/brute.hpp"
#include "doctest.h"

using namespace covernum;

namespace {

struct Fixture {
    GroupTable g;
    ClassData cd;
    std::vector<SubgroupClass> subs;
    IncidenceMatrices mats;
};

Fixture make_fixture(GroupTable group, std::vector<std::tuple<const char*, const char*,
                                                              std::vector<const char*>>> specs) {
    Fixture f{std::move(group), {}, {}, {}};
    f.cd = conjugacy_classes(f.g);
    for (auto& [id, shape, gens] : specs) {
        std::vector<Perm> ps;
        for (const char* s : gens) ps.push_back(parse_perm(s, f.g.degree));
        f.subs.push_back(close_subgroup(f.g, id, shape, ps));
    }
    f.mats = incidence_matrices(f.g, f.cd, f.subs);
    return f;
}

// maximal classes ordered by decreasing subgroup order, as in the tables
Fixture s4_fixture() {
    return make_fixture(
        close_group("S4", 4, {parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)}, 24),
        {{"M1", "A4", {"(1,2,3)", "(1,2)(3,4)"}},
         {"M2", "D8", {"(1,2,3,4)", "(1,3)"}},
         {"M3", "S3", {"(1,2)", "(1,2,3)"}}});
}

Fixture q8_fixture() {
    return make_fixture(close_group("Q8", 8,
                                    {parse_perm("(1,2,3,4)(5,8,7,6)", 8),
                                     parse_perm("(1,5,3,7)(2,6,4,8)", 8)},
                                    8),
                        {{"M1", "C4", {"(1,2,3,4)(5,8,7,6)"}},
                         {"M2", "C4", {"(1,5,3,7)(2,6,4,8)"}},
                         {"M3", "C4", {"(1,6,3,8)(2,7,4,5)"}}});
}

Fixture d10_fixture() {
    return make_fixture(
        close_group("D10", 5, {parse_perm("(1,2,3,4,5)", 5), parse_perm("(2,5)(3,4)", 5)}, 10),
        {{"M1", "C5", {"(1,2,3,4,5)"}}, {"M2", "C2", {"(2,5)(3,4)"}}});
}

Fixture a4_fixture() {
    return make_fixture(
        close_group("A4", 4, {parse_perm("(1,2,3)", 4), parse_perm("(1,2)(3,4)", 4)}, 12),
        {{"M1", "V4", {"(1,2)(3,4)", "(1,3)(2,4)"}}, {"M2", "C3", {"(1,2,3)"}}});
}

}  // namespace

TEST_CASE("union_cover collects whole classes") {
    auto f = s4_fixture();
    Cover c = union_cover(f.subs, {"M2", "M3"});
    CHECK(c.size() == 7);  // three D8 conjugates + four S3 conjugates
    CHECK(union_cover(f.subs, {}).size() == 0);
    CHECK_THROWS(union_cover(f.subs, {"M9"}));
    CHECK_THROWS(union_cover(f.subs, {"M2", "M2"}));
}

TEST_CASE("verify_cover checks principal elements and reports witnesses") {
    auto f = s4_fixture();
    // A4 union D8 union S3 covers S4
    auto all = union_cover(f.subs, {"M1", "M2", "M3"});
    CHECK(verify_cover(f.g, f.cd, f.subs, all).ok);
    CHECK(verify_cover(f.g, f.cd, f.subs, all, true).ok);

    // A4 alone misses every transposition; 2B is the first principal class
    auto just_a4 = union_cover(f.subs, {"M1"});
    auto chk = verify_cover(f.g, f.cd, f.subs, just_a4);
    CHECK(!chk.ok);
    CHECK(chk.witness_class == "2B");
    CHECK(f.cd.classes[f.cd.class_of[chk.witness]].label == "2B");

    // D8 + A4 covers everything: transpositions and 4-cycles live in D8's
    auto da = union_cover(f.subs, {"M1", "M2"});
    CHECK(verify_cover(f.g, f.cd, f.subs, da).ok);
    CHECK(verify_cover(f.g, f.cd, f.subs, da, true).ok);

    // principal-only and full-element checks agree on a non-cover
    auto full = verify_cover(f.g, f.cd, f.subs, just_a4, true);
    CHECK(!full.ok);

    CHECK(!verify_cover(f.g, f.cd, f.subs, Cover{}).ok);
    CHECK_THROWS(verify_cover(f.g, f.cd, f.subs, Cover{{{"M1", 5}}}));
    CHECK_THROWS(verify_cover(f.g, f.cd, f.subs, Cover{{{"M1", 0}, {"M1", 0}}}));
}

TEST_CASE("class_lower_bound solves the S4 class program at 4") {
    auto f = s4_fixture();
    auto cb = class_lower_bound(f.cd, f.subs, f.mats);
    REQUIRE(cb.result.status == SolveResult::Status::optimal);
    CHECK(cb.result.optimum() == 4);
    // the program has one row per principal class: 2B, 3A, 4A
    REQUIRE(cb.program.rows.size() == 3);
    CHECK(cb.program.rows[0].label == "2B");
    CHECK(cb.program.rows[1].label == "3A");
    CHECK(cb.program.rows[2].label == "4A");
    CHECK(cb.program.cols.size() == 3);
    CHECK(cb.program.cols[1].ub == 3);  // three D8 conjugates
    // solution: all three D8's and the A4
    CHECK(cb.result.solution == std::vector<int64_t>({1, 3, 0}));
}

TEST_CASE("class_lower_bound adds refined rows for fused families") {
    auto f = d10_fixture();
    auto cb = class_lower_bound(f.cd, f.subs, f.mats);
    REQUIRE(cb.result.status == SolveResult::Status::optimal);
    CHECK(cb.result.optimum() == 6);  // C5 plus all five C2's
    bool has_fused = false;
    for (const auto& r : cb.program.rows)
        if (r.label == "5AB") {
            has_fused = true;
            CHECK(r.demand == 4);
            REQUIRE(r.terms.size() == 1);
            CHECK(r.terms[0].coeff == 4);
        }
    CHECK(has_fused);
}

TEST_CASE("class_lower_bound throws when a principal class is uncovered") {
    auto f = make_fixture(
        close_group("S4", 4, {parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)}, 24),
        {{"M1", "A4", {"(1,2,3)", "(1,2)(3,4)"}}, {"M2", "S3", {"(1,2)", "(1,2,3)"}}});
    // no subgroup class contains a 4-cycle
    CHECK_THROWS_WITH_AS(class_lower_bound(f.cd, f.subs, f.mats),
                         doctest::Contains("infeasible"), std::runtime_error);
}

TEST_CASE("residual_instance builds the element-level set cover") {
    auto f = s4_fixture();
    // forced D8's cover 2B and 4A; the 3-cycles remain
    auto p = residual_instance(f.g, f.cd, f.subs, f.mats, {"M2"}, {"M1", "M3"}, {"3A"});
    CHECK(p.rows.size() == 4);   // four C3 subgroups
    CHECK(p.cols.size() == 5);   // one A4 + four S3 conjugates
    for (const auto& r : p.rows) {
        CHECK(r.demand == 1);
        CHECK(r.terms.size() == 2);  // the A4 and one S3 contain each C3
        for (const auto& t : r.terms) CHECK(t.coeff == 1);
    }
    auto res = solve_integer(p);
    REQUIRE(res.status == SolveResult::Status::optimal);
    CHECK(res.optimum() == 1);  // the A4 covers all four

    // empty targets: no rows, columns still present
    auto empty = residual_instance(f.g, f.cd, f.subs, f.mats, {"M2"}, {"M1"}, {});
    CHECK(empty.rows.empty());

    // a forced class that already covers the target is a contract violation
    CHECK_THROWS(residual_instance(f.g, f.cd, f.subs, f.mats, {"M2"}, {"M1"}, {"4A"}));
    // empty pool with targets remaining
    CHECK_THROWS(residual_instance(f.g, f.cd, f.subs, f.mats, {"M2"}, {}, {"3A"}));
    // non-principal target
    CHECK_THROWS(residual_instance(f.g, f.cd, f.subs, f.mats, {"M2"}, {"M1"}, {"2A"}));
}

TEST_CASE("replacement_argument: S3 members replaceable by the A4") {
    auto f = s4_fixture();
    auto rep = replacement_argument(f.g, f.cd, f.subs, "M3", "M1", {"3A"});
    CHECK(rep.prime == 3);
    CHECK(rep.valid);
    CHECK(rep.count_per_from == 1);   // each S3's Sylow 3 lies in the unique A4
    CHECK(rep.sylows_per_to == 4);    // the A4 meets all four Sylow 3-subgroups
    REQUIRE(rep.candidates.size() == 4);
    for (const auto& c : rep.candidates) CHECK(c == std::vector<int32_t>{0});

    // D8 members have no replacement inside S3's: no S3 contains a D8 Sylow 2
    CHECK_THROWS(replacement_argument(f.g, f.cd, f.subs, "M2", "M3", {"4A"}));
    // mixed-prime targets are rejected
    CHECK_THROWS(replacement_argument(f.g, f.cd, f.subs, "M3", "M1", {"3A", "2B"}));
}

TEST_CASE("sigma_certificate agrees with the brute oracle on small groups") {
    auto check_group = [](Fixture f, int64_t expect) {
        auto cert = sigma_certificate(f.g, f.cd, f.subs, f.mats);
        REQUIRE(cert.sigma.has_value());
        CHECK(*cert.sigma == expect);
        CHECK(cert.lower == cert.upper);
        CHECK(cert.upper_cover.size() == expect);
        CHECK(verify_cover(f.g, f.cd, f.subs, cert.upper_cover).ok);
        CHECK(verify_cover(f.g, f.cd, f.subs, cert.upper_cover, true).ok);
        CHECK(brute_sigma(f.g) == expect);
        int64_t composed = 0;
        for (const auto& part : cert.lower_parts) composed += part.value;
        CHECK(cert.lower_parts.size() >= 1);
        if (cert.lower_parts.size() == 1) CHECK(cert.lower_parts[0].value == cert.lower);
        if (cert.lower_parts.size() > 1) CHECK(composed == cert.lower);
    };
    check_group(s4_fixture(), 4);
    check_group(q8_fixture(), 3);
    check_group(d10_fixture(), 6);
    check_group(a4_fixture(), 5);
}

TEST_CASE("sigma_certificate records forced classes in the notes") {
    auto f = d10_fixture();
    auto cert = sigma_certificate(f.g, f.cd, f.subs, f.mats);
    // reflections force all five C2's, the rotation row forces the C5
    bool saw_c2 = false, saw_c5 = false;
    for (const auto& n : cert.notes) {
        if (n.find("forced M2") != std::string::npos) saw_c2 = true;
        if (n.find("forced M1") != std::string::npos) saw_c5 = true;
    }
    CHECK(saw_c2);
    CHECK(saw_c5);
    CHECK(cert.group == "D10");
    CHECK(cert.group_order == 10);
}
