#include "covernum/brute.hpp"

#include <algorithm>

#include "doctest.h"

using namespace covernum;

namespace {

GroupTable klein() {
    return close_group("V4", 4, {parse_perm("(1,2)(3,4)", 4), parse_perm("(1,3)(2,4)", 4)}, 4);
}

GroupTable s3() {
    return close_group("S3", 3, {parse_perm("(1,2)", 3), parse_perm("(1,2,3)", 3)}, 6);
}

GroupTable s4() {
    return close_group("S4", 4, {parse_perm("(1,2)", 4), parse_perm("(1,2,3,4)", 4)}, 24);
}

GroupTable q8() {
    return close_group("Q8", 8,
                       {parse_perm("(1,2,3,4)(5,8,7,6)", 8), parse_perm("(1,5,3,7)(2,6,4,8)", 8)},
                       8);
}

GroupTable d10() {
    return close_group("D10", 5, {parse_perm("(1,2,3,4,5)", 5), parse_perm("(2,5)(3,4)", 5)}, 10);
}

}  // namespace

TEST_CASE("all_subgroups enumerates the full lattice") {
    // S4 has exactly 30 subgroups; V4 has 5; Q8 has 6
    CHECK(all_subgroups(s4()).size() == 30);
    CHECK(all_subgroups(klein()).size() == 5);
    CHECK(all_subgroups(q8()).size() == 6);

    // every returned set is closed: spot-check closure under products in V4
    GroupTable v = klein();
    for (const auto& s : all_subgroups(v))
        for (int32_t a : s)
            for (int32_t b : s)
                CHECK(std::binary_search(s.begin(), s.end(), v.mul(a, b)));
}

TEST_CASE("maximal_proper picks out the maximal subgroups") {
    GroupTable g = s4();
    auto maxp = maximal_proper(g, all_subgroups(g));
    // S4: one A4, three D4, four S3 -> 8 maximal subgroups
    REQUIRE(maxp.size() == 8);
    int by_order[25] = {0};
    for (const auto& s : maxp) by_order[s.size()]++;
    CHECK(by_order[12] == 1);
    CHECK(by_order[8] == 3);
    CHECK(by_order[6] == 4);

    GroupTable q = q8();
    auto qmax = maximal_proper(q, all_subgroups(q));
    REQUIRE(qmax.size() == 3);
    for (const auto& s : qmax) CHECK(s.size() == 4);
}

TEST_CASE("brute_sigma on classic small groups") {
    CHECK(brute_sigma(klein()) == 3);
    CHECK(brute_sigma(s3()) == 4);
    CHECK(brute_sigma(s4()) == 4);
    CHECK(brute_sigma(q8()) == 3);
    CHECK(brute_sigma(d10()) == 6);
    // elementary abelian 2^3: three planes suffice
    GroupTable e8 = close_group("E8", 8,
                                {parse_perm("(1,2)(3,4)(5,6)(7,8)", 8),
                                 parse_perm("(1,3)(2,4)(5,7)(6,8)", 8),
                                 parse_perm("(1,5)(2,6)(3,7)(4,8)", 8)},
                                8);
    CHECK(brute_sigma(e8) == 3);
    // A4: the Klein subgroup plus all four C3's
    GroupTable a4 = close_group("A4", 4, {parse_perm("(1,2,3)", 4), parse_perm("(1,2)(3,4)", 4)}, 12);
    CHECK(brute_sigma(a4) == 5);
}

TEST_CASE("brute_sigma rejects cyclic groups") {
    GroupTable c6 = close_group("C6", 6, {parse_perm("(1,2,3,4,5,6)", 6)}, 6);
    CHECK_THROWS_WITH_AS(brute_sigma(c6), doctest::Contains("cyclic"), std::runtime_error);
    GroupTable c1 = close_group("C1", 1, {}, 1);
    CHECK_THROWS(brute_sigma(c1));
}
