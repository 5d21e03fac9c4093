#include "covernum/perm.hpp"

#include "doctest.h"

using namespace covernum;

TEST_CASE("parse and format cycles") {
    Perm p = parse_perm("(1,2,3)(4,5)", 6);
    CHECK(p.img == std::vector<int32_t>{1, 2, 0, 4, 3, 5});
    CHECK(format_perm(p) == "(1,2,3)(4,5)");
    CHECK(parse_perm("()", 3) == perm_identity(3));
    CHECK(parse_perm("", 3) == perm_identity(3));
    CHECK(format_perm(perm_identity(3)) == "()");
    CHECK(parse_perm(" (1,2) (3,4) ", 4) == parse_perm("(1,2)(3,4)", 4));
}

TEST_CASE("parse rejects bad input") {
    CHECK_THROWS(parse_perm("(1,2", 4));
    CHECK_THROWS(parse_perm("(0,1)", 4));
    CHECK_THROWS(parse_perm("(1,5)", 4));
    CHECK_THROWS(parse_perm("(1,2)(2,3)", 4));
    CHECK_THROWS(parse_perm("1,2)", 4));
    CHECK_THROWS(parse_perm("(a,b)", 4));
}

TEST_CASE("composition applies left factor first") {
    Perm a = parse_perm("(1,2)", 3);
    Perm b = parse_perm("(1,2,3)", 3);
    // point 1: a sends it to 2, b sends 2 to 3.
    CHECK(perm_mul(a, b).img[0] == 2);
    CHECK(perm_mul(a, b) == parse_perm("(1,3)", 3));
    CHECK(perm_mul(b, a) == parse_perm("(2,3)", 3));
}

TEST_CASE("inverse, conjugate, power, order") {
    Perm a = parse_perm("(1,2,3,4,5)", 5);
    CHECK(perm_mul(a, perm_inverse(a)).is_identity());
    CHECK(perm_order(a) == 5);
    CHECK(perm_pow(a, 2) == parse_perm("(1,3,5,2,4)", 5));
    CHECK(perm_pow(a, -1) == perm_inverse(a));
    CHECK(perm_pow(a, 0).is_identity());

    Perm g = parse_perm("(1,2)", 5);
    // conjugation relabels points: (1,2,3,4,5)^(1,2) = (2,1,3,4,5)
    CHECK(perm_conjugate(a, g) == parse_perm("(2,1,3,4,5)", 5));
    CHECK(perm_conjugate(a, g) == perm_mul(perm_mul(perm_inverse(g), a), g));

    Perm m = parse_perm("(1,2)(3,4,5)", 5);
    CHECK(perm_order(m) == 6);
    CHECK(perm_order(perm_identity(4)) == 1);
}
