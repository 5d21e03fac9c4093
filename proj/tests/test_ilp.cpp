#include <random>

#include "covernum/ilp.hpp"
#include "doctest.h"

using namespace covernum;

namespace {

CoveringProgram make(const std::string& name,
                     std::vector<std::pair<std::string, int64_t>> cols,
                     std::vector<std::tuple<std::string, int64_t,
                                            std::vector<std::pair<int, int64_t>>>> rows) {
    CoveringProgram p;
    p.name = name;
    for (auto& [l, u] : cols) p.cols.push_back({l, u});
    for (auto& [l, d, ts] : rows) {
        CoveringProgram::Row r;
        r.label = l;
        r.demand = d;
        for (auto& [c, v] : ts) r.terms.push_back({(int32_t)c, v});
        p.rows.push_back(std::move(r));
    }
    return p;
}

}  // namespace

TEST_CASE("lp_relax: single-row programs have closed-form optima") {
    // best coefficient wins: 36 x1 + 16 x3 >= 1008 with x1 <= 28 gives 1008/36 = 28
    auto p = make("r1", {{"x1", 28}, {"x3", 36}},
                  {{"K", 1008, {{0, 36}, {1, 16}}}});
    auto lp = lp_relax(p);
    REQUIRE(lp.feasible);
    CHECK(lp.value == Rat(28));
    CHECK(dual_bound(p, lp.dual) == lp.value);

    // fractional optimum: 2x >= 3 -> 3/2
    auto q = make("r2", {{"x", 5}}, {{"K", 3, {{0, 2}}}});
    auto lq = lp_relax(q);
    CHECK(lq.value == Rat(3, 2));
    CHECK(rat_ceil(lq.value) == 2);

    // saturating the best column forces spill into the next: 72 x2 + 12 x3 >= 4992
    auto s = make("r3", {{"x2", 200}, {"x3", 500}},
                  {{"K", 4992, {{0, 72}, {1, 12}}}});
    auto ls = lp_relax(s);
    CHECK(ls.value == Rat(4992, 72));
    CHECK(ls.value == Rat(208, 3));
    CHECK(rat_ceil(ls.value) == 70);
}

TEST_CASE("lp_relax: bound-constrained spill across columns") {
    // 36 x1 + 16 x3 >= 1008 but x1 <= 20: 36*20 = 720, remainder 288/16 = 18
    auto p = make("spill", {{"x1", 20}, {"x3", 36}},
                  {{"K", 1008, {{0, 36}, {1, 16}}}});
    auto lp = lp_relax(p);
    CHECK(lp.value == Rat(38));
    CHECK(dual_bound(p, lp.dual) == Rat(38));
    // the dual certificate must be replayable independently of the solver
    for (const auto& y : lp.dual) CHECK(y >= 0);
}

TEST_CASE("lp_relax: multi-row interaction") {
    // odd-cycle fractional vertex: all x_j = 1/2, value 3/2
    auto p = make("c3", {{"a", 1}, {"b", 1}, {"c", 1}},
                  {{"ab", 1, {{0, 1}, {1, 1}}},
                   {"bc", 1, {{1, 1}, {2, 1}}},
                   {"ca", 1, {{0, 1}, {2, 1}}}});
    auto lp = lp_relax(p);
    REQUIRE(lp.feasible);
    CHECK(lp.value == Rat(3, 2));
    CHECK(dual_bound(p, lp.dual) == Rat(3, 2));
}

TEST_CASE("lp_relax: empty and zero-demand programs") {
    CoveringProgram p;
    p.name = "empty";
    auto lp = lp_relax(p);
    CHECK(lp.feasible);
    CHECK(lp.value == 0);

    auto q = make("zero", {{"x", 4}}, {{"K", 0, {{0, 7}}}});
    auto lq = lp_relax(q);
    CHECK(lq.feasible);
    CHECK(lq.value == 0);
}

TEST_CASE("lp_relax: infeasibility is total-capacity shortfall") {
    auto p = make("inf", {{"x", 3}}, {{"K", 100, {{0, 5}}}});
    auto lp = lp_relax(p);
    CHECK(!lp.feasible);
    auto r = solve_integer(p);
    CHECK(r.status == SolveResult::Status::infeasible);
}

TEST_CASE("solve_integer: ceiling rounding on a single row") {
    auto p = make("ceil", {{"x", 5}}, {{"K", 3, {{0, 2}}}});
    auto r = solve_integer(p);
    REQUIRE(r.status == SolveResult::Status::optimal);
    CHECK(r.optimum() == 2);
    CHECK(r.solution == std::vector<int64_t>{2});
    CHECK(r.root_lp == Rat(3, 2));
}

TEST_CASE("solve_integer: odd cycle needs branching past the LP bound") {
    auto p = make("c3", {{"a", 1}, {"b", 1}, {"c", 1}},
                  {{"ab", 1, {{0, 1}, {1, 1}}},
                   {"bc", 1, {{1, 1}, {2, 1}}},
                   {"ca", 1, {{0, 1}, {2, 1}}}});
    auto r = solve_integer(p);
    REQUIRE(r.status == SolveResult::Status::optimal);
    CHECK(r.root_lp == Rat(3, 2));
    CHECK(r.optimum() == 2);
    CHECK(p.satisfies(r.solution));
}

TEST_CASE("solve_integer: zero-demand program is solved at zero") {
    auto p = make("zero", {{"x", 4}, {"y", 2}}, {{"K", 0, {{0, 7}}}});
    auto r = solve_integer(p);
    REQUIRE(r.status == SolveResult::Status::optimal);
    CHECK(r.optimum() == 0);
    CHECK(r.solution == std::vector<int64_t>({0, 0}));
}

TEST_CASE("solve_integer: duplicate rows and identical columns preprocess away") {
    // two copies of the same row with different demands; two identical columns
    auto p = make("dup", {{"u", 1}, {"v", 1}, {"w", 9}},
                  {{"K1", 6, {{0, 3}, {1, 3}}},
                   {"K2", 4, {{0, 3}, {1, 3}}},
                   {"L", 5, {{2, 5}}}});
    auto r = solve_integer(p);
    REQUIRE(r.status == SolveResult::Status::optimal);
    CHECK(r.optimum() == 3);  // u = v = 1 to reach 6, w = 1
    CHECK(p.satisfies(r.solution));
    CHECK(r.solution[0] + r.solution[1] == 2);
    CHECK(r.solution[2] == 1);
}

TEST_CASE("solve_integer: bound log is sound and deterministic") {
    auto p = make("log", {{"a", 2}, {"b", 3}, {"c", 1}},
                  {{"r1", 7, {{0, 3}, {1, 2}}},
                   {"r2", 5, {{1, 1}, {2, 4}}},
                   {"r3", 4, {{0, 1}, {2, 3}}}});
    auto r1 = solve_integer(p);
    auto r2 = solve_integer(p);
    REQUIRE(r1.status == SolveResult::Status::optimal);
    CHECK(r1.optimum() == r2.optimum());
    CHECK(r1.solution == r2.solution);
    REQUIRE(r1.log.size() == r2.log.size());
    for (size_t i = 0; i < r1.log.size(); ++i) {
        CHECK(r1.log[i].node == r2.log[i].node);
        CHECK(r1.log[i].event == r2.log[i].event);
        CHECK(r1.log[i].value == r2.log[i].value);
    }
    // every logged lower bound must be <= the optimum
    for (const auto& e : r1.log)
        if (e.event == "lower") CHECK(std::stoll(e.value) <= r1.optimum());
    CHECK(rat_ceil(r1.root_lp) <= r1.optimum());
    CHECK(dual_bound(p, r1.root_dual) == r1.root_lp);
}

TEST_CASE("solve_integer: node budget yields valid bounds, not optimality") {
    auto p = make("c3", {{"a", 1}, {"b", 1}, {"c", 1}},
                  {{"ab", 1, {{0, 1}, {1, 1}}},
                   {"bc", 1, {{1, 1}, {2, 1}}},
                   {"ca", 1, {{0, 1}, {2, 1}}}});
    SolveOptions opt;
    opt.node_limit = 0;
    auto r = solve_integer(p, opt);
    CHECK(r.status == SolveResult::Status::bounds);
    CHECK(r.lower == 2);  // ceil(3/2)
    CHECK(r.upper >= 2);  // greedy incumbent from the root LP
    if (r.upper >= 0) CHECK(p.satisfies(r.solution));
}

TEST_CASE("solve_integer matches brute force on random small programs") {
    std::mt19937 rng(20250817);
    for (int trial = 0; trial < 120; ++trial) {
        int ncols = 1 + (int)(rng() % 5);
        int nrows = 1 + (int)(rng() % 5);
        CoveringProgram p;
        p.name = "rand" + std::to_string(trial);
        for (int j = 0; j < ncols; ++j)
            p.cols.push_back({"c" + std::to_string(j), (int64_t)(rng() % 4)});
        for (int i = 0; i < nrows; ++i) {
            CoveringProgram::Row r;
            r.label = "r" + std::to_string(i);
            for (int j = 0; j < ncols; ++j)
                if (rng() % 2) r.terms.push_back({(int32_t)j, (int64_t)(1 + rng() % 9)});
            Int cap = 0;
            for (auto& t : r.terms) cap += Int(t.coeff) * p.cols[t.col].ub;
            // demand in [0, cap + 2]: mostly feasible, occasionally not
            r.demand = (int64_t)(rng() % (uint64_t)((int64_t)cap + 3));
            p.rows.push_back(std::move(r));
        }
        auto expect = brute_force_optimum(p);
        auto got = solve_integer(p);
        if (!expect) {
            CHECK(got.status == SolveResult::Status::infeasible);
        } else {
            REQUIRE(got.status == SolveResult::Status::optimal);
            CHECK(got.optimum() == *expect);
            CHECK(p.satisfies(got.solution));
            CHECK(rat_ceil(got.root_lp) <= *expect);
        }
    }
}

TEST_CASE("solve_integer matches brute force on random binary covers") {
    // pure set-cover shape (all bounds, demands, coefficients 1): this is
    // the shape the column-dominance reduction fires on
    std::mt19937 rng(20250818);
    for (int trial = 0; trial < 200; ++trial) {
        int ncols = 2 + (int)(rng() % 11);
        int nrows = 1 + (int)(rng() % 10);
        CoveringProgram p;
        p.name = "bin" + std::to_string(trial);
        for (int j = 0; j < ncols; ++j) p.cols.push_back({"c" + std::to_string(j), 1});
        for (int i = 0; i < nrows; ++i) {
            CoveringProgram::Row r;
            r.label = "r" + std::to_string(i);
            r.demand = 1;
            for (int j = 0; j < ncols; ++j)
                if (rng() % 3 == 0) r.terms.push_back({(int32_t)j, 1});
            if (r.terms.empty())
                r.terms.push_back({(int32_t)(rng() % ncols), 1});
            p.rows.push_back(std::move(r));
        }
        auto expect = brute_force_optimum(p);
        REQUIRE(expect.has_value());
        auto got = solve_integer(p);
        REQUIRE(got.status == SolveResult::Status::optimal);
        CHECK(got.optimum() == *expect);
        CHECK(p.satisfies(got.solution));
    }
}

TEST_CASE("solve_integer: zero time budget still returns sound bounds") {
    auto p = make("tb", {{"a", 2}, {"b", 3}, {"c", 1}},
                  {{"r1", 7, {{0, 3}, {1, 2}}},
                   {"r2", 5, {{1, 1}, {2, 4}}},
                   {"r3", 4, {{0, 1}, {2, 3}}}});
    SolveOptions opt;
    opt.time_budget_seconds = 0.0;
    auto r = solve_integer(p, opt);
    CHECK(r.status == SolveResult::Status::bounds);
    auto full = solve_integer(p);
    REQUIRE(full.status == SolveResult::Status::optimal);
    CHECK(r.lower <= full.optimum());
    if (r.upper >= 0) {
        CHECK(r.upper >= full.optimum());
        CHECK(p.satisfies(r.solution));
    }
}

TEST_CASE("solve_integer: monotonicity in demand and columns") {
    auto base = make("mono", {{"a", 3}, {"b", 3}},
                     {{"r1", 10, {{0, 4}, {1, 3}}}, {"r2", 6, {{0, 1}, {1, 5}}}});
    auto r0 = solve_integer(base);
    REQUIRE(r0.status == SolveResult::Status::optimal);

    auto harder = base;
    harder.rows[0].demand += 5;
    auto r1 = solve_integer(harder);
    REQUIRE(r1.status == SolveResult::Status::optimal);
    CHECK(r1.optimum() >= r0.optimum());

    auto richer = base;
    richer.cols.push_back({"c", 2});
    richer.rows[0].terms.push_back({2, 6});
    richer.rows[1].terms.push_back({2, 6});
    auto r2 = solve_integer(richer);
    REQUIRE(r2.status == SolveResult::Status::optimal);
    CHECK(r2.optimum() <= r0.optimum());
}

TEST_CASE("dual_bound validates its inputs") {
    auto p = make("d", {{"x", 2}}, {{"K", 3, {{0, 2}}}});
    CHECK_THROWS(dual_bound(p, {}));
    CHECK_THROWS(dual_bound(p, {Rat(-1)}));
    // any nonnegative multiplier gives a valid lower bound
    CHECK(dual_bound(p, {Rat(0)}) == 0);
    CHECK(dual_bound(p, {Rat(1, 2)}) == Rat(3, 2));
    // overshooting multipliers pay for the column slack: y=1 -> 3 - (2-1)*2 = 1
    CHECK(dual_bound(p, {Rat(1)}) == Rat(1));
}

TEST_CASE("CoveringProgram validation rejects malformed data") {
    auto dup_col = make("v", {{"x", 1}, {"x", 1}}, {});
    CHECK_THROWS(dup_col.validate());
    auto bad_coeff = make("v", {{"x", 1}}, {{"K", 1, {{0, 0}}}});
    CHECK_THROWS(bad_coeff.validate());
    auto bad_ref = make("v", {{"x", 1}}, {{"K", 1, {{3, 1}}}});
    CHECK_THROWS(bad_ref.validate());
    auto dup_row = make("v", {{"x", 1}}, {{"K", 1, {{0, 1}}}, {"K", 1, {{0, 1}}}});
    CHECK_THROWS(dup_row.validate());
    auto dup_entry = make("v", {{"x", 1}}, {{"K", 1, {{0, 1}, {0, 2}}}});
    CHECK_THROWS(dup_entry.validate());
}

TEST_CASE("brute_force_optimum refuses oversized spaces") {
    CoveringProgram p;
    p.name = "big";
    for (int j = 0; j < 10; j++) p.cols.push_back({"c" + std::to_string(j), 100});
    CHECK_THROWS(brute_force_optimum(p));
}
