// Covering integer programs with exact arithmetic.
//
//   minimize   sum_j x_j
//   subject to sum_j c[i][j] * x_j >= demand_i      (c >= 0 integer)
//              0 <= x_j <= ub_j,  x_j integer
//
// The LP relaxation is solved by a two-phase bounded-variable simplex over
// exact rationals (Dantzig pricing with a Bland fallback against stalling),
// so every reported value is exact. The arithmetic runs on reduced
// int64 fractions with 128-bit intermediates; if any value outgrows that
// representation the whole solve restarts over arbitrary-precision
// rationals — both are exact, so the pivots and results are identical
// either way. The integer solve is branch and bound with an exact LP bound
// at every node: depth-first dives with best-bound restarts, branching on
// the most fractional variable (ties to the lowest column label),
// incumbents seeded by greedy rounding of LP points. Nodes are reduced by
// constraint propagation (capacity pruning and forced raises), by column
// dominance on binary covering subproblems (a column whose remaining rows
// all sit inside another column's rows is never needed), and by
// reduced-cost fixing against the incumbent. No cutting planes are added;
// the bound at a node is always the ceiling of its LP value. Nothing
// depends on floating point, and the time budget is honored inside the
// pivot loops, not just between nodes.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covernum/rational.hpp"

namespace covernum {

struct CoveringProgram {
    struct Col {
        std::string label;
        int64_t ub = 1;
    };
    struct Term {
        int32_t col;
        int64_t coeff;  // > 0
    };
    struct Row {
        std::string label;
        int64_t demand = 0;
        std::vector<Term> terms;
    };
    std::string name;
    std::vector<Col> cols;
    std::vector<Row> rows;

    void validate() const;  // throws on malformed data
    int col_index(const std::string& label) const;
    // Exact check: does the assignment meet every row and every bound?
    bool satisfies(const std::vector<int64_t>& x) const;
};

struct LpResult {
    bool feasible = true;
    Rat value;
    std::vector<Rat> x;
    std::vector<Rat> dual;  // one multiplier per row, >= 0
};

// Exact LP relaxation. A covering program is infeasible iff some row's
// demand exceeds the total capacity of its columns at their upper bounds;
// in that case `dual` is the indicator of one such row.
LpResult lp_relax(const CoveringProgram& p);

// Exact dual evaluation: for any y >= 0,
//   bound(y) = sum_i y_i d_i - sum_j ub_j * max(0, sum_i y_i c_ij - 1)
// is a valid lower bound on the LP (hence ILP) value. Used by certificate
// replay and by the solver's pruning.
Rat dual_bound(const CoveringProgram& p, const std::vector<Rat>& y);

struct SolveOptions {
    double time_budget_seconds = 3600.0;
    int64_t node_limit = -1;  // <0: unlimited
};

struct SolveResult {
    enum class Status { optimal, bounds, infeasible };
    Status status = Status::bounds;
    int64_t lower = 0;                  // proven lower bound
    int64_t upper = -1;                 // best incumbent value, -1 if none
    std::vector<int64_t> solution;      // incumbent, size = cols
    Rat root_lp;                        // exact root relaxation value
    std::vector<Rat> root_dual;
    int64_t nodes = 0;
    int64_t pivots = 0;                 // total simplex pivots across all nodes
    struct LogEntry {
        int64_t node;
        std::string event;  // "root-lp", "incumbent", "lower", "done"
        std::string value;
    };
    std::vector<LogEntry> log;

    int64_t optimum() const;  // throws unless status == optimal
};

SolveResult solve_integer(const CoveringProgram& p, const SolveOptions& opt = {});

// Brute-force reference: enumerates all feasible assignments. Exponential;
// only for cross-checking small programs in tests.
std::optional<int64_t> brute_force_optimum(const CoveringProgram& p);

}  // namespace covernum
