// Plain-text serialization of covering programs and solver results.
//
// Program files:
//   program <name>            (optional)
//   rows <m> cols <n>
//   col <label> ub <u>        (n lines)
//   row <label> demand <r>    (m lines)
//   entry <row> <col> <coeff> (sparse, only listed pairs are nonzero)
//
// Solver results:
//   status optimal|bounds|infeasible
//   optimum <v>               (optimal)  /  lower <v> + upper <v> (bounds)
//   set <col> <val>           (nonzero solution values)
//   dual <row> <rational>     (root LP multipliers, exact)
//   log <node> <event> <value>
//
// '#' starts a comment; blank lines are ignored.
#pragma once

#include <iosfwd>
#include <string>

#include "covernum/ilp.hpp"

namespace covernum {

CoveringProgram read_program(std::istream& in);
CoveringProgram load_program_file(const std::string& path);
void write_program(std::ostream& out, const CoveringProgram& p);
void save_program_file(const std::string& path, const CoveringProgram& p);

// The program supplies the label space; unknown labels are errors.
SolveResult read_solve_result(std::istream& in, const CoveringProgram& p);
void write_solve_result(std::ostream& out, const CoveringProgram& p, const SolveResult& r);

}  // namespace covernum
