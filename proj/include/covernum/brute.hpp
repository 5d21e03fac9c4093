// Independent oracle for small groups: enumerate the entire subgroup
// lattice, keep the maximal proper subgroups, and solve the covering
// problem over principal elements exactly. Exponential in spirit; the
// entry points refuse groups of order above 2000.
#pragma once

#include <cstdint>
#include <vector>

#include "covernum/group.hpp"

namespace covernum {

// Every subgroup of g as a sorted element-ID set, trivial subgroup and g
// itself included: all 1- and 2-generated subgroups, then joins to fixpoint.
std::vector<std::vector<int32_t>> all_subgroups(const GroupTable& g);

// The subgroups maximal among the proper ones.
std::vector<std::vector<int32_t>> maximal_proper(const GroupTable& g,
                                                 const std::vector<std::vector<int32_t>>& subs);

// Least number of proper subgroups covering g, by exact set cover over the
// principal elements. Throws for cyclic groups: no cover exists.
int64_t brute_sigma(const GroupTable& g);

}  // namespace covernum
