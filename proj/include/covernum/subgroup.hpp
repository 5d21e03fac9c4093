// Subgroup classes: a representative subgroup given by generators, closed
// inside the parent group's element-ID space, plus its full conjugation
// orbit. Conjugates are enumerated by BFS using the parent's generators in
// input order, so conjugate numbering is deterministic and part of the
// certificate contract.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covernum/group.hpp"

namespace covernum {

struct SubgroupClass {
    std::string id;         // short label, e.g. "M1"
    std::string structure;  // free-text shape, e.g. "L2(7)"
    std::string group_name;
    std::vector<Perm> rep_generators;
    int64_t order = 0;
    int64_t index = 0;
    // conjugates[0] is the representative; every entry is a sorted ID vector.
    std::vector<std::vector<int32_t>> conjugates;
    bool self_normalizing = false;

    int64_t class_size() const { return (int64_t)conjugates.size(); }
    const std::vector<int32_t>& rep() const { return conjugates.front(); }
    bool rep_contains(int32_t id) const;
};

// Closes the subgroup generated by gens inside g and computes its conjugation
// orbit. Throws if a generator is not an element of g, if the subgroup is not
// proper, or if declared_order >= 0 differs from the closure.
SubgroupClass close_subgroup(const GroupTable& g, const std::string& id,
                             const std::string& structure, const std::vector<Perm>& gens,
                             int64_t declared_order = -1);

// Text format:
//   subgroup <label> of <group-name> order <n> structure "<text>"
//   gen <cycles>
SubgroupClass read_subgroup(std::istream& in, const GroupTable& g, const std::string& what);
SubgroupClass load_subgroup_file(const std::string& path, const GroupTable& g);
void write_subgroup_file(const SubgroupClass& s, const std::string& path,
                         const std::vector<std::string>& comments = {});

// Loads every *.sub file in dir, sorted by label (numeric suffix aware, so
// M2 < M10).
std::vector<SubgroupClass> load_subgroup_dir(const std::string& dir, const GroupTable& g);

}  // namespace covernum
