// Covering-number pipeline: assemble covers from subgroup classes, verify
// them element by element, derive integer-programming lower bounds from the
// incidence data, and compose both into a certificate for sigma(G), the
// least number of proper subgroups whose union is G.
//
// Lower bounds come from two arguments:
//   1. the class program: for each principal class K, the selected subgroups
//      must absorb all |K| elements, giving sum_M b[K][M] x_M >= |K| with
//      0 <= x_M <= (number of conjugates); the ILP optimum bounds any cover;
//   2. the residual argument: classes whose rows force whole subgroup
//      classes into every cover contribute exactly; the remaining principal
//      elements induce a set-cover instance over the subgroup classes that
//      can still reach them, whose exact optimum completes the bound.
// Upper bounds are concrete selections passed through verify_cover.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covernum/classes.hpp"
#include "covernum/group.hpp"
#include "covernum/ilp.hpp"
#include "covernum/incidence.hpp"
#include "covernum/subgroup.hpp"

namespace covernum {

struct Cover {
    struct Pick {
        std::string cls;  // subgroup class label
        int32_t conj;     // conjugate ID within the class
    };
    std::vector<Pick> selection;
    int64_t size() const { return (int64_t)selection.size(); }
};

// Every conjugate of every named class. Throws on unknown or repeated labels.
Cover union_cover(const std::vector<SubgroupClass>& subs,
                  const std::vector<std::string>& classes);

struct CoverCheck {
    bool ok = false;
    int32_t witness = -1;       // an uncovered element when !ok
    std::string witness_class;  // its conjugacy class label
};

// Checks that the selection covers every principal element; with
// all_elements, every element of the group. Principal coverage implies full
// coverage, which is what makes the cheap check sufficient.
CoverCheck verify_cover(const GroupTable& g, const ClassData& cd,
                        const std::vector<SubgroupClass>& subs, const Cover& cover,
                        bool all_elements = false);

struct ClassBound {
    CoveringProgram program;
    SolveResult result;
};

// The class program over principal classes, plus refined rows: for every
// fusion orbit of two or more classes whose common a-row has at most two
// nonzero columns, a row with the orbit's summed demand and per-subgroup
// element counts. Throws if the program is infeasible (a principal class
// no subgroup class covers).
ClassBound class_lower_bound(const ClassData& cd, const std::vector<SubgroupClass>& subs,
                             const IncidenceMatrices& mats, double budget_seconds = 60.0);

// Element-level set cover for the classes the forced selection misses:
// rows are the distinct maximal cyclic subgroups generated by target-class
// elements (labeled by their least generator), columns are the individual
// conjugates of the pool classes ("M2:17"), entries are containment, all
// bounds 1. Validates that no forced class touches a target class.
CoveringProgram residual_instance(const GroupTable& g, const ClassData& cd,
                                  const std::vector<SubgroupClass>& subs,
                                  const IncidenceMatrices& mats,
                                  const std::vector<std::string>& forced,
                                  const std::vector<std::string>& pool,
                                  const std::vector<std::string>& targets);

// Justifies dropping from_cls from a residual pool: each of its members has
// a unique Sylow p-subgroup (p from the target classes), and every to_cls
// member containing that Sylow subgroup covers at least the same target
// elements. Throws when some member has no replacement candidate.
struct Replacement {
    std::string from_cls, to_cls;
    int64_t prime = 0;
    std::vector<std::vector<int32_t>> candidates;  // per from-conjugate
    int64_t count_per_from = -1;   // candidates per member when uniform
    int64_t sylows_per_to = -1;    // distinct Sylows met per to-member when uniform
    bool valid = false;            // all counts positive, coverage preserved
};
Replacement replacement_argument(const GroupTable& g, const ClassData& cd,
                                 const std::vector<SubgroupClass>& subs,
                                 const std::string& from_cls, const std::string& to_cls,
                                 const std::vector<std::string>& targets);

struct SigmaOptions {
    double budget_seconds = 3600.0;
};

struct SigmaCertificate {
    std::string group;
    int64_t group_order = 0;

    Cover upper_cover;  // verified best selection
    int64_t upper = -1;

    struct LowerPart {
        std::string what;  // e.g. "class program", "forced M1", "residual over M2"
        int64_t value = 0;
    };
    std::vector<LowerPart> lower_parts;  // the winning composition
    int64_t lower = 0;

    std::optional<int64_t> sigma;  // set iff lower == upper

    CoveringProgram class_program;
    SolveResult class_result;
    std::optional<CoveringProgram> residual_program;
    std::optional<SolveResult> residual_result;
    std::vector<std::string> notes;  // pool reductions, forced reasons, ...
};

// forced classes -> class program with refined rows -> residual set cover ->
// best verified upper cover. Reports sigma only when the replayed lower
// bound meets a verified upper cover; otherwise leaves the interval open.
SigmaCertificate sigma_certificate(const GroupTable& g, const ClassData& cd,
                                   const std::vector<SubgroupClass>& subs,
                                   const IncidenceMatrices& mats,
                                   const SigmaOptions& opt = {});

}  // namespace covernum
