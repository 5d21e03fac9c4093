// Covering-number certificate for the McLaughlin sporadic group from
// tabulated class and maximal-subgroup data plus facts about its rank-3
// graph, without ever constructing the group: the data file carries the
// class list, the twelve maximal classes, the incidence counts for the
// principal classes, and a handful of literature facts that cannot be
// rechecked at desk scale; every numeric consequence is replayed exactly.
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "covernum/ilp.hpp"
#include "covernum/rational.hpp"
#include "covernum/srgraph.hpp"

namespace covernum {

struct TabClass {
    std::string label;
    Int centralizer = 0;
    Int size = 0;  // corrected to order/centralizer on load
    bool principal = false;
};

struct TabMaximal {
    std::string label;      // M1..M12
    Int order = 0;
    Int index = 0;          // = conjugate count; maximals in a simple group
    std::string structure;  // are self-normalizing
};

// One principal fused row of the incidence count table: the classes it
// aggregates, their total element count, the per-maximal-class counts a
// (conjugates of the maximal containing a fixed element), and the derived
// counts b = a * total / index (elements of the row inside a fixed
// conjugate), which must come out integral.
struct TabRow {
    std::string label;
    std::vector<std::string> classes;
    Int total_size = 0;
    std::vector<int64_t> a;  // one per maximal class
    std::vector<Int> b;
};

struct TabulatedGroup {
    std::string name;
    Int order = 0;
    std::vector<TabClass> classes;
    std::vector<TabMaximal> maximals;
    std::vector<TabRow> rows;
    std::map<std::string, std::string> facts;         // name -> value
    std::map<std::string, std::string> fact_sources;  // name -> provenance tag
    std::vector<std::string> corrections;             // logged transcription fixes

    int class_index(const std::string& label) const;     // -1 if absent
    int maximal_index(const std::string& label) const;   // -1 if absent
    int row_index(const std::string& label) const;       // -1 if absent
    // Fact accessors that throw a descriptive error when the fact is
    // missing, naming the assumption the caller refuses to proceed without.
    const std::string& fact(const std::string& name) const;
    int64_t fact_int(const std::string& name) const;
};

// Parse and cross-check the tabulated data. Every class size must equal
// order/centralizer; the one known transcription typo (class 7A) is
// corrected from its centralizer order and logged in `corrections`, any
// other mismatch is an error. The class equation, maximal order*index
// products, and integrality of every derived b entry are enforced.
TabulatedGroup load_mcl_tables(const std::string& path);

struct MclBoundPart {
    std::string label;                 // e.g. "order-11 row"
    std::vector<std::string> columns;  // maximal classes the part constrains
    int64_t bound = 0;
    std::string method;  // "covering row" or "graph argument"
    std::vector<std::string> details;
    CoveringProgram program;  // the replayable row program (may be empty
    SolveResult result;       // for the graph argument)
};

struct MclLowerBound {
    std::vector<MclBoundPart> parts;
    int64_t total = 0;
    std::vector<std::string> notes;
};

// The three-part lower bound: the order-11 and order-14 covering rows are
// solved exactly as one-row integer programs, and the order-9 classes get
// the graph argument — uncovered vertex stabilizers leave |W| = 275 - x1
// vertices, the subgraph they induce has at least |W| - alpha edges, each
// such edge's full order-9 content must be bought one subgroup per edge.
// The naive order-9 covering row is also solved and reported as dominated.
// The parts' column supports are verified pairwise disjoint, so the bounds
// add. alpha < 0 means "use the tabulated independence-number fact".
MclLowerBound mcl_lower_bound(const TabulatedGroup& t, int64_t alpha = -1,
                              double budget_seconds = 60.0);

struct MclUpperBound {
    int64_t total = 0;
    std::vector<std::string> full_classes;  // whole conjugacy classes taken
    std::string vertex_class;               // stabilizers taken outside the set
    std::vector<int> independent_set;
    int64_t stabilizers_taken = 0;
    std::vector<std::string> details;
};

// The symbolic cover: every vertex stabilizer except the 22 indexed by an
// independent set, plus all conjugates of the named full classes. Verifies
// that every principal row except the order-9 row meets a full class, and
// that the order-9 row is covered by the stabilizer part (each element
// fixes one edge; an independent set misses at least one endpoint of every
// edge). Throws naming every principal row left uncovered.
MclUpperBound mcl_upper_bound(const TabulatedGroup& t, const SRGraph& graph,
                              const std::vector<int>& independent_set,
                              const std::vector<std::string>& full_classes = {"M2", "M8"});

struct MclCertificate {
    std::string group;
    Int order = 0;
    MclLowerBound lower;
    MclUpperBound upper;
    int64_t sigma = -1;
    std::vector<std::string> assumptions;  // the ingested facts, with sources
    std::vector<std::string> notes;        // corrections and dominated bounds
};

// Equality certificate; throws when the bounds disagree or the value falls
// outside the published bracket [24541, 24553].
MclCertificate mcl_sigma(const TabulatedGroup& t, const SRGraph& graph,
                         const std::vector<int>& independent_set,
                         double budget_seconds = 60.0);

}  // namespace covernum
