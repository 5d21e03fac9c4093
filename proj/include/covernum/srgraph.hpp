// Undirected graphs on a fixed vertex set with bitset adjacency rows, the
// exhaustive strongly-regular parameter check, an independent-set search,
// and the induced-edge inequality consumed by the large-group certificate.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace covernum {

struct SRGraph {
    int n = 0;
    int words = 0;                // 64-bit words per adjacency row
    std::vector<uint64_t> bits;   // n rows, row-major

    // verified strongly-regular parameters; repopulated by check_srg
    int k = -1, lam = -1, mu = -1;
    bool verified = false;

    static SRGraph empty(int n);
    void add_edge(int u, int v);
    bool adjacent(int u, int v) const;
    int degree(int u) const;
    int64_t edge_count() const;
    int common_neighbors(int u, int v) const;
};

// Exhaustive strongly-regular check: every vertex has degree k, every
// adjacent pair has exactly lam common neighbors, every distinct
// non-adjacent pair exactly mu. Pair counting is precisely the entrywise
// integer identity A^2 = k I + lam A + mu (J - I - A); for the parameters
// (275,112,30,56) it is equivalent to (A - 2I)(A + 28I) = 56 J. On success
// the parameters are recorded on the graph and true is returned; any
// violation returns false and clears them.
bool check_srg(SRGraph& g, int k, int lam, int mu);

// Independent set of the requested size: a deterministic minimum-degree
// greedy pass first, then seeded randomized restarts with plateau swaps and
// targeted backtracking (drop a few members, re-extend greedily). Result is
// re-checked pairwise before returning, sorted ascending. Throws when the
// restart budget is exhausted.
std::vector<int> independent_set(const SRGraph& g, int size, uint32_t seed = 0,
                                 int64_t max_restarts = 20000);

// Edge count of the subgraph induced by w, with the inequality implied by an
// independence number of at most alpha: one vertex per connected component
// of the induced subgraph is an independent set, so the component count is
// at most alpha, and a graph with c components on |w| vertices has at least
// |w| - c edges; hence edges >= |w| - alpha.
struct EdgeBound {
    int64_t edges = 0;
    int64_t components = 0;
    int64_t bound = 0;  // max(0, |w| - alpha)
    bool ok = false;    // components <= alpha and edges >= bound
};
EdgeBound induced_edge_bound(const SRGraph& g, const std::vector<int>& w, int64_t alpha);

// Adjacency-list text export, one line per vertex: "v <i>: <sorted neighbors>".
void write_graph(const SRGraph& g, const std::string& path);

// One vertex index per line (independent-set certificates and the like).
void write_vertex_list(const std::vector<int>& vs, const std::string& path);

}  // namespace covernum
