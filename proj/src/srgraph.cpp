#include "covernum/srgraph.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace covernum {

SRGraph SRGraph::empty(int n) {
    SRGraph g;
    g.n = n;
    g.words = (n + 63) / 64;
    g.bits.assign((size_t)n * g.words, 0);
    return g;
}

void SRGraph::add_edge(int u, int v) {
    if (u == v) throw std::invalid_argument("add_edge: loop");
    bits[(size_t)u * words + v / 64] |= (uint64_t)1 << (v % 64);
    bits[(size_t)v * words + u / 64] |= (uint64_t)1 << (u % 64);
}

bool SRGraph::adjacent(int u, int v) const {
    return (bits[(size_t)u * words + v / 64] >> (v % 64)) & 1;
}

int SRGraph::degree(int u) const {
    int d = 0;
    for (int w = 0; w < words; ++w) d += std::popcount(bits[(size_t)u * words + w]);
    return d;
}

int64_t SRGraph::edge_count() const {
    int64_t total = 0;
    for (int u = 0; u < n; ++u) total += degree(u);
    return total / 2;
}

int SRGraph::common_neighbors(int u, int v) const {
    int c = 0;
    for (int w = 0; w < words; ++w)
        c += std::popcount(bits[(size_t)u * words + w] & bits[(size_t)v * words + w]);
    return c;
}

bool check_srg(SRGraph& g, int k, int lam, int mu) {
    g.verified = false;
    g.k = g.lam = g.mu = -1;
    for (int u = 0; u < g.n; ++u)
        if (g.degree(u) != k) return false;
    // Common-neighbor counts per pair are the off-diagonal entries of A^2,
    // so this loop checks A^2 = k I + lam A + mu (J - I - A) entrywise; the
    // diagonal is the degree check above.
    for (int u = 0; u < g.n; ++u)
        for (int v = u + 1; v < g.n; ++v)
            if (g.common_neighbors(u, v) != (g.adjacent(u, v) ? lam : mu)) return false;
    g.k = k;
    g.lam = lam;
    g.mu = mu;
    g.verified = true;
    return true;
}

namespace {

// Minimum-degree greedy completion of a partial independent set: repeatedly
// take a candidate of least degree among the remaining candidates. Ties go
// to the least vertex, or to a random tied vertex when rng is given.
std::vector<int> greedy_extend(const SRGraph& g, std::vector<int> chosen, std::mt19937* rng) {
    std::vector<char> blocked(g.n, 0);
    for (int u : chosen) {
        blocked[u] = 1;
        for (int v = 0; v < g.n; ++v)
            if (g.adjacent(u, v)) blocked[v] = 1;
    }
    std::vector<int> cand;
    for (int v = 0; v < g.n; ++v)
        if (!blocked[v]) cand.push_back(v);
    while (!cand.empty()) {
        int best_deg = g.n + 1;
        std::vector<int> ties;
        for (int v : cand) {
            int d = 0;
            for (int u : cand) d += g.adjacent(v, u) ? 1 : 0;
            if (d < best_deg) {
                best_deg = d;
                ties = {v};
            } else if (d == best_deg) {
                ties.push_back(v);
            }
        }
        int pick = rng ? ties[(*rng)() % ties.size()] : ties.front();
        chosen.push_back(pick);
        std::vector<int> next;
        for (int v : cand)
            if (v != pick && !g.adjacent(v, pick)) next.push_back(v);
        cand = std::move(next);
    }
    return chosen;
}

}  // namespace

std::vector<int> independent_set(const SRGraph& g, int size, uint32_t seed,
                                 int64_t max_restarts) {
    if (size < 0 || size > g.n) throw std::invalid_argument("independent_set: bad size");
    auto finish = [&](std::vector<int> s) {
        s.resize(size);  // any subset of an independent set is independent
        std::sort(s.begin(), s.end());
        for (size_t i = 0; i < s.size(); ++i)
            for (size_t j = i + 1; j < s.size(); ++j)
                if (g.adjacent(s[i], s[j]))
                    throw std::logic_error("independent_set: result fails its own check");
        return s;
    };
    auto det = greedy_extend(g, {}, nullptr);
    if ((int)det.size() >= size) return finish(std::move(det));
    std::mt19937 rng(seed);
    for (int64_t r = 0; r < max_restarts; ++r) {
        auto s = greedy_extend(g, {}, &rng);
        // plateau walk with targeted backtracking: drop a few members and
        // re-extend; accept anything at least as large
        for (int step = 0; step < 500 && (int)s.size() < size; ++step) {
            auto t = s;
            int drop = 1 + (int)(rng() % 3);
            for (int d = 0; d < drop && !t.empty(); ++d)
                t.erase(t.begin() + rng() % t.size());
            t = greedy_extend(g, std::move(t), &rng);
            if (t.size() >= s.size()) s = std::move(t);
        }
        if ((int)s.size() >= size) return finish(std::move(s));
    }
    throw std::runtime_error("independent_set: no set of size " + std::to_string(size) +
                             " within the restart budget");
}

EdgeBound induced_edge_bound(const SRGraph& g, const std::vector<int>& w, int64_t alpha) {
    auto sorted = w;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("induced_edge_bound: repeated vertex");
    if (!sorted.empty() && (sorted.front() < 0 || sorted.back() >= g.n))
        throw std::invalid_argument("induced_edge_bound: vertex out of range");

    std::vector<int> parent(w.size());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    EdgeBound eb;
    for (size_t i = 0; i < w.size(); ++i)
        for (size_t j = i + 1; j < w.size(); ++j)
            if (g.adjacent(w[i], w[j])) {
                ++eb.edges;
                parent[find((int)i)] = find((int)j);
            }
    for (size_t i = 0; i < w.size(); ++i)
        if (find((int)i) == (int)i) ++eb.components;
    eb.bound = std::max<int64_t>(0, (int64_t)w.size() - alpha);
    // one vertex per component is an independent set, so components <= alpha
    // whenever alpha really bounds the independence number; and a graph with
    // c components on |w| vertices has at least |w| - c edges
    eb.ok = eb.components <= alpha && eb.edges >= eb.bound;
    return eb;
}

void write_graph(const SRGraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_graph: cannot open " + path);
    for (int u = 0; u < g.n; ++u) {
        out << "v " << u << ":";
        for (int v = 0; v < g.n; ++v)
            if (g.adjacent(u, v)) out << ' ' << v;
        out << '\n';
    }
    if (!out) throw std::runtime_error("write_graph: write failed for " + path);
}

void write_vertex_list(const std::vector<int>& vs, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_vertex_list: cannot open " + path);
    for (int v : vs) out << v << '\n';
    if (!out) throw std::runtime_error("write_vertex_list: write failed for " + path);
}

}  // namespace covernum
