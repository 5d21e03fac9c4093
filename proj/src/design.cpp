#include "covernum/design.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace covernum {
namespace {

// The 4-element field, elements 0..3 encoded as bit pairs over the prime
// field; addition is XOR, multiplication by table.
constexpr int kMul4[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
int add4(int a, int b) { return a ^ b; }
int mul4(int a, int b) { return kMul4[a][b]; }

uint32_t to_mask(const std::vector<int>& s) {
    uint32_t m = 0;
    for (int x : s) m |= (uint32_t)1 << x;
    return m;
}

std::vector<int> to_list(uint32_t m) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (m >> i & 1) out.push_back(i);
    return out;
}

// All k-subsets of {0..n-1} in lexicographic order.
template <class F>
void for_each_subset(int n, int k, F&& f) {
    std::vector<int> idx;
    auto rec = [&](auto&& self, int start) -> void {
        if ((int)idx.size() == k) {
            f(idx);
            return;
        }
        for (int p = start; p <= n - (k - (int)idx.size()); ++p) {
            idx.push_back(p);
            self(self, p + 1);
            idx.pop_back();
        }
    };
    rec(rec, 0);
}

// Partition sets into connected components of the relation "intersection
// parity matches even_edges", then keep the split only if it yields exactly
// the expected family count and size. Both parities are tried so the caller
// never has to hard-code which one separates the families.
std::vector<std::vector<uint32_t>> split_families(const std::vector<uint32_t>& sets,
                                                  int want_count, int want_size) {
    const int n = (int)sets.size();
    for (bool even_edges : {true, false}) {
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) {
                bool even = (std::popcount(sets[i] & sets[j]) & 1) == 0;
                if (even == even_edges) parent[find(i)] = find(j);
            }
        // components ordered by least member index, members in input order
        std::vector<int> root_order;
        std::vector<std::vector<uint32_t>> comps;
        for (int i = 0; i < n; ++i) {
            int r = find(i);
            auto it = std::find(root_order.begin(), root_order.end(), r);
            size_t c;
            if (it == root_order.end()) {
                root_order.push_back(r);
                comps.emplace_back();
                c = comps.size() - 1;
            } else {
                c = (size_t)(it - root_order.begin());
            }
            comps[c].push_back(sets[i]);
        }
        if ((int)comps.size() != want_count) continue;
        bool sized = true;
        for (auto& c : comps)
            if ((int)c.size() != want_size) sized = false;
        if (sized) return comps;
    }
    throw std::runtime_error("split_families: intersection parity did not separate " +
                             std::to_string(want_count) + " families of " +
                             std::to_string(want_size));
}

}  // namespace

bool check_design(const Design& d) {
    if (d.v <= 0 || d.v > 32 || d.t <= 0 || d.t > d.v || d.k < d.t || d.lambda <= 0)
        return false;
    for (const auto& b : d.blocks) {
        if ((int)b.size() != d.k) return false;
        if (!std::is_sorted(b.begin(), b.end())) return false;
        if (std::adjacent_find(b.begin(), b.end()) != b.end()) return false;
        if (b.front() < 0 || b.back() >= d.v) return false;
    }
    std::vector<uint32_t> bm;
    bm.reserve(d.blocks.size());
    for (const auto& b : d.blocks) bm.push_back(to_mask(b));
    bool ok = true;
    for_each_subset(d.v, d.t, [&](const std::vector<int>& sub) {
        if (!ok) return;
        uint32_t mask = to_mask(sub);
        int cnt = 0;
        for (uint32_t b : bm)
            if ((mask & b) == mask) ++cnt;
        if (cnt != d.lambda) ok = false;
    });
    return ok;
}

Design build_pg24() {
    // projective points: nonzero triples with first nonzero coordinate 1
    std::vector<std::array<int, 3>> pts;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c) {
                if (a == 0 && b == 0 && c == 0) continue;
                int lead = a != 0 ? a : (b != 0 ? b : c);
                if (lead != 1) continue;
                pts.push_back({a, b, c});
            }
    if (pts.size() != 21) throw std::logic_error("build_pg24: point count");

    Design d;
    d.v = 21;
    d.t = 2;
    d.k = 5;
    d.lambda = 1;
    // lines: kernels of the same 21 vectors under the standard bilinear form
    for (const auto& L : pts) {
        std::vector<int> block;
        for (int i = 0; i < 21; ++i) {
            int dot = add4(add4(mul4(L[0], pts[i][0]), mul4(L[1], pts[i][1])),
                           mul4(L[2], pts[i][2]));
            if (dot == 0) block.push_back(i);
        }
        if (block.size() != 5) throw std::logic_error("build_pg24: line size");
        d.blocks.push_back(std::move(block));
    }
    std::sort(d.blocks.begin(), d.blocks.end());
    if (!check_design(d)) throw std::logic_error("build_pg24: design check failed");
    return d;
}

std::vector<std::vector<int>> hyperovals(const Design& pg) {
    if (pg.v != 21 || pg.k != 5 || pg.blocks.size() != 21)
        throw std::invalid_argument("hyperovals: expected the 21-point plane");
    std::vector<uint32_t> lines;
    for (const auto& b : pg.blocks) lines.push_back(to_mask(b));
    std::vector<std::vector<int>> out;
    for_each_subset(21, 6, [&](const std::vector<int>& sub) {
        uint32_t m = to_mask(sub);
        for (uint32_t l : lines)
            if (std::popcount(m & l) > 2) return;
        out.push_back(sub);
    });
    if (out.size() != 168)
        throw std::logic_error("hyperovals: expected 168, found " + std::to_string(out.size()));
    return out;
}

Design build_s3622(const Design& pg) {
    auto hos = hyperovals(pg);
    std::vector<uint32_t> masks;
    for (const auto& h : hos) masks.push_back(to_mask(h));
    auto families = split_families(masks, 3, 56);
    for (const auto& fam : families) {
        Design d;
        d.v = 22;
        d.t = 3;
        d.k = 6;
        d.lambda = 1;
        for (const auto& line : pg.blocks) {
            auto b = line;
            b.push_back(21);
            d.blocks.push_back(std::move(b));
        }
        for (uint32_t m : fam) d.blocks.push_back(to_list(m));
        std::sort(d.blocks.begin(), d.blocks.end());
        if (check_design(d)) return d;
    }
    throw std::runtime_error("build_s3622: no hyperoval family extends the plane");
}

std::pair<std::vector<std::vector<int>>, std::vector<std::vector<int>>> heptad_families(
    const Design& s) {
    if (s.v != 22 || s.k != 6 || s.blocks.size() != 77)
        throw std::invalid_argument("heptad_families: expected the 22-point system");
    std::vector<uint32_t> bm;
    for (const auto& b : s.blocks) bm.push_back(to_mask(b));
    std::vector<uint32_t> heps;
    for_each_subset(22, 7, [&](const std::vector<int>& sub) {
        uint32_t m = to_mask(sub);
        for (uint32_t b : bm)
            if ((std::popcount(m & b) & 1) == 0) return;
        heps.push_back(m);
    });
    if (heps.size() != 352)
        throw std::logic_error("heptad_families: expected 352, found " +
                               std::to_string(heps.size()));
    auto fams = split_families(heps, 2, 176);
    auto lists = [](const std::vector<uint32_t>& ms) {
        std::vector<std::vector<int>> out;
        for (uint32_t m : ms) out.push_back(to_list(m));
        std::sort(out.begin(), out.end());
        return out;
    };
    return {lists(fams[0]), lists(fams[1])};
}

SRGraph build_mclaughlin_graph(const Design& s) {
    auto [fam_a, fam_b] = heptad_families(s);
    std::vector<uint32_t> bm;
    for (const auto& b : s.blocks) bm.push_back(to_mask(b));
    for (const auto& fam : {fam_a, fam_b}) {
        std::vector<uint32_t> hm;
        for (const auto& h : fam) hm.push_back(to_mask(h));
        SRGraph g = SRGraph::empty(275);
        // vertices: 0..21 points, 22..98 blocks, 99..274 heptads
        for (int p = 0; p < 22; ++p) {
            for (int i = 0; i < 77; ++i)
                if (!(bm[i] >> p & 1)) g.add_edge(p, 22 + i);
            for (int j = 0; j < 176; ++j)
                if (hm[j] >> p & 1) g.add_edge(p, 99 + j);
        }
        for (int i = 0; i < 77; ++i) {
            for (int i2 = i + 1; i2 < 77; ++i2)
                if ((bm[i] & bm[i2]) == 0) g.add_edge(22 + i, 22 + i2);
            for (int j = 0; j < 176; ++j)
                if (std::popcount(bm[i] & hm[j]) == 3) g.add_edge(22 + i, 99 + j);
        }
        for (int j = 0; j < 176; ++j)
            for (int j2 = j + 1; j2 < 176; ++j2)
                if (std::popcount(hm[j] & hm[j2]) == 1) g.add_edge(99 + j, 99 + j2);
        if (check_srg(g, 112, 30, 56)) return g;
    }
    throw std::runtime_error("build_mclaughlin_graph: no heptad family passes the check");
}

}  // namespace covernum
