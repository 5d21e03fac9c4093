#include "covernum/design.hpp"

#include <bit>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "covernum/srgraph.hpp"
#include "doctest.h"

using namespace covernum;

namespace {

uint32_t mask_of(const std::vector<int>& s) {
    uint32_t m = 0;
    for (int x : s) m |= (uint32_t)1 << x;
    return m;
}

const Design& plane() {
    static Design pg = build_pg24();
    return pg;
}

const Design& steiner() {
    static Design s = build_s3622(plane());
    return s;
}

const SRGraph& mcl_graph() {
    static SRGraph g = build_mclaughlin_graph(steiner());
    return g;
}

}  // namespace

TEST_SUITE("design") {
    TEST_CASE("projective plane of order 4") {
        const Design& pg = plane();
        CHECK(pg.v == 21);
        CHECK(pg.t == 2);
        CHECK(pg.k == 5);
        CHECK(pg.lambda == 1);
        CHECK(pg.blocks.size() == 21);
        CHECK(check_design(pg));
        // every point lies on exactly 5 lines
        std::vector<int> on(21, 0);
        for (const auto& b : pg.blocks)
            for (int p : b) ++on[p];
        for (int c : on) CHECK(c == 5);
        // two distinct lines meet in exactly one point
        for (size_t i = 0; i < pg.blocks.size(); ++i)
            for (size_t j = i + 1; j < pg.blocks.size(); ++j)
                CHECK(std::popcount(mask_of(pg.blocks[i]) & mask_of(pg.blocks[j])) == 1);
    }

    TEST_CASE("check_design rejects broken designs") {
        Design d = plane();
        d.blocks.pop_back();
        CHECK_FALSE(check_design(d));
        d = plane();
        d.lambda = 2;
        CHECK_FALSE(check_design(d));
        d = plane();
        std::swap(d.blocks[0][0], d.blocks[0][1]);  // unsorted block
        CHECK_FALSE(check_design(d));
    }

    TEST_CASE("hyperovals of the plane") {
        auto hos = hyperovals(plane());
        CHECK(hos.size() == 168);
        std::vector<uint32_t> lines;
        for (const auto& b : plane().blocks) lines.push_back(mask_of(b));
        for (const auto& h : hos) {
            CHECK(h.size() == 6);
            for (uint32_t l : lines) CHECK(std::popcount(mask_of(h) & l) <= 2);
        }
    }

    TEST_CASE("22-point Steiner system") {
        const Design& s = steiner();
        CHECK(s.v == 22);
        CHECK(s.t == 3);
        CHECK(s.k == 6);
        CHECK(s.lambda == 1);
        CHECK(s.blocks.size() == 77);
        CHECK(check_design(s));  // the exhaustive 1540-triple check
        // every point lies in exactly 21 blocks
        std::vector<int> on(22, 0);
        for (const auto& b : s.blocks)
            for (int p : b) ++on[p];
        for (int c : on) CHECK(c == 21);
    }

    TEST_CASE("heptad families") {
        auto [fa, fb] = heptad_families(steiner());
        CHECK(fa.size() == 176);
        CHECK(fb.size() == 176);
        std::vector<uint32_t> bm;
        for (const auto& b : steiner().blocks) bm.push_back(mask_of(b));
        // the two families are disjoint and every member meets every block oddly
        std::set<uint32_t> seen;
        for (const auto* fam : {&fa, &fb})
            for (const auto& h : *fam) {
                CHECK(h.size() == 7);
                CHECK(seen.insert(mask_of(h)).second);
                int threes = 0, ones = 0;
                for (uint32_t b : bm) {
                    int c = std::popcount(mask_of(h) & b);
                    CHECK((c & 1) == 1);
                    if (c == 3) ++threes;
                    if (c == 1) ++ones;
                }
                // intersection profile: 35 blocks in 3 points, 42 in 1
                CHECK(threes == 35);
                CHECK(ones == 42);
            }
    }

    TEST_CASE("275-vertex strongly regular graph") {
        const SRGraph& g = mcl_graph();
        CHECK(g.n == 275);
        CHECK(g.verified);
        CHECK(g.k == 112);
        CHECK(g.lam == 30);
        CHECK(g.mu == 56);
        CHECK(g.edge_count() == 15400);
        int64_t pairs = (int64_t)275 * 274 / 2;
        CHECK(pairs - g.edge_count() == 22275);  // non-adjacent pairs
        for (int v : {0, 21, 22, 98, 99, 274}) CHECK(g.degree(v) == 112);
        // the 22 design points are pairwise non-adjacent
        for (int p = 0; p < 22; ++p)
            for (int q = p + 1; q < 22; ++q) CHECK_FALSE(g.adjacent(p, q));
    }

    TEST_CASE("check_srg rejects wrong parameters") {
        SRGraph g = mcl_graph();
        CHECK_FALSE(check_srg(g, 112, 30, 55));
        CHECK_FALSE(g.verified);
        CHECK(check_srg(g, 112, 30, 56));
        CHECK(g.verified);
        // pentagon: the smallest strongly regular graph
        SRGraph c5 = SRGraph::empty(5);
        for (int i = 0; i < 5; ++i) c5.add_edge(i, (i + 1) % 5);
        CHECK(check_srg(c5, 2, 0, 1));
        CHECK_FALSE(check_srg(c5, 2, 1, 1));
    }

    TEST_CASE("independent set of size 22") {
        const SRGraph& g = mcl_graph();
        auto is = independent_set(g, 22, 0);
        CHECK(is.size() == 22);
        for (size_t i = 0; i < is.size(); ++i)
            for (size_t j = i + 1; j < is.size(); ++j) CHECK_FALSE(g.adjacent(is[i], is[j]));
        CHECK(std::is_sorted(is.begin(), is.end()));
        // trivial request
        CHECK(independent_set(g, 1, 0).size() == 1);
        // a size-23 set does not exist; with a tiny budget the search reports failure
        CHECK_THROWS_AS(independent_set(g, 23, 1, 3), std::runtime_error);
    }

    TEST_CASE("induced edge bound") {
        const SRGraph& g = mcl_graph();
        std::vector<int> all(275);
        for (int i = 0; i < 275; ++i) all[i] = i;
        auto eb = induced_edge_bound(g, all, 22);
        CHECK(eb.ok);
        CHECK(eb.edges == 15400);
        CHECK(eb.bound == 253);
        CHECK(eb.components == 1);

        auto is = independent_set(g, 22, 0);
        auto eb2 = induced_edge_bound(g, is, 22);
        CHECK(eb2.ok);
        CHECK(eb2.edges == 0);
        CHECK(eb2.bound == 0);
        CHECK(eb2.components == 22);

        // random subsets: the inequality edges >= |w| - alpha always holds
        std::mt19937 rng(7);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<int> w;
            for (int v = 0; v < 275; ++v)
                if (rng() % 4 == 0) w.push_back(v);
            auto e = induced_edge_bound(g, w, 22);
            CHECK(e.ok);
            CHECK(e.edges >= (int64_t)w.size() - 22);
        }
        CHECK_THROWS_AS(induced_edge_bound(g, {0, 0}, 22), std::invalid_argument);
    }

    TEST_CASE("graph and vertex list export") {
        namespace fs = std::filesystem;
        fs::path dir = fs::temp_directory_path() / "covernum_design_test";
        fs::create_directories(dir);
        const SRGraph& g = mcl_graph();
        write_graph(g, (dir / "graph.txt").string());
        std::ifstream in(dir / "graph.txt");
        REQUIRE(in.good());
        std::string line;
        int lines = 0, checked = 0;
        while (std::getline(in, line)) {
            if (lines == 0) {
                CHECK(line.substr(0, 4) == "v 0:");
                // neighbors listed ascending; spot-check the first line fully
                std::istringstream ss(line.substr(4));
                int prev = -1, v = 0, cnt = 0;
                while (ss >> v) {
                    CHECK(v > prev);
                    CHECK(g.adjacent(0, v));
                    prev = v;
                    ++cnt;
                }
                CHECK(cnt == 112);
                ++checked;
            }
            ++lines;
        }
        CHECK(lines == 275);
        CHECK(checked == 1);

        write_vertex_list({3, 1, 4}, (dir / "verts.txt").string());
        std::ifstream vin(dir / "verts.txt");
        int a = 0, b = 0, c = 0;
        vin >> a >> b >> c;
        CHECK(a == 3);
        CHECK(b == 1);
        CHECK(c == 4);
        fs::remove_all(dir);
    }
}
