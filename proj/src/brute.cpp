#include "covernum/brute.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "covernum/classes.hpp"
#include "covernum/ilp.hpp"

namespace covernum {

namespace {

constexpr int64_t kBruteLimit = 2000;

std::vector<int32_t> close_ids(const GroupTable& g, const std::vector<int32_t>& gens) {
    std::vector<char> in((size_t)g.order(), 0);
    std::vector<int32_t> set = {0}, frontier = {0};
    in[0] = 1;
    while (!frontier.empty()) {
        std::vector<int32_t> next;
        for (int32_t x : frontier)
            for (int32_t s : gens) {
                int32_t t = g.mul(x, s);
                if (!in[t]) {
                    in[t] = 1;
                    set.push_back(t);
                    next.push_back(t);
                }
            }
        frontier = std::move(next);
    }
    std::sort(set.begin(), set.end());
    return set;
}

}  // namespace

std::vector<std::vector<int32_t>> all_subgroups(const GroupTable& g) {
    if (g.order() > kBruteLimit)
        throw std::runtime_error("all_subgroups: order above the supported limit");
    // set -> a small generating list, so joins stay cheap to close
    std::map<std::vector<int32_t>, std::vector<int32_t>> family;
    for (int32_t x = 0; x < g.order(); ++x) family.emplace(close_ids(g, {x}), std::vector<int32_t>{x});
    {
        std::vector<std::vector<int32_t>> gens;
        for (const auto& [set, gs] : family) gens.push_back(gs);
        for (size_t i = 0; i < gens.size(); ++i)
            for (size_t j = i + 1; j < gens.size(); ++j) {
                std::vector<int32_t> two = {gens[i][0], gens[j][0]};
                family.emplace(close_ids(g, two), two);
            }
    }
    for (bool grew = true; grew;) {
        grew = false;
        std::vector<std::pair<std::vector<int32_t>, std::vector<int32_t>>> cur(family.begin(),
                                                                               family.end());
        for (size_t i = 0; i < cur.size(); ++i)
            for (size_t j = i + 1; j < cur.size(); ++j) {
                if (std::includes(cur[j].first.begin(), cur[j].first.end(), cur[i].first.begin(),
                                  cur[i].first.end()) ||
                    std::includes(cur[i].first.begin(), cur[i].first.end(), cur[j].first.begin(),
                                  cur[j].first.end()))
                    continue;  // the join is the larger one, already present
                std::vector<int32_t> gens = cur[i].second;
                gens.insert(gens.end(), cur[j].second.begin(), cur[j].second.end());
                if (family.emplace(close_ids(g, gens), std::move(gens)).second) grew = true;
            }
    }
    std::vector<std::vector<int32_t>> out;
    for (const auto& [set, gs] : family) out.push_back(set);
    return out;
}

std::vector<std::vector<int32_t>> maximal_proper(const GroupTable& g,
                                                 const std::vector<std::vector<int32_t>>& subs) {
    std::vector<std::vector<int32_t>> proper;
    for (const auto& s : subs)
        if ((int64_t)s.size() < g.order()) proper.push_back(s);
    std::vector<std::vector<int32_t>> out;
    for (const auto& s : proper) {
        bool topped = false;
        for (const auto& t : proper) {
            if (t.size() <= s.size()) continue;
            if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                topped = true;
                break;
            }
        }
        if (!topped) out.push_back(s);
    }
    return out;
}

int64_t brute_sigma(const GroupTable& g) {
    if (g.order() > kBruteLimit)
        throw std::runtime_error("brute_sigma: order above the supported limit");
    for (int32_t x = 0; x < g.order(); ++x)
        if (g.element_order(x) == g.order())
            throw std::runtime_error("brute_sigma: cyclic group, no cover exists");

    auto maxp = maximal_proper(g, all_subgroups(g));
    auto cd = conjugacy_classes(g);

    CoveringProgram p;
    p.name = g.name + "-brute";
    for (size_t j = 0; j < maxp.size(); ++j) p.cols.push_back({"S" + std::to_string(j), 1});
    for (const auto& K : cd.classes) {
        if (!K.principal) continue;
        for (int32_t e : K.members) {
            CoveringProgram::Row r;
            r.label = "e" + std::to_string(e);
            r.demand = 1;
            for (size_t j = 0; j < maxp.size(); ++j)
                if (std::binary_search(maxp[j].begin(), maxp[j].end(), e))
                    r.terms.push_back({(int32_t)j, 1});
            p.rows.push_back(std::move(r));
        }
    }
    p.validate();
    return solve_integer(p).optimum();
}

}  // namespace covernum
