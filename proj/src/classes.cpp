#include "covernum/classes.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>

namespace covernum {

namespace {

std::string letters(int k) {
    // A, B, ..., Z, AA, AB, ... (base-26, bijective)
    std::string s;
    ++k;
    while (k > 0) {
        --k;
        s += (char)('A' + k % 26);
        k /= 26;
    }
    std::reverse(s.begin(), s.end());
    return s;
}

}  // namespace

ClassData conjugacy_classes(const GroupTable& g) {
    int64_t n = g.order();
    ClassData cd;
    cd.class_of.assign(n, -1);

    size_t ngens = g.generator_ids().size();
    std::vector<const std::vector<int32_t>*> cmaps(ngens);
    for (size_t i = 0; i < ngens; ++i) cmaps[i] = &g.conj_map(i);

    std::vector<int32_t> stack;
    for (int64_t seed = 0; seed < n; ++seed) {
        if (cd.class_of[seed] >= 0) continue;
        int32_t ci = (int32_t)cd.classes.size();
        ConjClass c;
        c.rep = (int32_t)seed;
        cd.class_of[seed] = ci;
        stack.assign(1, (int32_t)seed);
        std::vector<int32_t> members{(int32_t)seed};
        while (!stack.empty()) {
            int32_t x = stack.back();
            stack.pop_back();
            for (auto* m : cmaps) {
                int32_t y = (*m)[x];
                if (cd.class_of[y] < 0) {
                    cd.class_of[y] = ci;
                    members.push_back(y);
                    stack.push_back(y);
                }
            }
        }
        std::sort(members.begin(), members.end());
        c.members = std::move(members);
        c.size = (int64_t)c.members.size();
        c.element_order = g.element_order(c.rep);
        if (n % c.size != 0)
            throw std::runtime_error("conjugacy_classes: class size does not divide order");
        c.centralizer_order = n / c.size;
        cd.classes.push_back(std::move(c));
    }

    // Canonical order and labels.
    std::vector<int32_t> perm(cd.classes.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::sort(perm.begin(), perm.end(), [&](int32_t a, int32_t b) {
        const auto &A = cd.classes[a], &B = cd.classes[b];
        if (A.element_order != B.element_order) return A.element_order < B.element_order;
        if (A.size != B.size) return A.size < B.size;
        return A.rep < B.rep;
    });
    std::vector<ConjClass> ordered;
    ordered.reserve(cd.classes.size());
    std::vector<int32_t> new_index(cd.classes.size());
    for (size_t i = 0; i < perm.size(); ++i) {
        new_index[perm[i]] = (int32_t)i;
        ordered.push_back(std::move(cd.classes[perm[i]]));
    }
    cd.classes = std::move(ordered);
    for (auto& x : cd.class_of) x = new_index[x];
    int64_t prev_order = -1;
    int letter = 0;
    for (auto& c : cd.classes) {
        letter = (c.element_order == prev_order) ? letter + 1 : 0;
        prev_order = c.element_order;
        c.label = std::to_string(c.element_order) + letters(letter);
    }

    // Principality and witnesses via power maps on representatives: x is not
    // principal iff some y has y^k conjugate to x with 1 != |y^k| < |y|, and
    // it is enough to scan divisor powers of class representatives.
    int nc = (int)cd.classes.size();
    for (int ci = 0; ci < nc; ++ci) cd.classes[ci].principal = (cd.classes[ci].element_order > 1);
    for (int ci = 0; ci < nc; ++ci) {
        const auto& c = cd.classes[ci];
        int64_t m = c.element_order;
        for (int64_t d = 2; d <= m; ++d) {
            if (m % d != 0) continue;
            int32_t z = g.pow(c.rep, d);
            int32_t zi = cd.class_of[z];
            auto& dominated = cd.classes[zi];
            if (dominated.principal) {
                dominated.principal = false;
                dominated.witness = ConjClass::Witness{c.rep, d};
            }
        }
    }
    for (auto& c : cd.classes) {
        if (c.principal || c.element_order == 1) continue;
        if (!c.witness) throw std::runtime_error("conjugacy_classes: non-principal class " +
                                                 c.label + " without witness");
        int32_t z = g.pow(c.witness->y, c.witness->k);
        if (cd.class_of[z] != (&c - cd.classes.data()) ||
            g.element_order(c.witness->y) <= c.element_order)
            throw std::runtime_error("conjugacy_classes: bad witness for " + c.label);
    }

    // Fusion: orbits of classes under all coprime power maps.
    std::vector<int32_t> root(nc);
    std::iota(root.begin(), root.end(), 0);
    auto find = [&](int32_t a) {
        while (root[a] != a) a = root[a] = root[root[a]];
        return a;
    };
    for (int ci = 0; ci < nc; ++ci) {
        int64_t m = cd.classes[ci].element_order;
        for (int64_t k = 2; k < m; ++k) {
            if (std::gcd(k, m) != 1) continue;
            int32_t zi = cd.class_of[g.pow(cd.classes[ci].rep, k)];
            int32_t a = find(ci), b = find(zi);
            if (a != b) root[std::max(a, b)] = std::min(a, b);
        }
    }
    cd.fusion_of.assign(nc, -1);
    for (int ci = 0; ci < nc; ++ci) {
        int32_t r = find(ci);
        if (cd.fusion_of[r] < 0) {
            cd.fusion_of[r] = (int32_t)cd.fusion.size();
            cd.fusion.push_back({});
        }
        cd.fusion_of[ci] = cd.fusion_of[r];
        cd.fusion[cd.fusion_of[r]].push_back(ci);
    }
    for (auto& orb : cd.fusion) {
        assert(std::is_sorted(orb.begin(), orb.end()));
        // Fused classes share order and size.
        for (int32_t ci : orb)
            if (cd.classes[ci].element_order != cd.classes[orb[0]].element_order ||
                cd.classes[ci].size != cd.classes[orb[0]].size)
                throw std::runtime_error("conjugacy_classes: inconsistent fusion orbit");
    }
    return cd;
}

std::string ClassData::fused_label(int orbit) const {
    const auto& orb = fusion.at(orbit);
    std::string s = std::to_string(classes[orb[0]].element_order);
    for (int32_t ci : orb) {
        const std::string& l = classes[ci].label;
        size_t d = 0;
        while (d < l.size() && isdigit((unsigned char)l[d])) ++d;
        s += l.substr(d);
    }
    return s;
}

int ClassData::index_of(const std::string& label) const {
    for (size_t i = 0; i < classes.size(); ++i)
        if (classes[i].label == label) return (int)i;
    return -1;
}

std::vector<int32_t> power_map(const GroupTable& g, const ClassData& cd, int64_t k) {
    std::vector<int32_t> pm(cd.classes.size());
    for (size_t i = 0; i < cd.classes.size(); ++i)
        pm[i] = cd.class_of[g.pow(cd.classes[i].rep, k)];
    return pm;
}

}  // namespace covernum
