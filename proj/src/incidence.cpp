#include "covernum/incidence.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>
#include <unordered_map>

namespace covernum {

namespace {

int64_t count_containing(const std::vector<std::vector<int32_t>>& conjugates, int32_t x) {
    int64_t n = 0;
    for (const auto& h : conjugates)
        if (std::binary_search(h.begin(), h.end(), x)) ++n;
    return n;
}

// |sorted_a intersect sorted_b| by merge.
int64_t intersection_size(const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
    int64_t n = 0;
    size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (a[i] > b[j])
            ++j;
        else
            ++n, ++i, ++j;
    }
    return n;
}

}  // namespace

IncidenceMatrices incidence_matrices(const GroupTable& g, const ClassData& cd,
                                     const std::vector<SubgroupClass>& subs) {
    IncidenceMatrices im;
    size_t nc = cd.classes.size(), ns = subs.size();
    for (const auto& s : subs) {
        im.col_labels.push_back(s.id);
        im.col_order.push_back(s.order);
        im.col_count.push_back(s.class_size());
    }
    im.a.assign(nc, std::vector<int64_t>(ns, 0));
    im.b.assign(nc, std::vector<int64_t>(ns, 0));

    for (size_t ki = 0; ki < nc; ++ki) {
        const auto& K = cd.classes[ki];
        int32_t x1 = K.rep;
        int32_t x2 = K.members[K.members.size() / 2];  // second check point
        for (size_t j = 0; j < ns; ++j) {
            int64_t a1 = count_containing(subs[j].conjugates, x1);
            if (x2 != x1 && count_containing(subs[j].conjugates, x2) != a1)
                throw std::runtime_error("incidence: containment count differs between members of " +
                                         K.label + " for " + subs[j].id);
            int64_t num = a1 * K.size;
            int64_t m = subs[j].class_size();
            if (num % m != 0)
                throw std::runtime_error("incidence: a*|K| not divisible by class size at (" +
                                         K.label + ", " + subs[j].id + ")");
            int64_t b = num / m;
            if (b != intersection_size(K.members, subs[j].rep()))
                throw std::runtime_error("incidence: direct |K ^ H| count disagrees at (" +
                                         K.label + ", " + subs[j].id + ")");
            im.a[ki][j] = a1;
            im.b[ki][j] = b;
        }
    }

    // Fused principal rows; classes in one orbit generate the same cyclic
    // subgroups, so the a-rows must agree entry by entry.
    for (size_t oi = 0; oi < cd.fusion.size(); ++oi) {
        const auto& orb = cd.fusion[oi];
        if (!cd.classes[orb[0]].principal) continue;
        IncidenceMatrices::FusedRow row;
        row.label = cd.fused_label((int)oi);
        row.class_indices.assign(orb.begin(), orb.end());
        row.a = im.a[orb[0]];
        row.b_total.assign(ns, 0);
        for (int32_t ci : orb) {
            if (!cd.classes[ci].principal)
                throw std::runtime_error("incidence: fusion orbit mixes principal and not: " +
                                         row.label);
            if (im.a[ci] != row.a)
                throw std::runtime_error("incidence: a-rows differ inside fusion orbit " +
                                         row.label);
            row.total_size += cd.classes[ci].size;
            for (size_t j = 0; j < ns; ++j) row.b_total[j] += im.b[ci][j];
        }
        // Independent route: count members of the representative subgroup
        // whose class lies in the orbit.
        for (size_t j = 0; j < ns; ++j) {
            int64_t direct = 0;
            for (int32_t e : subs[j].rep()) {
                int32_t c = cd.class_of[e];
                if (std::binary_search(orb.begin(), orb.end(), c)) ++direct;
            }
            if (direct != row.b_total[j])
                throw std::runtime_error("incidence: direct element count disagrees for row " +
                                         row.label + " column " + subs[j].id);
        }
        im.fused.push_back(std::move(row));
    }
    return im;
}

int64_t check_prop_char(const GroupTable& g, const ClassData& cd,
                        const std::vector<SubgroupClass>& subs, const IncidenceMatrices& im) {
    int64_t checked = 0;
    struct VecHash {
        size_t operator()(const std::vector<int32_t>& v) const {
            uint64_t h = 1469598103934665603ull;
            for (int32_t x : v) {
                h ^= (uint64_t)(uint32_t)x;
                h *= 1099511628211ull;
            }
            return (size_t)h;
        }
    };
    for (size_t j = 0; j < subs.size(); ++j) {
        if (!subs[j].self_normalizing) continue;  // orbit is not the coset space then
        std::unordered_map<std::vector<int32_t>, int, VecHash> which;
        for (size_t i = 0; i < subs[j].conjugates.size(); ++i)
            which.emplace(subs[j].conjugates[i], (int)i);
        for (size_t ki = 0; ki < cd.classes.size(); ++ki) {
            std::vector<int32_t> cmap = g.conj_map_by(cd.classes[ki].rep);
            int64_t fixed = 0;
            std::vector<int32_t> image;
            for (const auto& h : subs[j].conjugates) {
                image.resize(h.size());
                for (size_t k = 0; k < h.size(); ++k) image[k] = cmap[h[k]];
                std::sort(image.begin(), image.end());
                auto it = which.find(image);
                if (it == which.end())
                    throw std::runtime_error("check_prop_char: conjugate left the orbit of " +
                                             subs[j].id);
                if (image == h) ++fixed;
            }
            if (fixed != im.a[ki][j])
                throw std::runtime_error("check_prop_char: fixed conjugates of " + subs[j].id +
                                         " under " + cd.classes[ki].label + " = " +
                                         std::to_string(fixed) + ", expected a = " +
                                         std::to_string(im.a[ki][j]));
            ++checked;
        }
    }
    return checked;
}

std::vector<ForcedColumn> forced_columns(const IncidenceMatrices& im) {
    std::vector<ForcedColumn> out;
    std::vector<char> taken(im.col_labels.size(), 0);
    for (const auto& row : im.fused) {
        int support = 0, last = -1;
        for (size_t j = 0; j < row.a.size(); ++j)
            if (row.a[j] > 0) ++support, last = (int)j;
        if (support == 0)
            throw std::runtime_error("forced_columns: principal row " + row.label +
                                     " is not covered by any subgroup class");
        if (support == 1 && !taken[last]) {
            taken[last] = 1;
            out.push_back({last, row.label});
        }
    }
    return out;
}

void write_incidence_tsv(const IncidenceMatrices& im, const std::string& path, bool matrix_a) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "class";
    for (const auto& l : im.col_labels) out << "\t" << l;
    out << "\n";
    for (const auto& row : im.fused) {
        out << row.label;
        const auto& v = matrix_a ? row.a : row.b_total;
        for (int64_t x : v) out << "\t" << x;
        out << "\n";
    }
}

void write_fusion_report(const ClassData& cd, const IncidenceMatrices& im,
                         const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# fusion orbits of principal classes under coprime powers\n";
    for (const auto& row : im.fused) {
        out << row.label << " <-";
        for (int32_t ci : row.class_indices) out << " " << cd.classes[ci].label;
        out << "  elements " << row.total_size << "  a-rows identical, element counts re-derived\n";
    }
    out << "# non-principal classes:";
    for (const auto& c : cd.classes)
        if (!c.principal) out << " " << c.label;
    out << "\n";
}

}  // namespace covernum
