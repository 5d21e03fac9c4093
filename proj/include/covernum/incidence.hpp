// Incidence counts between conjugacy classes and subgroup classes.
//
// For a class K with fixed representative x and a subgroup class M:
//   a[K][M] = number of conjugates of M containing x
//   b[K][M] = |K intersect H| for any fixed H in M
// These satisfy a[K][M] * |K| = b[K][M] * (number of conjugates of M), an
// exact integer identity that is asserted during construction. b is further
// cross-checked by counting |K intersect H| directly, and a is recomputed at
// a second class member. For a self-normalizing H the column a[.][M] equals
// the permutation character of G acting on the conjugates of H; that route
// is verified separately by fixed-point counting.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "covernum/classes.hpp"
#include "covernum/subgroup.hpp"

namespace covernum {

struct IncidenceMatrices {
    std::vector<std::string> col_labels;
    std::vector<int64_t> col_order;       // |H| per column
    std::vector<int64_t> col_count;       // conjugates per column
    // Row per conjugacy class, indexed like ClassData::classes.
    std::vector<std::vector<int64_t>> a, b;

    // One row per fusion orbit of principal classes ("7AB"). Classes fused by
    // coprime powers generate the same cyclic subgroups, so their a-rows are
    // equal (asserted); b_total sums b over the orbit and is re-derived by
    // counting elements of the representative subgroup directly.
    struct FusedRow {
        std::string label;
        std::vector<int32_t> class_indices;
        int64_t total_size = 0;
        std::vector<int64_t> a;
        std::vector<int64_t> b_total;
    };
    std::vector<FusedRow> fused;
};

IncidenceMatrices incidence_matrices(const GroupTable& g, const ClassData& cd,
                                     const std::vector<SubgroupClass>& subs);

// Permutation-character consistency: for every self-normalizing subgroup
// class, the number of conjugates fixed under conjugation by each class
// representative must equal a[K][M]. Throws on mismatch; returns the number
// of (class, subgroup-class) pairs checked.
int64_t check_prop_char(const GroupTable& g, const ClassData& cd,
                        const std::vector<SubgroupClass>& subs, const IncidenceMatrices& im);

// Principal rows with singleton support: the elements of such a class lie in
// conjugates of a single subgroup class, which pins that column's value in
// any cover (the demand row admits only one column). Throws if some
// principal row has empty support, since no cover by these classes exists.
struct ForcedColumn {
    int col;
    std::string reason_class;  // fused row label with singleton support
};
std::vector<ForcedColumn> forced_columns(const IncidenceMatrices& im);

// TSV with subgroup labels as header and fused principal rows.
void write_incidence_tsv(const IncidenceMatrices& im, const std::string& path, bool matrix_a);
// Human-readable fusion report: orbit composition and verification notes.
void write_fusion_report(const ClassData& cd, const IncidenceMatrices& im,
                         const std::string& path);

}  // namespace covernum
