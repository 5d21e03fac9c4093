// Conjugacy classes, canonical labels, principal classes, algebraic fusion.
//
// Labels follow the usual convention: classes are sorted by
// (element order, class size, least member ID) and named 1A, 2A, 2B, ...
// An element is principal when the cyclic subgroup it generates is maximal
// among cyclic subgroups; this is a class property, decided on class
// representatives through power maps.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covernum/group.hpp"

namespace covernum {

struct ConjClass {
    std::string label;
    int32_t rep = -1;        // least member ID
    int64_t size = 0;
    int64_t element_order = 0;
    int64_t centralizer_order = 0;
    bool principal = false;
    // For a non-principal class: an element y and exponent k with y^k in this
    // class and |y^k| < |y|, i.e. the class lies under a larger cyclic group.
    struct Witness {
        int32_t y;
        int64_t k;
    };
    std::optional<Witness> witness;
    std::vector<int32_t> members;  // sorted ascending
};

struct ClassData {
    std::vector<ConjClass> classes;
    std::vector<int32_t> class_of;          // element ID -> class index
    // Orbits of classes under the coprime power maps ("algebraically
    // conjugate" classes), each sorted; singleton orbits included.
    std::vector<std::vector<int32_t>> fusion;
    std::vector<int32_t> fusion_of;         // class index -> fusion orbit index
    std::string fused_label(int orbit) const;  // e.g. "7AB"
    int index_of(const std::string& label) const;  // -1 if absent
};

ClassData conjugacy_classes(const GroupTable& g);

// class index -> class index of rep^k.
std::vector<int32_t> power_map(const GroupTable& g, const ClassData& cd, int64_t k);

}  // namespace covernum
