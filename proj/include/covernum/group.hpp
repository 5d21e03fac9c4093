// Finite permutation group, fully enumerated. Element IDs are assigned in
// BFS discovery order from the identity, multiplying by the generators on the
// right in input order; ID 0 is the identity. This ordering is part of the
// on-disk contract: conjugate IDs and certificate references depend on it.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "covernum/perm.hpp"

namespace covernum {

inline constexpr int64_t kMaxGroupOrder = 2'000'000;

class GroupTable {
  public:
    std::string name;
    int degree = 0;
    std::vector<Perm> generators;

    int64_t order() const { return (int64_t)(flat_.size() / degree); }
    std::span<const int32_t> images(int32_t id) const {
        return {flat_.data() + (size_t)id * degree, (size_t)degree};
    }
    Perm perm(int32_t id) const;
    // -1 when the permutation is not an element.
    int32_t id_of(std::span<const int32_t> images) const;
    int32_t id_of(const Perm& p) const { return id_of(std::span<const int32_t>(p.img)); }

    int32_t mul(int32_t a, int32_t b) const;   // apply a then b
    int32_t inv(int32_t a) const;
    int32_t conj(int32_t x, int32_t g) const;  // g^-1 x g
    int32_t pow(int32_t x, int64_t k) const;
    int64_t element_order(int32_t x) const;

    const std::vector<int32_t>& generator_ids() const { return gen_ids_; }
    // id -> id map of conjugation by generator gi; built on first use.
    const std::vector<int32_t>& conj_map(int gi) const;
    // id -> id map of conjugation by an arbitrary element.
    std::vector<int32_t> conj_map_by(int32_t g) const;

    friend GroupTable close_group(const std::string& name, int degree,
                                  const std::vector<Perm>& gens, int64_t expected_order);

  private:
    std::vector<int32_t> flat_;
    std::unordered_map<std::string, int32_t> index_;
    std::vector<int32_t> gen_ids_;
    mutable std::vector<std::vector<int32_t>> conj_maps_;

    void insert_row(const int32_t* images);
    static std::string key(const int32_t* images, int degree);
};

// Enumerates the group generated by gens. Throws if the closure exceeds
// kMaxGroupOrder, or if expected_order >= 0 and the result differs.
GroupTable close_group(const std::string& name, int degree, const std::vector<Perm>& gens,
                       int64_t expected_order = -1);

// Text format:
//   group <name> degree <d> order <n>
//   gen <cycles>
// '#' starts a comment. The declared order is verified against the closure.
GroupTable load_group_file(const std::string& path);
GroupTable read_group(std::istream& in, const std::string& what);
void write_group_file(const GroupTable& g, const std::string& path,
                      const std::vector<std::string>& comments = {});

}  // namespace covernum
