// Permutations on {0, ..., degree-1}, stored as image vectors.
// Text form uses 1-based cycle notation: (1,2,3)(4,5).
#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace covernum {

struct Perm {
    std::vector<int32_t> img;

    int degree() const { return (int)img.size(); }
    int32_t operator[](int32_t i) const { return img[i]; }
    bool operator==(const Perm& o) const = default;
    bool is_identity() const;
};

Perm perm_identity(int degree);

// (a * b)(i) = b[a[i]]: apply a first, then b.
Perm perm_mul(const Perm& a, const Perm& b);
Perm perm_inverse(const Perm& a);
// g^-1 * x * g
Perm perm_conjugate(const Perm& x, const Perm& g);
Perm perm_pow(const Perm& a, int64_t k);
int64_t perm_order(const Perm& a);

// Parses 1-based cycle notation. Whitespace between cycles is allowed,
// "()" and the empty string denote the identity. Rejects out-of-range and
// repeated points.
Perm parse_perm(const std::string& text, int degree);
std::string format_perm(const Perm& a);

}  // namespace covernum
