#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace covernum {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_floor(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (r < 0 && q * denominator(r) != numerator(r)) --q;
    return q;
}

inline Int rat_ceil(const Rat& r) {
    Int q = numerator(r) / denominator(r);
    if (r > 0 && q * denominator(r) != numerator(r)) ++q;
    return q;
}

}  // namespace covernum
