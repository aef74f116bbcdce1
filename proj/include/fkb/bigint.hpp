#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace fkb {

using Int = boost::multiprecision::cpp_int;

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

inline Int gcd_int(Int a, Int b) {
    a = abs_int(a);
    b = abs_int(b);
    while (b != 0) {
        Int r = a % b;
        a = b;
        b = r;
    }
    return a;
}

// exact division; the caller guarantees divisibility
inline Int div_exact(const Int& a, const Int& b) {
    Int q = a / b;
    return q;
}

}  // namespace fkb
