#pragma once

// Shared helpers for the test suites: deterministic random elements and a
// few small builders.

#include <random>

#include "fkb/cyclotomic.hpp"

namespace testsupport {

inline fkb::CycInt random_cyc(std::mt19937& rng, int conductor, int max_abs = 9) {
    std::uniform_int_distribution<int> dist(-max_abs, max_abs);
    std::vector<fkb::Int> c;
    int phi = fkb::CycInt(conductor).degree();
    c.reserve(phi);
    for (int i = 0; i < phi; ++i) c.emplace_back(dist(rng));
    return fkb::CycInt::from_poly(conductor, std::move(c));
}

inline fkb::CycInt random_nonzero_cyc(std::mt19937& rng, int conductor, int max_abs = 9) {
    for (;;) {
        auto x = random_cyc(rng, conductor, max_abs);
        if (!x.is_zero()) return x;
    }
}

}  // namespace testsupport
