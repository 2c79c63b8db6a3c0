#pragma once

// Seeded wiring generators for tests.

#include <algorithm>
#include <numeric>
#include <random>

#include "invforge/cipher.hpp"

namespace testing {

/// Any valid wiring: D in 0..36 (0 selects K), P in 1..36, repeats allowed.
inline invforge::Wiring random_wiring(std::mt19937_64& rng) {
    invforge::Wiring w;
    for (auto& d : w.d) d = static_cast<int>(rng() % 37);
    for (auto& p : w.p) p = 1 + static_cast<int>(rng() % 36);
    return w;
}

/// D a permutation of 4,8,..,36 and P a bijection onto the remaining bits;
/// such rounds are invertible.
inline invforge::Wiring random_permutation_wiring(std::mt19937_64& rng) {
    invforge::Wiring w;
    std::iota(w.d.begin(), w.d.end(), 1);
    for (auto& d : w.d) d *= 4;
    std::shuffle(w.d.begin(), w.d.end(), rng);
    std::vector<int> rest;
    for (int i = 1; i <= 36; ++i) {
        if (i % 4 != 0) rest.push_back(i);
    }
    std::shuffle(rest.begin(), rest.end(), rng);
    std::copy(rest.begin(), rest.end(), w.p.begin());
    return w;
}

}  // namespace testing
