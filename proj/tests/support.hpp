#pragma once

// Helpers shared by the unit tests: seeded random polynomials and naive
// reference implementations used as oracles.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "invforge/anf.hpp"

namespace testing {

using invforge::Monomial;
using invforge::Polynomial;
using invforge::VarId;

/// The first n state letters a, b, c, ... as VarIds.
inline std::vector<VarId> letters(int n) {
    std::vector<VarId> out;
    for (int i = 0; i < n; ++i) out.push_back(VarId::state(36 - i));
    return out;
}

inline Polynomial random_poly(std::mt19937_64& rng, const std::vector<VarId>& vars, int max_terms) {
    std::vector<Monomial> terms;
    const int n = static_cast<int>(rng() % static_cast<std::uint64_t>(max_terms + 1));
    for (int t = 0; t < n; ++t) {
        Monomial m;
        for (VarId v : vars) {
            if (rng() & 1U) m = m * Monomial::of(v);
        }
        terms.push_back(m);
    }
    return Polynomial::from_terms(std::move(terms));
}

/// Value of p with vars[i] = bit i of x, evaluated term by term by hand.
inline bool naive_eval(const Polynomial& p, const std::vector<VarId>& vars, std::uint64_t x) {
    bool acc = false;
    for (const Monomial& m : p.terms()) {
        bool t = true;
        for (VarId v : m.vars()) {
            bool found = false;
            for (std::size_t i = 0; i < vars.size(); ++i) {
                if (vars[i] == v) {
                    t = t && ((x >> i) & 1U);
                    found = true;
                }
            }
            if (!found) t = false;
        }
        acc ^= t;
    }
    return acc;
}

}  // namespace testing
