#pragma once

// The Fundamental Equation FE = P(inputs) + P(output ANFs) of a candidate
// invariant P, its reduction, and an empirical cross-check by stepping.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "invforge/anf.hpp"
#include "invforge/boolfun.hpp"
#include "invforge/cipher.hpp"
#include "invforge/gf2.hpp"

namespace invforge {

constexpr std::size_t kDefaultTermBudget = std::size_t{1} << 22;

struct FeReport {
    Polynomial fe;
    bool is_zero = false;
    /// support(fe) outside the state bits: F, K, L, placeholders, coefficients.
    std::vector<VarId> depends_on;
    RoundMode mode = RoundMode::Placeholder;

    bool depends_on_round_bits() const;  // F, K or L
};

/// Forward substitution of the round's outputs into P.  P must only use state
/// bits.  In expanded mode `is_zero` is the attack verdict.
FeReport build_fe(const Polynomial& invariant, const RoundSystem& rs,
                  std::optional<std::size_t> budget = std::nullopt);

/// build_fe on a symbolic-mode round; the term budget is always enforced.
FeReport symbolic_fe(const Polynomial& invariant, const RoundSystem& rs,
                     std::size_t budget = kDefaultTermBudget);

/// Replaces Z00..Z63 by the ANF bits of f.
Polynomial specialize(const Polynomial& symbolic, const BoolFun6& f);

/// True when the symbolic FE vanishes for f.
bool check_candidate(const FeReport& symbolic, const BoolFun6& f);

// ------------------------------------------------------- linear extraction

/// FE = 0 read coefficient-wise as affine equations in Z00..Z63: one row per
/// monomial in the other variables; column 64 is the constant.
struct CoefficientSystem {
    std::vector<Monomial> row_monomials;
    gf2::BitMatrix rows;  // rows x 65
};

/// nullopt when some term holds two or more coefficient variables.
std::optional<CoefficientSystem> extract_linear_system(const Polynomial& symbolic_fe);

struct CoefficientSolution {
    std::uint64_t particular = 0;     // ANF bits of one solution
    std::vector<std::uint64_t> kernel;  // homogeneous solutions
};

std::optional<CoefficientSolution> solve(const CoefficientSystem& system);

// --------------------------------------------------------- empirical check

struct EmpiricalReport {
    std::uint64_t trials = 0;
    std::uint64_t mismatches = 0;
    std::optional<CipherState> first_mismatch;
};

/// Compares P(state) with P(step(state)) on random states and random F, K, L.
/// Trials use per-trial seeds, so the result does not depend on `threads`.
EmpiricalReport check_invariant_empirically(const Polynomial& invariant, const Wiring& w, const BoolFun6& f,
                                            std::uint64_t trials, std::uint64_t seed = 1, unsigned threads = 1);

/// splitmix64 finaliser, used to derive per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace invforge
