#pragma once

// With the round function set to zero a round is affine on the 36 state bits.
// Periodic linear functionals of that map, their orbits and weight sequences.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "invforge/cipher.hpp"
#include "invforge/gf2.hpp"

namespace invforge {

/// y = M x + F*offset_F + K*offset_K + L*offset_L; bit i-1 of a vector is x_i.
struct AffineRound {
    gf2::BitMatrix matrix{36, 36};
    gf2::BitVec offset_F{36};
    gf2::BitVec offset_K{36};
    gf2::BitVec offset_L{36};

    CipherState apply(const CipherState& s, RoundBits bits) const;

    /// Bit permutation y_{perm[i-1]} = x_i (perm is 1-based, length 36), no offsets.
    static AffineRound from_permutation(const std::vector<int>& perm);
};

/// Linear part and offsets of the round with Z = 0.
AffineRound affine_of(const Wiring& w);

gf2::BitVec to_bitvec(const CipherState& s);
CipherState to_state(const gf2::BitVec& v);

constexpr std::size_t kMaxPeriodLimit = 1U << 16;

struct PeriodClass {
    std::size_t period = 0;
    /// Functionals whose minimal period is exactly `period`; together with the
    /// classes of the proper divisors they span all functionals of that period.
    std::vector<gf2::BitVec> basis;
    /// dim of all functionals u with (M^T)^period u = u that ignore F, K, L.
    std::size_t total_dimension = 0;
};

/// Functionals u with (M^T)^k u = u and u . M^j o = 0 for j < k and every
/// offset o, for k = 1..max_period; one entry per minimal period found.
std::vector<PeriodClass> linear_invariant_periods(const AffineRound& ar, std::size_t max_period);

/// u, M^T u, (M^T)^2 u, ... until u recurs or `limit` entries.
std::vector<gf2::BitVec> orbit(const AffineRound& ar, const gf2::BitVec& u, std::size_t limit = kMaxPeriodLimit);

/// Bits x11..x36, the lowercase letters.
std::uint64_t lowercase26_mask();
std::vector<int> weight_sequence(const std::vector<gf2::BitVec>& orbit, std::uint64_t mask = lowercase26_mask());

/// Minimal n >= 1 with (M^T)^n u = u and the offsets invisible for n rounds;
/// 0 when none up to `limit`.
std::size_t functional_period(const AffineRound& ar, const gf2::BitVec& u, std::size_t limit = kMaxPeriodLimit);

}  // namespace invforge
