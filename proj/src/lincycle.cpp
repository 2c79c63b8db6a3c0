#include "invforge/lincycle.hpp"

#include <array>
#include <bit>
#include <stdexcept>

namespace invforge {

gf2::BitVec to_bitvec(const CipherState& s) { return gf2::BitVec::from_word(s.bits(), 36); }
CipherState to_state(const gf2::BitVec& v) { return CipherState(v.word()); }

CipherState AffineRound::apply(const CipherState& s, RoundBits bits) const {
    gf2::BitVec y = matrix.apply(to_bitvec(s));
    if (bits.F) y ^= offset_F;
    if (bits.K) y ^= offset_K;
    if (bits.L) y ^= offset_L;
    return to_state(y);
}

AffineRound AffineRound::from_permutation(const std::vector<int>& perm) {
    if (perm.size() != 36) throw Error("permutation must have 36 entries");
    std::vector<bool> seen(37, false);
    AffineRound ar;
    for (int i = 1; i <= 36; ++i) {
        const int j = perm[static_cast<std::size_t>(i - 1)];
        if (j < 1 || j > 36 || seen[static_cast<std::size_t>(j)]) throw Error("not a permutation of 1..36");
        seen[static_cast<std::size_t>(j)] = true;
        ar.matrix.set(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1));
    }
    return ar;
}

AffineRound affine_of(const Wiring& w) {
    const RoundSystem rs = round_system(w, RoundMode::Expanded, BoolFun6::from_truth_table(0));
    AffineRound ar;
    for (int j = 1; j <= 36; ++j) {
        const auto r = static_cast<std::size_t>(j - 1);
        for (const Monomial& t : rs.output(j).terms()) {
            if (t.degree() != 1) throw std::logic_error("round with Z = 0 is not linear");
            const VarId v = t.first_var();
            if (v.is_state()) {
                ar.matrix.set(r, static_cast<std::size_t>(v.state_bit() - 1));
            } else if (v == VarId::F()) {
                ar.offset_F.set(r);
            } else if (v == VarId::K()) {
                ar.offset_K.set(r);
            } else if (v == VarId::L()) {
                ar.offset_L.set(r);
            } else {
                throw std::logic_error("unexpected variable in round with Z = 0");
            }
        }
    }
    return ar;
}

std::vector<PeriodClass> linear_invariant_periods(const AffineRound& ar, std::size_t max_period) {
    if (max_period < 1) throw Error("max_period must be at least 1");
    if (max_period > kMaxPeriodLimit) {
        throw Error("max_period " + std::to_string(max_period) + " exceeds the limit " + std::to_string(kMaxPeriodLimit));
    }
    const gf2::BitMatrix mt = ar.matrix.transpose();
    const gf2::BitMatrix id = gf2::BitMatrix::identity(36);

    // Offsets seen through j rounds: u . M^j o must vanish for j < k.
    gf2::EchelonBasis constraints(36);
    std::array<gf2::BitVec, 3> pushed{ar.offset_F, ar.offset_K, ar.offset_L};

    gf2::BitMatrix mt_k = id;
    std::vector<PeriodClass> out;
    std::vector<gf2::EchelonBasis> spaces;  // V_k for k = 1..max_period, index k-1
    spaces.reserve(max_period);
    for (std::size_t k = 1; k <= max_period; ++k) {
        for (auto& o : pushed) {
            constraints.insert(o);
            o = ar.matrix.apply(o);
        }
        mt_k = mt * mt_k;
        // V_k = ker((M^T)^k + I) intersected with the constraint annihilator.
        gf2::EchelonBasis rows = constraints;
        const gf2::BitMatrix fix = mt_k + id;
        for (std::size_t r = 0; r < 36; ++r) rows.insert(fix.row(r));
        gf2::EchelonBasis vk(36);
        for (const auto& v : gf2::nullspace(rows)) vk.insert(v);

        gf2::EchelonBasis lower(36);
        for (std::size_t d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            for (const auto& v : spaces[d - 1].reduced()) lower.insert(v);
        }
        PeriodClass pc;
        pc.period = k;
        pc.total_dimension = vk.rank();
        for (const auto& v : vk.reduced()) {
            if (lower.insert(v)) pc.basis.push_back(v);
        }
        if (!pc.basis.empty()) out.push_back(std::move(pc));
        spaces.push_back(std::move(vk));
    }
    return out;
}

std::vector<gf2::BitVec> orbit(const AffineRound& ar, const gf2::BitVec& u, std::size_t limit) {
    const gf2::BitMatrix mt = ar.matrix.transpose();
    std::vector<gf2::BitVec> out{u};
    gf2::BitVec v = mt.apply(u);
    while (!(v == u) && out.size() < limit) {
        out.push_back(v);
        v = mt.apply(v);
    }
    return out;
}

std::uint64_t lowercase26_mask() { return ((std::uint64_t{1} << 26) - 1) << 10; }

std::vector<int> weight_sequence(const std::vector<gf2::BitVec>& orb, std::uint64_t mask) {
    std::vector<int> out;
    out.reserve(orb.size());
    for (const auto& v : orb) out.push_back(std::popcount(v.word() & mask));
    return out;
}

std::size_t functional_period(const AffineRound& ar, const gf2::BitVec& u, std::size_t limit) {
    const gf2::BitMatrix mt = ar.matrix.transpose();
    gf2::BitVec v = u;
    for (std::size_t n = 1; n <= limit; ++n) {
        // v = (M^T)^(n-1) u must not see any offset.
        if (v.dot(ar.offset_F) || v.dot(ar.offset_K) || v.dot(ar.offset_L)) return 0;
        v = mt.apply(v);
        if (v == u) return n;
    }
    return 0;
}

}  // namespace invforge
