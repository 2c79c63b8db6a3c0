#include "invforge/fe.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <thread>

namespace invforge {

bool FeReport::depends_on_round_bits() const {
    return std::any_of(depends_on.begin(), depends_on.end(), [](VarId v) {
        return v.kind() == VarClass::Public || v.kind() == VarClass::Key;
    });
}

FeReport build_fe(const Polynomial& invariant, const RoundSystem& rs, std::optional<std::size_t> budget) {
    for (VarId v : support(invariant)) {
        if (!v.is_state()) throw Error("invariant uses non-state variable '" + name(v) + "'");
    }
    FeReport r;
    r.mode = rs.mode();
    r.fe = invariant + substitute(invariant, rs.as_substitution(), budget);
    r.is_zero = r.fe.is_zero();
    for (VarId v : support(r.fe)) {
        if (!v.is_state()) r.depends_on.push_back(v);
    }
    return r;
}

FeReport symbolic_fe(const Polynomial& invariant, const RoundSystem& rs, std::size_t budget) {
    if (rs.mode() != RoundMode::Symbolic) throw Error("symbolic_fe needs a symbolic round system");
    return build_fe(invariant, rs, budget);
}

Polynomial specialize(const Polynomial& symbolic, const BoolFun6& f) {
    Substitution s;
    const std::uint64_t anf = f.anf();
    for (int k = 0; k < 64; ++k) s.set(VarId::coefficient(k), Polynomial::constant((anf >> k) & 1U));
    return substitute(symbolic, s);
}

bool check_candidate(const FeReport& symbolic, const BoolFun6& f) { return specialize(symbolic.fe, f).is_zero(); }

// ------------------------------------------------------- linear extraction

namespace {
Monomial coefficient_mask() {
    Monomial m;
    for (int k = 0; k < 64; ++k) m = m * Monomial::of(VarId::coefficient(k));
    return m;
}
}  // namespace

std::optional<CoefficientSystem> extract_linear_system(const Polynomial& symbolic_fe) {
    const Monomial coeffs = coefficient_mask();
    std::map<std::array<std::uint64_t, 2>, gf2::BitVec> by_monomial;
    std::vector<Monomial> order;
    for (const Monomial& t : symbolic_fe.terms()) {
        const Monomial c = t & coeffs;
        if (c.degree() > 1) return std::nullopt;
        const Monomial rest = t.without(coeffs);
        auto [it, inserted] = by_monomial.try_emplace(rest.words(), gf2::BitVec(65));
        if (inserted) order.push_back(rest);
        it->second.flip(c.is_one() ? 64 : static_cast<std::size_t>(c.first_var().coefficient_index()));
    }
    std::sort(order.begin(), order.end(), term_less);
    CoefficientSystem sys;
    sys.rows = gf2::BitMatrix(order.size(), 65);
    for (std::size_t i = 0; i < order.size(); ++i) sys.rows.row(i) = by_monomial.at(order[i].words());
    sys.row_monomials = std::move(order);
    return sys;
}

std::optional<CoefficientSolution> solve(const CoefficientSystem& system) {
    // Row: sum_k a_k Z_k + c = 0, i.e. A z = c.
    const std::size_t m = system.rows.rows();
    gf2::BitMatrix a(m, 64);
    gf2::BitVec c(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t k = 0; k < 64; ++k) a.set(r, k, system.rows.get(r, k));
        c.set(r, system.rows.get(r, 64));
    }
    const auto x = gf2::solve(a, c);
    if (!x) return std::nullopt;
    CoefficientSolution sol;
    sol.particular = x->word();
    for (const auto& v : gf2::nullspace(a)) sol.kernel.push_back(v.word());
    return sol;
}

// --------------------------------------------------------- empirical check

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

EmpiricalReport check_invariant_empirically(const Polynomial& invariant, const Wiring& w, const BoolFun6& f,
                                            std::uint64_t trials, std::uint64_t seed, unsigned threads) {
    if (trials == 0) throw Error("trials must be at least 1");
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 64))));

    struct Partial {
        std::uint64_t mismatches = 0;
        std::optional<std::uint64_t> first_index;
        std::optional<CipherState> first_state;
    };
    std::vector<Partial> partial(threads);
    auto worker = [&](unsigned id) {
        Partial& out = partial[id];
        for (std::uint64_t i = id; i < trials; i += threads) {
            const std::uint64_t r = mix_seed(seed, i);
            const CipherState s(r);
            const RoundBits bits{((r >> 36) & 1U) != 0, ((r >> 37) & 1U) != 0, ((r >> 38) & 1U) != 0};
            const bool before = evaluate_unchecked(invariant, ones_mask(s));
            const bool after = evaluate_unchecked(invariant, ones_mask(step(s, w, f, bits)));
            if (before != after) {
                if (out.mismatches++ == 0) {
                    out.first_index = i;
                    out.first_state = s;
                }
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    EmpiricalReport rep;
    rep.trials = trials;
    std::optional<std::uint64_t> first;
    for (const auto& p : partial) {
        rep.mismatches += p.mismatches;
        if (p.first_index && (!first || *p.first_index < *first)) {
            first = p.first_index;
            rep.first_mismatch = p.first_state;
        }
    }
    return rep;
}

}  // namespace invforge
