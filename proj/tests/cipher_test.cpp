#include <doctest.h>

#include <unordered_set>

#include "invforge/cipher.hpp"
#include "support.hpp"
#include "wirings.hpp"

using namespace invforge;

namespace {

Polynomial x(int i) { return VarId::state(i); }

Wiring with_d(int i, int value) {
    Wiring w = lzs_265_like();
    w.d[static_cast<std::size_t>(i - 1)] = value;
    return w;
}

}  // namespace

TEST_CASE("wiring files") {
    const Wiring w = parse_wiring("# comment\nD = 4,24,28,16,20,8,12,32,36\n"
                                  "P = 1,2,3,13,14,15,27,6,10,23,21,25,17,18,19,29,30,31,33,34,26,9,5,22,7,11,35\n");
    CHECK(w == lzs_265_like());
    CHECK(parse_wiring(format_wiring(w)) == w);
    CHECK(load_wiring(INVFORGE_DATA_DIR "/lzs-265-like.cfg") == w);

    CHECK_THROWS_AS((void)parse_wiring("D = 1,2\nP = 1"), WiringError);
    CHECK_THROWS_AS((void)parse_wiring("D = 40,24,28,16,20,8,12,32,36\n" + format_wiring(w).substr(format_wiring(w).find("P"))),
                    WiringError);
    CHECK_THROWS_AS((void)parse_wiring("D = 4,24,28,16,20,8,12,32,x\nP = 1"), WiringError);
    CHECK_THROWS_AS((void)parse_wiring("Q = 1\n"), WiringError);
    CHECK_THROWS_AS((void)load_wiring("/nonexistent/file.cfg"), WiringError);
}

TEST_CASE("validation") {
    const auto ok = validate(lzs_265_like());
    CHECK(ok.valid());
    CHECK(ok.warnings.empty());
    CHECK(ok.theorem_hypotheses_hold());
    CHECK(ok.hypotheses.size() == 4);

    const auto bad = validate(with_d(1, 40));
    CHECK_FALSE(bad.valid());
    CHECK(bad.errors.front().find("D(1)") != std::string::npos);

    // D(5)=36: input bit 36 feeds the wire that becomes output 17
    const Wiring w5 = with_d(5, 36);
    const auto r5 = validate(w5);
    CHECK(r5.valid());
    CHECK(r5.warnings.size() == 1);  // 36 now appears twice
    const RoundSystem rs = round_system(w5);
    CHECK(rs.output(17).contains(Monomial::of(VarId::state(36))));

    Wiring broken = lzs_265_like();
    broken.p[6] = 28;
    const auto r = validate(broken);
    CHECK(r.valid());
    CHECK_FALSE(r.theorem_hypotheses_hold());
    CHECK_FALSE(r.hypotheses[2].holds);
}

TEST_CASE("round system shape") {
    const Wiring w = lzs_265_like();
    const RoundSystem rs = round_system(w);
    CHECK(rs.output(33) == VarId::F() + x(w.D(9)));
    CHECK(rs.output(29) == VarId::F() + Polynomial(VarId::placeholder(1)) + x(w.D(8)));
    // y5 + y9 = x_D(3) + W + x_D(2)
    CHECK(rs.output(5) + rs.output(9) == x(w.D(3)) + VarId::placeholder(4) + x(w.D(2)));
    CHECK(rs.output(21) + rs.output(25) == x(w.D(6)) + VarId::placeholder(2) + x(w.D(7)));
    int nontrivial = 0;
    for (int j = 1; j <= 36; ++j) {
        if (RoundSystem::is_trivial_output(j)) {
            CHECK(rs.output(j) == x(j - 1));
        } else {
            ++nontrivial;
        }
    }
    CHECK(nontrivial == 9);

    const auto& z1 = rs.instance(1);
    CHECK(z1.placeholder == VarId::placeholder(1));
    CHECK(z1.args[0] == VarId::L());
    for (int k = 1; k <= 5; ++k) CHECK(z1.args[static_cast<std::size_t>(k)] == VarId::state(w.P(k)));
    for (int k = 0; k < 6; ++k) {
        CHECK(rs.instance(2).args[static_cast<std::size_t>(k)] == VarId::state(w.P(7 + k)));
        CHECK(rs.instance(3).args[static_cast<std::size_t>(k)] == VarId::state(w.P(14 + k)));
        CHECK(rs.instance(4).args[static_cast<std::size_t>(k)] == VarId::state(w.P(21 + k)));
    }

    // D(i) = 0 wires in the key bit K
    const RoundSystem rk = round_system(with_d(9, 0));
    CHECK(rk.output(33) == VarId::F() + Polynomial(VarId::K()));

    CHECK_THROWS_AS((void)round_system(w, RoundMode::Expanded), Error);
    CHECK_THROWS_AS((void)round_system(with_d(1, 37)), WiringError);
}

TEST_CASE("expanding placeholders commutes with building the expanded system") {
    std::mt19937_64 rng(41);
    for (int it = 0; it < 5; ++it) {
        const Wiring w = testing::random_wiring(rng);
        const BoolFun6 f = random_boolfun(rng());
        const RoundSystem a = expand(round_system(w), f);
        const RoundSystem b = round_system(w, RoundMode::Expanded, f);
        for (int j = 1; j <= 36; ++j) CHECK(a.output(j) == b.output(j));
        const RoundSystem s = round_system(w, RoundMode::Symbolic);
        CHECK(s.mode() == RoundMode::Symbolic);
        CHECK_THROWS_AS((void)expand(s, f), Error);
    }
}

TEST_CASE("step agrees with evaluating the round polynomials") {
    std::mt19937_64 rng(42);
    for (int it = 0; it < 5; ++it) {
        const Wiring w = it == 0 ? lzs_265_like() : testing::random_wiring(rng);
        const BoolFun6 f = random_boolfun(rng());
        const RoundSystem rs = round_system(w, RoundMode::Expanded, f);
        for (int t = 0; t < 2000; ++t) {
            const CipherState s(rng());
            const RoundBits bits{(rng() & 1U) != 0, (rng() & 1U) != 0, (rng() & 1U) != 0};
            const CipherState a = step(s, w, f, bits);
            REQUIRE(a == evaluate(rs, s, bits));
            // and with the checked evaluator on one output
            CHECK(evaluate(rs.output(1), assignment(s, bits)) == a.bit(1));
        }
    }
    const Wiring w = lzs_265_like();
    const BoolFun6 zero = BoolFun6::from_truth_table(0);
    CHECK(step(CipherState(0), w, zero, {}) == CipherState(0));
    CHECK_THROWS_AS((void)evaluate(round_system(w), CipherState(0), {}), Error);
}

TEST_CASE("rounds with D a permutation of the multiples of 4 are bijective") {
    std::mt19937_64 rng(43);
    for (int it = 0; it < 3; ++it) {
        const Wiring w = it == 0 ? lzs_265_like() : testing::random_permutation_wiring(rng);
        const BoolFun6 f = random_boolfun(rng());
        const RoundBits bits{(rng() & 1U) != 0, (rng() & 1U) != 0, (rng() & 1U) != 0};
        std::unordered_set<std::uint64_t> seen_in;
        std::unordered_set<std::uint64_t> seen_out;
        for (int t = 0; t < 100000; ++t) {
            const CipherState s(rng());
            if (!seen_in.insert(s.bits()).second) continue;
            CHECK(seen_out.insert(step(s, w, f, bits).bits()).second);
        }
    }
}

TEST_CASE("distinct D values alone do not make the round invertible") {
    // D avoids bit 4, so x4 is never read; states differing only there collide
    Wiring w = lzs_265_like();
    w.d = {1, 24, 28, 16, 20, 8, 12, 32, 36};
    CHECK(validate(w).warnings.empty());
    const BoolFun6 f = random_boolfun(7);
    CipherState a(0x123456789ULL);
    CipherState b = a;
    b.set(4, !a.bit(4));
    bool used = false;
    for (int p : w.p) used = used || p == 4;
    REQUIRE_FALSE(used);
    CHECK(step(a, w, f, {}) == step(b, w, f, {}));
}

TEST_CASE("state hex form") {
    const CipherState s(0x800000001ULL);
    CHECK(s.bit(36));
    CHECK(s.bit(1));
    CHECK(s.to_hex() == "800000001");
    CHECK(CipherState::from_hex("800000001") == s);
    CHECK(CipherState::from_hex("0x800000001") == s);
    CHECK_THROWS_AS((void)CipherState::from_hex("1000000000"), Error);
    CHECK_THROWS_AS((void)CipherState::from_hex("xyz"), Error);
}
