#include <doctest.h>

#include "invforge/fe.hpp"
#include "invforge/lab.hpp"
#include "support.hpp"
#include "wirings.hpp"

using namespace invforge;

TEST_CASE("a single bit is not invariant") {
    const Wiring w = lzs_265_like();
    const BoolFun6 f = published_function();
    const FeReport r = build_fe(Polynomial(VarId::state(1)), round_system(w, RoundMode::Expanded, f));
    CHECK_FALSE(r.is_zero);
    CHECK(r.fe.size() > 1);
    const auto emp = check_invariant_empirically(Polynomial(VarId::state(1)), w, f, 1000);
    CHECK(emp.mismatches > 0);
    REQUIRE(emp.first_mismatch.has_value());
    CHECK_THROWS_AS((void)build_fe(Polynomial(VarId::F()), round_system(w)), Error);
}

TEST_CASE("the degree-7 product is invariant for the published function") {
    const Wiring w = lzs_265_like();
    const FeReport r = build_fe(theorem_invariant(), round_system(w, RoundMode::Expanded, published_function()));
    CHECK(r.is_zero);
    CHECK(r.depends_on.empty());
    CHECK_FALSE(r.depends_on_round_bits());
    CHECK(r.mode == RoundMode::Expanded);
    const auto emp = check_invariant_empirically(theorem_invariant(), w, published_function(), 100000, 9, 4);
    CHECK(emp.mismatches == 0);
}

TEST_CASE("setup-827 polynomial is not invariant for the 265-like wiring") {
    const Polynomial p = parse_file_text("a+b+c+ac+d+bd+e+ce+f+df+g+ag+eg+h+bh+fh");
    const FeReport r = build_fe(p, round_system(lzs_265_like(), RoundMode::Expanded, published_function()));
    CHECK_FALSE(r.is_zero);
}

TEST_CASE("report lists non-state dependence") {
    const FeReport r = build_fe(Polynomial(VarId::state(33)), round_system(lzs_265_like()));
    // y33 = F + x_D(9)
    CHECK(r.depends_on == std::vector<VarId>{VarId::F()});
    CHECK(r.depends_on_round_bits());
    const FeReport p = build_fe(Polynomial(VarId::state(29)), round_system(lzs_265_like()));
    CHECK(p.depends_on == std::vector<VarId>{VarId::F(), VarId::placeholder(1)});
}

TEST_CASE("empirical check is thread-count independent") {
    const Wiring w = lzs_265_like();
    const Polynomial p = parse("ab+cM+N");
    const BoolFun6 f = random_boolfun(3);
    const auto one = check_invariant_empirically(p, w, f, 5000, 17, 1);
    const auto many = check_invariant_empirically(p, w, f, 5000, 17, 7);
    CHECK(one.mismatches == many.mismatches);
    CHECK(one.first_mismatch == many.first_mismatch);
    CHECK_THROWS_AS((void)check_invariant_empirically(p, w, f, 0), Error);
}

TEST_CASE("constants are trivially invariant") {
    const auto emp = check_invariant_empirically(Polynomial::one(), lzs_265_like(), random_boolfun(4), 1000);
    CHECK(emp.mismatches == 0);
    CHECK(build_fe(Polynomial::one(), round_system(lzs_265_like())).is_zero);
}

TEST_CASE("degree-1 P on shifted bits has a coefficient-free symbolic FE") {
    const FeReport r = symbolic_fe(parse("a+b"), round_system(lzs_265_like(), RoundMode::Symbolic));
    CHECK(r.fe == parse("a+c"));
    for (VarId v : r.depends_on) CHECK(v.kind() != VarClass::Coefficient);
    CHECK_THROWS_AS((void)symbolic_fe(parse("a+b"), round_system(lzs_265_like())), Error);
}

TEST_CASE("symbolic and expanded modes agree") {
    std::mt19937_64 rng(51);
    auto bit = [&] { return Polynomial(VarId::state(1 + static_cast<int>(rng() % 36))); };
    for (int it = 0; it < 6; ++it) {
        const Wiring w = testing::random_wiring(rng);
        const Polynomial p = bit() * bit() + bit();
        const FeReport sym = symbolic_fe(p, round_system(w, RoundMode::Symbolic));
        for (int k = 0; k < 4; ++k) {
            const BoolFun6 f = random_boolfun(rng());
            const FeReport ex = build_fe(p, round_system(w, RoundMode::Expanded, f));
            CHECK(specialize(sym.fe, f) == ex.fe);
            CHECK(check_candidate(sym, f) == ex.is_zero);
        }
    }
}

TEST_CASE("symbolic FE of the degree-7 product") {
    const FeReport sym = symbolic_fe(theorem_invariant(), round_system(lzs_265_like(), RoundMode::Symbolic));
    const BoolFun6 f = published_function();
    CHECK(check_candidate(sym, f));
    CHECK_FALSE(check_candidate(sym, random_boolfun(1)));
    // the YW product makes the system quadratic in the coefficients
    CHECK_FALSE(extract_linear_system(sym.fe).has_value());
    CHECK_THROWS_AS((void)symbolic_fe(theorem_invariant(), round_system(lzs_265_like(), RoundMode::Symbolic), 1000),
                    BudgetExceeded);
}

TEST_CASE("coefficient-wise linear systems") {
    const Wiring w = lzs_265_like();
    // P = 0: every function works
    const auto all = extract_linear_system(symbolic_fe(Polynomial::zero(), round_system(w, RoundMode::Symbolic)).fe);
    REQUIRE(all.has_value());
    const auto sol_all = solve(*all);
    REQUIRE(sol_all.has_value());
    CHECK(sol_all->kernel.size() == 64);

    // P = x2: FE = x2 + x1 has no coefficient at all and cannot vanish
    const auto none = extract_linear_system(symbolic_fe(parse("U"), round_system(w, RoundMode::Symbolic)).fe);
    REQUIRE(none.has_value());
    CHECK_FALSE(solve(*none).has_value());

    // P = x29 + x33: FE = Z1 + x_D(8) + x_D(9) + x29 + x33 is linear in the coefficients;
    // it has no solution since x-terms without coefficients remain.
    const auto lin = extract_linear_system(symbolic_fe(parse("d+h"), round_system(w, RoundMode::Symbolic)).fe);
    REQUIRE(lin.has_value());
    CHECK(lin->rows.cols() == 65);
    CHECK_FALSE(solve(*lin).has_value());
}

TEST_CASE("solutions of a solvable linear system make the FE vanish") {
    // Z(L, x_P(1..5)) = 0 identically forces every coefficient to 0.
    const Wiring w = lzs_265_like();
    const RoundSystem rs = round_system(w, RoundMode::Symbolic);
    const Polynomial fe = symbolic_instance(rs.instance(1).args);
    const auto sys = extract_linear_system(fe);
    REQUIRE(sys.has_value());
    const auto sol = solve(*sys);
    REQUIRE(sol.has_value());
    CHECK(sol->particular == 0);
    CHECK(sol->kernel.empty());
    CHECK(specialize(fe, BoolFun6::from_anf(sol->particular)).is_zero());
}
