#include <doctest.h>

#include <set>

#include "invforge/anf.hpp"
#include "support.hpp"

using namespace invforge;
using testing::letters;
using testing::naive_eval;
using testing::random_poly;

TEST_CASE("variable names follow the backwards numbering") {
    CHECK(name(VarId::state(36)) == "a");
    CHECK(name(VarId::state(35)) == "b");
    CHECK(name(VarId::state(11)) == "z");
    CHECK(name(VarId::state(10)) == "M");
    CHECK(name(VarId::state(9)) == "N");
    CHECK(name(VarId::state(1)) == "V");
    CHECK(name(VarId::F()) == "F");
    CHECK(name(VarId::K()) == "K");
    CHECK(name(VarId::L()) == "L");
    CHECK(name(VarId::placeholder(1)) == "Z");
    CHECK(name(VarId::placeholder(2)) == "Y");
    CHECK(name(VarId::placeholder(3)) == "X");
    CHECK(name(VarId::placeholder(4)) == "W");
    CHECK(name(VarId::coefficient(0)) == "Z00");
    CHECK(name(VarId::coefficient(63)) == "Z63");
    CHECK(var_from_name("Z2") == VarId::placeholder(2));

    std::set<std::string> seen;
    for (int i = 0; i < VarId::kUniverse; ++i) {
        const VarId v = VarId::from_index(i);
        const std::string n = name(v);
        CHECK(seen.insert(n).second);
        REQUIRE(var_from_name(n).has_value());
        CHECK(*var_from_name(n) == v);
    }
    CHECK(var_from_name("x") == VarId::state(13));
    CHECK_FALSE(var_from_name("Z64").has_value());
    CHECK_FALSE(var_from_name("G").has_value());
}

TEST_CASE("partition classes") {
    int counts[5] = {0, 0, 0, 0, 0};
    for (int i = 0; i < VarId::kUniverse; ++i) ++counts[static_cast<int>(VarId::from_index(i).kind())];
    CHECK(counts[static_cast<int>(VarClass::State)] == 36);
    CHECK(counts[static_cast<int>(VarClass::Public)] == 1);
    CHECK(counts[static_cast<int>(VarClass::Key)] == 2);
    CHECK(counts[static_cast<int>(VarClass::Placeholder)] == 4);
    CHECK(counts[static_cast<int>(VarClass::Coefficient)] == 64);
}

TEST_CASE("addition and multiplication examples") {
    CHECK(parse("a+b") + parse("b+c") == parse("a+c"));
    const Polynomial p = parse("ab+c+1");
    CHECK((p + p).is_zero());
    CHECK(Polynomial::zero() + p == p);
    CHECK(parse("a+b") * parse("a+b") == parse("a+b"));
    CHECK(parse("a") * parse("a") == parse("a"));
    CHECK(parse("a+1") * parse("a") == Polynomial::zero());
    CHECK(degree(Polynomial::zero()) == -1);
    CHECK(degree(Polynomial::one()) == 0);
    CHECK(degree(parse("abc+d")) == 3);
}

TEST_CASE("ring laws on random polynomials") {
    std::mt19937_64 rng(11);
    const auto vars = letters(8);
    for (int it = 0; it < 300; ++it) {
        const Polynomial p = random_poly(rng, vars, 50);
        const Polynomial q = random_poly(rng, vars, 50);
        const Polynomial r = random_poly(rng, vars, 50);
        CHECK(p + q == q + p);
        CHECK(p * q == q * p);
        CHECK((p + q) + r == p + (q + r));
        CHECK((p * q) * r == p * (q * r));
        CHECK(p * (q + r) == p * q + p * r);
        CHECK((p + p).is_zero());
        CHECK(p * p == p);
        if (!p.is_zero() && !q.is_zero() && !(p * q).is_zero()) CHECK(degree(p * q) <= degree(p) + degree(q));
    }
}

TEST_CASE("products agree with pointwise evaluation") {
    std::mt19937_64 rng(12);
    const auto vars = letters(8);
    for (int it = 0; it < 200; ++it) {
        const Polynomial p = random_poly(rng, vars, 30);
        const Polynomial q = random_poly(rng, vars, 30);
        const Polynomial pq = p * q;
        const Polynomial s = p + q;
        for (std::uint64_t x = 0; x < 256; x += 7) {
            CHECK(naive_eval(pq, vars, x) == (naive_eval(p, vars, x) && naive_eval(q, vars, x)));
            CHECK(naive_eval(s, vars, x) == (naive_eval(p, vars, x) != naive_eval(q, vars, x)));
        }
    }
}

TEST_CASE("evaluate") {
    Assignment a;
    a.set(*var_from_name("a"), true).set(*var_from_name("b"), true).set(*var_from_name("c"), true);
    CHECK_FALSE(evaluate(parse("ab+c"), a));
    CHECK(evaluate(Polynomial::one(), Assignment{}));

    Assignment bd;
    for (int i = 0; i < 36; ++i) bd.set(VarId::state(i + 1), false);
    bd.set(*var_from_name("b"), true).set(*var_from_name("d"), true);
    CHECK(evaluate(parse("bd"), bd));

    Assignment partial;
    partial.set(*var_from_name("a"), true);
    try {
        (void)evaluate(parse("ab+cF"), partial);
        FAIL("expected UnassignedVariable");
    } catch (const UnassignedVariable& e) {
        const std::vector<VarId> want{*var_from_name("b"), *var_from_name("c"), VarId::F()};
        CHECK(e.missing() == want);
    }
}

TEST_CASE("evaluate is a ring homomorphism") {
    std::mt19937_64 rng(13);
    const auto vars = letters(8);
    for (int it = 0; it < 1000; ++it) {
        const Polynomial p = random_poly(rng, vars, 20);
        const Polynomial q = random_poly(rng, vars, 20);
        Assignment a;
        for (VarId v : vars) a.set(v, rng() & 1U);
        CHECK(evaluate(p * q, a) == (evaluate(p, a) && evaluate(q, a)));
        CHECK(evaluate(p + q, a) == (evaluate(p, a) != evaluate(q, a)));
    }
}

TEST_CASE("substitution examples") {
    const VarId a = *var_from_name("a");
    const VarId b = *var_from_name("b");
    const VarId d = *var_from_name("d");
    Substitution s;
    s.set(a, parse("b")).set(b, parse("c"));
    CHECK(substitute(parse("ab"), s) == parse("bc"));

    Substitution t;
    t.set(d, parse("F+i"));
    CHECK(substitute(parse("d"), t) == parse("F+i"));

    Substitution u;
    u.set(a, parse("b+1")).set(b, parse("a+1"));
    CHECK(substitute(parse("a+b"), u) == parse("a+b"));

    CHECK(substitute(parse("abc+d+1"), Substitution{}) == parse("abc+d+1"));

    Substitution swap;
    swap.set(a, parse("b")).set(b, parse("a"));
    std::mt19937_64 rng(14);
    for (int it = 0; it < 100; ++it) {
        const Polynomial p = random_poly(rng, letters(6), 20);
        CHECK(substitute(substitute(p, swap), swap) == p);
    }
}

TEST_CASE("substitution agrees with evaluating the images") {
    std::mt19937_64 rng(15);
    const auto vars = letters(7);
    for (int it = 0; it < 200; ++it) {
        const Polynomial p = random_poly(rng, vars, 25);
        Substitution s;
        std::vector<Polynomial> images(vars.size());
        for (std::size_t i = 0; i < vars.size(); ++i) {
            images[i] = (rng() % 3 == 0) ? Polynomial(vars[i]) : random_poly(rng, vars, 4);
            s.set(vars[i], images[i]);
        }
        const Polynomial r = substitute(p, s);
        for (std::uint64_t x = 0; x < 128; x += 3) {
            std::uint64_t y = 0;
            for (std::size_t i = 0; i < vars.size(); ++i) y |= std::uint64_t{naive_eval(images[i], vars, x)} << i;
            CHECK(naive_eval(r, vars, x) == naive_eval(p, vars, y));
        }
    }
}

TEST_CASE("substitution budget") {
    Substitution s;
    for (int i = 1; i <= 12; ++i) s.set(VarId::state(i), parse("a+b+c+d"));
    CHECK_THROWS_AS((void)substitute(parse("MNOPQRSTUV"), s, std::size_t{3}), BudgetExceeded);
    CHECK_NOTHROW((void)substitute(parse("MN"), s, std::size_t{100}));
}

TEST_CASE("parse and render") {
    const Polynomial p = parse("abcdijkl+efg+efh+egh+fgh");
    REQUIRE(p.size() == 5);
    std::multiset<int> degs;
    for (const Monomial& m : p.terms()) degs.insert(m.degree());
    CHECK(degs == std::multiset<int>{8, 3, 3, 3, 3});

    const Polynomial q = parse("a+b+c+ac+d+bd+e+ce+f+df+g+ag+eg+h+bh+fh");
    CHECK(q.size() == 16);
    CHECK(parse("1") == Polynomial::one());
    CHECK(parse("0").is_zero());
    CHECK(render(Polynomial::zero()) == "0");
    CHECK(render(parse("b+a+ab")) == "ab+a+b");
    CHECK(parse("Z62*jhfpd") == Polynomial(VarId::coefficient(62)) * parse("jhfpd"));
    CHECK(parse("Z01*L") == parse("L * Z01"));
    CHECK(parse(" a b + c ") == parse("ab+c"));
    CHECK(parse("(a+1)(b+1)") == parse("ab+a+b+1"));
    CHECK(parse("FKL") == Polynomial(VarId::F()) * Polynomial(VarId::K()) * Polynomial(VarId::L()));
    CHECK(render(parse("Z62*jhfpd+Z00")) == "Z62*dfhjp+Z00");

    CHECK_THROWS_AS((void)parse("Z62jhfpd"), ParseError);
    CHECK_THROWS_AS((void)parse("a++b"), ParseError);
    CHECK_THROWS_AS((void)parse("a+G"), ParseError);
    CHECK_THROWS_AS((void)parse("(a+b"), ParseError);
    try {
        (void)parse("ab+c#");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
    CHECK(parse_file_text("# comment\nab + c # tail\n") == parse("ab+c"));
}

TEST_CASE("parse inverts render") {
    std::mt19937_64 rng(16);
    std::vector<VarId> vars = letters(10);
    vars.push_back(VarId::F());
    vars.push_back(VarId::L());
    vars.push_back(VarId::placeholder(4));
    vars.push_back(VarId::coefficient(7));
    vars.push_back(VarId::coefficient(63));
    vars.push_back(VarId::state(3));
    for (int it = 0; it < 500; ++it) {
        const Polynomial p = random_poly(rng, vars, 30);
        CHECK(parse(render(p)) == p);
    }
    // The forms alphabet reads A..H as the first eight slots.
    const Polynomial f = parse("(A+B)(G+H)+YW", Alphabet::Forms);
    CHECK(render(f, Alphabet::Forms) == "AG+AH+BG+BH+YW");
    CHECK(parse(render(f, Alphabet::Forms), Alphabet::Forms) == f);
    CHECK_THROWS_AS((void)parse("a", Alphabet::Forms), ParseError);
}

TEST_CASE("factor_out") {
    CHECK(factor_out(parse("ab+b"), parse("a+1")) == parse("b"));
    CHECK_THROWS_AS((void)factor_out(parse("a"), parse("b")), NotAFactor);
    CHECK_THROWS_AS((void)factor_out(parse("a"), parse("ab")), Error);

    const Polynomial mu = parse("(P+z+Q+M)(Q+M+R+N)(o+k+p+l)(n+j+o+k)(p+l+P+z)");
    const Polynomial ell = parse("o+k+R+N+1");  // C+H+1
    const Polynomial q = factor_out(mu, ell);
    CHECK(ell * q == mu);
    // pivot is the lowest variable of the factor, here k
    CHECK_FALSE(support_mask(q).contains(*var_from_name("k")));

    std::mt19937_64 rng(17);
    const auto vars = letters(7);
    int checked = 0;
    for (int it = 0; it < 400; ++it) {
        Polynomial ell2 = Polynomial::constant(rng() & 1U);
        for (VarId v : vars) {
            if (rng() & 1U) ell2 += Polynomial(v);
        }
        if (degree(ell2) != 1) continue;
        const Polynomial p = ell2 * random_poly(rng, vars, 10);
        if (p.is_zero()) continue;
        CHECK(ell2 * factor_out(p, ell2) == p);
        ++checked;
    }
    CHECK(checked > 50);
}
