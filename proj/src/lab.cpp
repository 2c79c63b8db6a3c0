#include "invforge/lab.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <thread>

namespace invforge {

// -------------------------------------------------------------- the forms

Polynomial LinearFormBank::state(Form f) {
    const auto& b = kBits[static_cast<std::size_t>(f)];
    return Polynomial(VarId::state(b[0])) + Polynomial(VarId::state(b[1]));
}

Polynomial LinearFormBank::abstract(Form f) { return Polynomial(VarId::from_index(static_cast<int>(f))); }

Polynomial LinearFormBank::to_state(const Polynomial& abstract_poly) {
    Substitution s;
    for (int k = 0; k < 8; ++k) s.set(VarId::from_index(k), state(static_cast<Form>(k)));
    return substitute(abstract_poly, s);
}

std::optional<std::string> LinearFormBank::describe(const Polynomial& affine) {
    if (degree(affine) > 1) return std::nullopt;
    Polynomial rest = affine;
    std::string out;
    for (int k = 0; k < 8; ++k) {
        const auto& b = kBits[static_cast<std::size_t>(k)];
        const bool first = rest.contains(Monomial::of(VarId::state(b[0])));
        const bool second = rest.contains(Monomial::of(VarId::state(b[1])));
        if (first != second) return std::nullopt;
        if (first) {
            rest += state(static_cast<Form>(k));
            if (!out.empty()) out += '+';
            out += static_cast<char>('A' + k);
        }
    }
    if (!rest.is_constant()) return std::nullopt;
    if (rest.is_one()) out += out.empty() ? "1" : "+1";
    if (out.empty()) out = "0";
    return out;
}

Polynomial theorem_invariant() { return LinearFormBank::to_state(forms("(A+B)(C+D)(D+F)(B+F)(E+F)(G+F)(G+H)")); }

Polynomial appendix_invariant() {
    return LinearFormBank::to_state(forms("(1+A+H)(B+H)(1+C+H)(D+H)(E+H)(1+F+H)(G+H)"));
}

BoolFun6 published_function() {
    return parse_anf(
        "b+ac+bc+abc+bd+abd+bcd+abcd+e+ce+ace+bde+af+bf+abf+bcf+df+cdf+abcdf+ef+bef+cef+acef+bcef+bcdef+abcdef+1");
}

namespace fixtures {
Polynomial mu() { return forms("(F+G)(G+H)(C+D)(B+C)(D+F)"); }
Polynomial bracket_with_yw() {
    return forms("(A+B)(E+F)(B+F) + (A+H)(D+E)(B+F) + Y(G+D+1)(B+F)(H+F+1)(A+H) + W(H+F+1)(G+D+1)(D+E) + YW");
}
Polynomial bracket_annihilated() {
    return forms("(A+B)(E+F)(B+F) + (A+H)(D+E)(B+F) + (G+D+1)(B+F)(H+F+1)(A+H) + (H+F+1)(G+D+1)(D+E) + 1");
}
Polynomial first_cofactor() { return forms("H(B+1)(D+1)(G+1) + (H+1)BDG"); }
Polynomial second_cofactor() { return forms("G(C+1)(F+1)(H+1) + (G+1)CHF"); }
std::array<Polynomial, 3> first_factor_set() { return {forms("C+H+1"), forms("C+F+1"), forms("F+H+1")}; }
std::array<Polynomial, 3> second_factor_set() { return {forms("B+D+1"), forms("D+G+1"), forms("B+G+1")}; }
Polynomial direct_annihilator() { return parse("(f+e)(d+a)(b+c)"); }
Polynomial complement_annihilator() { return parse("(f+e+1)(d+a+1)(b+c+1)"); }
}  // namespace fixtures

// ------------------------------------------------------------- proof chain

bool ProofReport::all_passed() const {
    return std::all_of(steps.begin(), steps.end(), [](const ProofStep& s) { return s.passed; });
}

namespace {

Polynomial form_image(const RoundSystem& rs, Form f) {
    const auto& b = LinearFormBank::kBits[static_cast<std::size_t>(f)];
    return rs.output(b[0]) + rs.output(b[1]);
}

Polynomial state_of(std::string_view abstract_text) { return LinearFormBank::to_state(forms(abstract_text)); }

void add_step(ProofReport& r, std::string id, std::string claim, bool passed, std::string detail = {}) {
    r.steps.push_back({std::move(id), std::move(claim), passed, std::move(detail)});
}

std::string count_detail(const Polynomial& difference) {
    if (difference.is_zero()) return "difference is 0";
    return "difference has " + std::to_string(difference.size()) + " terms";
}

}  // namespace

ProofReport verify_proof_chain(const Wiring& w, const BoolFun6& f) {
    ProofReport r;
    r.hypotheses = theorem_hypotheses(w);
    for (const auto& h : r.hypotheses) {
        if (!h.holds) throw HypothesisViolation("wiring constraint violated: " + h.name);
    }

    const RoundSystem rs = round_system(w, RoundMode::Placeholder);
    const Polynomial Y(VarId::placeholder(2));
    const Polynomial W(VarId::placeholder(4));
    using LB = LinearFormBank;

    // Output forms of the two non-trivial pairs.
    {
        const Polynomial dh = form_image(rs, Form::H) + (W + LB::state(Form::A));
        const Polynomial dd = form_image(rs, Form::D) + (Y + LB::state(Form::E));
        add_step(r, "output-forms", "H' = W + A and D' = Y + E", dh.is_zero() && dd.is_zero(),
                 "H: " + count_detail(dh) + ", D: " + count_detail(dd));
    }

    // The six pure shifts.
    {
        const std::array<std::pair<Form, Form>, 6> shifts{{{Form::G, Form::H},
                                                           {Form::F, Form::G},
                                                           {Form::E, Form::F},
                                                           {Form::C, Form::D},
                                                           {Form::B, Form::C},
                                                           {Form::A, Form::B}}};
        std::string bad;
        for (auto [from, to] : shifts) {
            if (!(form_image(rs, from) == LB::state(to))) {
                bad += bad.empty() ? "" : ",";
                bad += static_cast<char>('A' + static_cast<int>(from));
            }
        }
        add_step(r, "trivial-shifts", "G'=H F'=G E'=F C'=D B'=C A'=B", bad.empty(),
                 bad.empty() ? "all six hold" : "fails for " + bad);
    }

    // FE regrouped as mu times a cofactor in Y and W.
    {
        const Polynomial p_abs = forms("(A+B)(C+D)(D+F)(B+F)(E+F)(G+F)(G+H)");
        const Polynomial p_next = forms("(B+C)(D+Y+E)(Y+E+G)(C+G)(F+G)(H+G)(H+W+A)");
        Substitution shift;
        const char* images[8] = {"B", "C", "D", "Y+E", "F", "G", "H", "W+A"};
        for (int k = 0; k < 8; ++k) shift.set(VarId::from_index(k), forms(images[k]));
        const Polynomial regrouped = fixtures::mu() * fixtures::bracket_with_yw();
        const Polynomial abs_diff = (p_abs + substitute(p_abs, shift)) + regrouped;
        const Polynomial next_diff = substitute(p_abs, shift) + p_next;
        const FeReport fe = build_fe(theorem_invariant(), rs);
        const Polynomial state_diff = fe.fe + LB::to_state(regrouped);
        add_step(r, "regrouped-fe", "P + P' = mu * (cofactor in Y, W), abstractly and over the state bits",
                 abs_diff.is_zero() && next_diff.is_zero() && state_diff.is_zero(),
                 "abstract " + count_detail(abs_diff) + "; image " + count_detail(next_diff) + "; state " +
                     count_detail(state_diff));
    }

    const Polynomial z = f.polynomial();
    const Polynomial y_f = f.compose(rs.instance(2).args);
    const Polynomial w_f = f.compose(rs.instance(4).args);

    // Absorption by the direct annihilator.
    {
        const bool ann = ((z + 1) * fixtures::direct_annihilator()).is_zero();
        const Polynomial chf = state_of("CHF");
        const Polynomial bdg = state_of("BDG");
        const bool wabs = (chf * w_f) == chf;
        const bool yabs = (bdg * y_f) == bdg;
        add_step(r, "absorb-direct", "(Z+1)(f+e)(d+a)(b+c) = 0, hence CHF*W = CHF and BDG*Y = BDG",
                 ann && wabs && yabs,
                 std::string("annihilator ") + (ann ? "ok" : "fails") + ", W " + (wabs ? "ok" : "fails") +
                     ", Y " + (yabs ? "ok" : "fails"));
    }

    // Absorption by the complemented annihilator.
    {
        const bool ann = ((z + 1) * fixtures::complement_annihilator()).is_zero();
        const Polynomial chf = state_of("(C+1)(H+1)(F+1)");
        const Polynomial bdg = state_of("(B+1)(D+1)(G+1)");
        const bool wabs = (chf * w_f) == chf;
        const bool yabs = (bdg * y_f) == bdg;
        add_step(r, "absorb-complement",
                 "(Z+1)(f+e+1)(d+a+1)(b+c+1) = 0, hence (C+1)(H+1)(F+1)W and (B+1)(D+1)(G+1)Y absorb",
                 ann && wabs && yabs,
                 std::string("annihilator ") + (ann ? "ok" : "fails") + ", W " + (wabs ? "ok" : "fails") +
                     ", Y " + (yabs ? "ok" : "fails"));
    }

    // Two factorizations of mu.
    {
        const Polynomial mu = fixtures::mu();
        const auto s1 = fixtures::first_factor_set();
        const auto s2 = fixtures::second_factor_set();
        const Polynomial d1 = mu + fixtures::first_cofactor() * product(s1);
        const Polynomial d2 = mu + fixtures::second_cofactor() * product(s2);
        const Polynomial e1 = LB::to_state(mu) + LB::to_state(fixtures::first_cofactor() * product(s1));
        const Polynomial e2 = LB::to_state(mu) + LB::to_state(fixtures::second_cofactor() * product(s2));
        add_step(r, "mu-factorizations", "mu = [H(B+1)(D+1)(G+1)+(H+1)BDG](C+H+1)(C+F+1)(F+H+1) = "
                 "[G(C+1)(F+1)(H+1)+(G+1)CHF](B+D+1)(D+G+1)(B+G+1)",
                 d1.is_zero() && d2.is_zero() && e1.is_zero() && e2.is_zero(),
                 "first " + count_detail(d1) + ", second " + count_detail(d2));
    }

    // mu absorbs both round functions.
    {
        const Polynomial mu = LB::to_state(fixtures::mu());
        const bool ym = (y_f * mu) == mu;
        const bool wm = (w_f * mu) == mu;
        add_step(r, "mu-absorbs", "Y*mu = mu and W*mu = mu", ym && wm,
                 std::string("Y ") + (ym ? "ok" : "fails") + ", W " + (wm ? "ok" : "fails"));
    }

    // With Y = W = 1 the cofactor is annihilated by mu.
    {
        Substitution ones;
        ones.set(VarId::placeholder(2), Polynomial::one());
        ones.set(VarId::placeholder(4), Polynomial::one());
        const Polynomial reduced = substitute(fixtures::bracket_with_yw(), ones);
        const bool same = reduced == fixtures::bracket_annihilated();
        const Polynomial prod = fixtures::mu() * fixtures::bracket_annihilated();
        add_step(r, "bracket-annihilated", "cofactor at Y = W = 1 is the stated bracket and mu * bracket = 0",
                 same && prod.is_zero(),
                 std::string("bracket ") + (same ? "matches" : "differs") + ", product " + count_detail(prod));
    }

    // End to end.
    {
        const FeReport fe = build_fe(theorem_invariant(), expand(rs, f));
        add_step(r, "fe-zero", "FE = 0 with the function expanded", fe.is_zero && fe.depends_on.empty(),
                 fe.is_zero ? "FE is 0" : "FE has " + std::to_string(fe.fe.size()) + " terms");
    }
    return r;
}

ProofReport verify_invariant(const Wiring& w, const BoolFun6& f, const Polynomial& invariant,
                             std::uint64_t empirical_trials) {
    ProofReport r;
    r.hypotheses = theorem_hypotheses(w);
    const FeReport fe = build_fe(invariant, round_system(w, RoundMode::Expanded, f));
    add_step(r, "fe-zero", "FE = 0 with the function expanded", fe.is_zero,
             fe.is_zero ? "FE is 0" : "FE has " + std::to_string(fe.fe.size()) + " terms");
    std::string deps;
    for (VarId v : fe.depends_on) deps += (deps.empty() ? "" : ",") + name(v);
    add_step(r, "round-bit-free", "FE does not involve F, K or L", !fe.depends_on_round_bits(),
             deps.empty() ? "no round bits" : "depends on " + deps);
    if (empirical_trials > 0) {
        const auto emp = check_invariant_empirically(invariant, w, f, empirical_trials);
        add_step(r, "empirical", "P(state) = P(step(state)) on sampled states", emp.mismatches == 0,
                 std::to_string(emp.mismatches) + " mismatches in " + std::to_string(emp.trials) + " trials");
    }
    return r;
}

// --------------------------------------------------------- factorizations

namespace {

struct Explorer {
    std::mt19937_64 rng;
    std::size_t branching;
    std::size_t max_nodes;
    std::size_t nodes = 0;

    std::vector<std::uint64_t> pick(std::size_t dim) {
        const std::size_t want = nodes > max_nodes ? 1 : branching;
        std::vector<std::uint64_t> out;
        if (dim <= 16) {
            std::vector<std::uint64_t> all((std::size_t{1} << dim) - 1);
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i + 1;
            std::shuffle(all.begin(), all.end(), rng);
            all.resize(std::min(want, all.size()));
            return all;
        }
        std::set<std::uint64_t> seen;
        const std::uint64_t mask = dim >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << dim) - 1;
        while (out.size() < want) {
            const std::uint64_t m = rng() & mask;
            if (m != 0 && seen.insert(m).second) out.push_back(m);
        }
        return out;
    }

    FactorizationTree grow(const Polynomial& p) {
        ++nodes;
        FactorizationTree t{p, {}};
        if (p.is_constant()) return t;
        const AnnihilatorBasis ann = annihilators(p, 1);
        if (ann.dimension() == 0 || ann.dimension() > 63) return t;
        for (std::uint64_t m : pick(ann.dimension())) {
            Polynomial g;
            for (std::size_t i = 0; i < ann.dimension(); ++i) {
                if ((m >> i) & 1U) g += ann.basis[i];
            }
            const Polynomial factor = g + 1;
            if (factor.is_constant()) continue;
            t.branches.push_back({factor, grow(factor_out(p, factor))});
        }
        return t;
    }
};

void signature(const FactorizationTree& t, std::string& out) {
    out += '(';
    for (const auto& b : t.branches) {
        out += render(b.factor);
        signature(b.quotient, out);
    }
    out += ')';
}

void collect(const FactorizationTree& t, std::vector<Polynomial>& prefix, std::vector<FactorPath>& out) {
    if (t.is_leaf()) {
        out.push_back({prefix, t.root});
        return;
    }
    for (const auto& b : t.branches) {
        prefix.push_back(b.factor);
        collect(b.quotient, prefix, out);
        prefix.pop_back();
    }
}

}  // namespace

std::vector<FactorizationTree> explore_factorizations(const Polynomial& p, const FactorSearchOptions& opt) {
    if (p.is_zero()) throw Error("cannot factor the zero polynomial");
    if (opt.branching == 0) throw Error("branching must be at least 1");
    std::vector<FactorizationTree> trees;
    std::set<std::string> seen;
    const std::size_t attempts = 8 * std::max<std::size_t>(opt.max_trees, 1);
    for (std::size_t i = 0; i < attempts && trees.size() < opt.max_trees; ++i) {
        Explorer ex{std::mt19937_64(mix_seed(opt.seed, i)), opt.branching, opt.max_nodes};
        FactorizationTree t = ex.grow(p);
        std::string sig;
        signature(t, sig);
        if (seen.insert(sig).second) trees.push_back(std::move(t));
    }
    return trees;
}

std::vector<FactorPath> paths(const FactorizationTree& t) {
    std::vector<FactorPath> out;
    std::vector<Polynomial> prefix;
    collect(t, prefix, out);
    return out;
}

bool verify(const FactorizationTree& t) {
    for (const auto& b : t.branches) {
        if (degree(b.factor) != 1) return false;
        if (!(b.factor * b.quotient.root == t.root)) return false;
        if (!verify(b.quotient)) return false;
    }
    for (const auto& path : paths(t)) {
        if (!(product(path.factors) * path.leaf == t.root)) return false;
    }
    return true;
}

bool realizes(const FactorPath& path, std::span<const Polynomial> factor_set) {
    const Polynomial target = product(factor_set);
    const std::size_t n = path.factors.size();
    if (n > 20) throw Error("path too long for subset matching");
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
        Polynomial acc = Polynomial::one();
        for (std::size_t i = 0; i < n; ++i) {
            if ((m >> i) & 1U) acc *= path.factors[i];
        }
        if (acc == target) return true;
    }
    return false;
}

std::size_t node_count(const FactorizationTree& t) {
    std::size_t n = 1;
    for (const auto& b : t.branches) n += node_count(b.quotient);
    return n;
}

// ------------------------------------------------------------------ search

std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials) {
    if (trials == 0) return {0.0, 1.0};
    if (hits == 0 || hits == trials) {
        // one end is exact; avoid rounding residue there
        const double z2n = 1.959963984540054 * 1.959963984540054 / static_cast<double>(trials);
        const double edge = z2n / (1.0 + z2n);
        return hits == 0 ? std::pair{0.0, edge} : std::pair{1.0 - edge, 1.0};
    }
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double ph = static_cast<double>(hits) / n;
    const double denom = 1.0 + z * z / n;
    const double centre = (ph + z * z / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(ph * (1.0 - ph) / n + z * z / (4.0 * n * n));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

namespace {
bool refuted_by_sampling(const Polynomial& p, const Wiring& w, const BoolFun6& f, std::uint64_t samples,
                         std::uint64_t seed) {
    for (std::uint64_t i = 0; i < samples; ++i) {
        const std::uint64_t r = mix_seed(seed, i);
        const CipherState s(r);
        const RoundBits bits{((r >> 36) & 1U) != 0, ((r >> 37) & 1U) != 0, ((r >> 38) & 1U) != 0};
        if (evaluate_unchecked(p, ones_mask(s)) != evaluate_unchecked(p, ones_mask(step(s, w, f, bits)))) return true;
    }
    return false;
}
}  // namespace

SearchReport search_random_functions(const Wiring& w, const Polynomial& invariant, std::uint64_t trials,
                                     std::uint64_t seed, std::span<const BoolFun6> planted, unsigned threads) {
    for (VarId v : support(invariant)) {
        if (!v.is_state()) throw Error("invariant uses non-state variable '" + name(v) + "'");
    }
    constexpr std::uint64_t kSamples = 4096;
    threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(std::min<std::uint64_t>(trials, 64))));

    struct Partial {
        std::vector<SearchHit> hits;
        std::uint64_t rejected = 0;
        std::uint64_t symbolic = 0;
    };
    std::vector<Partial> partial(threads);
    auto worker = [&](unsigned id) {
        Partial& out = partial[id];
        for (std::uint64_t i = id; i < trials; i += threads) {
            const BoolFun6 f = i < planted.size() ? planted[i] : random_boolfun(mix_seed(seed, i));
            if (refuted_by_sampling(invariant, w, f, kSamples, mix_seed(~seed, i))) {
                ++out.rejected;
                continue;
            }
            ++out.symbolic;
            if (build_fe(invariant, round_system(w, RoundMode::Expanded, f)).is_zero) out.hits.push_back({i, f});
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    SearchReport rep;
    rep.trials = trials;
    for (auto& p : partial) {
        rep.rejected_by_sampling += p.rejected;
        rep.symbolic_checks += p.symbolic;
        rep.hits.insert(rep.hits.end(), p.hits.begin(), p.hits.end());
    }
    std::sort(rep.hits.begin(), rep.hits.end(), [](const SearchHit& a, const SearchHit& b) { return a.trial < b.trial; });
    rep.frequency = trials == 0 ? 0.0 : static_cast<double>(rep.hits.size()) / static_cast<double>(trials);
    std::tie(rep.wilson_low, rep.wilson_high) = wilson_interval(rep.hits.size(), trials);
    return rep;
}

}  // namespace invforge
