#pragma once

// The degree-7 product invariant: the linear forms A..H, the invariant
// itself, mechanical re-verification of every step of its correctness
// argument, the randomized affine-factorization explorer and the random
// Boolean function search.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "invforge/anf.hpp"
#include "invforge/boolfun.hpp"
#include "invforge/cipher.hpp"
#include "invforge/fe.hpp"

namespace invforge {

enum class Form : int { A, B, C, D, E, F, G, H };

/// Eight affine forms over pairs of state bits:
/// A = x24+x28, B = x23+x27, C = x22+x26, D = x21+x25,
/// E = x8+x12,  F = x7+x11,  G = x6+x10,  H = x5+x9.
///
/// Each form also exists as a variable of an abstract ring B_8 (stored in the
/// slots of a..h; parse and render it with Alphabet::Forms).  to_state() is
/// the ring homomorphism sending each abstract variable to its expansion.
/// Note that the form F and the round bit F are unrelated.
class LinearFormBank {
public:
    static constexpr std::array<std::array<int, 2>, 8> kBits{
        {{24, 28}, {23, 27}, {22, 26}, {21, 25}, {8, 12}, {7, 11}, {6, 10}, {5, 9}}};

    static Polynomial state(Form f);
    static Polynomial abstract(Form f);
    static Polynomial to_state(const Polynomial& abstract_poly);
    /// Writes an affine state polynomial as a sum of forms plus a constant,
    /// e.g. "C+H+1"; nullopt when it is not in their span.
    static std::optional<std::string> describe(const Polynomial& affine);
};

inline Polynomial forms(std::string_view text) { return parse(text, Alphabet::Forms); }

/// (A+B)(C+D)(D+F)(B+F)(E+F)(G+F)(G+H) over the state bits.
Polynomial theorem_invariant();
/// (1+A+H)(B+H)(1+C+H)(D+H)(E+H)(1+F+H)(G+H) over the state bits; it expands
/// to the same polynomial as theorem_invariant().
Polynomial appendix_invariant();

/// The Boolean function published with the degree-7 invariant.
BoolFun6 published_function();

namespace fixtures {
// Abstract-ring identities over A..H (and the placeholders Y, W).
Polynomial mu();                  // (F+G)(G+H)(C+D)(B+C)(D+F)
Polynomial bracket_with_yw();     // regrouped FE cofactor, with Y and W
Polynomial bracket_annihilated(); // the same with Y = W = 1, stated directly
Polynomial first_cofactor();      // H(B+1)(D+1)(G+1) + (H+1)BDG
Polynomial second_cofactor();     // G(C+1)(F+1)(H+1) + (G+1)CHF
std::array<Polynomial, 3> first_factor_set();   // C+H+1, C+F+1, F+H+1
std::array<Polynomial, 3> second_factor_set();  // B+D+1, D+G+1, B+G+1
/// The two cubic annihilators of Z+1, over the formal arguments a..f.
Polynomial direct_annihilator();       // (f+e)(d+a)(b+c)
Polynomial complement_annihilator();   // (f+e+1)(d+a+1)(b+c+1)
}  // namespace fixtures

// ------------------------------------------------------------- proof chain

class HypothesisViolation : public Error {
public:
    using Error::Error;
};

struct ProofStep {
    std::string id;
    std::string claim;
    bool passed = false;
    std::string detail;
};

struct ProofReport {
    std::vector<WiringHypothesis> hypotheses;
    std::vector<ProofStep> steps;
    bool all_passed() const;
};

/// Re-checks every identity of the degree-7 argument as an exact polynomial
/// identity, in order; throws HypothesisViolation naming the first wiring
/// constraint that fails.
ProofReport verify_proof_chain(const Wiring& w, const BoolFun6& f);

/// Generic check of any state polynomial: wiring hypotheses (reported, not
/// enforced), FE = 0 in expanded mode, no F/K/L dependence, and an empirical
/// cross-check by stepping.
ProofReport verify_invariant(const Wiring& w, const BoolFun6& f, const Polynomial& invariant,
                             std::uint64_t empirical_trials = 10000);

// --------------------------------------------------------- factorizations

struct FactorBranch;

struct FactorizationTree {
    Polynomial root;
    std::vector<FactorBranch> branches;  // empty for a leaf
    bool is_leaf() const { return branches.empty(); }
};

struct FactorBranch {
    Polynomial factor;           // affine
    FactorizationTree quotient;  // factor * quotient.root == parent root
};

struct FactorPath {
    std::vector<Polynomial> factors;
    Polynomial leaf;
};

struct FactorSearchOptions {
    std::size_t max_trees = 8;
    std::uint64_t seed = 1;
    std::size_t branching = 2;   // candidates tried per node
    std::size_t max_nodes = 4096;  // per tree; beyond it nodes stop branching
};

/// Repeatedly takes a random non-zero element g of the degree-1 annihilator
/// space of the current polynomial, divides by the affine factor g+1 and
/// recurses on the quotient.  Returns up to max_trees distinct trees.
std::vector<FactorizationTree> explore_factorizations(const Polynomial& p, const FactorSearchOptions& opt);

std::vector<FactorPath> paths(const FactorizationTree& t);
/// Every path's factors times its leaf equal the root.
bool verify(const FactorizationTree& t);
/// Some subset of the path's factors has the same product as `factor_set`.
bool realizes(const FactorPath& path, std::span<const Polynomial> factor_set);
std::size_t node_count(const FactorizationTree& t);

// ------------------------------------------------------------------ search

struct SearchHit {
    std::uint64_t trial = 0;
    BoolFun6 function;
};

struct SearchReport {
    std::uint64_t trials = 0;
    std::vector<SearchHit> hits;
    std::uint64_t rejected_by_sampling = 0;  // disproved by a concrete witness
    std::uint64_t symbolic_checks = 0;       // decided by build_fe
    double frequency = 0.0;
    double wilson_low = 0.0;
    double wilson_high = 0.0;
};

/// Wilson score interval at 95%.
std::pair<double, double> wilson_interval(std::uint64_t hits, std::uint64_t trials);

/// For each trial draws a seeded random function (planted functions take the
/// first trial indices) and records it as a hit when build_fe vanishes.
/// Functions refuted by a sampled state pair are rejected without expansion.
SearchReport search_random_functions(const Wiring& w, const Polynomial& invariant, std::uint64_t trials,
                                     std::uint64_t seed, std::span<const BoolFun6> planted = {},
                                     unsigned threads = 1);

}  // namespace invforge
