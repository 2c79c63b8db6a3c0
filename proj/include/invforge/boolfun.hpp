#pragma once

// Six-input Boolean functions and annihilator spaces.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "invforge/anf.hpp"

namespace invforge {

/// Binary Moebius transform on a 64-entry table (self-inverse).
constexpr std::uint64_t mobius(std::uint64_t t) {
    constexpr std::uint64_t masks[6] = {0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
                                        0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL};
    for (int i = 0; i < 6; ++i) t ^= (t & masks[i]) << (1 << i);
    return t;
}

/// The formal arguments a..f of a six-input function, in order.
std::array<VarId, 6> formal_arguments();

/// Boolean function of six inputs e1..e6.  Input index x has bit t set when
/// e_{t+1} = 1; ANF bit k is the coefficient Zk of the monomial of the
/// inputs selected by the bits of k (Z01 = e1, Z02 = e2, Z03 = e1*e2, ...).
class BoolFun6 {
public:
    constexpr BoolFun6() = default;
    static constexpr BoolFun6 from_truth_table(std::uint64_t t) { return BoolFun6(t); }
    static constexpr BoolFun6 from_anf(std::uint64_t anf) { return BoolFun6(mobius(anf)); }

    constexpr std::uint64_t truth_table() const { return table_; }
    constexpr std::uint64_t anf() const { return mobius(table_); }

    constexpr bool operator()(unsigned input) const { return (table_ >> (input & 63)) & 1U; }
    bool operator()(bool e1, bool e2, bool e3, bool e4, bool e5, bool e6) const {
        return (*this)(static_cast<unsigned>(e1) | static_cast<unsigned>(e2) << 1 | static_cast<unsigned>(e3) << 2 |
                       static_cast<unsigned>(e4) << 3 | static_cast<unsigned>(e5) << 4 |
                       static_cast<unsigned>(e6) << 5);
    }

    /// ANF over the formal arguments a..f.
    Polynomial polynomial() const;
    /// f(args[0], ..., args[5]) as a polynomial.
    Polynomial compose(std::span<const VarId, 6> args) const;

    constexpr bool operator==(const BoolFun6&) const = default;

private:
    constexpr explicit BoolFun6(std::uint64_t t) : table_(t) {}
    std::uint64_t table_ = 0;
};

/// Z00 + Z01*e1 + Z02*e2 + Z03*e1e2 + ... + Z63*e1e2e3e4e5e6.
Polynomial symbolic_instance(std::span<const VarId, 6> args);

/// Monomial over args selected by the bits of k.
Monomial argument_monomial(std::span<const VarId, 6> args, unsigned k);

/// Parses ANF text over a..f.
BoolFun6 parse_anf(std::string_view text);
std::string render_anf(const BoolFun6& f);
/// 16 hex digits, most significant table entry first.
std::string to_hex(const BoolFun6& f);
/// Either ANF text or a 16-hex-digit truth table (optional 0x); '#' comments allowed.
BoolFun6 parse_boolfun(std::string_view text);

/// Uniform truth table from a seeded generator; `balanced` restricts to
/// weight-32 tables by rejection.
BoolFun6 random_boolfun(std::uint64_t seed, bool balanced = false);

// ---------------------------------------------------------------- annihilators

class DegreeBoundError : public Error {
public:
    using Error::Error;
};

struct AnnihilatorBasis {
    int degree_bound = 0;
    std::vector<VarId> variables;
    std::vector<Polynomial> basis;
    std::size_t dimension() const { return basis.size(); }
};

constexpr std::size_t kMaxAnnihilatorVariables = 20;

/// Basis of {g : deg g <= degree_bound, f*g = 0} over the given variables
/// (which must cover support(f)), by linear algebra on the truth table of f.
/// The basis is in reduced row-echelon form over the graded-lex term order.
AnnihilatorBasis annihilators(const Polynomial& f, std::span<const VarId> variables, int degree_bound);
AnnihilatorBasis annihilators(const Polynomial& f, int degree_bound);

/// f absorbs g: f*g == f.
bool is_absorber(const Polynomial& f, const Polynomial& g);

/// Truth table of p over `variables` (bit t of the index = variables[t]).
std::vector<std::uint8_t> truth_table(const Polynomial& p, std::span<const VarId> variables);

}  // namespace invforge
