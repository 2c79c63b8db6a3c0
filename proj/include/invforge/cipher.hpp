#pragma once

// T-310 round model: the long-term key (wiring), the one-round ANF system and
// direct bit-level stepping.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "invforge/anf.hpp"
#include "invforge/boolfun.hpp"

namespace invforge {

class WiringError : public Error {
public:
    using Error::Error;
};

/// Long-term key: D maps 1..9 to 0..36 (0 selects the key bit S1 = K),
/// P maps 1..27 to 1..36.  Accessors are 1-based like the tables.
struct Wiring {
    std::array<int, 9> d{};
    std::array<int, 27> p{};

    int D(int i) const { return d[static_cast<std::size_t>(i - 1)]; }
    int P(int i) const { return p[static_cast<std::size_t>(i - 1)]; }

    bool operator==(const Wiring&) const = default;
};

struct WiringHypothesis {
    std::string name;
    bool holds = false;
};

struct WiringReport {
    std::vector<std::string> errors;    // range / length violations
    std::vector<std::string> warnings;  // duplicate entries
    std::vector<WiringHypothesis> hypotheses;
    bool valid() const { return errors.empty(); }
    bool theorem_hypotheses_hold() const;
};

/// Parses "D = 0,24,..." / "P = 25,..." lines; '#' starts a comment.
/// Throws WiringError on malformed, wrong-length or out-of-range input.
Wiring parse_wiring(std::string_view text);
Wiring load_wiring(const std::string& path);
std::string format_wiring(const Wiring& w);

WiringReport validate(const Wiring& w);

/// The degree-7 product attack's wiring constraints, one entry each:
/// {D(2),D(3)} = {24,28}, {D(6),D(7)} = {8,12}, P(7..12) = (27,6,10,23,21,25)
/// and P(21..26) = (26,9,5,22,7,11).
std::vector<WiringHypothesis> theorem_hypotheses(const Wiring& w);

/// Conforming completion of the published constraints: D is a permutation of
/// the multiples of 4 and P a bijection onto the other 27 bits, so the round
/// is invertible for every Boolean function.
Wiring lzs_265_like();

// ------------------------------------------------------------------- state

class CipherState {
public:
    constexpr CipherState() = default;
    constexpr explicit CipherState(std::uint64_t bits) : bits_(bits & kMask) {}

    static constexpr std::uint64_t kMask = (std::uint64_t{1} << 36) - 1;

    /// x_i for i in 1..36.
    constexpr bool bit(int i) const { return (bits_ >> (i - 1)) & 1U; }
    constexpr void set(int i, bool b) {
        const std::uint64_t m = std::uint64_t{1} << (i - 1);
        bits_ = b ? (bits_ | m) : (bits_ & ~m);
    }
    constexpr std::uint64_t bits() const { return bits_; }

    /// 9 hex digits, x36 in the most significant position.
    std::string to_hex() const;
    static CipherState from_hex(std::string_view hex);

    constexpr bool operator==(const CipherState&) const = default;

private:
    std::uint64_t bits_ = 0;
};

/// Per-round bits: public F, key bits K (= S1) and L (= S2).
struct RoundBits {
    bool F = false;
    bool K = false;
    bool L = false;
};

/// One round evaluated directly on bits.
CipherState step(const CipherState& s, const Wiring& w, const BoolFun6& f, RoundBits bits);

/// Assignment of x1..x36 and F, K, L.
Assignment assignment(const CipherState& s, RoundBits bits = {});
/// Mask of the variables set to 1 (state bits and F, K, L).
Monomial ones_mask(const CipherState& s, RoundBits bits = {});

// ------------------------------------------------------------ round system

enum class RoundMode { Placeholder, Expanded, Symbolic };

std::string_view to_string(RoundMode m);

/// One occurrence of the round function with its wired arguments.
struct ZInstance {
    VarId placeholder;          // Z, Y, X or W
    std::array<VarId, 6> args;  // e1..e6
};

/// The 36 output polynomials y1..y36 of one round.
class RoundSystem {
public:
    RoundMode mode() const { return mode_; }
    /// y_j for j in 1..36.
    const Polynomial& output(int j) const { return outputs_[static_cast<std::size_t>(j - 1)]; }
    /// Instance 1..4: Z1 = Z(L, x_P(1..5)), Z2 = Y, Z3 = X, Z4 = W.
    const ZInstance& instance(int k) const { return instances_[static_cast<std::size_t>(k - 1)]; }
    /// x_j -> y_j for all j.
    Substitution as_substitution() const;

    static bool is_trivial_output(int j) { return (j - 1) % 4 != 0; }

private:
    friend RoundSystem round_system(const Wiring&, RoundMode, const std::optional<BoolFun6>&);
    friend RoundSystem expand(const RoundSystem&, const std::optional<BoolFun6>&);
    RoundMode mode_ = RoundMode::Placeholder;
    std::array<Polynomial, 36> outputs_;
    std::array<ZInstance, 4> instances_{};
};

/// Builds the round.  Expanded mode composes `f` into each instance (throws
/// if f is missing); Symbolic mode uses the Z00..Z63 coefficient expansion.
RoundSystem round_system(const Wiring& w, RoundMode mode = RoundMode::Placeholder,
                         const std::optional<BoolFun6>& f = std::nullopt);

/// Replaces the placeholders of a placeholder-mode system: by f when given,
/// otherwise by the symbolic expansion.
RoundSystem expand(const RoundSystem& placeholder, const std::optional<BoolFun6>& f);

/// Polynomial-path evaluation of a (non-symbolic) round system.
CipherState evaluate(const RoundSystem& rs, const CipherState& s, RoundBits bits);

}  // namespace invforge
