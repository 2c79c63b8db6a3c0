#pragma once

// Boolean polynomials over GF(2) with idempotent variables (x*x == x).
//
// The variable universe is fixed: 36 state bits, the round bits F, K (=S1),
// L (=S2), the four placeholder instances Z, Y, X, W of the round's Boolean
// function, and the 64 symbolic ANF coefficients Z00..Z63.  A monomial is a
// 128-bit mask over that universe; a polynomial is a sorted list of distinct
// monomials, so equality is structural.

#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace invforge {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class VarClass : std::uint8_t { State, Public, Key, Placeholder, Coefficient };

/// One variable of the fixed universe.
///
/// State bit x_i lives at index 36-i, so that ascending index order reads
/// a, b, ..., z, M, ..., V (a = x36, z = x11, M = x10, V = x1).
class VarId {
public:
    static constexpr int kStateCount = 36;
    static constexpr int kPublicIndex = 36;      // F
    static constexpr int kKeyIndex = 37;         // K = S1, L = S2
    static constexpr int kPlaceholderIndex = 39; // Z, Y, X, W
    static constexpr int kCoefficientIndex = 43; // Z00..Z63
    static constexpr int kUniverse = 107;

    constexpr VarId() = default;

    static constexpr VarId from_index(int index) { return VarId(index); }
    static constexpr VarId state(int bit) { return VarId(kStateCount - bit); }
    static constexpr VarId F() { return VarId(kPublicIndex); }
    static constexpr VarId K() { return VarId(kKeyIndex); }
    static constexpr VarId L() { return VarId(kKeyIndex + 1); }
    /// Instance 1..4 of the round function: Z, Y, X, W.
    static constexpr VarId placeholder(int instance) { return VarId(kPlaceholderIndex + instance - 1); }
    static constexpr VarId coefficient(int k) { return VarId(kCoefficientIndex + k); }

    constexpr int index() const { return index_; }

    constexpr VarClass kind() const {
        if (index_ < kPublicIndex) return VarClass::State;
        if (index_ == kPublicIndex) return VarClass::Public;
        if (index_ < kPlaceholderIndex) return VarClass::Key;
        if (index_ < kCoefficientIndex) return VarClass::Placeholder;
        return VarClass::Coefficient;
    }
    constexpr bool is_state() const { return kind() == VarClass::State; }

    /// 1..36 for state variables.
    constexpr int state_bit() const { return kStateCount - index_; }
    /// 1..4 for placeholders.
    constexpr int instance() const { return index_ - kPlaceholderIndex + 1; }
    /// 0..63 for coefficients.
    constexpr int coefficient_index() const { return index_ - kCoefficientIndex; }

    constexpr auto operator<=>(const VarId&) const = default;

private:
    constexpr explicit VarId(int index) : index_(static_cast<std::uint8_t>(index)) {}
    std::uint8_t index_ = 0;
};

/// Canonical name: a..z, M..V, F, K, L, Z, Y, X, W, Z00..Z63.
std::string name(VarId v);
/// Inverse of name(); nullopt for unknown names.
std::optional<VarId> var_from_name(std::string_view name);

class Monomial {
public:
    using Words = std::array<std::uint64_t, 2>;

    constexpr Monomial() = default;
    constexpr explicit Monomial(Words w) : w_(w) {}
    static constexpr Monomial one() { return Monomial(); }
    static constexpr Monomial of(VarId v) {
        Words w{};
        w[static_cast<std::size_t>(v.index() >> 6)] = std::uint64_t{1} << (v.index() & 63);
        return Monomial(w);
    }

    constexpr const Words& words() const { return w_; }
    constexpr bool is_one() const { return (w_[0] | w_[1]) == 0; }
    constexpr int degree() const { return std::popcount(w_[0]) + std::popcount(w_[1]); }
    constexpr bool contains(VarId v) const {
        return (w_[static_cast<std::size_t>(v.index() >> 6)] >> (v.index() & 63)) & 1U;
    }
    constexpr bool divides(Monomial other) const {
        return (w_[0] & ~other.w_[0]) == 0 && (w_[1] & ~other.w_[1]) == 0;
    }
    constexpr bool disjoint(Monomial other) const {
        return (w_[0] & other.w_[0]) == 0 && (w_[1] & other.w_[1]) == 0;
    }
    constexpr Monomial operator*(Monomial o) const { return Monomial({w_[0] | o.w_[0], w_[1] | o.w_[1]}); }
    constexpr Monomial operator&(Monomial o) const { return Monomial({w_[0] & o.w_[0], w_[1] & o.w_[1]}); }
    /// Variables of *this not in o.
    constexpr Monomial without(Monomial o) const { return Monomial({w_[0] & ~o.w_[0], w_[1] & ~o.w_[1]}); }

    /// Lowest-index variable; undefined for the constant monomial.
    constexpr VarId first_var() const {
        return w_[0] != 0 ? VarId::from_index(std::countr_zero(w_[0]))
                          : VarId::from_index(64 + std::countr_zero(w_[1]));
    }

    template <class Fn>
    constexpr void for_each_var(Fn&& fn) const {
        for (std::size_t k = 0; k < 2; ++k) {
            for (std::uint64_t w = w_[k]; w != 0; w &= w - 1) {
                fn(VarId::from_index(static_cast<int>(64 * k) + std::countr_zero(w)));
            }
        }
    }
    std::vector<VarId> vars() const;

    constexpr bool operator==(const Monomial&) const = default;

private:
    Words w_{};
};

/// Graded-lex order: higher degree first, then lexicographic on the ascending
/// variable lists (the monomial holding the lowest differing variable first).
constexpr bool term_less(Monomial a, Monomial b) {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da > db;
    const auto& wa = a.words();
    const auto& wb = b.words();
    std::uint64_t x = wa[0] ^ wb[0];
    if (x != 0) return (wa[0] & (x & (~x + 1))) != 0;
    x = wa[1] ^ wb[1];
    if (x != 0) return (wa[1] & (x & (~x + 1))) != 0;
    return false;
}

class Polynomial {
public:
    Polynomial() = default;
    Polynomial(VarId v) : terms_{Monomial::of(v)} {}  // NOLINT: variables read as polynomials
    explicit Polynomial(Monomial m) : terms_{m} {}

    static Polynomial zero() { return {}; }
    static Polynomial one() { return Polynomial(Monomial::one()); }
    static Polynomial constant(bool c) { return c ? one() : zero(); }
    /// Sums the given monomials mod 2 (duplicates cancel in pairs).
    static Polynomial from_terms(std::vector<Monomial> terms);

    std::span<const Monomial> terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].is_one(); }
    bool is_constant() const { return terms_.empty() || is_one(); }
    bool contains(Monomial m) const;

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator*=(const Polynomial& o);

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
    friend Polynomial operator+(const Polynomial& p, int c) { return (c & 1) ? p + one() : p; }
    friend Polynomial operator+(int c, const Polynomial& p) { return p + c; }

    bool operator==(const Polynomial&) const = default;

private:
    std::vector<Monomial> terms_;  // strictly increasing under term_less
    friend struct PolynomialAccess;
};

inline Polynomial add(const Polynomial& p, const Polynomial& q) { return p + q; }
inline Polynomial mul(const Polynomial& p, const Polynomial& q) { return p * q; }
Polynomial product(std::span<const Polynomial> factors);
Polynomial product(std::initializer_list<Polynomial> factors);

/// Union of the variables of all terms.
Monomial support_mask(const Polynomial& p);
std::vector<VarId> support(const Polynomial& p);
/// Largest term degree; -1 for the zero polynomial.
int degree(const Polynomial& p);

// ---------------------------------------------------------------- evaluation

class UnassignedVariable : public Error {
public:
    explicit UnassignedVariable(std::vector<VarId> missing);
    const std::vector<VarId>& missing() const { return missing_; }

private:
    std::vector<VarId> missing_;
};

/// Partial map VarId -> bit.
class Assignment {
public:
    Assignment& set(VarId v, bool bit);
    bool assigned(VarId v) const { return assigned_.contains(v); }
    bool value(VarId v) const { return values_.contains(v); }
    Monomial assigned_mask() const { return assigned_; }
    Monomial true_mask() const { return values_; }

private:
    Monomial assigned_;
    Monomial values_;
};

/// GF(2) value of p; throws UnassignedVariable when support(p) is not covered.
bool evaluate(const Polynomial& p, const Assignment& a);
/// Evaluation with every variable in `ones` set to 1 and all others 0.
bool evaluate_unchecked(const Polynomial& p, Monomial ones);

// -------------------------------------------------------------- substitution

class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::size_t budget, std::size_t reached);
    std::size_t budget() const { return budget_; }
    std::size_t reached() const { return reached_; }

private:
    std::size_t budget_;
    std::size_t reached_;
};

/// Simultaneous substitution map; unmapped variables pass through unchanged.
class Substitution {
public:
    Substitution& set(VarId v, Polynomial image);
    const Polynomial* image(VarId v) const;

private:
    std::array<std::optional<Polynomial>, VarId::kUniverse> images_;
};

/// Replaces every mapped variable by its image, all at once.  With a budget,
/// throws BudgetExceeded as soon as an intermediate or the result holds more
/// than `budget` terms.
Polynomial substitute(const Polynomial& p, const Substitution& s,
                      std::optional<std::size_t> budget = std::nullopt);

// ----------------------------------------------------------------- factoring

class NotAFactor : public Error {
public:
    using Error::Error;
};

/// Quotient q with factor * q == p, for an affine factor satisfying
/// (factor + 1) * p == 0.  The lowest variable v of the factor is the pivot:
/// q = p[v := factor + v + 1], which forces the factor to 1 and removes v.
Polynomial factor_out(const Polynomial& p, const Polynomial& factor);

// ---------------------------------------------------------------- text form

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message);
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Letter tables for parse/render.  Standard is the cipher naming; Forms reads
/// the capitals A..H as the eight linear-form variables of the abstract ring
/// (stored in the slots of a..h) and keeps Z, Y, X, W as placeholders.
enum class Alphabet { Standard, Forms };

/// Terms joined by '+'; a term is a product of factors, optionally separated by
/// '*'.  Single letters may be juxtaposed; Z00..Z63 (and the aliases Z1..Z4)
/// must be followed by '*' when another factor comes next.  '0', '1' and
/// parenthesised sums are factors too.  Whitespace is ignored.
Polynomial parse(std::string_view text, Alphabet alphabet = Alphabet::Standard);
std::string render(const Polynomial& p, Alphabet alphabet = Alphabet::Standard);

/// Strips '#' comments and parses; used for polynomial files.
Polynomial parse_file_text(std::string_view text, Alphabet alphabet = Alphabet::Standard);

}  // namespace invforge
