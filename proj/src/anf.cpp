#include "invforge/anf.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace invforge {

struct PolynomialAccess {
    static Polynomial adopt(std::vector<Monomial> canonical) {
        Polynomial p;
        p.terms_ = std::move(canonical);
        return p;
    }
    static std::vector<Monomial>& terms(Polynomial& p) { return p.terms_; }
};

namespace {

char state_letter(int index) {
    return index < 26 ? static_cast<char>('a' + index) : static_cast<char>('M' + (index - 26));
}

// Cancels duplicates under the cheap word order, then sorts the survivors
// into graded-lex order.
void sort_and_cancel(std::vector<Monomial>& terms) {
    std::sort(terms.begin(), terms.end(), [](const Monomial& a, const Monomial& b) {
        const auto& x = a.words();
        const auto& y = b.words();
        return x[1] != y[1] ? x[1] < y[1] : x[0] < y[0];
    });
    std::size_t out = 0;
    std::size_t i = 0;
    while (i < terms.size()) {
        std::size_t j = i + 1;
        while (j < terms.size() && terms[j] == terms[i]) ++j;
        if ((j - i) & 1U) terms[out++] = terms[i];
        i = j;
    }
    terms.resize(out);
    std::sort(terms.begin(), terms.end(), term_less);
}

}  // namespace

std::string name(VarId v) {
    switch (v.kind()) {
        case VarClass::State: return std::string(1, state_letter(v.index()));
        case VarClass::Public: return "F";
        case VarClass::Key: return v == VarId::K() ? "K" : "L";
        case VarClass::Placeholder: return std::string(1, "ZYXW"[v.instance() - 1]);
        case VarClass::Coefficient: {
            const int k = v.coefficient_index();
            std::string s = "Z";
            s += static_cast<char>('0' + k / 10);
            s += static_cast<char>('0' + k % 10);
            return s;
        }
    }
    return "?";
}

std::optional<VarId> var_from_name(std::string_view n) {
    if (n.size() == 1) {
        const char c = n[0];
        if (c >= 'a' && c <= 'z') return VarId::from_index(c - 'a');
        if (c >= 'M' && c <= 'V') return VarId::from_index(26 + (c - 'M'));
        switch (c) {
            case 'F': return VarId::F();
            case 'K': return VarId::K();
            case 'L': return VarId::L();
            case 'Z': return VarId::placeholder(1);
            case 'Y': return VarId::placeholder(2);
            case 'X': return VarId::placeholder(3);
            case 'W': return VarId::placeholder(4);
            default: return std::nullopt;
        }
    }
    if (n.size() == 3 && n[0] == 'Z' && std::isdigit(static_cast<unsigned char>(n[1])) &&
        std::isdigit(static_cast<unsigned char>(n[2]))) {
        const int k = (n[1] - '0') * 10 + (n[2] - '0');
        if (k < 64) return VarId::coefficient(k);
    }
    if (n.size() == 2 && n[0] == 'Z' && n[1] >= '1' && n[1] <= '4') return VarId::placeholder(n[1] - '0');
    return std::nullopt;
}

std::vector<VarId> Monomial::vars() const {
    std::vector<VarId> out;
    for_each_var([&](VarId v) { out.push_back(v); });
    return out;
}

// ------------------------------------------------------------------ ring ops

Polynomial Polynomial::from_terms(std::vector<Monomial> terms) {
    sort_and_cancel(terms);
    return PolynomialAccess::adopt(std::move(terms));
}

bool Polynomial::contains(Monomial m) const {
    return std::binary_search(terms_.begin(), terms_.end(), m, term_less);
}

Polynomial operator+(const Polynomial& p, const Polynomial& q) {
    std::vector<Monomial> out;
    out.reserve(p.terms_.size() + q.terms_.size());
    auto i = p.terms_.begin();
    auto j = q.terms_.begin();
    while (i != p.terms_.end() && j != q.terms_.end()) {
        if (*i == *j) {
            ++i;
            ++j;
        } else if (term_less(*i, *j)) {
            out.push_back(*i++);
        } else {
            out.push_back(*j++);
        }
    }
    out.insert(out.end(), i, p.terms_.end());
    out.insert(out.end(), j, q.terms_.end());
    return PolynomialAccess::adopt(std::move(out));
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
    if (p.is_zero() || q.is_zero()) return {};
    if (p.is_one()) return q;
    if (q.is_one()) return p;
    const auto& a = p.terms_.size() <= q.terms_.size() ? p.terms_ : q.terms_;
    const auto& b = p.terms_.size() <= q.terms_.size() ? q.terms_ : p.terms_;
    std::vector<Monomial> out;
    out.reserve(a.size() * b.size());
    for (const Monomial& s : a) {
        for (const Monomial& t : b) out.push_back(s * t);
    }
    return Polynomial::from_terms(std::move(out));
}

Polynomial& Polynomial::operator+=(const Polynomial& o) { return *this = *this + o; }
Polynomial& Polynomial::operator*=(const Polynomial& o) { return *this = *this * o; }

Polynomial product(std::span<const Polynomial> factors) {
    Polynomial acc = Polynomial::one();
    for (const auto& f : factors) acc *= f;
    return acc;
}

Polynomial product(std::initializer_list<Polynomial> factors) {
    return product(std::span<const Polynomial>(factors.begin(), factors.size()));
}

Monomial support_mask(const Polynomial& p) {
    Monomial m;
    for (const Monomial& t : p.terms()) m = m * t;
    return m;
}

std::vector<VarId> support(const Polynomial& p) { return support_mask(p).vars(); }

int degree(const Polynomial& p) {
    // terms are sorted by decreasing degree
    return p.is_zero() ? -1 : p.terms().front().degree();
}

// ---------------------------------------------------------------- evaluation

namespace {
std::string missing_message(const std::vector<VarId>& missing) {
    std::string s = "unassigned variable(s):";
    for (VarId v : missing) s += " " + name(v);
    return s;
}
}  // namespace

UnassignedVariable::UnassignedVariable(std::vector<VarId> missing)
    : Error(missing_message(missing)), missing_(std::move(missing)) {}

Assignment& Assignment::set(VarId v, bool bit) {
    const Monomial m = Monomial::of(v);
    assigned_ = assigned_ * m;
    values_ = bit ? values_ * m : values_.without(m);
    return *this;
}

bool evaluate_unchecked(const Polynomial& p, Monomial ones) {
    bool acc = false;
    for (const Monomial& t : p.terms()) acc ^= t.divides(ones);
    return acc;
}

bool evaluate(const Polynomial& p, const Assignment& a) {
    const Monomial missing = support_mask(p).without(a.assigned_mask());
    if (!missing.is_one()) throw UnassignedVariable(missing.vars());
    return evaluate_unchecked(p, a.true_mask());
}

// -------------------------------------------------------------- substitution

BudgetExceeded::BudgetExceeded(std::size_t budget, std::size_t reached)
    : Error("term budget exceeded: " + std::to_string(reached) + " > " + std::to_string(budget)),
      budget_(budget),
      reached_(reached) {}

Substitution& Substitution::set(VarId v, Polynomial image) {
    images_[static_cast<std::size_t>(v.index())] = std::move(image);
    return *this;
}

const Polynomial* Substitution::image(VarId v) const {
    const auto& slot = images_[static_cast<std::size_t>(v.index())];
    return slot ? &*slot : nullptr;
}

namespace {

struct WordsLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return a.words() < b.words(); }
};

void check_budget(std::optional<std::size_t> budget, std::size_t size) {
    if (budget && size > *budget) throw BudgetExceeded(*budget, size);
}

}  // namespace

// Variables whose image is a single monomial (including unmapped ones) are
// renamed term by term.  The remaining "complex" variables are grouped: terms
// sharing the same complex part share one product of images, multiplied once
// against the sum of their renamed simple parts.
Polynomial substitute(const Polynomial& p, const Substitution& s, std::optional<std::size_t> budget) {
    Monomial complex_vars;
    Monomial zero_vars;
    std::array<Monomial, VarId::kUniverse> simple_image;
    bool any_rename = false;
    for (int i = 0; i < VarId::kUniverse; ++i) {
        const VarId v = VarId::from_index(i);
        const Polynomial* img = s.image(v);
        if (img == nullptr) {
            simple_image[static_cast<std::size_t>(i)] = Monomial::of(v);
        } else if (img->is_zero()) {
            zero_vars = zero_vars * Monomial::of(v);
        } else if (img->size() == 1) {
            simple_image[static_cast<std::size_t>(i)] = img->terms()[0];
            any_rename = any_rename || !(img->terms()[0] == Monomial::of(v));
        } else {
            complex_vars = complex_vars * Monomial::of(v);
        }
    }
    if (complex_vars.is_one() && zero_vars.is_one() && !any_rename) return p;

    std::map<Monomial, std::vector<Monomial>, WordsLess> groups;
    for (const Monomial& t : p.terms()) {
        if (!(t & zero_vars).is_one()) continue;
        Monomial renamed;
        t.without(complex_vars).for_each_var(
            [&](VarId v) { renamed = renamed * simple_image[static_cast<std::size_t>(v.index())]; });
        groups[t & complex_vars].push_back(renamed);
    }

    std::map<Monomial, Polynomial, WordsLess> image_products;
    image_products.emplace(Monomial::one(), Polynomial::one());
    auto image_product = [&](auto&& self, Monomial mask) -> const Polynomial& {
        if (auto it = image_products.find(mask); it != image_products.end()) return it->second;
        const VarId v = mask.first_var();
        Polynomial value = self(self, mask.without(Monomial::of(v))) * *s.image(v);
        check_budget(budget, value.size());
        return image_products.emplace(mask, std::move(value)).first->second;
    };

    Polynomial result;
    for (auto& [mask, renamed] : groups) {
        check_budget(budget, renamed.size());
        const Polynomial simple = Polynomial::from_terms(std::move(renamed));
        Polynomial part = image_product(image_product, mask) * simple;
        check_budget(budget, part.size());
        result += part;
        check_budget(budget, result.size());
    }
    return result;
}

// ----------------------------------------------------------------- factoring

Polynomial factor_out(const Polynomial& p, const Polynomial& factor) {
    if (degree(factor) > 1) throw Error("factor_out: factor is not affine: " + render(factor));
    if (!((factor + 1) * p).is_zero()) {
        throw NotAFactor("not a factor: (" + render(factor) + ") does not divide " + render(p));
    }
    if (factor.is_constant()) return p;  // factor == 1, or p == 0 == factor
    const VarId pivot = support_mask(factor).first_var();
    Substitution s;
    s.set(pivot, factor + Polynomial(pivot) + 1);
    Polynomial q = substitute(p, s);
    if (!(factor * q == p)) throw std::logic_error("factor_out: quotient check failed");
    return q;
}

// ---------------------------------------------------------------- text form

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error("parse error at " + std::to_string(position) + ": " + message), position_(position) {}

namespace {

class Parser {
public:
    Parser(std::string_view text, Alphabet alphabet) : text_(text), alphabet_(alphabet) {}

    Polynomial run() {
        skip_space();
        if (at_end()) throw ParseError(pos_, "empty polynomial");
        Polynomial p = sum();
        skip_space();
        if (!at_end()) throw ParseError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return p;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }
    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    Polynomial sum() {
        Polynomial acc = term();
        skip_space();
        while (peek() == '+') {
            ++pos_;
            acc += term();
            skip_space();
        }
        return acc;
    }

    // One product; factors are juxtaposed or joined by '*'.
    Polynomial term() {
        skip_space();
        Polynomial acc = factor();
        for (;;) {
            skip_space();
            const char c = peek();
            if (c == '*') {
                ++pos_;
                skip_space();
                acc *= factor();
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '(' || c == '0' || c == '1') {
                if (needs_star_) throw ParseError(pos_, "multi-character variable must be followed by '*'");
                acc *= factor();
            } else {
                break;
            }
        }
        return acc;
    }

    Polynomial factor() {
        needs_star_ = false;
        const std::size_t start = pos_;
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Polynomial inner = sum();
            skip_space();
            if (peek() != ')') throw ParseError(pos_, "expected ')'");
            ++pos_;
            return inner;
        }
        if (c == '0' || c == '1') {
            ++pos_;
            if (std::isdigit(static_cast<unsigned char>(peek()))) throw ParseError(start, "bad constant");
            return Polynomial::constant(c == '1');
        }
        if (!std::isalpha(static_cast<unsigned char>(c))) {
            throw ParseError(pos_, at_end() ? std::string("unexpected end of input")
                                            : std::string("unexpected '") + c + "'");
        }
        ++pos_;
        if (c == 'Z' && std::isdigit(static_cast<unsigned char>(peek()))) {
            std::size_t end = pos_;
            while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end;
            const std::string_view token = text_.substr(start, end - start);
            const auto v = token.size() <= 3 ? var_from_name(token) : std::nullopt;
            if (!v) throw ParseError(start, "unknown variable '" + std::string(token) + "'");
            pos_ = end;
            needs_star_ = true;
            return *v;
        }
        if (alphabet_ == Alphabet::Forms) {
            if (c >= 'A' && c <= 'H') return VarId::from_index(c - 'A');
            if (c == 'Z' || c == 'Y' || c == 'X' || c == 'W') return *var_from_name(std::string_view(&c, 1));
            throw ParseError(start, std::string("unknown variable '") + c + "'");
        }
        const auto v = var_from_name(std::string_view(&c, 1));
        if (!v) throw ParseError(start, std::string("unknown variable '") + c + "'");
        return *v;
    }

    std::string_view text_;
    Alphabet alphabet_;
    std::size_t pos_ = 0;
    bool needs_star_ = false;
};

std::string display_name(VarId v, Alphabet alphabet) {
    if (alphabet == Alphabet::Forms && v.index() < 8) return std::string(1, static_cast<char>('A' + v.index()));
    return name(v);
}

}  // namespace

Polynomial parse(std::string_view text, Alphabet alphabet) { return Parser(text, alphabet).run(); }

std::string render(const Polynomial& p, Alphabet alphabet) {
    if (p.is_zero()) return "0";
    std::string out;
    for (const Monomial& t : p.terms()) {
        if (!out.empty()) out += '+';
        if (t.is_one()) {
            out += '1';
            continue;
        }
        std::string coeffs;
        std::string letters;
        t.for_each_var([&](VarId v) {
            if (v.kind() == VarClass::Coefficient) {
                if (!coeffs.empty()) coeffs += '*';
                coeffs += name(v);
            } else {
                letters += display_name(v, alphabet);
            }
        });
        out += coeffs;
        if (!coeffs.empty() && !letters.empty()) out += '*';
        out += letters;
    }
    return out;
}

Polynomial parse_file_text(std::string_view text, Alphabet alphabet) {
    std::string cleaned;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        cleaned += line;
        cleaned += ' ';
    }
    return parse(cleaned, alphabet);
}

}  // namespace invforge
