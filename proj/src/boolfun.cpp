#include "invforge/boolfun.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

#include "invforge/gf2.hpp"

namespace invforge {

std::array<VarId, 6> formal_arguments() {
    return {VarId::state(36), VarId::state(35), VarId::state(34),
            VarId::state(33), VarId::state(32), VarId::state(31)};
}

Monomial argument_monomial(std::span<const VarId, 6> args, unsigned k) {
    Monomial m;
    for (unsigned t = 0; t < 6; ++t) {
        if ((k >> t) & 1U) m = m * Monomial::of(args[t]);
    }
    return m;
}

Polynomial BoolFun6::compose(std::span<const VarId, 6> args) const {
    std::vector<Monomial> terms;
    const std::uint64_t a = anf();
    for (unsigned k = 0; k < 64; ++k) {
        if ((a >> k) & 1U) terms.push_back(argument_monomial(args, k));
    }
    return Polynomial::from_terms(std::move(terms));
}

Polynomial BoolFun6::polynomial() const {
    const auto args = formal_arguments();
    return compose(args);
}

Polynomial symbolic_instance(std::span<const VarId, 6> args) {
    std::vector<Monomial> terms;
    for (unsigned k = 0; k < 64; ++k) {
        terms.push_back(Monomial::of(VarId::coefficient(static_cast<int>(k))) * argument_monomial(args, k));
    }
    return Polynomial::from_terms(std::move(terms));
}

BoolFun6 parse_anf(std::string_view text) {
    const Polynomial p = parse_file_text(text);
    const auto args = formal_arguments();
    std::uint64_t anf = 0;
    for (const Monomial& t : p.terms()) {
        unsigned k = 0;
        t.for_each_var([&](VarId v) {
            const auto it = std::find(args.begin(), args.end(), v);
            if (it == args.end()) throw Error("variable '" + name(v) + "' is not a formal argument a..f");
            k |= 1U << (it - args.begin());
        });
        anf |= std::uint64_t{1} << k;
    }
    return BoolFun6::from_anf(anf);
}

std::string render_anf(const BoolFun6& f) { return render(f.polynomial()); }

std::string to_hex(const BoolFun6& f) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(16, '0');
    const std::uint64_t t = f.truth_table();
    for (int i = 0; i < 16; ++i) s[static_cast<std::size_t>(15 - i)] = digits[(t >> (4 * i)) & 0xF];
    return s;
}

BoolFun6 parse_boolfun(std::string_view text) {
    std::string cleaned;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        for (char c : line) {
            if (!std::isspace(static_cast<unsigned char>(c))) cleaned += c;
        }
    }
    std::string_view body = cleaned;
    if (body.size() == 18 && body.substr(0, 2) == "0x") body.remove_prefix(2);
    const bool hex = body.size() == 16 && std::all_of(body.begin(), body.end(), [](char c) {
                         return std::isxdigit(static_cast<unsigned char>(c)) != 0;
                     });
    if (hex) return BoolFun6::from_truth_table(std::stoull(std::string(body), nullptr, 16));
    return parse_anf(cleaned);
}

BoolFun6 random_boolfun(std::uint64_t seed, bool balanced) {
    std::mt19937_64 rng(seed);
    std::uint64_t t = rng();
    while (balanced && std::popcount(t) != 32) t = rng();
    return BoolFun6::from_truth_table(t);
}

// ---------------------------------------------------------------- annihilators

std::vector<std::uint8_t> truth_table(const Polynomial& p, std::span<const VarId> variables) {
    const std::size_t n = variables.size();
    if (n > 24) throw Error("truth_table: too many variables");
    std::vector<std::uint8_t> table(std::size_t{1} << n, 0);
    for (const Monomial& t : p.terms()) {
        std::size_t idx = 0;
        t.for_each_var([&](VarId v) {
            const auto it = std::find(variables.begin(), variables.end(), v);
            if (it == variables.end()) throw Error("variable '" + name(v) + "' outside the declared variable set");
            idx |= std::size_t{1} << (it - variables.begin());
        });
        table[idx] ^= 1U;
    }
    for (std::size_t bit = 1; bit < table.size(); bit <<= 1) {
        for (std::size_t x = 0; x < table.size(); ++x) {
            if (x & bit) table[x] ^= table[x ^ bit];
        }
    }
    return table;
}

AnnihilatorBasis annihilators(const Polynomial& f, std::span<const VarId> variables, int degree_bound) {
    std::vector<VarId> vars(variables.begin(), variables.end());
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    const std::size_t n = vars.size();
    if (degree_bound < 0 || static_cast<std::size_t>(degree_bound) > n) {
        throw DegreeBoundError("degree bound " + std::to_string(degree_bound) + " exceeds the " + std::to_string(n) +
                               " declared variables");
    }
    if (n > kMaxAnnihilatorVariables) throw Error("annihilators: at most 20 variables are supported");

    // Candidate monomials in graded-lex order: these index the columns.
    std::vector<std::pair<Monomial, std::uint32_t>> candidates;
    for (std::uint32_t local = 0; local < (1U << n); ++local) {
        if (std::popcount(local) > degree_bound) continue;
        Monomial m;
        for (std::size_t t = 0; t < n; ++t) {
            if ((local >> t) & 1U) m = m * Monomial::of(vars[t]);
        }
        candidates.emplace_back(m, local);
    }
    std::sort(candidates.begin(), candidates.end(),
              [](const auto& a, const auto& b) { return term_less(a.first, b.first); });

    // f*g = 0 iff g vanishes on every point where f = 1.
    const auto table = truth_table(f, vars);
    gf2::EchelonBasis rows(candidates.size());
    for (std::uint32_t x = 0; x < table.size(); ++x) {
        if (table[x] == 0) continue;
        gf2::BitVec row(candidates.size());
        for (std::size_t j = 0; j < candidates.size(); ++j) {
            if ((candidates[j].second & ~x) == 0) row.set(j);
        }
        rows.insert(std::move(row));
        if (rows.rank() == candidates.size()) break;
    }

    AnnihilatorBasis out;
    out.degree_bound = degree_bound;
    out.variables = vars;
    for (const auto& v : gf2::nullspace(rows)) {
        std::vector<Monomial> terms;
        for (std::size_t j = 0; j < candidates.size(); ++j) {
            if (v.get(j)) terms.push_back(candidates[j].first);
        }
        out.basis.push_back(Polynomial::from_terms(std::move(terms)));
    }
    return out;
}

AnnihilatorBasis annihilators(const Polynomial& f, int degree_bound) {
    const auto vars = support(f);
    return annihilators(f, vars, degree_bound);
}

bool is_absorber(const Polynomial& f, const Polynomial& g) { return f * g == f; }

}  // namespace invforge
