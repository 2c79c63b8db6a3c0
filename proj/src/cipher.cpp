#include "invforge/cipher.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

namespace invforge {

// -------------------------------------------------------------- wiring file

namespace {

std::string trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<int> parse_list(std::string_view body, int line_no) {
    std::vector<int> out;
    std::string item;
    std::istringstream in{std::string(body)};
    while (std::getline(in, item, ',')) {
        const std::string t = trim(item);
        int value = 0;
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
        if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
            throw WiringError("line " + std::to_string(line_no) + ": bad integer '" + t + "'");
        }
        out.push_back(value);
    }
    return out;
}

}  // namespace

Wiring parse_wiring(std::string_view text) {
    std::optional<std::vector<int>> d;
    std::optional<std::vector<int>> p;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw WiringError("line " + std::to_string(line_no) + ": expected KEY = list");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        auto values = parse_list(std::string_view(t).substr(eq + 1), line_no);
        if (key == "D") {
            d = std::move(values);
        } else if (key == "P") {
            p = std::move(values);
        } else {
            throw WiringError("line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
    }
    if (!d || !p) throw WiringError("wiring needs both D and P");
    if (d->size() != 9) throw WiringError("D must have 9 entries, got " + std::to_string(d->size()));
    if (p->size() != 27) throw WiringError("P must have 27 entries, got " + std::to_string(p->size()));
    Wiring w;
    std::copy(d->begin(), d->end(), w.d.begin());
    std::copy(p->begin(), p->end(), w.p.begin());
    const auto report = validate(w);
    if (!report.valid()) throw WiringError(report.errors.front());
    return w;
}

Wiring load_wiring(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw WiringError("cannot open wiring file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_wiring(ss.str());
}

std::string format_wiring(const Wiring& w) {
    std::string s = "D = ";
    for (std::size_t i = 0; i < w.d.size(); ++i) s += (i ? "," : "") + std::to_string(w.d[i]);
    s += "\nP = ";
    for (std::size_t i = 0; i < w.p.size(); ++i) s += (i ? "," : "") + std::to_string(w.p[i]);
    s += "\n";
    return s;
}

bool WiringReport::theorem_hypotheses_hold() const {
    return std::all_of(hypotheses.begin(), hypotheses.end(), [](const auto& h) { return h.holds; });
}

std::vector<WiringHypothesis> theorem_hypotheses(const Wiring& w) {
    auto pair_is = [](int a, int b, int x, int y) { return (a == x && b == y) || (a == y && b == x); };
    auto p_run = [&](int first, std::array<int, 6> expected) {
        for (int k = 0; k < 6; ++k) {
            if (w.P(first + k) != expected[static_cast<std::size_t>(k)]) return false;
        }
        return true;
    };
    return {
        {"{D(2),D(3)}={24,28}", pair_is(w.D(2), w.D(3), 24, 28)},
        {"{D(6),D(7)}={8,12}", pair_is(w.D(6), w.D(7), 8, 12)},
        {"P(7..12)=(27,6,10,23,21,25)", p_run(7, {27, 6, 10, 23, 21, 25})},
        {"P(21..26)=(26,9,5,22,7,11)", p_run(21, {26, 9, 5, 22, 7, 11})},
    };
}

WiringReport validate(const Wiring& w) {
    WiringReport r;
    for (int i = 1; i <= 9; ++i) {
        if (w.D(i) < 0 || w.D(i) > 36) {
            r.errors.push_back("D(" + std::to_string(i) + ")=" + std::to_string(w.D(i)) + " out of range 0..36");
        }
    }
    for (int i = 1; i <= 27; ++i) {
        if (w.P(i) < 1 || w.P(i) > 36) {
            r.errors.push_back("P(" + std::to_string(i) + ")=" + std::to_string(w.P(i)) + " out of range 1..36");
        }
    }
    std::set<int> seen;
    for (int i = 1; i <= 9; ++i) {
        if (!seen.insert(w.D(i)).second) {
            r.warnings.push_back("duplicate D entry " + std::to_string(w.D(i)) + " at D(" + std::to_string(i) + ")");
        }
    }
    seen.clear();
    for (int i = 1; i <= 27; ++i) {
        if (!seen.insert(w.P(i)).second) {
            r.warnings.push_back("duplicate P entry " + std::to_string(w.P(i)) + " at P(" + std::to_string(i) + ")");
        }
    }
    r.hypotheses = theorem_hypotheses(w);
    return r;
}

Wiring lzs_265_like() {
    Wiring w;
    w.d = {4, 24, 28, 16, 20, 8, 12, 32, 36};
    w.p = {1, 2, 3, 13, 14, 15,       // Z1 arguments and P(6)
           27, 6, 10, 23, 21, 25,     // Y
           17,                        // P(13)
           18, 19, 29, 30, 31, 33,    // X
           34,                        // P(20)
           26, 9, 5, 22, 7, 11,       // W
           35};
    return w;
}

// ------------------------------------------------------------------- state

std::string CipherState::to_hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s(9, '0');
    for (int i = 0; i < 9; ++i) s[static_cast<std::size_t>(8 - i)] = digits[(bits_ >> (4 * i)) & 0xF];
    return s;
}

CipherState CipherState::from_hex(std::string_view hex) {
    if (hex.substr(0, 2) == "0x") hex.remove_prefix(2);
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(hex.data(), hex.data() + hex.size(), v, 16);
    if (hex.empty() || ec != std::errc() || ptr != hex.data() + hex.size() || v > kMask) {
        throw Error("bad 36-bit state '" + std::string(hex) + "'");
    }
    return CipherState(v);
}

CipherState step(const CipherState& s, const Wiring& w, const BoolFun6& f, RoundBits bits) {
    auto x = [&](int i) { return i == 0 ? bits.K : s.bit(i); };
    auto zf = [&](bool e1, int first) {
        return f(e1, x(w.P(first)), x(w.P(first + 1)), x(w.P(first + 2)), x(w.P(first + 3)), x(w.P(first + 4)));
    };
    const bool z1 = zf(bits.L, 1);
    const bool z2 = zf(x(w.P(7)), 8);
    const bool z3 = zf(x(w.P(14)), 15);
    const bool z4 = zf(x(w.P(21)), 22);

    CipherState out;
    for (int i = 1; i < 36; ++i) {
        if (i % 4 != 0) out.set(i + 1, s.bit(i));
    }
    bool t = bits.F;
    out.set(33, t ^ x(w.D(9)));
    t ^= z1;
    out.set(29, t ^ x(w.D(8)));
    t ^= x(w.P(6));
    out.set(25, t ^ x(w.D(7)));
    t ^= z2;
    out.set(21, t ^ x(w.D(6)));
    t ^= x(w.P(13));
    out.set(17, t ^ x(w.D(5)));
    t ^= bits.L ^ z3;
    out.set(13, t ^ x(w.D(4)));
    t ^= x(w.P(20));
    out.set(9, t ^ x(w.D(3)));
    t ^= z4;
    out.set(5, t ^ x(w.D(2)));
    t ^= x(w.P(27));
    out.set(1, t ^ x(w.D(1)));
    return out;
}

Monomial ones_mask(const CipherState& s, RoundBits bits) {
    Monomial m;
    for (int i = 1; i <= 36; ++i) {
        if (s.bit(i)) m = m * Monomial::of(VarId::state(i));
    }
    if (bits.F) m = m * Monomial::of(VarId::F());
    if (bits.K) m = m * Monomial::of(VarId::K());
    if (bits.L) m = m * Monomial::of(VarId::L());
    return m;
}

Assignment assignment(const CipherState& s, RoundBits bits) {
    Assignment a;
    for (int i = 1; i <= 36; ++i) a.set(VarId::state(i), s.bit(i));
    a.set(VarId::F(), bits.F).set(VarId::K(), bits.K).set(VarId::L(), bits.L);
    return a;
}

// ------------------------------------------------------------ round system

std::string_view to_string(RoundMode m) {
    switch (m) {
        case RoundMode::Placeholder: return "placeholder";
        case RoundMode::Expanded: return "expanded";
        case RoundMode::Symbolic: return "symbolic";
    }
    return "?";
}

Substitution RoundSystem::as_substitution() const {
    Substitution s;
    for (int j = 1; j <= 36; ++j) s.set(VarId::state(j), output(j));
    return s;
}

RoundSystem round_system(const Wiring& w, RoundMode mode, const std::optional<BoolFun6>& f) {
    if (const auto report = validate(w); !report.valid()) throw WiringError(report.errors.front());
    if (mode == RoundMode::Expanded && !f) throw Error("expanded round system needs a Boolean function");

    auto x = [&](int i) -> Polynomial { return i == 0 ? VarId::K() : VarId::state(i); };
    auto xv = [&](int i) { return VarId::state(w.P(i)); };

    RoundSystem rs;
    rs.instances_[0] = {VarId::placeholder(1), {VarId::L(), xv(1), xv(2), xv(3), xv(4), xv(5)}};
    rs.instances_[1] = {VarId::placeholder(2), {xv(7), xv(8), xv(9), xv(10), xv(11), xv(12)}};
    rs.instances_[2] = {VarId::placeholder(3), {xv(14), xv(15), xv(16), xv(17), xv(18), xv(19)}};
    rs.instances_[3] = {VarId::placeholder(4), {xv(21), xv(22), xv(23), xv(24), xv(25), xv(26)}};

    for (int i = 1; i < 36; ++i) {
        if (i % 4 != 0) rs.outputs_[static_cast<std::size_t>(i)] = VarId::state(i);
    }
    auto y = [&](int j) -> Polynomial& { return rs.outputs_[static_cast<std::size_t>(j - 1)]; };
    const Polynomial F = VarId::F();
    const Polynomial L = VarId::L();
    Polynomial t = F;
    y(33) = t + x(w.D(9));
    t += VarId::placeholder(1);
    y(29) = t + x(w.D(8));
    t += x(w.P(6));
    y(25) = t + x(w.D(7));
    t += VarId::placeholder(2);
    y(21) = t + x(w.D(6));
    t += x(w.P(13));
    y(17) = t + x(w.D(5));
    t += L + VarId::placeholder(3);
    y(13) = t + x(w.D(4));
    t += x(w.P(20));
    y(9) = t + x(w.D(3));
    t += VarId::placeholder(4);
    y(5) = t + x(w.D(2));
    t += x(w.P(27));
    y(1) = t + x(w.D(1));

    rs.mode_ = RoundMode::Placeholder;
    switch (mode) {
        case RoundMode::Placeholder: return rs;
        case RoundMode::Expanded: return expand(rs, f);
        case RoundMode::Symbolic: return expand(rs, std::nullopt);
    }
    return rs;
}

RoundSystem expand(const RoundSystem& placeholder, const std::optional<BoolFun6>& f) {
    if (placeholder.mode() != RoundMode::Placeholder) throw Error("expand: round system is already expanded");
    Substitution s;
    for (int k = 1; k <= 4; ++k) {
        const auto& inst = placeholder.instance(k);
        s.set(inst.placeholder, f ? f->compose(inst.args) : symbolic_instance(inst.args));
    }
    RoundSystem out = placeholder;
    out.mode_ = f ? RoundMode::Expanded : RoundMode::Symbolic;
    for (auto& y : out.outputs_) y = substitute(y, s);
    return out;
}

CipherState evaluate(const RoundSystem& rs, const CipherState& s, RoundBits bits) {
    if (rs.mode() != RoundMode::Expanded) throw Error("only an expanded round system can be evaluated on bits");
    const Monomial ones = ones_mask(s, bits);
    CipherState out;
    for (int j = 1; j <= 36; ++j) out.set(j, evaluate_unchecked(rs.output(j), ones));
    return out;
}

}  // namespace invforge
