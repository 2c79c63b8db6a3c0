// invforge command line.  Exit codes: 0 success / verdict true, 1 verdict
// false, 2 usage or input error, 3 term budget exceeded.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <thread>

#include "invforge/anf.hpp"
#include "invforge/boolfun.hpp"
#include "invforge/cipher.hpp"
#include "invforge/fe.hpp"
#include "invforge/lab.hpp"
#include "invforge/lincycle.hpp"

using namespace invforge;
using json = nlohmann::ordered_json;

constexpr std::size_t kShownTerms = 4096;

namespace {

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// One record per line.  Text mode prints "kind key=value ..."; a "message"
// field is printed on its own.
class Out {
public:
    explicit Out(bool jsonl) : jsonl_(jsonl) {}

    void record(const std::string& kind, const json& fields) {
        if (jsonl_) {
            json j;
            j["record"] = kind;
            for (auto it = fields.begin(); it != fields.end(); ++it) j[it.key()] = it.value();
            std::cout << j.dump() << '\n';
            return;
        }
        if (fields.contains("message")) {
            std::cout << fields["message"].get<std::string>() << '\n';
            return;
        }
        std::cout << kind;
        for (auto it = fields.begin(); it != fields.end(); ++it) std::cout << ' ' << it.key() << '=' << text(it.value());
        std::cout << '\n';
    }

private:
    static std::string text(const json& v) {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_array()) {
            std::string s;
            for (const auto& e : v) s += (s.empty() ? "" : ",") + text(e);
            return s.empty() ? "-" : s;
        }
        return v.dump();
    }
    bool jsonl_;
};

bool stdin_taken = false;

std::string read_input(const std::string& path) {
    std::stringstream ss;
    if (path == "-") {
        if (stdin_taken) throw UsageError("only one input may be read from stdin");
        stdin_taken = true;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

Wiring wiring_from(const std::string& path) { return path.empty() ? lzs_265_like() : parse_wiring(read_input(path)); }

BoolFun6 boolfun_from(const std::string& path) {
    if (path.empty()) throw UsageError("--boolfun is required");
    return parse_boolfun(read_input(path));
}

Polynomial poly_from(const std::string& path, const char* flag) {
    if (path.empty()) throw UsageError(std::string(flag) + " is required");
    return parse_file_text(read_input(path));
}

unsigned thread_count() {
    unsigned n = std::max(1U, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("INVFORGE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1) throw UsageError("INVFORGE_THREADS must be a positive integer");
        n = std::min<unsigned>(n, static_cast<unsigned>(v));
    }
    return n;
}

json names(const std::vector<VarId>& vs) {
    json a = json::array();
    for (VarId v : vs) a.push_back(name(v));
    return a;
}

std::string hex36(const gf2::BitVec& v) { return CipherState(v.word()).to_hex(); }

std::string factor_text(const Polynomial& f) {
    if (auto d = LinearFormBank::describe(f)) return *d;
    return render(f);
}

std::uint64_t parse_mask(const std::string& m) {
    if (m == "lowercase26") return lowercase26_mask();
    if (m == "all") return CipherState::kMask;
    std::size_t pos = 0;
    std::uint64_t v = 0;
    try {
        v = std::stoull(m, &pos, 16);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos == 0 || pos != m.size()) throw UsageError("--mask must be lowercase26, all or a hex bit mask");
    return v & CipherState::kMask;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"invforge: polynomial invariant workbench for T-310"};
    app.require_subcommand(1, 1);
    app.fallthrough();

    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "jsonl"}));

    std::string lzs, invariant_path, boolfun_path, poly_path;
    std::uint64_t seed = 1;
    std::uint64_t trials = 1000;
    std::size_t budget = kDefaultTermBudget;

    auto add_lzs = [&](CLI::App* c) { c->add_option("--lzs", lzs, "Wiring file (default: built-in 265-like)"); };
    auto add_boolfun = [&](CLI::App* c) { return c->add_option("--boolfun", boolfun_path, "Boolean function (ANF or hex)"); };
    auto add_invariant = [&](CLI::App* c) { return c->add_option("--invariant", invariant_path, "Invariant polynomial"); };

    // fe
    auto* fe_cmd = app.add_subcommand("fe", "Build and reduce the fundamental equation");
    std::string mode = "expanded";
    bool show = false;
    add_lzs(fe_cmd);
    add_invariant(fe_cmd)->required();
    add_boolfun(fe_cmd);
    fe_cmd->add_option("--mode", mode, "Round mode")->check(CLI::IsMember({"expanded", "placeholder", "symbolic"}));
    fe_cmd->add_option("--budget", budget, "Term budget");
    bool symbolic_flag = false;
    fe_cmd->add_flag("--show", show, "Print the reduced polynomial even when it is large");
    fe_cmd->add_flag("--symbolic", symbolic_flag, "Same as --mode symbolic");

    // verify-thm
    auto* vt_cmd = app.add_subcommand("verify-thm", "Re-check the degree-7 invariant step by step");
    std::string variant = "theorem";
    std::uint64_t vt_trials = 10000;
    add_lzs(vt_cmd);
    add_boolfun(vt_cmd)->required();
    add_invariant(vt_cmd);
    vt_cmd->add_option("--variant", variant, "Built-in invariant")->check(CLI::IsMember({"theorem", "appendix"}));
    vt_cmd->add_option("--trials", vt_trials, "Empirical trials for generic invariants");
    std::string report = "steps";
    vt_cmd->add_option("--report", report, "steps or summary")->check(CLI::IsMember({"steps", "summary"}));

    // annihilators / absorbers
    auto* an_cmd = app.add_subcommand("annihilators", "Basis of low-degree annihilators");
    auto* ab_cmd = app.add_subcommand("absorbers", "Low-degree absorbers g with f*g = f");
    int deg = 1;
    bool complement = false;
    for (auto* c : {an_cmd, ab_cmd}) {
        c->add_flag("--complement", complement, "Work with f+1 instead of f");
        add_boolfun(c);
        c->add_option("--poly", poly_path, "Polynomial instead of a Boolean function");
        c->add_option("--degree", deg, "Degree bound")->check(CLI::Range(0, 20));
    }

    // factor
    auto* fa_cmd = app.add_subcommand("factor", "Explore affine factorizations");
    std::size_t trees = 8;
    std::size_t branching = 2;
    fa_cmd->add_option("--poly", poly_path, "Polynomial")->required();
    fa_cmd->add_option("--trees", trees, "Number of trees")->check(CLI::Range(1, 1024));
    fa_cmd->add_option("--branching", branching, "Candidates per node")->check(CLI::Range(1, 64));
    fa_cmd->add_option("--seed", seed, "Seed");

    // linear-cycle
    auto* lc_cmd = app.add_subcommand("linear-cycle", "Periods of linear functionals with Z = 0");
    std::size_t max_period = 256;
    std::string mask = "lowercase26";
    add_lzs(lc_cmd);
    lc_cmd->add_option("--max-period", max_period, "Largest period examined");
    lc_cmd->add_option("--mask", mask, "Weight mask: lowercase26, all or hex");

    // search
    auto* se_cmd = app.add_subcommand("search", "Random Boolean function search");
    std::string plant_path;
    add_lzs(se_cmd);
    add_invariant(se_cmd)->required();
    se_cmd->add_option("--trials", trials, "Number of functions");
    se_cmd->add_option("--seed", seed, "Seed");
    se_cmd->add_option("--plant", plant_path, "Function placed at trial 0");

    // step
    auto* st_cmd = app.add_subcommand("step", "Encrypt rounds on concrete bits");
    std::string state_hex;
    int rounds = 1;
    int fbit = 0, kbit = 0, lbit = 0;
    bool poly_path_eval = false;
    add_lzs(st_cmd);
    add_boolfun(st_cmd)->required();
    st_cmd->add_option("--state", state_hex, "State, 9 hex digits (x36 first)")->required();
    st_cmd->add_option("--rounds", rounds, "Rounds")->check(CLI::Range(1, 1 << 20));
    st_cmd->add_option("--F", fbit, "Public bit")->check(CLI::Range(0, 1));
    st_cmd->add_option("--K", kbit, "Key bit S1")->check(CLI::Range(0, 1));
    st_cmd->add_option("--L", lbit, "Key bit S2")->check(CLI::Range(0, 1));
    st_cmd->add_flag("--polynomial", poly_path_eval, "Evaluate the round polynomials instead of bits");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    }

    Out out(format == "jsonl");
    try {
        if (*fe_cmd) {
            const Wiring w = wiring_from(lzs);
            const Polynomial p = poly_from(invariant_path, "--invariant");
            if (symbolic_flag) mode = "symbolic";
            const RoundMode rm = mode == "expanded" ? RoundMode::Expanded
                                 : mode == "symbolic" ? RoundMode::Symbolic
                                                      : RoundMode::Placeholder;
            std::optional<BoolFun6> f;
            if (!boolfun_path.empty()) f = boolfun_from(boolfun_path);
            if (rm == RoundMode::Expanded && !f) throw UsageError("--boolfun is required in expanded mode");
            const RoundSystem rs = round_system(w, rm, rm == RoundMode::Expanded ? f : std::nullopt);
            const FeReport r = build_fe(p, rs, budget);
            json fields{{"mode", std::string(to_string(r.mode))},
                        {"is_zero", r.is_zero},
                        {"terms", r.fe.size()},
                        {"degree", degree(r.fe)},
                        {"depends_on", names(r.depends_on)},
                        {"round_bits", r.depends_on_round_bits()}};
            if (show || r.fe.size() <= kShownTerms) {
                fields["fe"] = render(r.fe);
            } else {
                fields["fe_omitted"] = true;
            }
            out.record("fe", fields);
            if (rm == RoundMode::Symbolic) {
                if (f) {
                    const bool ok = check_candidate(r, *f);
                    out.record("candidate", {{"boolfun", to_hex(*f)}, {"fe_vanishes", ok}});
                    return ok ? 0 : 1;
                }
                const auto sys = extract_linear_system(r.fe);
                if (!sys) {
                    out.record("linear_system", {{"linear", false}});
                    return r.is_zero ? 0 : 1;
                }
                const auto sol = solve(*sys);
                json fs{{"linear", true}, {"equations", sys->row_monomials.size()}, {"solvable", sol.has_value()}};
                if (sol) {
                    fs["particular"] = to_hex(BoolFun6::from_anf(sol->particular));
                    fs["kernel_dim"] = sol->kernel.size();
                }
                out.record("linear_system", fs);
                return sol ? 0 : 1;
            }
            return r.is_zero ? 0 : 1;
        }

        if (*vt_cmd) {
            const Wiring w = wiring_from(lzs);
            const BoolFun6 f = boolfun_from(boolfun_path);
            ProofReport rep;
            std::string target = variant;
            if (!invariant_path.empty()) {
                rep = verify_invariant(w, f, poly_from(invariant_path, "--invariant"), vt_trials);
                target = "file";
            } else if (variant == "appendix") {
                rep = verify_invariant(w, f, appendix_invariant(), vt_trials);
            } else {
                try {
                    rep = verify_proof_chain(w, f);
                } catch (const HypothesisViolation& e) {
                    out.record("hypothesis", {{"holds", false}, {"detail", e.what()}});
                    out.record("verdict", {{"message", std::string("HYPOTHESIS VIOLATED: ") + e.what()}});
                    return 1;
                }
            }
            out.record("target", {{"invariant", target}, {"boolfun", to_hex(f)}});
            if (report == "steps") {
                for (const auto& h : rep.hypotheses) out.record("hypothesis", {{"name", h.name}, {"holds", h.holds}});
                for (const auto& s : rep.steps) {
                    out.record("step", {{"id", s.id}, {"passed", s.passed}, {"claim", s.claim}, {"detail", s.detail}});
                }
            }
            const bool ok = rep.all_passed();
            if (format == "jsonl") {
                out.record("verdict", {{"all_passed", ok}});
            } else {
                out.record("verdict", {{"message", ok ? "ALL STEPS PASS" : "SOME STEPS FAIL"}});
            }
            return ok ? 0 : 1;
        }

        if (*an_cmd || *ab_cmd) {
            const bool absorb = static_cast<bool>(*ab_cmd);
            Polynomial p;
            if (!poly_path.empty()) {
                p = poly_from(poly_path, "--poly");
            } else {
                p = boolfun_from(boolfun_path).polynomial();
            }
            if (complement) p += Polynomial::one();
            if (p.is_zero()) throw UsageError("polynomial is zero");
            const AnnihilatorBasis ann = annihilators(p, deg);
            out.record(absorb ? "absorbers" : "annihilators",
                       {{"degree_bound", ann.degree_bound}, {"variables", names(ann.variables)},
                        {"dimension", ann.dimension()}});
            for (std::size_t i = 0; i < ann.basis.size(); ++i) {
                // Absorbers form the coset 1 + (annihilator space).
                const Polynomial g = absorb ? ann.basis[i] + 1 : ann.basis[i];
                out.record("basis", {{"index", i}, {"poly", render(g)}});
            }
            return 0;
        }

        if (*fa_cmd) {
            const Polynomial p = poly_from(poly_path, "--poly");
            FactorSearchOptions opt;
            opt.max_trees = trees;
            opt.seed = seed;
            opt.branching = branching;
            const auto found = explore_factorizations(p, opt);
            std::set<std::vector<std::string>> sets;
            bool all_ok = true;
            for (std::size_t t = 0; t < found.size(); ++t) {
                const bool ok = verify(found[t]);
                all_ok = all_ok && ok;
                const auto ps = paths(found[t]);
                out.record("tree", {{"index", t}, {"nodes", node_count(found[t])}, {"paths", ps.size()}, {"verified", ok}});
                for (std::size_t i = 0; i < ps.size(); ++i) {
                    std::vector<std::string> fs;
                    for (const auto& f : ps[i].factors) fs.push_back(factor_text(f));
                    out.record("path", {{"tree", t}, {"index", i}, {"factors", fs}, {"leaf", render(ps[i].leaf)}});
                    std::sort(fs.begin(), fs.end());
                    sets.insert(fs);
                }
            }
            out.record("summary", {{"trees", found.size()}, {"distinct_factor_sets", sets.size()}, {"verified", all_ok}});
            return all_ok ? 0 : 1;
        }

        if (*lc_cmd) {
            const AffineRound ar = affine_of(wiring_from(lzs));
            const std::uint64_t m = parse_mask(mask);
            const auto classes = linear_invariant_periods(ar, max_period);
            for (const auto& pc : classes) {
                out.record("period", {{"period", pc.period}, {"dim", pc.basis.size()}, {"total_dim", pc.total_dimension}});
                for (const auto& u : pc.basis) {
                    out.record("functional", {{"period", pc.period},
                                              {"u", hex36(u)},
                                              {"weights", weight_sequence(orbit(ar, u, pc.period), m)}});
                }
            }
            out.record("summary", {{"max_period", max_period}, {"classes", classes.size()}});
            return 0;
        }

        if (*se_cmd) {
            const Wiring w = wiring_from(lzs);
            const Polynomial p = poly_from(invariant_path, "--invariant");
            std::vector<BoolFun6> planted;
            if (!plant_path.empty()) planted.push_back(boolfun_from(plant_path));
            const auto rep = search_random_functions(w, p, trials, seed, planted, thread_count());
            for (const auto& h : rep.hits) out.record("hit", {{"trial", h.trial}, {"boolfun", to_hex(h.function)}});
            out.record("summary", {{"trials", rep.trials},
                                   {"hits", rep.hits.size()},
                                   {"rejected_by_sampling", rep.rejected_by_sampling},
                                   {"symbolic_checks", rep.symbolic_checks},
                                   {"frequency", rep.frequency},
                                   {"wilson_low", rep.wilson_low},
                                   {"wilson_high", rep.wilson_high}});
            return 0;
        }

        if (*st_cmd) {
            const Wiring w = wiring_from(lzs);
            const BoolFun6 f = boolfun_from(boolfun_path);
            const RoundBits bits{fbit != 0, kbit != 0, lbit != 0};
            CipherState s = CipherState::from_hex(state_hex);
            std::optional<RoundSystem> rs;
            if (poly_path_eval) rs = round_system(w, RoundMode::Expanded, f);
            for (int r = 1; r <= rounds; ++r) s = rs ? evaluate(*rs, s, bits) : step(s, w, f, bits);
            out.record("state", {{"rounds", rounds}, {"path", poly_path_eval ? "polynomial" : "direct"}, {"state", s.to_hex()}});
            return 0;
        }
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget exceeded: " << e.what() << '\n';
        return 3;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
