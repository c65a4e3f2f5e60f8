// Command-line calculator for arithmetic in higher local fields of
// characteristic p: pairings, symbol decompositions, norms, reciprocity
// character data, and the property check suites.
//
// Exit codes: 0 success, 1 failed check suite, 2 domain error, 3 parse error.

#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "hlf/cft.hpp"
#include "hlf/parser.hpp"
#include "hlf/session.hpp"
#include "hlf/suites.hpp"

using namespace hlf;
using nlohmann::json;

namespace {

struct Output {
    bool as_json = false;
    json j = json::object();
    std::ostringstream lines;

    void kv(const std::string& key, const std::string& value) {
        lines << key << "=" << value << "\n";
        j[key] = value;
    }
    void flush() {
        if (as_json)
            std::cout << j.dump(2) << "\n";
        else
            std::cout << lines.str();
    }
};

std::string frac_str(const PadicFrac& f, u64 p) {
    if (f.num == 0) return "0";
    u64 den = 1;
    for (int i = 0; i < f.level; ++i) den *= p;
    return std::to_string(f.num) + "/" + std::to_string(den);
}

std::string tame_vec_str(const std::vector<u64>& v) {
    std::string s = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + ")";
}

std::string peel_key_str(const FqField& k, const PeelKey& key, int n) {
    std::string s = "[" + k.to_string(k.basis_elem(key.theta_idx)) + ";(";
    for (int c = 0; c < n; ++c) {
        if (c) s += ",";
        s += std::to_string(key.i.e[c]);
    }
    return s + ")]";
}

void emit_vk(Output& out, const std::string& prefix, const FqField& k, int n, const PeelTable& t) {
    for (const auto& [key, e] : t.a) out.kv(prefix + peel_key_str(k, key, n), std::to_string(e));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact arithmetic in n-dimensional local fields of characteristic p"};
    app.require_subcommand(1);
    app.fallthrough();

    SessionConfig cfg;
    std::string config_file;
    bool as_json = false;
    app.add_option("--config", config_file, "key=value config file (flags win)");
    auto* optp = app.add_option("--p", cfg.p, "residue characteristic");
    auto* optf = app.add_option("--f", cfg.f, "residue degree, q = p^f");
    auto* optn = app.add_option("--n", cfg.n, "number of variables");
    std::string window_opt;
    auto* optw = app.add_option("--window", window_opt, "exponent window: radius or lo:hi,lo:hi per variable");
    auto* optr = app.add_option("--r", cfg.r, "truncation level (Witt length)");
    auto* opts = app.add_option("--seed", cfg.seed, "seed for property suites");
    auto* optt = app.add_option("--threads", cfg.threads, "worker threads for matrix assembly");
    std::vector<u64> modulus_opt;
    auto* optm = app.add_option("--modulus", modulus_opt, "residue modulus coefficients, low degree first");
    app.add_flag("--json", as_json, "emit JSON instead of key=value lines");

    std::string arg_sym, arg_witt, arg_series, arg_ext, suite = "all";
    std::vector<std::string> arg_queries;

    auto* c_val = app.add_subcommand("val", "valuation map of a degree-n symbol");
    c_val->add_option("symbol", arg_sym)->required();

    auto* c_tame = app.add_subcommand("tame", "iterated tame symbol of a degree-(n+1) symbol");
    c_tame->add_option("symbol", arg_sym)->required();

    auto* c_pair = app.add_subcommand("pair", "Artin-Schreier-Witt pairing of a symbol with a Witt vector");
    c_pair->add_option("symbol", arg_sym)->required();
    c_pair->add_option("witt", arg_witt)->required();

    auto* c_dec = app.add_subcommand("decompose", "canonical coordinates of a degree-n symbol");
    c_dec->add_option("symbol", arg_sym)->required();

    auto* c_peel = app.add_subcommand("peel", "generator exponents of a principal unit");
    c_peel->add_option("series", arg_series)->required();

    auto* c_norm = app.add_subcommand("norm", "norm of a symbol from a cyclic extension");
    c_norm->add_option("--ext", arg_ext, "unram:<l> or tame:<l>@<i>")->required();
    c_norm->add_option("symbol", arg_sym)->required();

    auto* c_recip = app.add_subcommand("recip", "reciprocity character data of a degree-n symbol");
    c_recip->add_option("symbol", arg_sym)->required();
    c_recip->add_option("--query", arg_queries, "defining Witt vector(s) w(...) for the p-part");

    auto* c_check = app.add_subcommand("check", "run a property suite");
    c_check->add_option("suite", suite, "suite name or 'all'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (!config_file.empty()) {
            SessionConfig file_cfg;
            file_cfg.load_file(config_file);
            // flags win over file values
            if (!*optp) cfg.p = file_cfg.p;
            if (!*optf) cfg.f = file_cfg.f;
            if (!*optn) cfg.n = file_cfg.n;
            if (!*optw) {
                cfg.window_radius = file_cfg.window_radius;
                cfg.window_lo = file_cfg.window_lo;
                cfg.window_hi = file_cfg.window_hi;
            }
            if (!*optr) cfg.r = file_cfg.r;
            if (!*opts) cfg.seed = file_cfg.seed;
            if (!*optt) cfg.threads = file_cfg.threads;
            if (!*optm && !file_cfg.modulus.empty()) cfg.modulus = file_cfg.modulus;
        }
        if (*optm) cfg.modulus = modulus_opt;
        if (*optw) cfg.set_window(window_opt);
        worker_count().store(cfg.threads);

        Output out;
        out.as_json = as_json;

        if (*c_check) {
            auto results = run_suite(suite, cfg.seed);
            bool all = true;
            for (const auto& r : results) {
                out.kv("check." + r.name, std::string(r.pass ? "PASS" : "FAIL") + " (" + r.detail + ")");
                all = all && r.pass;
            }
            out.kv("check.summary", all ? "PASS" : "FAIL");
            out.flush();
            return all ? 0 : 1;
        }

        Session session(cfg);
        const FqSeriesRing& SR = session.ring;

        if (*c_val) {
            SymbolSum s = eval_symbol_sum(SR, parse_symbol_sum(arg_sym));
            s.deg = s.terms.empty() ? SR.n : s.deg;
            out.kv("val", std::to_string(val_map(SR, s)));
        } else if (*c_tame) {
            SymbolSum s = eval_symbol_sum(SR, parse_symbol_sum(arg_sym));
            FqElem v = tame_full(SR, s);
            out.kv("tame", "g^" + std::to_string(SR.k.q > 2 ? SR.k.dlog(v) : 0));
        } else if (*c_pair) {
            SymbolSum s = eval_symbol_sum(SR, parse_symbol_sum(arg_sym));
            s.deg = s.terms.empty() ? SR.n : s.deg;
            std::vector<FqSeries> w = eval_witt(SR, parse_witt(arg_witt));
            if (static_cast<int>(w.size()) != cfg.r)
                throw DomainError("Witt literal has " + std::to_string(w.size()) + " components but r = " +
                                  std::to_string(cfg.r));
            u64 v = session.K->pc.pair(s, w);
            out.kv("pair", std::to_string(v) + " mod " + std::to_string(session.K->pc.pr));
            out.kv("limit", frac_str(session.K->pc.pair_limit(s, w), cfg.p));
        } else if (*c_dec) {
            SymbolSum s = eval_symbol_sum(SR, parse_symbol_sum(arg_sym));
            s.deg = s.terms.empty() ? SR.n : s.deg;
            KDecomp d = session.K->decompose(s);
            out.kv("vZ", std::to_string(d.vZ));
            out.kv("tame", tame_vec_str(d.tame));
            emit_vk(out, "vk", SR.k, SR.n, d.vk);
        } else if (*c_peel) {
            FqSeries u = eval_series(SR, parse_series(arg_series));
            PeelTable t = unit_peel(SR, u, cfg.r);
            emit_vk(out, "peel", SR.k, SR.n, t);
            out.kv("peel.level", std::to_string(cfg.r));
        } else if (*c_norm) {
            size_t colon = arg_ext.find(':');
            if (colon == std::string::npos) throw DomainError("--ext expects unram:<l> or tame:<l>@<i>");
            std::string kind = arg_ext.substr(0, colon), rest = arg_ext.substr(colon + 1);
            if (kind == "unram") {
                UnramifiedExt E(SR, std::stoi(rest));
                KClassContext KL(E.LS, cfg.r);
                SymbolSum s = eval_symbol_sum(E.LS, parse_symbol_sum(arg_sym));
                SymbolSum ns = norm_ksym(KL, E, s);
                out.kv("norm", symbol_to_string(SR, ns));
            } else if (kind == "tame") {
                size_t at = rest.find('@');
                int ell = std::stoi(rest.substr(0, at == std::string::npos ? rest.size() : at));
                int var = at == std::string::npos ? 1 : std::stoi(rest.substr(at + 1));
                TameExt E(SR, ell, var);
                KClassContext KL(E.LS, cfg.r);
                SymbolSum s = eval_symbol_sum(E.LS, parse_symbol_sum(arg_sym));
                SymbolSum ns = norm_ksym(KL, E, s);
                out.kv("norm", symbol_to_string(SR, ns));
            } else {
                throw DomainError("unknown extension kind: " + kind);
            }
        } else if (*c_recip) {
            SymbolSum s = eval_symbol_sum(SR, parse_symbol_sum(arg_sym));
            s.deg = s.terms.empty() ? SR.n : s.deg;
            std::vector<std::vector<FqSeries>> queries;
            for (const auto& q : arg_queries) {
                auto w = eval_witt(SR, parse_witt(q));
                if (static_cast<int>(w.size()) != cfg.r)
                    throw DomainError("query Witt literal does not match r = " + std::to_string(cfg.r));
                queries.push_back(std::move(w));
            }
            ReciprocityReport rep = reciprocity_report(*session.K, s, queries);
            out.kv("ur", std::to_string(rep.ur_exponent));
            out.kv("tame", tame_vec_str(rep.tame_chars));
            for (size_t i = 0; i < rep.p_chars.size(); ++i)
                out.kv("p[" + arg_queries[i] + "]",
                       std::to_string(rep.p_chars[i].second) + " mod " + std::to_string(session.K->pc.pr));
            out.kv("agree", rep.overlaps_agree ? "yes" : "no");
        }

        out.flush();
        return 0;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}
