// charsum: evaluate finite character sums, verify the exact identities they
// satisfy, fit L-series weights, and run the cubic-moment harness.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "charsum/analytic.hpp"
#include "charsum/budget.hpp"
#include "charsum/characters.hpp"
#include "charsum/errors.hpp"
#include "charsum/lweights.hpp"
#include "charsum/paper_sums.hpp"
#include "charsum/sums.hpp"
#include "charsum/verify.hpp"

using namespace charsum;
using nlohmann::ordered_json;

namespace {

std::string fmt_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error(errc::invalid_input, "cannot open output file: " + path);
    out << content;
}

ordered_json sum_json(const std::string& kind, ordered_json params, const SumValue& v,
                      std::optional<double> angle = std::nullopt) {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "sum";
    j["kind"] = kind;
    j["params"] = std::move(params);
    j["value"] = {v.value.real(), v.value.imag()};
    j["abs_error"] = v.abs_error;
    j["method"] = method_name(v.method);
    if (angle) j["angle"] = *angle;
    return j;
}

void emit_sum(const std::string& format, const ordered_json& j) {
    if (format == "json") {
        std::cout << j.dump(2) << "\n";
    } else {
        double re = j["value"][0], im = j["value"][1];
        std::cout << j["kind"].get<std::string>() << " = " << fmt_double(re);
        if (im != 0.0) std::cout << (im > 0 ? "+" : "") << fmt_double(im) << "i";
        if (j.contains("angle")) std::cout << "  angle=" << fmt_double(j["angle"].get<double>());
        std::cout << "  (" << j["method"].get<std::string>() << ", abs_error<="
                  << fmt_double(j["abs_error"].get<double>()) << ")\n";
    }
}

MultChar psi_by_index(i64 q, i64 index) {
    auto chars = enumerate_characters(Modulus(q));
    if (index < 0 || index >= static_cast<i64>(chars.size()))
        throw error(errc::invalid_input,
                    "psi index out of range: have " + std::to_string(chars.size()) + " characters");
    return chars[static_cast<std::size_t>(index)];
}

std::string moment_csv(const MomentReport& rep) {
    std::string csv = "c,S_c,c^-2*S_c,cumulative\n";
    for (const auto& row : rep.per_c) {
        csv += std::to_string(row.c) + "," + fmt_double(row.S_c) + "," + fmt_double(row.contrib) +
               "," + fmt_double(row.cumulative) + "\n";
    }
    return csv;
}

ordered_json moment_json(const MomentReport& rep) {
    ordered_json j;
    j["schema_version"] = 1;
    j["command"] = "moment";
    j["config"] = {{"q", rep.config.q},       {"k", rep.config.k},       {"N_max", rep.config.N_max},
                   {"N_eff", rep.N_eff},      {"C_max", rep.config.C_max}, {"d_max", rep.config.d_max}};
    j["diagonal"] = rep.D_value;
    j["kloosterman_part"] = rep.kloosterman_part;
    j["total"] = rep.total;
    j["tails"] = {{"modulus", rep.tail_modulus},
                  {"box", rep.tail_box},
                  {"diagonal", rep.tail_diagonal},
                  {"total", rep.tail_estimate}};
    const Budget& b = global_budget();
    j["budgets"] = {{"ext_field", b.ext_field},
                    {"g_cube", b.g_cube},
                    {"h_double_sum", b.h_double_sum},
                    {"kloosterman_c", b.kloosterman_c},
                    {"moment_c", b.moment_c}};
    return j;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite character sums: Kloosterman/Gauss/Ramanujan, the complete twisted sums "
                 "G and H, hybrid sums g(chi,psi), L-series weight fits, and the cubic-moment "
                 "right-hand side"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string format = "text";
    int workers = 1;
    app.add_option("--format", format, "output format: text|json|csv")->default_val("text");
    app.add_option("--workers", workers, "worker threads (results are identical for any count)")
        ->default_val(1);
    std::string budget_spec;
    app.add_option("--budget", budget_spec, "budget overrides, e.g. ext_field=65536,g_cube=120");

    // ------------------------------------------------------------------ sum
    auto* sum = app.add_subcommand("sum", "evaluate a single sum");
    sum->require_subcommand(1);
    i64 a_m = 0, a_n = 0, a_c = 1, a_q = 5, a_r = 1, a_w = 0, a_m1 = 0, a_m2 = 0, a_psi = -1;
    bool a_angle = false, a_reduced = false, a_closed = false;

    auto* s_kl = sum->add_subcommand("kloosterman", "S(m, n; c)");
    s_kl->add_option("--m", a_m)->required();
    s_kl->add_option("--n", a_n)->required();
    s_kl->add_option("--c", a_c)->required();
    s_kl->add_flag("--angle", a_angle, "also report the angle (prime c, (mn,c)=1)");

    auto* s_ga = sum->add_subcommand("gauss", "tau(psi) for a character mod q");
    s_ga->add_option("--q", a_q)->required();
    s_ga->add_option("--psi", a_psi, "character index (default: the Jacobi character)");

    auto* s_ra = sum->add_subcommand("ramanujan", "R(m; q)");
    s_ra->add_option("--m", a_m)->required();
    s_ra->add_option("--q", a_q)->required();

    auto* s_h = sum->add_subcommand("H", "H(w; q), optionally the reduced variant");
    s_h->add_option("--w", a_w)->required();
    s_h->add_option("--q", a_q)->required();
    s_h->add_flag("--reduced", a_reduced);

    auto* s_g = sum->add_subcommand("g", "g(chi, psi) mod q");
    s_g->add_option("--q", a_q)->required();
    s_g->add_option("--psi", a_psi, "character index")->required();

    auto* s_gg = sum->add_subcommand("G", "G(m, m1, m2; qr), brute force or closed form");
    s_gg->add_option("--m", a_m)->required();
    s_gg->add_option("--m1", a_m1)->required();
    s_gg->add_option("--m2", a_m2)->required();
    s_gg->add_option("--q", a_q)->required();
    s_gg->add_option("--r", a_r)->default_val(1);
    s_gg->add_flag("--closed", a_closed, "evaluate the closed form G' instead");

    // --------------------------------------------------------------- verify
    auto* verify = app.add_subcommand("verify", "run an identity suite; exit 1 on any failure");
    std::string scope_str = "all", verify_out;
    verify->add_option("--scope", scope_str, "classical|paper|extension|analytic|all")->required();
    verify->add_option("--out", verify_out, "report file (default: stdout)");

    // ----------------------------------------------------------------- lfit
    auto* lfit = app.add_subcommand("lfit", "fit the L-series recurrence for one psi");
    i64 f_p = 5, f_psi = 1;
    int f_terms = 0;
    lfit->add_option("--p", f_p)->required();
    lfit->add_option("--psi", f_psi, "character index mod p")->required();
    lfit->add_option("--terms", f_terms, "sequence length M (default: budget-limited)");

    // --------------------------------------------------------------- moment
    auto* moment = app.add_subcommand("moment", "cubic-moment right-hand side");
    i64 m_q = 5, m_nmax = 0, m_cmax = 0, m_dmax = 0;
    int m_k = 12;
    std::string moment_out;
    moment->add_option("--q", m_q)->required();
    moment->add_option("--k", m_k)->required();
    moment->add_option("--nmax", m_nmax, "triple-sum cutoff (0 = auto)");
    moment->add_option("--cmax", m_cmax, "modulus cutoff (0 = auto)");
    moment->add_option("--dmax", m_dmax, "d-sum cutoff (0 = auto)");
    moment->add_option("--out", moment_out, "prefix: writes <prefix>.json and <prefix>.csv");

    // ---------------------------------------------------------------- table
    auto* table = app.add_subcommand(
        "table",
        "emit a machine-readable CSV table; byte-identical for identical parameters.\n"
        "columns: g_values: psi_index,re,im | weights: psi_index,principal,real_chi,order,"
        "residual,pass,weights,root_magnitudes | moment_breakdown: c,S_c,c^-2*S_c,cumulative |"
        " eta_coeffs: n,a_n");
    std::string t_kind, table_out;
    i64 t_p = 5, t_q = 5, t_N = 13;
    int t_k = 12, t_terms = 0;
    table->add_option("kind", t_kind, "g_values|weights|moment_breakdown|eta_coeffs")->required();
    table->add_option("--p", t_p);
    table->add_option("--q", t_q);
    table->add_option("--k", t_k);
    table->add_option("--N", t_N);
    table->add_option("--terms", t_terms);
    table->add_option("--out", table_out, "output file (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        ordered_json err{{"error", {{"kind", "usage"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }

    try {
        apply_budget_env();
        if (!budget_spec.empty()) apply_budget_spec(global_budget(), budget_spec);
        Parallelism par{workers};

        if (s_kl->parsed()) {
            if (a_angle) {
                auto r = kloosterman_with_angle(a_m, a_n, a_c);
                emit_sum(format, sum_json("kloosterman",
                                          {{"m", a_m}, {"n", a_n}, {"c", a_c}}, r.sum, r.angle));
            } else {
                emit_sum(format, sum_json("kloosterman", {{"m", a_m}, {"n", a_n}, {"c", a_c}},
                                          kloosterman(a_m, a_n, a_c)));
            }
        } else if (s_ga->parsed()) {
            Modulus mq(a_q);
            MultChar psi = a_psi < 0 ? jacobi_character(mq) : psi_by_index(a_q, a_psi);
            emit_sum(format, sum_json("gauss", {{"q", a_q}, {"psi", a_psi}}, gauss_sum(psi)));
        } else if (s_ra->parsed()) {
            emit_sum(format, sum_json("ramanujan", {{"m", a_m}, {"q", a_q}}, ramanujan_sum(a_m, a_q)));
        } else if (s_h->parsed()) {
            emit_sum(format, sum_json(a_reduced ? "H*" : "H", {{"w", a_w}, {"q", a_q}},
                                      H_sum(a_w, a_q, a_reduced)));
        } else if (s_g->parsed()) {
            Modulus mq(a_q);
            emit_sum(format, sum_json("g", {{"q", a_q}, {"psi", a_psi}},
                                      g_hybrid(jacobi_character(mq), psi_by_index(a_q, a_psi))));
        } else if (s_gg->parsed()) {
            SumValue v = a_closed ? G_closed(a_m, a_m1, a_m2, a_q, a_r)
                                  : G_brute(a_m, a_m1, a_m2, a_q, a_r);
            emit_sum(format, sum_json(a_closed ? "G'" : "G",
                                      {{"m", a_m}, {"m1", a_m1}, {"m2", a_m2}, {"q", a_q}, {"r", a_r}},
                                      v));
        } else if (verify->parsed()) {
            VerifyScope scope = parse_scope(scope_str);
            VerifyResult res = run_verify_suite(scope, par);
            std::string body = format == "json" ? verify_report_json(res, scope_str)
                                                : verify_report_text(res, scope_str);
            write_output(verify_out, body);
            return res.failures == 0 ? 0 : 1;
        } else if (lfit->parsed()) {
            if (f_terms <= 0) f_terms = default_audit_terms(f_p);
            MultChar psi = psi_by_index(f_p, f_psi);
            std::vector<std::complex<double>> seq(f_terms);
            for (int m = 1; m <= f_terms; ++m) seq[m - 1] = g_extension(f_p, m, psi, par).value;
            LSeriesFit fit = fit_lfunction(seq, f_p);
            fit.psi_index = f_psi;
            ordered_json j;
            j["schema_version"] = 1;
            j["command"] = "lfit";
            j["params"] = {{"p", f_p}, {"psi", f_psi}, {"terms", f_terms}};
            ordered_json seqj = ordered_json::array();
            for (auto& z : seq) seqj.push_back({z.real(), z.imag()});
            j["sequence"] = seqj;
            j["order"] = fit.order;
            ordered_json roots = ordered_json::array(), weights = ordered_json::array();
            for (auto& z : fit.reciprocal_roots) roots.push_back({z.real(), z.imag()});
            for (double w : fit.weights) weights.push_back(w);
            j["reciprocal_roots"] = roots;
            j["weights"] = weights;
            j["residual"] = fit.residual;
            j["pass"] = fit.pass;
            if (format == "json") {
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "order " << fit.order << ", residual " << fmt_double(fit.residual)
                          << (fit.pass ? " (accepted)" : " (REJECTED)") << "\n";
                for (std::size_t i = 0; i < fit.weights.size(); ++i)
                    std::cout << "  root " << format_complex(fit.reciprocal_roots[i]) << "  weight "
                              << fmt_double(fit.weights[i]) << "\n";
            }
        } else if (moment->parsed()) {
            MomentConfig cfg;
            cfg.q = m_q;
            cfg.k = m_k;
            cfg.N_max = m_nmax;
            cfg.C_max = m_cmax;
            cfg.d_max = m_dmax;
            MomentReport rep = cubic_moment_rhs(cfg, par);
            if (!moment_out.empty()) {
                write_output(moment_out + ".json", moment_json(rep).dump(2) + "\n");
                write_output(moment_out + ".csv", moment_csv(rep));
            }
            if (format == "json") {
                std::cout << moment_json(rep).dump(2) << "\n";
            } else if (format == "csv") {
                std::cout << moment_csv(rep);
            } else {
                std::cout << "D = " << fmt_double(rep.D_value) << "\n"
                          << "kloosterman part = " << fmt_double(rep.kloosterman_part) << "\n"
                          << "total = " << fmt_double(rep.total) << "\n"
                          << "tail estimate = " << fmt_double(rep.tail_estimate) << " (modulus "
                          << fmt_double(rep.tail_modulus) << ", box " << fmt_double(rep.tail_box)
                          << ", diagonal " << fmt_double(rep.tail_diagonal) << ")\n"
                          << "cutoffs: N_max=" << rep.config.N_max << " (effective " << rep.N_eff
                          << "), C_max=" << rep.config.C_max << ", d_max=" << rep.config.d_max << "\n";
            }
        } else if (table->parsed()) {
            std::string body;
            if (t_kind == "g_values") {
                auto gs = g_values_all(t_p);
                body = "psi_index,re,im\n";
                for (std::size_t i = 0; i < gs.size(); ++i)
                    body += std::to_string(i) + "," + fmt_double(gs[i].real()) + "," +
                            fmt_double(gs[i].imag()) + "\n";
            } else if (t_kind == "weights") {
                if (t_terms <= 0) t_terms = default_audit_terms(t_p);
                auto audit = weight_audit(t_p, t_terms, par);
                body = "psi_index,principal,real_chi,order,residual,pass,weights,root_magnitudes\n";
                for (const auto& row : audit) {
                    std::string ws, rs;
                    for (std::size_t i = 0; i < row.fit.weights.size(); ++i) {
                        if (i) { ws += ";"; rs += ";"; }
                        ws += fmt_double(row.fit.weights[i]);
                        rs += fmt_double(std::abs(row.fit.reciprocal_roots[i]));
                    }
                    body += std::to_string(row.psi_index) + "," + (row.principal ? "1" : "0") + "," +
                            (row.real_chi ? "1" : "0") + "," + std::to_string(row.fit.order) + "," +
                            fmt_double(row.fit.residual) + "," + (row.fit.pass ? "1" : "0") + "," +
                            ws + "," + rs + "\n";
                }
            } else if (t_kind == "moment_breakdown") {
                MomentConfig cfg;
                cfg.q = t_q;
                cfg.k = t_k;
                body = moment_csv(cubic_moment_rhs(cfg, par));
            } else if (t_kind == "eta_coeffs") {
                auto a = eta6_coefficients(t_N);
                body = "n,a_n\n";
                for (i64 n = 1; n <= t_N; ++n)
                    body += std::to_string(n) + "," + std::to_string(a[n]) + "\n";
            } else {
                throw error(errc::invalid_input, "unknown table kind: " + t_kind);
            }
            write_output(table_out, body);
        }
        return 0;
    } catch (const error& e) {
        ordered_json err{{"error", {{"kind", errc_name(e.kind())}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        switch (e.kind()) {
            case errc::budget_exceeded: return 3;
            default: return 2;
        }
    } catch (const std::exception& e) {
        ordered_json err{{"error", {{"kind", "internal"}, {"message", e.what()}}}};
        std::cerr << err.dump() << "\n";
        return 2;
    }
}
