// qosc command-line front end. Talks to the library strictly through the C
// interface in qosc/qosc.h. Data goes to stdout (or --out), diagnostics to
// stderr; payloads carry no timestamps so identical flags give identical
// bytes. Exit codes: 0 success / all checks passed, 1 identity failure,
// 2 usage or domain error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "qosc/qosc.h"

using ordered_json = nlohmann::ordered_json;

namespace {

enum class Format { json, csv };

struct Output {
    Format format = Format::json;
    std::string out_path;

    // returns false when the destination cannot be written
    bool emit(const ordered_json& payload, const std::string& csv_text) const {
        std::string text;
        if (format == Format::json)
            text = payload.dump(2) + "\n";
        else
            text = csv_text;
        if (out_path.empty()) {
            std::fputs(text.c_str(), stdout);
            return true;
        }
        std::ofstream f(out_path, std::ios::binary);
        f << text;
        f.flush();
        if (!f) {
            std::fprintf(stderr, "qosc: cannot write %s\n", out_path.c_str());
            return false;
        }
        return true;
    }
};

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

int emit_error(const Output& out, qosc_status status, const std::string& message) {
    ordered_json payload;
    payload["error"] = {{"code", qosc_status_name(status)}, {"message", message}};
    std::string csv = "error,code,message\n";
    csv += std::string("error,") + qosc_status_name(status) + ",\"" + message + "\"\n";
    out.emit(payload, csv);
    std::fprintf(stderr, "qosc: %s: %s\n", qosc_status_name(status), message.c_str());
    return 2;
}

int check_status(const Output& out, qosc_status status) {
    if (status == QOSC_OK) return 0;
    return emit_error(out, status, qosc_last_error_message());
}

const char* conv_name(qosc_convergence_kind kind) {
    switch (kind) {
        case QOSC_CONV_ENTIRE: return "entire";
        case QOSC_CONV_FINITE_RADIUS: return "finite_radius";
        case QOSC_CONV_ZERO_RADIUS: return "zero_radius";
    }
    return "unknown";
}

ordered_json meta(const char* command) {
    return ordered_json{{"tool", "qosc"}, {"version", qosc_version()}, {"command", command}};
}

// ---------------------------------------------------------------- eval ----

struct EvalArgs {
    std::string expr;
    double q = 0.5;
    double lambda = 0.0;
    long n = 0;
    double x = 0.0, xim = 0.0;
    std::string mode = "strict";
};

int cmd_eval(const Output& out, const EvalArgs& a, const qosc_series_policy& pol) {
    ordered_json payload = meta("eval");
    payload["input"] = {{"expr", a.expr}, {"q", a.q},     {"lambda", a.lambda},
                        {"n", a.n},       {"x_re", a.x},  {"x_im", a.xim},
                        {"mode", a.mode}};
    ordered_json diag;
    qosc_complex value{0.0, 0.0};
    bool complex_result = false;

    if (a.expr == "bracket") {
        double v = 0.0;
        const qosc_status st = a.lambda == 0.0
                                   ? qosc_q_bracket(a.n, a.q, &v)
                                   : qosc_q_bracket_lambda(a.n, a.q, a.lambda, &v);
        if (int rc = check_status(out, st)) return rc;
        value.re = v;
    } else if (a.expr == "factorial") {
        double v = 0.0;
        if (int rc = check_status(out, qosc_q_factorial_lambda(a.n, a.q, a.lambda, &v)))
            return rc;
        value.re = v;
    } else if (a.expr == "pochhammer") {
        qosc_complex v{0.0, 0.0};
        if (int rc = check_status(
                out, qosc_q_pochhammer({a.x, a.xim}, a.q, a.n, &pol, &v)))
            return rc;
        value = v;
        complex_result = true;
    } else if (a.expr == "eq" || a.expr == "Eq" || a.expr == "exp_lambda") {
        qosc_series_eval ev{};
        qosc_status st = QOSC_OK;
        if (a.expr == "eq")
            st = qosc_e_q({a.x, a.xim}, a.q, &pol, &ev);
        else if (a.expr == "Eq")
            st = qosc_big_e_q({a.x, a.xim}, a.q, &pol, &ev);
        else
            st = qosc_exp_q_lambda({a.x, a.xim}, a.q, a.lambda, &pol,
                                   a.mode == "formal" ? QOSC_MODE_FORMAL : QOSC_MODE_STRICT,
                                   &ev);
        if (int rc = check_status(out, st)) return rc;
        value = ev.value;
        complex_result = true;
        diag["terms_used"] = ev.terms_used;
        diag["divergent"] = ev.divergent != 0;
        if (a.expr != "Eq" && a.q > 0.0 && a.q < 1.0) {
            qosc_convergence_kind kind;
            double radius = 0.0;
            const double lam = a.expr == "eq" ? 0.0 : a.lambda;
            if (qosc_convergence_class(a.q, lam, &kind, &radius) == QOSC_OK) {
                diag["convergence"] = {{"kind", conv_name(kind)}, {"radius", radius}};
            }
        }
    } else {
        return emit_error(out, QOSC_ERR_INVALID_ARGUMENT,
                          "unknown --expr '" + a.expr +
                              "' (bracket, factorial, eq, Eq, exp_lambda, pochhammer)");
    }

    if (complex_result)
        payload["value"] = {{"re", value.re}, {"im", value.im}};
    else
        payload["value"] = value.re;
    if (!diag.empty()) payload["diagnostics"] = diag;

    std::string csv = "expr,q,lambda,n,x_re,x_im,value_re,value_im\n";
    csv += a.expr + "," + fmt17(a.q) + "," + fmt17(a.lambda) + "," + std::to_string(a.n) +
           "," + fmt17(a.x) + "," + fmt17(a.xim) + "," + fmt17(value.re) + "," +
           fmt17(value.im) + "\n";
    return out.emit(payload, csv) ? 0 : 2;
}

// ----------------------------------------------------------------- rep ----

struct RepArgs {
    std::string family = "h0";
    double q = 0.5;
    double lambda = 0.0;
    double gamma = 0.0;
    bool has_gamma = false;
    long dim = 16;
    long n_min = 0, n_max = 0;
    bool window_set = false;
    std::string relation = "lambda";
    bool matrices = false;
};

int cmd_rep(const Output& out, const RepArgs& a) {
    qosc_rep* rep = nullptr;
    qosc_status st;
    if (a.family == "h0") {
        st = qosc_rep_create_h0(a.q, a.lambda, a.dim, &rep);
    } else if (a.family == "hgamma") {
        if (!a.has_gamma)
            return emit_error(out, QOSC_ERR_INVALID_ARGUMENT, "--gamma required for hgamma");
        const long lo = a.window_set ? a.n_min : -(a.dim / 2);
        const long hi = a.window_set ? a.n_max : a.dim / 2;
        st = qosc_rep_create_hgamma(a.q, a.lambda, a.gamma, lo, hi, &rep);
    } else {
        return emit_error(out, QOSC_ERR_INVALID_ARGUMENT,
                          "unknown --family '" + a.family + "' (h0, hgamma)");
    }
    if (int rc = check_status(out, st)) return rc;

    long n_min = 0, n_max = 0;
    qosc_rep_window(rep, &n_min, &n_max);
    const long dim = qosc_rep_dim(rep);
    std::vector<double> c(dim - 1);
    qosc_rep_elements(rep, c.data());

    qosc_relation rel = QOSC_REL_LAMBDA;
    if (a.relation == "canonical") rel = QOSC_REL_CANONICAL;
    else if (a.relation == "sqrt") rel = QOSC_REL_SQRT;
    else if (a.relation == "commutator") rel = QOSC_REL_COMMUTATOR;
    else if (a.relation != "lambda")
        return emit_error(out, QOSC_ERR_INVALID_ARGUMENT,
                          "unknown --relation (canonical, sqrt, commutator, lambda)");

    double residual = 0.0;
    st = qosc_rep_commutation_residual(rep, rel, &residual);
    if (st != QOSC_OK) {
        const std::string msg = qosc_last_error_message();
        qosc_rep_destroy(rep);
        return emit_error(out, st, msg);
    }

    ordered_json payload = meta("rep");
    payload["input"] = {{"family", a.family}, {"q", a.q}, {"lambda", a.lambda}};
    if (a.has_gamma) payload["input"]["gamma"] = a.gamma;
    payload["window"] = {{"n_min", n_min}, {"n_max", n_max}, {"dim", dim}};
    payload["commutation_residual"] = {{"relation", a.relation}, {"value", residual}};

    if (a.lambda == 0.0) {
        std::vector<double> zeta(dim);
        if (qosc_rep_central_element_diag(rep, zeta.data()) == QOSC_OK) {
            double lo = zeta[1], hi = zeta[1];
            for (long i = 1; i + 1 < dim; ++i) {
                lo = std::min(lo, zeta[i]);
                hi = std::max(hi, zeta[i]);
            }
            payload["central_element_interior"] = {{"min", lo}, {"max", hi}};
        }
    }

    ordered_json rows = ordered_json::array();
    std::string csv = "n,c_n,c_n_squared\n";
    for (long i = 0; i < dim - 1; ++i) {
        const long n = n_min + 1 + i;
        rows.push_back({{"n", n}, {"c", c[i]}, {"c_squared", c[i] * c[i]}});
        csv += std::to_string(n) + "," + fmt17(c[i]) + "," + fmt17(c[i] * c[i]) + "\n";
    }
    payload["elements"] = rows;

    if (a.matrices) {
        std::vector<double> m(dim * dim);
        const struct {
            qosc_generator gen;
            const char* key;
        } gens[] = {{QOSC_GEN_ANNIHILATION, "a"},
                    {QOSC_GEN_CREATION, "a_dagger"},
                    {QOSC_GEN_NUMBER, "N"}};
        for (const auto& g : gens) {
            qosc_rep_matrix(rep, g.gen, m.data());
            ordered_json rows_m = ordered_json::array();
            for (long i = 0; i < dim; ++i) {
                ordered_json row = ordered_json::array();
                for (long j = 0; j < dim; ++j) row.push_back(m[i * dim + j]);
                rows_m.push_back(row);
            }
            payload["matrices"][g.key] = rows_m;
        }
    }
    qosc_rep_destroy(rep);
    return out.emit(payload, csv) ? 0 : 2;
}

// ------------------------------------------------------------- spectrum ----

int cmd_spectrum(const Output& out, double q, double lambda, long dim, double tol) {
    qosc_spectral* sp = nullptr;
    if (int rc = check_status(out, qosc_spectral_create(q, lambda, dim, tol, &sp))) return rc;
    std::vector<double> nodes(dim), weights(dim);
    qosc_spectral_nodes(sp, nodes.data());
    qosc_spectral_weights(sp, weights.data());
    qosc_spectral_destroy(sp);

    ordered_json payload = meta("spectrum");
    payload["input"] = {{"q", q}, {"lambda", lambda}, {"dim", dim}};
    ordered_json rows = ordered_json::array();
    std::string csv = "index,node,weight\n";
    for (long i = 0; i < dim; ++i) {
        rows.push_back({{"index", i}, {"node", nodes[i]}, {"weight", weights[i]}});
        csv += std::to_string(i) + "," + fmt17(nodes[i]) + "," + fmt17(weights[i]) + "\n";
    }
    payload["spectrum"] = rows;
    return out.emit(payload, csv) ? 0 : 2;
}

// -------------------------------------------------------------- hermite ----

int cmd_hermite(const Output& out, double q, double lambda, double x, long nmax) {
    std::vector<double> h(nmax + 1);
    if (int rc = check_status(out, qosc_hermite_sequence(x, nmax, q, lambda, h.data())))
        return rc;
    ordered_json payload = meta("hermite");
    payload["input"] = {{"q", q}, {"lambda", lambda}, {"x", x}, {"nmax", nmax}};
    ordered_json rows = ordered_json::array();
    std::string csv = "n,H_n\n";
    for (long n = 0; n <= nmax; ++n) {
        rows.push_back({{"n", n}, {"H", h[n]}});
        csv += std::to_string(n) + "," + fmt17(h[n]) + "\n";
    }
    payload["values"] = rows;
    return out.emit(payload, csv) ? 0 : 2;
}

// -------------------------------------------------------------- coherent ----

int cmd_coherent(const Output& out, double q, double lambda, double zre, double zim,
                 long dim, bool normalize) {
    std::vector<qosc_complex> coeffs(dim);
    double tail = 0.0;
    if (int rc = check_status(out, qosc_coherent_state({zre, zim}, q, lambda, dim,
                                                       normalize ? 1 : 0, coeffs.data(),
                                                       &tail)))
        return rc;
    double residual = 0.0;
    if (int rc = check_status(out,
                              qosc_coherent_eigen_residual({zre, zim}, q, lambda, dim,
                                                           &residual)))
        return rc;

    ordered_json payload = meta("coherent");
    payload["input"] = {{"q", q},           {"lambda", lambda}, {"z_re", zre},
                        {"z_im", zim},      {"dim", dim},       {"normalized", normalize}};
    payload["tail_mass"] = tail;
    payload["eigen_residual"] = residual;
    ordered_json rows = ordered_json::array();
    std::string csv = "n,re,im\n";
    for (long n = 0; n < dim; ++n) {
        rows.push_back({{"n", n}, {"re", coeffs[n].re}, {"im", coeffs[n].im}});
        csv += std::to_string(n) + "," + fmt17(coeffs[n].re) + "," + fmt17(coeffs[n].im) +
               "\n";
    }
    payload["coefficients"] = rows;
    return out.emit(payload, csv) ? 0 : 2;
}

// --------------------------------------------------------------- moments ----

int cmd_moments(const Output& out, double q, double lambda, long nmax,
                const qosc_series_policy& pol) {
    if (lambda != 0.0)
        return emit_error(out, QOSC_ERR_DOMAIN,
                          "the Jackson moment identity is verified at lambda = 0; "
                          "targets for other lambda come from eval --expr factorial");
    ordered_json payload = meta("moments");
    payload["input"] = {{"q", q}, {"lambda", lambda}, {"nmax", nmax}};
    ordered_json rows = ordered_json::array();
    std::string csv = "n,jackson,target,rel_err\n";
    for (long n = 0; n <= nmax; ++n) {
        double unity = 0.0;
        if (int rc = check_status(out, qosc_resolution_of_unity_diag(n, q, &pol, &unity)))
            return rc;
        double target = 0.0;
        if (int rc = check_status(out, qosc_stieltjes_moment_target(n, q, lambda, &target)))
            return rc;
        const double jackson = unity * target;  // integral before normalization
        const double rel = std::abs(jackson - target) / target;
        rows.push_back(
            {{"n", n}, {"jackson", jackson}, {"target", target}, {"rel_err", rel}});
        csv += std::to_string(n) + "," + fmt17(jackson) + "," + fmt17(target) + "," +
               fmt17(rel) + "\n";
    }
    payload["moments"] = rows;
    return out.emit(payload, csv) ? 0 : 2;
}

// ---------------------------------------------------------------- verify ----

struct VerifyCollect {
    ordered_json rows = ordered_json::array();
    std::string csv;
    long failed = 0;
};

void verify_cb(const qosc_check_record* r, void* ctx) {
    auto* col = static_cast<VerifyCollect*>(ctx);
    col->rows.push_back({{"name", r->name},
                         {"relation", r->relation},
                         {"residual", r->residual},
                         {"tolerance", r->tolerance},
                         {"pass", r->pass != 0},
                         {"skipped", r->skipped != 0},
                         {"note", r->note}});
    col->csv += std::string(r->name) + ",\"" + r->relation + "\"," + fmt17(r->residual) +
                "," + fmt17(r->tolerance) + "," + (r->pass ? "1" : "0") + "," +
                (r->skipped ? "1" : "0") + ",\"" + r->note + "\"\n";
    if (!r->skipped && !r->pass) ++col->failed;
}

int cmd_verify(const Output& out, const std::string& suite, double q, double lambda,
               bool has_gamma, double gamma, long dim, const qosc_series_policy& pol) {
    qosc_suite s;
    if (suite == "all") s = QOSC_SUITE_ALL;
    else if (suite == "algebra") s = QOSC_SUITE_ALGEBRA;
    else if (suite == "exponentials") s = QOSC_SUITE_EXPONENTIALS;
    else if (suite == "measure") s = QOSC_SUITE_MEASURE;
    else if (suite == "hermite") s = QOSC_SUITE_HERMITE;
    else if (suite == "states") s = QOSC_SUITE_STATES;
    else
        return emit_error(out, QOSC_ERR_INVALID_ARGUMENT,
                          "unknown --suite '" + suite +
                              "' (all, algebra, exponentials, measure, hermite, states)");

    VerifyCollect col;
    col.csv = "name,relation,residual,tolerance,pass,skipped,note\n";
    int all_passed = 0;
    const qosc_status st = qosc_verify(s, q, lambda, has_gamma ? 1 : 0, gamma, dim, &pol,
                                       verify_cb, &col, &all_passed);
    if (int rc = check_status(out, st)) return rc;

    ordered_json payload = meta("verify");
    payload["input"] = {{"suite", suite}, {"q", q}, {"lambda", lambda}, {"dim", dim}};
    if (has_gamma) payload["input"]["gamma"] = gamma;
    payload["checks"] = col.rows;
    payload["all_passed"] = all_passed != 0;
    if (!out.emit(payload, col.csv)) return 2;
    std::fprintf(stderr, "qosc verify: %ld check(s) failed\n", col.failed);
    return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"deformed oscillator algebra numerics and identity verification"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_version_flag("--version", qosc_version());

    Output out;
    std::string format = "json";
    app.add_option("--format", format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out.out_path, "write the payload to a file instead of stdout");

    qosc_series_policy pol = qosc_default_policy();
    if (const char* env_eps = std::getenv("QOSC_DEFAULT_EPS")) {
        const double v = std::atof(env_eps);
        if (v > 0.0) pol.eps_term = v;
    }
    app.add_option("--eps", pol.eps_term, "relative tail tolerance for series");
    app.add_option("--max-terms", pol.max_terms, "term cap for series and products");
    app.add_option("--tail-cutoff", pol.tail_cutoff, "absolute floor for Jackson sums");

    EvalArgs ev;
    auto* eval =
        app.add_subcommand("eval", "evaluate one scalar: bracket, factorial, pochhammer, "
                                   "eq, Eq or exp_lambda");
    eval->add_option("--expr", ev.expr, "expression family")->required();
    eval->add_option("--q", ev.q, "deformation parameter")->required();
    eval->add_option("--lambda", ev.lambda, "family parameter");
    eval->add_option("--n", ev.n, "integer argument (order; -1 = infinite product)");
    eval->add_option("--x", ev.x, "real part of the argument");
    eval->add_option("--xim", ev.xim, "imaginary part of the argument");
    eval->add_option("--mode", ev.mode, "strict or formal (exp_lambda only)")
        ->check(CLI::IsMember({"strict", "formal"}));

    RepArgs rp;
    auto* rep = app.add_subcommand("rep", "build a representation and report residuals");
    rep->add_option("--family", rp.family, "h0 or hgamma");
    rep->add_option("--q", rp.q, "deformation parameter")->required();
    rep->add_option("--lambda", rp.lambda, "family parameter");
    auto* gopt = rep->add_option("--gamma", rp.gamma, "central-element parameter");
    rep->add_option("--dim", rp.dim, "dimension (h0) or default window radius (hgamma)");
    auto* nminopt = rep->add_option("--nmin", rp.n_min, "window bottom (hgamma)");
    rep->add_option("--nmax", rp.n_max, "window top (hgamma)");
    rep->add_option("--relation", rp.relation,
                    "residual to report: canonical, sqrt, commutator, lambda");
    rep->add_flag("--matrices", rp.matrices, "include dense generator matrices");

    double sq = 0.5, slambda = 0.0, stol = 1e-12;
    long sdim = 16;
    auto* spectrum = app.add_subcommand("spectrum", "nodes and weights of the coordinate "
                                                    "operator a(lambda) + a+(lambda)");
    spectrum->add_option("--q", sq, "deformation parameter")->required();
    spectrum->add_option("--lambda", slambda, "family parameter");
    spectrum->add_option("--dim", sdim, "matrix dimension")->required();
    spectrum->add_option("--tol", stol, "relative eigenvalue tolerance");

    double hq = 0.5, hlambda = 0.0, hx = 0.0;
    long hnmax = 8;
    auto* hermite = app.add_subcommand("hermite", "orthonormal polynomial values H_0..H_nmax");
    hermite->add_option("--q", hq, "deformation parameter")->required();
    hermite->add_option("--lambda", hlambda, "family parameter");
    hermite->add_option("--x", hx, "evaluation point")->required();
    hermite->add_option("--nmax", hnmax, "highest order")->required();

    double cq = 0.5, clambda = 0.0, czre = 0.0, czim = 0.0;
    long cdim = 16;
    bool cnorm = false;
    auto* coherent = app.add_subcommand("coherent", "coherent-state coefficients and "
                                                    "eigen-residual");
    coherent->add_option("--q", cq, "deformation parameter")->required();
    coherent->add_option("--lambda", clambda, "family parameter");
    coherent->add_option("--zre", czre, "Re z")->required();
    coherent->add_option("--zim", czim, "Im z");
    coherent->add_option("--dim", cdim, "truncation dimension");
    coherent->add_flag("--normalize", cnorm, "normalize to unit length");

    double mq = 0.5, mlambda = 0.0;
    long mnmax = 8;
    auto* moments = app.add_subcommand("moments", "Jackson moments of the coherent-state "
                                                  "weight against [n;q]!");
    moments->add_option("--q", mq, "deformation parameter")->required();
    moments->add_option("--lambda", mlambda, "family parameter (must be 0)");
    moments->add_option("--nmax", mnmax, "highest moment order");

    std::string vsuite = "all";
    double vq = 0.5, vlambda = 0.0, vgamma = 0.0;
    long vdim = 32;
    auto* verify = app.add_subcommand("verify", "run an identity suite and report residuals");
    verify->add_option("--suite", vsuite,
                       "all, algebra, exponentials, measure, hermite, states");
    verify->add_option("--q", vq, "deformation parameter")->required();
    verify->add_option("--lambda", vlambda, "family parameter");
    auto* vgopt = verify->add_option("--gamma", vgamma, "central-element parameter");
    verify->add_option("--dim", vdim, "dimension for matrix checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }
    out.format = format == "csv" ? Format::csv : Format::json;

    std::fprintf(stderr, "qosc %s\n", qosc_version());

    if (*eval) return cmd_eval(out, ev, pol);
    if (*rep) {
        rp.has_gamma = gopt->count() > 0;
        rp.window_set = nminopt->count() > 0;
        return cmd_rep(out, rp);
    }
    if (*spectrum) return cmd_spectrum(out, sq, slambda, sdim, stol);
    if (*hermite) return cmd_hermite(out, hq, hlambda, hx, hnmax);
    if (*coherent) return cmd_coherent(out, cq, clambda, czre, czim, cdim, cnorm);
    if (*moments) return cmd_moments(out, mq, mlambda, mnmax, pol);
    if (*verify)
        return cmd_verify(out, vsuite, vq, vlambda, vgopt->count() > 0, vgamma, vdim, pol);
    return 2;
}
