#include "qosc/qosc.h"

#include <cstring>
#include <string>

#include "oscrep.hpp"
#include "qcore.hpp"
#include "qfunc.hpp"
#include "qhermite.hpp"
#include "qmeasure.hpp"
#include "qstates.hpp"
#include "verify.hpp"

namespace {

thread_local std::string g_last_error;

qosc_status to_status(qosc::errc code) {
    switch (code) {
        case qosc::errc::domain: return QOSC_ERR_DOMAIN;
        case qosc::errc::non_convergence: return QOSC_ERR_NON_CONVERGENCE;
        case qosc::errc::divergence: return QOSC_ERR_DIVERGENCE;
        case qosc::errc::pole: return QOSC_ERR_POLE;
        case qosc::errc::overflow: return QOSC_ERR_OVERFLOW;
        case qosc::errc::conditioning: return QOSC_ERR_CONDITIONING;
        case qosc::errc::window_mismatch: return QOSC_ERR_WINDOW_MISMATCH;
        case qosc::errc::evaluation: return QOSC_ERR_EVALUATION;
    }
    return QOSC_ERR_INTERNAL;
}

template <typename Body>
qosc_status guarded(Body&& body) noexcept {
    try {
        body();
        return QOSC_OK;
    } catch (const qosc::error& e) {
        g_last_error = e.what();
        return to_status(e.code());
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return QOSC_ERR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown failure";
        return QOSC_ERR_INTERNAL;
    }
}

qosc_status invalid(const char* msg) {
    g_last_error = msg;
    return QOSC_ERR_INVALID_ARGUMENT;
}

qosc::SeriesPolicy policy_from(const qosc_series_policy* p) {
    if (!p) return {};
    return {p->eps_term, p->max_terms, p->tail_cutoff};
}

qosc::cplx from_c(qosc_complex z) { return {z.re, z.im}; }
qosc_complex to_c(qosc::cplx z) { return {z.real(), z.imag()}; }

qosc_series_eval to_c(const qosc::SeriesEval& ev) {
    return {to_c(ev.value), ev.terms_used, ev.divergent ? 1 : 0};
}

struct RepHandle {
    qosc::RepOperators ops;
};

struct SpectralHandle {
    qosc::SpectralDecomposition dec;
};

const RepHandle* as_rep(const qosc_rep* rep) { return reinterpret_cast<const RepHandle*>(rep); }
const SpectralHandle* as_spectral(const qosc_spectral* s) {
    return reinterpret_cast<const SpectralHandle*>(s);
}

}  // namespace

extern "C" {

const char* qosc_status_name(qosc_status status) {
    switch (status) {
        case QOSC_OK: return "ok";
        case QOSC_ERR_DOMAIN: return "domain";
        case QOSC_ERR_NON_CONVERGENCE: return "non_convergence";
        case QOSC_ERR_DIVERGENCE: return "divergence";
        case QOSC_ERR_POLE: return "pole";
        case QOSC_ERR_OVERFLOW: return "overflow";
        case QOSC_ERR_CONDITIONING: return "conditioning";
        case QOSC_ERR_WINDOW_MISMATCH: return "window_mismatch";
        case QOSC_ERR_EVALUATION: return "evaluation";
        case QOSC_ERR_INVALID_ARGUMENT: return "invalid_argument";
        case QOSC_ERR_INTERNAL: return "internal";
    }
    return "unknown";
}

const char* qosc_last_error_message(void) { return g_last_error.c_str(); }

const char* qosc_version(void) { return "0.1.0"; }

qosc_series_policy qosc_default_policy(void) {
    const qosc::SeriesPolicy p;
    return {p.eps_term, p.max_terms, p.tail_cutoff};
}

/* ---- scalars ------------------------------------------------------------ */

qosc_status qosc_q_bracket(long n, double q, double* out) {
    if (!out) return invalid("qosc_q_bracket: out is null");
    return guarded([&] { *out = qosc::q_bracket(n, q); });
}

qosc_status qosc_q_bracket_sym(long m, double q, double* out) {
    if (!out) return invalid("qosc_q_bracket_sym: out is null");
    return guarded([&] { *out = qosc::q_bracket_sym(m, q); });
}

qosc_status qosc_q_bracket_lambda(long m, double q, double lambda, double* out) {
    if (!out) return invalid("qosc_q_bracket_lambda: out is null");
    return guarded([&] { *out = qosc::q_bracket_lambda(m, q, lambda); });
}

qosc_status qosc_q_factorial_lambda(long n, double q, double lambda, double* out) {
    if (!out) return invalid("qosc_q_factorial_lambda: out is null");
    return guarded([&] { *out = qosc::q_factorial_lambda(n, q, lambda); });
}

qosc_status qosc_q_pochhammer(qosc_complex x, double q, long n,
                              const qosc_series_policy* policy, qosc_complex* out) {
    if (!out) return invalid("qosc_q_pochhammer: out is null");
    return guarded([&] {
        if (n < 0)
            *out = to_c(qosc::q_pochhammer_inf(from_c(x), q, policy_from(policy)));
        else
            *out = to_c(qosc::q_pochhammer(from_c(x), q, n));
    });
}

/* ---- q-exponentials ------------------------------------------------------ */

qosc_status qosc_exp_q_lambda(qosc_complex z, double q, double lambda,
                              const qosc_series_policy* policy, qosc_eval_mode mode,
                              qosc_series_eval* out) {
    if (!out) return invalid("qosc_exp_q_lambda: out is null");
    return guarded([&] {
        const auto m = mode == QOSC_MODE_FORMAL ? qosc::EvalMode::formal
                                                : qosc::EvalMode::strict;
        *out = to_c(qosc::exp_q_lambda(from_c(z), q, lambda, policy_from(policy), m));
    });
}

qosc_status qosc_e_q(qosc_complex z, double q, const qosc_series_policy* policy,
                     qosc_series_eval* out) {
    if (!out) return invalid("qosc_e_q: out is null");
    return guarded([&] { *out = to_c(qosc::e_q(from_c(z), q, policy_from(policy))); });
}

qosc_status qosc_e_q_product(qosc_complex z, double q, const qosc_series_policy* policy,
                             qosc_series_eval* out) {
    if (!out) return invalid("qosc_e_q_product: out is null");
    return guarded(
        [&] { *out = to_c(qosc::e_q_product(from_c(z), q, policy_from(policy))); });
}

qosc_status qosc_big_e_q(qosc_complex z, double q, const qosc_series_policy* policy,
                         qosc_series_eval* out) {
    if (!out) return invalid("qosc_big_e_q: out is null");
    return guarded([&] { *out = to_c(qosc::big_e_q(from_c(z), q, policy_from(policy))); });
}

qosc_status qosc_convergence_class(double q, double lambda, qosc_convergence_kind* kind,
                                   double* radius) {
    if (!kind || !radius) return invalid("qosc_convergence_class: out is null");
    return guarded([&] {
        const qosc::ConvergenceClass c = qosc::convergence_class(q, lambda);
        switch (c.kind) {
            case qosc::ConvergenceKind::entire: *kind = QOSC_CONV_ENTIRE; break;
            case qosc::ConvergenceKind::finite_radius: *kind = QOSC_CONV_FINITE_RADIUS; break;
            case qosc::ConvergenceKind::zero_radius: *kind = QOSC_CONV_ZERO_RADIUS; break;
        }
        *radius = c.radius;
    });
}

/* ---- representations ------------------------------------------------------ */

qosc_status qosc_rep_create_h0(double q, double lambda, long dim, qosc_rep** out) {
    if (!out) return invalid("qosc_rep_create_h0: out is null");
    return guarded([&] {
        qosc::RepSpec spec{{q, lambda, {}}, {0, dim - 1}, qosc::RepKind::h0};
        *out = reinterpret_cast<qosc_rep*>(new RepHandle{qosc::build_h0(spec)});
    });
}

qosc_status qosc_rep_create_hgamma(double q, double lambda, double gamma, long n_min,
                                   long n_max, qosc_rep** out) {
    if (!out) return invalid("qosc_rep_create_hgamma: out is null");
    return guarded([&] {
        qosc::RepSpec spec{{q, lambda, gamma}, {n_min, n_max}, qosc::RepKind::hgamma};
        *out = reinterpret_cast<qosc_rep*>(new RepHandle{qosc::build_hgamma(spec)});
    });
}

void qosc_rep_destroy(qosc_rep* rep) { delete reinterpret_cast<RepHandle*>(rep); }

long qosc_rep_dim(const qosc_rep* rep) {
    return rep ? as_rep(rep)->ops.spec.window.dim() : 0;
}

qosc_status qosc_rep_window(const qosc_rep* rep, long* n_min, long* n_max) {
    if (!rep || !n_min || !n_max) return invalid("qosc_rep_window: null argument");
    *n_min = as_rep(rep)->ops.spec.window.n_min;
    *n_max = as_rep(rep)->ops.spec.window.n_max;
    return QOSC_OK;
}

qosc_status qosc_rep_elements(const qosc_rep* rep, double* out) {
    if (!rep || !out) return invalid("qosc_rep_elements: null argument");
    const auto& c = as_rep(rep)->ops.c;
    std::memcpy(out, c.data(), c.size() * sizeof(double));
    return QOSC_OK;
}

qosc_status qosc_rep_matrix(const qosc_rep* rep, qosc_generator which, double* out) {
    if (!rep || !out) return invalid("qosc_rep_matrix: null argument");
    return guarded([&] {
        const qosc::RepOperators& ops = as_rep(rep)->ops;
        const qosc::Matrix* m = nullptr;
        switch (which) {
            case QOSC_GEN_ANNIHILATION: m = &ops.a.entries; break;
            case QOSC_GEN_CREATION: m = &ops.a_dagger.entries; break;
            case QOSC_GEN_NUMBER: m = &ops.number.entries; break;
        }
        if (!m) throw qosc::error(qosc::errc::domain, "qosc_rep_matrix: bad generator tag");
        const long dim = ops.spec.window.dim();
        for (long i = 0; i < dim; ++i)
            for (long j = 0; j < dim; ++j) out[i * dim + j] = (*m)(i, j).real();
    });
}

qosc_status qosc_rep_commutation_residual(const qosc_rep* rep, qosc_relation relation,
                                          double* out) {
    if (!rep || !out) return invalid("qosc_rep_commutation_residual: null argument");
    return guarded([&] {
        qosc::Relation rel = qosc::Relation::lambda_form;
        switch (relation) {
            case QOSC_REL_CANONICAL: rel = qosc::Relation::canonical; break;
            case QOSC_REL_SQRT: rel = qosc::Relation::sqrt_form; break;
            case QOSC_REL_COMMUTATOR: rel = qosc::Relation::commutator; break;
            case QOSC_REL_LAMBDA: rel = qosc::Relation::lambda_form; break;
        }
        *out = qosc::commutation_residual(as_rep(rep)->ops, rel);
    });
}

qosc_status qosc_rep_central_element_diag(const qosc_rep* rep, double* out) {
    if (!rep || !out) return invalid("qosc_rep_central_element_diag: null argument");
    return guarded([&] {
        const qosc::OperatorMatrix zeta = qosc::central_element(as_rep(rep)->ops);
        const long dim = zeta.window.dim();
        for (long i = 0; i < dim; ++i) out[i] = zeta.entries(i, i).real();
    });
}

qosc_status qosc_rep_ordering_residual(const qosc_rep* rep, long m, double* out) {
    if (!rep || !out) return invalid("qosc_rep_ordering_residual: null argument");
    return guarded([&] { *out = qosc::ordering_residual(as_rep(rep)->ops, m); });
}

qosc_status qosc_wigner_deformation(const double* c, long count, long n_first,
                                    double* f_out, long* f_count, long* f_first,
                                    double* zeta_shift, double* commutator_residual,
                                    double* central_residual) {
    if (!c || count < 1 || !f_out || !f_count || !f_first || !zeta_shift ||
        !commutator_residual || !central_residual)
        return invalid("qosc_wigner_deformation: null argument");
    return guarded([&] {
        const qosc::WignerDeformation wd =
            qosc::wigner_deformation(std::span<const double>(c, count), n_first);
        *f_count = static_cast<long>(wd.f.size());
        *f_first = wd.f_first;
        std::memcpy(f_out, wd.f.data(), wd.f.size() * sizeof(double));
        *zeta_shift = wd.zeta_shift;
        *commutator_residual = wd.commutator_residual;
        *central_residual = wd.central_residual;
    });
}

/* ---- coherent states ------------------------------------------------------ */

qosc_status qosc_coherent_state(qosc_complex z, double q, double lambda, long dim,
                                int normalize, qosc_complex* coeffs, double* tail_mass) {
    if (!coeffs || !tail_mass) return invalid("qosc_coherent_state: null argument");
    return guarded([&] {
        const qosc::CoherentState cs =
            qosc::coherent_state(from_c(z), {q, lambda, {}}, dim, normalize != 0);
        for (long i = 0; i < dim; ++i) coeffs[i] = to_c(cs.state.coeffs[i]);
        *tail_mass = cs.tail_mass;
    });
}

qosc_status qosc_coherent_eigen_residual(qosc_complex z, double q, double lambda, long dim,
                                         double* out) {
    if (!out) return invalid("qosc_coherent_eigen_residual: out is null");
    return guarded([&] {
        qosc::RepSpec spec{{q, lambda, {}}, {0, dim - 1}, qosc::RepKind::h0};
        const qosc::RepOperators ops = qosc::build_h0(spec);
        const qosc::CoherentState cs =
            qosc::coherent_state(from_c(z), {q, lambda, {}}, dim, false);
        *out = qosc::eigen_residual(ops.a, cs.state, from_c(z));
    });
}

qosc_status qosc_hgamma_creation_coherent(qosc_complex z, double q, double gamma,
                                          long n_min, long n_max, qosc_complex* coeffs,
                                          int* normalizable, double* interior_residual) {
    if (!coeffs || !normalizable || !interior_residual)
        return invalid("qosc_hgamma_creation_coherent: null argument");
    return guarded([&] {
        const qosc::QParams params{q, 0.0, gamma};
        const qosc::BasisWindow window{n_min, n_max};
        const qosc::HgammaCoherent hc =
            qosc::hgamma_creation_coherent(from_c(z), params, window);
        const long dim = window.dim();
        for (long i = 0; i < dim; ++i) coeffs[i] = to_c(hc.state.coeffs[i]);
        *normalizable = hc.verdict == qosc::NormVerdict::normalizable ? 1 : 0;
        qosc::RepSpec spec{params, window, qosc::RepKind::hgamma};
        const qosc::RepOperators ops = qosc::build_hgamma(spec);
        *interior_residual = qosc::eigen_residual(ops.a_dagger, hc.state, from_c(z));
    });
}

qosc_status qosc_generating_vector(double x, long z_order, double q, double lambda,
                                   long dim, double* coeffs, double* residual) {
    if (!coeffs || !residual) return invalid("qosc_generating_vector: null argument");
    return guarded([&] {
        const qosc::GeneratingVector gv =
            qosc::generating_vector(x, z_order, {q, lambda, {}}, dim);
        std::memcpy(coeffs, gv.coeffs.data(), gv.coeffs.size() * sizeof(double));
        *residual = gv.residual;
    });
}

/* ---- spectral machinery ---------------------------------------------------- */

qosc_status qosc_spectral_create(double q, double lambda, long dim, double tol,
                                 qosc_spectral** out) {
    if (!out) return invalid("qosc_spectral_create: out is null");
    return guarded([&] {
        const qosc::TridiagonalOperator op = qosc::jacobi_matrix({q, lambda, {}}, dim);
        *out = reinterpret_cast<qosc_spectral*>(
            new SpectralHandle{qosc::eigendecompose_full(op, tol)});
    });
}

void qosc_spectral_destroy(qosc_spectral* spectral) {
    delete reinterpret_cast<SpectralHandle*>(spectral);
}

long qosc_spectral_dim(const qosc_spectral* spectral) {
    return spectral ? as_spectral(spectral)->dec.measure.size() : 0;
}

qosc_status qosc_spectral_nodes(const qosc_spectral* spectral, double* out) {
    if (!spectral || !out) return invalid("qosc_spectral_nodes: null argument");
    const auto& nodes = as_spectral(spectral)->dec.measure.nodes;
    std::memcpy(out, nodes.data(), nodes.size() * sizeof(double));
    return QOSC_OK;
}

qosc_status qosc_spectral_weights(const qosc_spectral* spectral, double* out) {
    if (!spectral || !out) return invalid("qosc_spectral_weights: null argument");
    const auto& w = as_spectral(spectral)->dec.measure.weights;
    std::memcpy(out, w.data(), w.size() * sizeof(double));
    return QOSC_OK;
}

qosc_status qosc_spectral_eigenvector(const qosc_spectral* spectral, long i, double* out) {
    if (!spectral || !out) return invalid("qosc_spectral_eigenvector: null argument");
    const auto& dec = as_spectral(spectral)->dec;
    if (i < 0 || i >= dec.measure.size())
        return invalid("qosc_spectral_eigenvector: index out of range");
    std::memcpy(out, dec.vectors[i].data(), dec.vectors[i].size() * sizeof(double));
    return QOSC_OK;
}

qosc_status qosc_spectral_moments(const qosc_spectral* spectral, long k_max, double* out) {
    if (!spectral || !out) return invalid("qosc_spectral_moments: null argument");
    return guarded([&] {
        const std::vector<double> m =
            qosc::measure_moments(as_spectral(spectral)->dec.measure, k_max);
        std::memcpy(out, m.data(), m.size() * sizeof(double));
    });
}

qosc_status qosc_vacuum_moments(double q, double lambda, long dim, long k_max, double* out) {
    if (!out) return invalid("qosc_vacuum_moments: out is null");
    return guarded([&] {
        const std::vector<double> m =
            qosc::vacuum_moments(qosc::jacobi_matrix({q, lambda, {}}, dim), k_max);
        std::memcpy(out, m.data(), m.size() * sizeof(double));
    });
}

qosc_status qosc_hermite_sequence(double x, long n_max, double q, double lambda,
                                  double* out) {
    if (!out) return invalid("qosc_hermite_sequence: out is null");
    return guarded([&] {
        const std::vector<double> h = qosc::hermite_sequence(x, n_max, {q, lambda, {}});
        std::memcpy(out, h.data(), h.size() * sizeof(double));
    });
}

qosc_status qosc_orthonormality_check(double q, double lambda, long dim, long m_max,
                                      double* out) {
    if (!out) return invalid("qosc_orthonormality_check: out is null");
    return guarded(
        [&] { *out = qosc::orthonormality_check({q, lambda, {}}, dim, m_max); });
}

qosc_status qosc_jacobi_from_moments(const double* moments, long count, long n_out,
                                     double* diag, double* offdiag, double* mass,
                                     double* condition_estimate) {
    if (!moments || !diag || !offdiag || !mass || !condition_estimate)
        return invalid("qosc_jacobi_from_moments: null argument");
    return guarded([&] {
        const qosc::MomentRecovery mr =
            qosc::jacobi_from_moments(std::span<const double>(moments, count), n_out);
        std::memcpy(diag, mr.op.diag.data(), mr.op.diag.size() * sizeof(double));
        std::memcpy(offdiag, mr.op.offdiag.data(), mr.op.offdiag.size() * sizeof(double));
        *mass = mr.mass;
        *condition_estimate = mr.condition_estimate;
    });
}

/* ---- Jackson integration ---------------------------------------------------- */

qosc_status qosc_jackson_integral(qosc_real_fn f, void* ctx, double b, double q,
                                  const qosc_series_policy* policy, double* out) {
    if (!f || !out) return invalid("qosc_jackson_integral: null argument");
    return guarded([&] {
        *out = qosc::jackson_integral([&](double x) { return f(x, ctx); }, b, q,
                                      policy_from(policy));
    });
}

qosc_status qosc_resolution_of_unity_diag(long n, double q,
                                          const qosc_series_policy* policy, double* out) {
    if (!out) return invalid("qosc_resolution_of_unity_diag: out is null");
    return guarded(
        [&] { *out = qosc::resolution_of_unity_diag(n, q, policy_from(policy)); });
}

qosc_status qosc_stieltjes_moment_target(long n, double q, double lambda, double* out) {
    if (!out) return invalid("qosc_stieltjes_moment_target: out is null");
    return guarded([&] { *out = qosc::stieltjes_moment_target(n, {q, lambda, {}}); });
}

/* ---- verification ------------------------------------------------------------ */

qosc_status qosc_verify(qosc_suite suite, double q, double lambda, int has_gamma,
                        double gamma, long dim, const qosc_series_policy* policy,
                        qosc_check_callback callback, void* ctx, int* all_passed) {
    if (!all_passed) return invalid("qosc_verify: all_passed is null");
    return guarded([&] {
        qosc::VerifyConfig cfg;
        cfg.params.q = q;
        cfg.params.lambda = lambda;
        if (has_gamma) cfg.params.gamma = gamma;
        cfg.dim = dim;
        cfg.policy = policy_from(policy);
        qosc::Suite s = qosc::Suite::all;
        switch (suite) {
            case QOSC_SUITE_ALL: s = qosc::Suite::all; break;
            case QOSC_SUITE_ALGEBRA: s = qosc::Suite::algebra; break;
            case QOSC_SUITE_EXPONENTIALS: s = qosc::Suite::exponentials; break;
            case QOSC_SUITE_MEASURE: s = qosc::Suite::measure; break;
            case QOSC_SUITE_HERMITE: s = qosc::Suite::hermite; break;
            case QOSC_SUITE_STATES: s = qosc::Suite::states; break;
        }
        const std::vector<qosc::CheckRecord> records = qosc::run_suite(s, cfg);
        for (const auto& r : records) {
            if (callback) {
                qosc_check_record c;
                c.name = r.name.c_str();
                c.relation = r.relation.c_str();
                c.residual = r.residual;
                c.tolerance = r.tolerance;
                c.pass = r.pass ? 1 : 0;
                c.skipped = r.skipped ? 1 : 0;
                c.note = r.note.c_str();
                callback(&c, ctx);
            }
        }
        *all_passed = qosc::all_passed(records) ? 1 : 0;
    });
}

} /* extern "C" */
