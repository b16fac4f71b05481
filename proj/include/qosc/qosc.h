/* qosc - deformed oscillator algebra numerics.
 *
 * C interface to the qosc shared library. All functions return a qosc_status;
 * results travel through out-parameters. Opaque handles own their resources
 * and must be released with the matching destroy call. On any non-OK status a
 * thread-local message is available through qosc_last_error_message().
 */
#ifndef QOSC_H
#define QOSC_H

#include <stddef.h>

#ifndef QOSC_API
#if defined(_WIN32)
#ifdef QOSC_BUILD
#define QOSC_API __declspec(dllexport)
#else
#define QOSC_API __declspec(dllimport)
#endif
#elif defined(__GNUC__)
#define QOSC_API __attribute__((visibility("default")))
#else
#define QOSC_API
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qosc_status {
    QOSC_OK = 0,
    QOSC_ERR_DOMAIN = 1,          /* parameter outside its documented domain */
    QOSC_ERR_NON_CONVERGENCE = 2, /* term cap reached before the tail tolerance */
    QOSC_ERR_DIVERGENCE = 3,      /* argument outside the convergence region */
    QOSC_ERR_POLE = 4,            /* too close to a pole of a product form */
    QOSC_ERR_OVERFLOW = 5,        /* value left the binary64 range */
    QOSC_ERR_CONDITIONING = 6,    /* moment recovery lost Hankel positivity */
    QOSC_ERR_WINDOW_MISMATCH = 7, /* operator and state windows differ */
    QOSC_ERR_EVALUATION = 8,      /* user callback produced a non-finite value */
    QOSC_ERR_INVALID_ARGUMENT = 9,
    QOSC_ERR_INTERNAL = 10
} qosc_status;

QOSC_API const char* qosc_status_name(qosc_status status);

/* Message for the most recent failure on the calling thread. */
QOSC_API const char* qosc_last_error_message(void);

QOSC_API const char* qosc_version(void);

typedef struct qosc_complex {
    double re;
    double im;
} qosc_complex;

/* Truncation contract for series, products and Jackson sums. */
typedef struct qosc_series_policy {
    double eps_term;    /* relative tail tolerance */
    long max_terms;     /* hard cap */
    double tail_cutoff; /* absolute floor for Jackson sums */
} qosc_series_policy;

QOSC_API qosc_series_policy qosc_default_policy(void);

/* ---- scalar q-arithmetic ---------------------------------------------- */

/* [n;q] = (1-q^n)/(1-q); continuous limit n at q = 1; negative n allowed. */
QOSC_API qosc_status qosc_q_bracket(long n, double q, double* out);

/* symmetric bracket (q^m - q^{-m})/(q - q^{-1}) */
QOSC_API qosc_status qosc_q_bracket_sym(long m, double q, double* out);

/* [m;q,lambda] = q^{lambda(1-m)} [m;q] */
QOSC_API qosc_status qosc_q_bracket_lambda(long m, double q, double lambda, double* out);

/* [n;q,lambda]! */
QOSC_API qosc_status qosc_q_factorial_lambda(long n, double q, double lambda, double* out);

/* (x;q)_n; pass n < 0 for the infinite product (requires 0 < q < 1). */
QOSC_API qosc_status qosc_q_pochhammer(qosc_complex x, double q, long n,
                              const qosc_series_policy* policy, qosc_complex* out);

/* ---- q-exponential families ------------------------------------------- */

typedef enum qosc_eval_mode { QOSC_MODE_STRICT = 0, QOSC_MODE_FORMAL = 1 } qosc_eval_mode;

typedef enum qosc_convergence_kind {
    QOSC_CONV_ENTIRE = 0,
    QOSC_CONV_FINITE_RADIUS = 1,
    QOSC_CONV_ZERO_RADIUS = 2
} qosc_convergence_kind;

typedef struct qosc_series_eval {
    qosc_complex value;
    long terms_used;
    int divergent; /* formal mode: persistent term growth observed */
} qosc_series_eval;

/* exp(z;q,lambda) = sum_n q^{lambda n(n-1)/2} z^n/[n;q]! */
QOSC_API qosc_status qosc_exp_q_lambda(qosc_complex z, double q, double lambda,
                              const qosc_series_policy* policy, qosc_eval_mode mode,
                              qosc_series_eval* out);

/* e_q(z) series; radius 1/(1-q) */
QOSC_API qosc_status qosc_e_q(qosc_complex z, double q, const qosc_series_policy* policy,
                     qosc_series_eval* out);

/* e_q via 1/((1-q)z;q)_inf; valid beyond the series radius */
QOSC_API qosc_status qosc_e_q_product(qosc_complex z, double q, const qosc_series_policy* policy,
                             qosc_series_eval* out);

/* entire symmetric exponential E_q */
QOSC_API qosc_status qosc_big_e_q(qosc_complex z, double q, const qosc_series_policy* policy,
                         qosc_series_eval* out);

/* radius is +inf for entire, 0 for zero-radius */
QOSC_API qosc_status qosc_convergence_class(double q, double lambda, qosc_convergence_kind* kind,
                                   double* radius);

/* ---- representations --------------------------------------------------- */

typedef struct qosc_rep qosc_rep; /* opaque */

typedef enum qosc_generator {
    QOSC_GEN_ANNIHILATION = 0,
    QOSC_GEN_CREATION = 1,
    QOSC_GEN_NUMBER = 2
} qosc_generator;

typedef enum qosc_relation {
    QOSC_REL_CANONICAL = 0,  /* a a+ - q a+ a = 1            (lambda = 0)   */
    QOSC_REL_SQRT = 1,       /* A A+ - sqrt(q) A+ A = q^{-N/2} (lambda=1/2) */
    QOSC_REL_COMMUTATOR = 2, /* [alpha,alpha+] = q^{-N}      (lambda = 1)   */
    QOSC_REL_LAMBDA = 3      /* a a+ - q^{1-l} a+ a = q^{-l N}              */
} qosc_relation;

/* Fock module on n = 0..dim-1 with a(lambda)|n> = sqrt([n;q,lambda])|n-1>. */
QOSC_API qosc_status qosc_rep_create_h0(double q, double lambda, long dim, qosc_rep** out);

/* Z-graded module on n = n_min..n_max, c_n^2 = gamma q^n + [n;q]. */
QOSC_API qosc_status qosc_rep_create_hgamma(double q, double lambda, double gamma, long n_min,
                                   long n_max, qosc_rep** out);

QOSC_API void qosc_rep_destroy(qosc_rep* rep);

QOSC_API long qosc_rep_dim(const qosc_rep* rep);
QOSC_API qosc_status qosc_rep_window(const qosc_rep* rep, long* n_min, long* n_max);

/* matrix elements c_n for n = n_min+1..n_max; out must hold dim-1 values */
QOSC_API qosc_status qosc_rep_elements(const qosc_rep* rep, double* out);

/* dense dim x dim matrix, row-major, real entries */
QOSC_API qosc_status qosc_rep_matrix(const qosc_rep* rep, qosc_generator which, double* out);

/* scaled interior-block residual of the chosen defining relation */
QOSC_API qosc_status qosc_rep_commutation_residual(const qosc_rep* rep, qosc_relation relation,
                                          double* out);

/* diagonal of zeta = q^{-N}([N;q] - a+ a); out must hold dim values */
QOSC_API qosc_status qosc_rep_central_element_diag(const qosc_rep* rep, double* out);

/* interior residual of a (a+)^m = (p a+)^m a + (p a+)^{m-1} r^N [m;r/p] */
QOSC_API qosc_status qosc_rep_ordering_residual(const qosc_rep* rep, long m, double* out);

/* Wigner-type deformation from positive matrix elements c_{n_first}..:
 * f_out receives F(n) = c_{n+1}^2 - c_n^2 (f_count entries, f_first the first
 * index); residuals verify [a,a+] = F(N) and the constancy of c^2(N) - a+ a. */
QOSC_API qosc_status qosc_wigner_deformation(const double* c, long count, long n_first,
                                    double* f_out, long* f_count, long* f_first,
                                    double* zeta_shift, double* commutator_residual,
                                    double* central_residual);

/* ---- coherent states ---------------------------------------------------- */

/* coefficients q^{lambda n(n-1)/4} z^n / sqrt([n;q]!) on |0>..|dim-1>;
 * tail_mass = |last|^2/norm^2 */
QOSC_API qosc_status qosc_coherent_state(qosc_complex z, double q, double lambda, long dim,
                                int normalize, qosc_complex* coeffs, double* tail_mass);

/* residual ||a psi - z psi||/||psi|| against the matching Fock annihilator */
QOSC_API qosc_status qosc_coherent_eigen_residual(qosc_complex z, double q, double lambda, long dim,
                                         double* out);

/* creation-operator eigenstate on the Z-graded module; normalizable is a
 * numerical verdict at this window */
QOSC_API qosc_status qosc_hgamma_creation_coherent(qosc_complex z, double q, double gamma,
                                          long n_min, long n_max, qosc_complex* coeffs,
                                          int* normalizable, double* interior_residual);

/* generating-function coefficients w_0..w_{z_order} at parameter x, plus the
 * residual of [n+1;q,l] w_{n+1} + w_{n-1} = 2x w_n */
QOSC_API qosc_status qosc_generating_vector(double x, long z_order, double q, double lambda,
                                   long dim, double* coeffs, double* residual);

/* ---- Jacobi / q-Hermite spectral machinery ------------------------------ */

typedef struct qosc_spectral qosc_spectral; /* opaque */

/* spectral data of J(lambda) = a(lambda) + a+(lambda) at the given dimension */
QOSC_API qosc_status qosc_spectral_create(double q, double lambda, long dim, double tol,
                                 qosc_spectral** out);
QOSC_API void qosc_spectral_destroy(qosc_spectral* spectral);

QOSC_API long qosc_spectral_dim(const qosc_spectral* spectral);
QOSC_API qosc_status qosc_spectral_nodes(const qosc_spectral* spectral, double* out);
QOSC_API qosc_status qosc_spectral_weights(const qosc_spectral* spectral, double* out);
QOSC_API qosc_status qosc_spectral_eigenvector(const qosc_spectral* spectral, long i, double* out);

/* quadrature moments m_k = sum_i w_i x_i^k, k = 0..k_max */
QOSC_API qosc_status qosc_spectral_moments(const qosc_spectral* spectral, long k_max, double* out);

/* independent moment route <0|J^k|0> by matrix powers */
QOSC_API qosc_status qosc_vacuum_moments(double q, double lambda, long dim, long k_max, double* out);

/* H_0..H_{n_max} at x for the recurrence c_n H_{n-1} + c_{n+1} H_{n+1} = x H_n */
QOSC_API qosc_status qosc_hermite_sequence(double x, long n_max, double q, double lambda,
                                  double* out);

/* orthonormality deviation max |sum_i w_i H_m H_n - delta_mn|, m,n <= m_max */
QOSC_API qosc_status qosc_orthonormality_check(double q, double lambda, long dim, long m_max,
                                      double* out);

/* recurrence coefficients from raw moments m_0..m_{2 n_out - 1}; diag gets
 * n_out values, offdiag n_out-1 */
QOSC_API qosc_status qosc_jacobi_from_moments(const double* moments, long count, long n_out,
                                     double* diag, double* offdiag, double* mass,
                                     double* condition_estimate);

/* ---- Jackson q-integration ---------------------------------------------- */

typedef double (*qosc_real_fn)(double x, void* ctx);

/* (1-q) sum_m q^m b f(q^m b) */
QOSC_API qosc_status qosc_jackson_integral(qosc_real_fn f, void* ctx, double b, double q,
                                  const qosc_series_policy* policy, double* out);

/* <n| coherent-state completeness sum |n>; must equal 1 */
QOSC_API qosc_status qosc_resolution_of_unity_diag(long n, double q,
                                          const qosc_series_policy* policy, double* out);

/* target moment s_n = [n;q,lambda]! */
QOSC_API qosc_status qosc_stieltjes_moment_target(long n, double q, double lambda, double* out);

/* ---- verification suites ------------------------------------------------ */

typedef enum qosc_suite {
    QOSC_SUITE_ALL = 0,
    QOSC_SUITE_ALGEBRA = 1,
    QOSC_SUITE_EXPONENTIALS = 2,
    QOSC_SUITE_MEASURE = 3,
    QOSC_SUITE_HERMITE = 4,
    QOSC_SUITE_STATES = 5
} qosc_suite;

typedef struct qosc_check_record {
    const char* name;     /* valid only during the callback */
    const char* relation; /* identity checked, as a formula */
    double residual;
    double tolerance;
    int pass;
    int skipped;
    const char* note;
} qosc_check_record;

typedef void (*qosc_check_callback)(const qosc_check_record* record, void* ctx);

/* Runs the named suite at (q, lambda[, gamma]) and dimension dim, streaming
 * one record per check. all_passed ends up 0 if any non-skipped check failed. */
QOSC_API qosc_status qosc_verify(qosc_suite suite, double q, double lambda, int has_gamma,
                        double gamma, long dim, const qosc_series_policy* policy,
                        qosc_check_callback callback, void* ctx, int* all_passed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* QOSC_H */
