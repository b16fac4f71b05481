#ifndef QOSC_QFUNC_HPP
#define QOSC_QFUNC_HPP

#include "qcore.hpp"

namespace qosc {

enum class ConvergenceKind { entire, finite_radius, zero_radius };

struct ConvergenceClass {
    ConvergenceKind kind;
    double radius;  // +inf for entire, 0 for zero_radius
};

/// Convergence regime of exp(.;q,lambda) for 0 < q < 1:
/// lambda > 0 entire, lambda = 0 radius 1/(1-q), lambda < 0 zero radius.
ConvergenceClass convergence_class(double q, double lambda);

enum class EvalMode { strict, formal };

struct SeriesEval {
    cplx value;
    long terms_used = 0;
    bool divergent = false;  // formal mode: persistent term growth detected
};

/// One-parameter q-exponential sum_n q^{lambda n(n-1)/2} z^n / [n;q]!.
/// Strict mode rejects arguments outside the convergence region; formal mode
/// returns the partial sum truncated at the smallest term, flagged divergent
/// once term magnitudes grow persistently.
SeriesEval exp_q_lambda(cplx z, double q, double lambda, const SeriesPolicy& policy = {},
                        EvalMode mode = EvalMode::strict);

/// e_q(z) = sum_n z^n/[n;q]!  (lambda = 0, strict); radius 1/(1-q).
SeriesEval e_q(cplx z, double q, const SeriesPolicy& policy = {});

/// e_q via the reciprocal infinite product 1/((1-q)z;q)_inf; valid beyond the
/// series radius, with simple poles at z = q^{-k}/(1-q).
SeriesEval e_q_product(cplx z, double q, const SeriesPolicy& policy = {});

/// Entire symmetric q-exponential E_q(z) = sum_m z^m/[m]_q!.
SeriesEval big_e_q(cplx z, double q, const SeriesPolicy& policy = {});

}  // namespace qosc

#endif
