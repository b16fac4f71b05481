#include "qfunc.hpp"

#include <limits>
#include <sstream>

namespace qosc {

namespace {

// Sum with term recurrence t_n = t_{n-1} * ratio(n).
//
// Strict mode stops once two consecutive terms fall below eps_term relative
// to the accumulated sum, and throws if the cap is hit first. Formal mode
// never trusts the small-term criterion: it watches the term magnitudes and,
// on persistent growth, returns the partial sum truncated at the smallest
// term with the divergent flag set.
template <typename Ratio>
SeriesEval sum_series(cplx t0, const SeriesPolicy& policy, EvalMode mode, Ratio ratio) {
    CompensatedComplexSum acc;
    acc.add(t0);
    cplx term = t0;
    double prev_mag = std::abs(term);
    double min_mag = prev_mag;
    cplx sum_at_min = acc.value();
    long terms_at_min = 1;
    int small_streak = 0;
    int growth_streak = 0;
    for (long n = 1; n < policy.max_terms; ++n) {
        term *= ratio(n);
        const double mag = std::abs(term);
        if (mode == EvalMode::formal && !std::isfinite(mag))
            return {sum_at_min, terms_at_min, true};
        acc.add(term);
        if (mag <= min_mag) {
            min_mag = mag;
            sum_at_min = acc.value();
            terms_at_min = n + 1;
        }
        if (mode == EvalMode::strict) {
            if (mag <= policy.eps_term * std::abs(acc.value())) {
                if (++small_streak >= 2) return {acc.value(), n + 1, false};
            } else {
                small_streak = 0;
            }
        } else {
            growth_streak = (mag > prev_mag) ? growth_streak + 1 : 0;
            if (growth_streak >= 3) return {sum_at_min, terms_at_min, true};
            if (mag == 0.0) return {acc.value(), n + 1, false};
        }
        prev_mag = mag;
    }
    if (mode == EvalMode::formal) return {acc.value(), policy.max_terms, false};
    throw error(errc::non_convergence, "series: term cap reached before tail tolerance");
}

}  // namespace

ConvergenceClass convergence_class(double q, double lambda) {
    if (!(q > 0.0 && q < 1.0))
        throw error(errc::domain, "convergence_class requires 0 < q < 1");
    if (lambda > 0.0) return {ConvergenceKind::entire, std::numeric_limits<double>::infinity()};
    if (lambda == 0.0) return {ConvergenceKind::finite_radius, 1.0 / (1.0 - q)};
    return {ConvergenceKind::zero_radius, 0.0};
}

SeriesEval exp_q_lambda(cplx z, double q, double lambda, const SeriesPolicy& policy,
                        EvalMode mode) {
    policy.validate();
    const ConvergenceClass conv = convergence_class(q, lambda);
    if (mode == EvalMode::strict) {
        if (conv.kind == ConvergenceKind::zero_radius && z != cplx(0.0)) {
            throw error(errc::divergence,
                        "exp_q_lambda: zero radius of convergence for lambda < 0; "
                        "only z = 0 is admissible in strict mode");
        }
        if (conv.kind == ConvergenceKind::finite_radius && !(std::abs(z) < conv.radius)) {
            std::ostringstream os;
            os << "exp_q_lambda: |z| = " << std::abs(z)
               << " outside the convergence radius " << conv.radius;
            throw error(errc::divergence, os.str());
        }
    }
    const double qlam = std::pow(q, lambda);
    double qlam_pow = 1.0;  // q^{lambda (n-1)} iterated
    return sum_series(cplx(1.0), policy, mode, [&](long n) {
        const cplx r = qlam_pow * z / q_bracket(n, q);
        qlam_pow *= qlam;
        return r;
    });
}

SeriesEval e_q(cplx z, double q, const SeriesPolicy& policy) {
    return exp_q_lambda(z, q, 0.0, policy, EvalMode::strict);
}

SeriesEval e_q_product(cplx z, double q, const SeriesPolicy& policy) {
    policy.validate();
    if (!(q > 0.0 && q < 1.0))
        throw error(errc::domain, "e_q_product requires 0 < q < 1");
    // poles of 1/((1-q)z;q)_inf sit at z = q^{-k}/(1-q)
    const double az = std::abs(z);
    double pole = 1.0 / (1.0 - q);
    while (pole <= 2.0 * az) {
        if (std::abs(z - cplx(pole)) < 1e-12 * pole) {
            std::ostringstream os;
            os << "e_q_product: z within 1e-12 relative distance of the pole at "
               << pole;
            throw error(errc::pole, os.str());
        }
        pole /= q;
    }
    const cplx x = (1.0 - q) * z;
    const double ax = std::abs(x);
    cplx prod = 1.0;
    double qk = 1.0;
    for (long k = 0; k < policy.max_terms; ++k) {
        if (ax * qk < policy.eps_term) return {1.0 / prod, k, false};
        prod *= (1.0 - x * qk);
        qk *= q;
    }
    throw error(errc::non_convergence,
                "e_q_product: factor cap reached before tail tolerance");
}

SeriesEval big_e_q(cplx z, double q, const SeriesPolicy& policy) {
    policy.validate();
    if (!(q > 0.0)) throw error(errc::domain, "big_e_q: q must be positive");
    return sum_series(cplx(1.0), policy, EvalMode::strict,
                      [&](long m) { return z / q_bracket_sym(m, q); });
}

}  // namespace qosc
