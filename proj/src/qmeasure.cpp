#include "qmeasure.hpp"

#include <cmath>
#include <sstream>

namespace qosc {

void JacksonGrid::validate() const {
    if (!(b > 0.0)) throw error(errc::domain, "JacksonGrid: b must be positive");
    if (!(q > 0.0 && q < 1.0)) throw error(errc::domain, "JacksonGrid requires 0 < q < 1");
    if (m_cut < 0) throw error(errc::domain, "JacksonGrid: m_cut must be >= 0");
}

namespace {

struct JacksonSum {
    double value;
    long m_cut;
};

JacksonSum jackson_sum(const std::function<double(double)>& f, double b, double q,
                       const SeriesPolicy& policy) {
    policy.validate();
    if (!(q > 0.0 && q < 1.0))
        throw error(errc::domain, "jackson_integral requires 0 < q < 1");
    if (!(b > 0.0)) throw error(errc::domain, "jackson_integral: b must be positive");

    // The integrand may be vanishingly small near the endpoint b and rise
    // much later on the grid (weights like 1/e_q(qx) do exactly that as
    // q -> 1), so small summands are not trusted before the grid has decayed
    // through the full relative resolution eps_term.
    const long m_min = std::min<long>(
        policy.max_terms,
        static_cast<long>(std::log(policy.eps_term) / std::log(q)) + 2);
    CompensatedSum acc;
    double x = b;  // q^m b
    int small_streak = 0;
    for (long m = 0; m < policy.max_terms; ++m) {
        const double fx = f(x);
        if (!std::isfinite(fx)) {
            std::ostringstream os;
            os << "jackson_integral: non-finite summand at grid point x = " << x;
            throw error(errc::evaluation, os.str());
        }
        const double term = (1.0 - q) * x * fx;
        acc.add(term);
        if (std::abs(term) < policy.tail_cutoff && m >= m_min) {
            if (++small_streak >= 2) return {acc.value(), m};
        } else {
            small_streak = 0;
        }
        x *= q;
    }
    throw error(errc::non_convergence,
                "jackson_integral: tail not below cutoff within max_terms");
}

}  // namespace

double jackson_integral(const std::function<double(double)>& f, double b, double q,
                        const SeriesPolicy& policy) {
    return jackson_sum(f, b, q, policy).value;
}

JacksonGrid jackson_grid(const std::function<double(double)>& f, double b, double q,
                         const SeriesPolicy& policy) {
    return {b, q, jackson_sum(f, b, q, policy).m_cut};
}

double resolution_of_unity_diag(long n, double q, const SeriesPolicy& policy) {
    if (n < 0) throw error(errc::domain, "resolution_of_unity_diag: n must be >= 0");
    if (!(q > 0.0 && q < 1.0))
        throw error(errc::domain, "resolution_of_unity_diag requires 0 < q < 1");
    const double b = 1.0 / (1.0 - q);
    // 1/e_q(qx) = ((1-q) q x; q)_inf, evaluated as a product: the series for
    // e_q converges too slowly near the endpoint while the product is exact
    const auto weight = [&](double x) {
        return q_pochhammer_inf(cplx((1.0 - q) * q * x), q, policy).real();
    };
    const double integral = jackson_integral(
        [&](double x) { return std::pow(x, static_cast<double>(n)) * weight(x); }, b, q,
        policy);
    return integral / q_factorial(n, q);
}

double stieltjes_moment_target(long n, const QParams& params) {
    params.validate();
    if (n < 0) throw error(errc::domain, "stieltjes_moment_target: n must be >= 0");
    return q_factorial_lambda(n, params.q, params.lambda);
}

}  // namespace qosc
