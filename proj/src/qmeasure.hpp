#ifndef QOSC_QMEASURE_HPP
#define QOSC_QMEASURE_HPP

#include <functional>

#include "qcore.hpp"

namespace qosc {

/// Geometric grid q^m b, m = 0..m_cut, of one Jackson sum; m_cut is chosen by
/// the stopping rule, deep enough that the discarded summand tail sits below
/// the policy's tail_cutoff.
struct JacksonGrid {
    double b = 1.0;
    double q = 0.5;
    long m_cut = 0;

    void validate() const;
};

/// Jackson q-integral int_0^b f(x) d_q x = (1-q) sum_{m>=0} q^m b f(q^m b),
/// compensated summation, truncated once two consecutive summands drop below
/// the policy's absolute tail cutoff.
double jackson_integral(const std::function<double(double)>& f, double b, double q,
                        const SeriesPolicy& policy = {});

/// The grid jackson_integral settles on for this integrand.
JacksonGrid jackson_grid(const std::function<double(double)>& f, double b, double q,
                         const SeriesPolicy& policy = {});

/// Diagonal matrix element <n| . |n> of the coherent-state completeness sum:
/// ([n;q]!)^{-1} int_0^{1/(1-q)} x^n (e_q(qx))^{-1} d_q x, which must be 1.
/// The weight is evaluated through the product form, finite on every grid
/// point. Off-diagonal elements vanish by the angular integral and are not
/// computed.
double resolution_of_unity_diag(long n, double q, const SeriesPolicy& policy = {});

/// Target Stieltjes moment s_n = [n;q,lambda]! of the coherent-state measure.
double stieltjes_moment_target(long n, const QParams& params);

}  // namespace qosc

#endif
