#ifndef QOSC_QHERMITE_HPP
#define QOSC_QHERMITE_HPP

#include <span>
#include <vector>

#include "qcore.hpp"

namespace qosc {

/// Real symmetric tridiagonal operator. The generalized coordinate J(lambda)
/// has zero diagonal and offdiagonal c_n = sqrt([n;q,lambda]); moment
/// recovery can produce a nonzero diagonal (measures not symmetric about 0).
struct TridiagonalOperator {
    std::vector<double> diag;     // b_0 .. b_{D-1}
    std::vector<double> offdiag;  // c_1 .. c_{D-1}, strictly positive

    long dim() const noexcept { return static_cast<long>(diag.size()); }
    void validate() const;
};

/// Discrete D-point spectral measure: nodes ascending, weights positive,
/// total mass 1. Matches the first 2D-1 moments of the underlying measure.
struct SpectralMeasure {
    std::vector<double> nodes;
    std::vector<double> weights;

    long size() const noexcept { return static_cast<long>(nodes.size()); }
};

struct SpectralDecomposition {
    SpectralMeasure measure;
    // orthonormal eigenvectors, vectors[i] belongs to nodes[i]; sign fixed so
    // the first nonzero component is positive
    std::vector<std::vector<double>> vectors;
};

/// First-kind orthonormal values H_0..H_{n_max} at x:
/// c_n H_{n-1} + c_{n+1} H_{n+1} = x H_n with H_0 = 1, H_{-1} = 0 and
/// c_n = sqrt([n;q,lambda]).
std::vector<double> hermite_sequence(double x, long n_max, const QParams& params);

/// J(lambda) = a(lambda) + a+(lambda): zero diagonal, offdiag sqrt([n;q,lambda]).
TridiagonalOperator jacobi_matrix(const QParams& params, long dim);

/// All eigenvalues by Sturm-sequence bisection (relative accuracy tol),
/// weights as squared first components of inverse-iteration eigenvectors.
SpectralMeasure eigendecompose(const TridiagonalOperator& op, double tol = 1e-12);
SpectralDecomposition eigendecompose_full(const TridiagonalOperator& op, double tol = 1e-12);

/// m_k = sum_i w_i x_i^k for k = 0..k_max. Exact for k <= 2D-1 up to roundoff.
std::vector<double> measure_moments(const SpectralMeasure& measure, long k_max);

/// <0| J^k |0> by repeated tridiagonal mat-vec; the independent moment route.
std::vector<double> vacuum_moments(const TridiagonalOperator& op, long k_max);

struct MomentRecovery {
    TridiagonalOperator op;     // recurrence coefficients of the measure
    double mass = 0.0;          // m_0
    double condition_estimate;  // cancellation amplification observed
};

/// Recurrence coefficients from raw moments m_0..m_{2 n_out - 1} via the
/// Chebyshev algorithm, run in extended precision. Throws a conditioning
/// error naming the failing order once Hankel positivity is lost.
MomentRecovery jacobi_from_moments(std::span<const double> moments, long n_out);

/// max over m,n <= m_max of |sum_i w_i H_m(x_i) H_n(x_i) - delta_mn|,
/// evaluated through sqrt(w)-scaled recurrences so extreme nodes cannot
/// overflow.
double orthonormality_check(const QParams& params, long dim, long m_max);

}  // namespace qosc

#endif
