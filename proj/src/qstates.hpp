#ifndef QOSC_QSTATES_HPP
#define QOSC_QSTATES_HPP

#include <string>
#include <vector>

#include "oscrep.hpp"
#include "qcore.hpp"

namespace qosc {

struct StateVector {
    BasisWindow window;
    std::vector<cplx> coeffs;
    std::string label;

    double norm() const;
};

struct CoherentState {
    StateVector state;
    double tail_mass = 0.0;          // |last coefficient|^2 / norm^2
    bool truncation_warning = false;  // tail_mass above 1e-10
};

/// Coherent state of a(lambda) in the truncated Fock module:
/// coefficient on |n> is q^{lambda n(n-1)/4} z^n / sqrt([n;q]!).
/// Strict about the convergence domain of the underlying q-exponential.
CoherentState coherent_state(cplx z, const QParams& params, long dim, bool normalize);

/// ||op psi - z psi|| / ||psi|| with the component(s) at the truncation
/// boundary excluded: the top component when op lowers (superdiagonal band),
/// the bottom when op raises into a non-vacuum floor.
double eigen_residual(const OperatorMatrix& op, const StateVector& state, cplx z);

enum class NormVerdict { normalizable, non_normalizable };

const char* verdict_text(NormVerdict v) noexcept;

struct HgammaCoherent {
    StateVector state;  // unit-normalized; the recurrence fixes only the ray
    NormVerdict verdict = NormVerdict::non_normalizable;
};

/// Creation-operator eigenstate a+ |psi> = z |psi> on the Z-graded module,
/// built by the two-sided recurrence d_n = d_{n-1} c_n / z anchored at
/// d_0 = 1. The verdict is a numerical statement at this window: tails must
/// shrink below 1e-12 of the accumulated norm.
HgammaCoherent hgamma_creation_coherent(cplx z, const QParams& params,
                                        const BasisWindow& window);

struct GeneratingVector {
    std::vector<double> coeffs;  // omega_0 .. omega_{z_order}
    double residual = 0.0;       // difference-equation residual through z_order
};

/// Coefficients of the generating function omega(z,x) = sum_n omega_n z^n,
/// omega_n = H_n(2x;q,lambda) q^{lambda n(n-1)/4} / sqrt([n;q]!), together
/// with the residual of the coefficient-space difference equation
/// [n+1;q,lambda] omega_{n+1} + omega_{n-1} = 2x omega_n.
GeneratingVector generating_vector(double x, long z_order, const QParams& params, long dim);

}  // namespace qosc

#endif
