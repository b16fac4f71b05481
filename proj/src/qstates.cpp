#include "qstates.hpp"

#include <cmath>
#include <sstream>

#include "qfunc.hpp"
#include "qhermite.hpp"

namespace qosc {

double StateVector::norm() const {
    CompensatedSum s;
    for (const cplx& c : coeffs) s.add(std::norm(c));
    return std::sqrt(s.value());
}

const char* verdict_text(NormVerdict v) noexcept {
    return v == NormVerdict::normalizable ? "normalizable" : "non-normalizable at this window";
}

CoherentState coherent_state(cplx z, const QParams& params, long dim, bool normalize) {
    params.validate();
    if (!(params.q < 1.0))
        throw error(errc::domain, "coherent_state requires 0 < q < 1");
    if (dim < 2) throw error(errc::domain, "coherent_state: dim must be >= 2");
    const double q = params.q;
    const double lambda = params.lambda;

    const ConvergenceClass conv = convergence_class(q, lambda);
    if (conv.kind == ConvergenceKind::zero_radius && z != cplx(0.0))
        throw error(errc::divergence,
                    "coherent_state: zero radius of convergence at lambda < 0");
    // lambda = 0: normalizability needs |z|^2 inside the e_q radius
    if (conv.kind == ConvergenceKind::finite_radius && !(std::norm(z) < conv.radius)) {
        std::ostringstream os;
        os << "coherent_state: |z|^2 = " << std::norm(z)
           << " outside the normalizable disk of radius " << conv.radius;
        throw error(errc::divergence, os.str());
    }

    std::vector<cplx> coeffs(dim);
    coeffs[0] = 1.0;
    const double qlh = std::pow(q, 0.5 * lambda);  // q^{lambda/2}
    double qfac = 1.0;                             // q^{lambda (n-1)/2} iterated
    CompensatedSum norm2;
    norm2.add(1.0);
    for (long n = 1; n < dim; ++n) {
        coeffs[n] = coeffs[n - 1] * z * qfac / std::sqrt(q_bracket(n, q));
        qfac *= qlh;
        norm2.add(std::norm(coeffs[n]));
    }

    CoherentState out;
    out.tail_mass = std::norm(coeffs[dim - 1]) / norm2.value();
    out.truncation_warning = out.tail_mass > 1e-10;
    if (normalize) {
        const double inv = 1.0 / std::sqrt(norm2.value());
        for (cplx& c : coeffs) c *= inv;
    }
    std::ostringstream label;
    label << "coherent(z=" << z.real() << (z.imag() < 0 ? "" : "+") << z.imag()
          << "i, lambda=" << lambda << ")";
    out.state = {BasisWindow{0, dim - 1}, std::move(coeffs), label.str()};
    return out;
}

double eigen_residual(const OperatorMatrix& op, const StateVector& state, cplx z) {
    if (!(op.window == state.window))
        throw error(errc::window_mismatch,
                    "eigen_residual: operator and state windows differ");
    const long dim = op.window.dim();
    bool has_super = false, has_sub = false;
    for (long i = 0; i + 1 < dim; ++i) {
        if (std::abs(op.entries(i, i + 1)) != 0.0) has_super = true;
        if (std::abs(op.entries(i + 1, i)) != 0.0) has_sub = true;
    }
    std::vector<cplx> r = op.entries.apply(state.coeffs);
    for (long i = 0; i < dim; ++i) r[i] -= z * state.coeffs[i];

    const long lo = (has_sub && !op.vacuum_floor) ? 1 : 0;
    const long hi = has_super ? dim - 1 : dim;
    CompensatedSum s;
    for (long i = lo; i < hi; ++i) s.add(std::norm(r[i]));
    const double nrm = state.norm();
    if (!(nrm > 0.0)) throw error(errc::domain, "eigen_residual: zero state");
    return std::sqrt(s.value()) / nrm;
}

HgammaCoherent hgamma_creation_coherent(cplx z, const QParams& params,
                                        const BasisWindow& window) {
    params.validate();
    window.validate();
    if (!params.gamma.has_value())
        throw error(errc::domain, "hgamma_creation_coherent: gamma parameter required");
    if (!(window.n_min < 0 && window.n_max > 0))
        throw error(errc::domain,
                    "hgamma_creation_coherent: window must span negative and positive n");
    if (z == cplx(0.0))
        throw error(errc::domain,
                    "hgamma_creation_coherent: the recurrence degenerates at z = 0");
    const double q = params.q;
    const double gamma = *params.gamma;
    auto c_of = [&](long n) { return std::sqrt(gamma * std::pow(q, static_cast<double>(n)) +
                                               q_bracket(n, q)); };

    // two-sided recurrence; both passes can grow by hundreds of decades
    // before their turning point, so each rescales its computed range once
    // the running magnitude gets large (the state is only defined up to a ray)
    const long dim = window.dim();
    std::vector<cplx> d(dim);
    const long i0 = window.index_of(0);
    d[i0] = 1.0;
    for (long n = 1; n <= window.n_max; ++n) {
        const long i = window.index_of(n);
        d[i] = d[i - 1] * c_of(n) / z;
        if (std::abs(d[i]) > 1e140) {
            const double s = std::abs(d[i]);
            for (long j = 0; j <= i; ++j) d[j] /= s;
        }
    }
    for (long n = -1; n >= window.n_min; --n) {
        const long i = window.index_of(n);
        d[i] = z * d[i + 1] / c_of(n + 1);
        if (std::abs(d[i]) > 1e140) {
            const double s = std::abs(d[i]);
            for (long j = i; j < dim; ++j) d[j] /= s;
        }
    }

    CompensatedSum norm2;
    for (const cplx& c : d) norm2.add(std::norm(c));
    const double total = norm2.value();
    const double top_frac = std::norm(d[dim - 1]) / total;
    const double bottom_frac = std::norm(d[0]) / total;

    HgammaCoherent out;
    out.verdict = (top_frac < 1e-12 && bottom_frac < 1e-12) ? NormVerdict::normalizable
                                                            : NormVerdict::non_normalizable;
    const double inv = 1.0 / std::sqrt(total);
    for (cplx& c : d) c *= inv;
    std::ostringstream label;
    label << "hgamma-creation-coherent(z=" << z.real() << (z.imag() < 0 ? "" : "+")
          << z.imag() << "i, gamma=" << gamma << ")";
    out.state = {window, std::move(d), label.str()};
    return out;
}

GeneratingVector generating_vector(double x, long z_order, const QParams& params, long dim) {
    params.validate();
    if (z_order < 0) throw error(errc::domain, "generating_vector: z_order must be >= 0");
    if (z_order > dim - 2)
        throw error(errc::domain,
                    "generating_vector: order exceeds the available recurrence data");
    const double q = params.q;
    const double lambda = params.lambda;

    // the coordinate eigenvector at spectral parameter 2x, projected on the
    // coherent-state coefficients: omega_n = H_n(2x) q^{lambda n(n-1)/4} / sqrt([n;q]!)
    const std::vector<double> h = hermite_sequence(2.0 * x, z_order + 1, params);

    std::vector<double> omega(z_order + 2);
    double g = 1.0;  // q^{lambda n(n-1)/4} / sqrt([n;q]!) iterated
    const double qlq = std::pow(q, 0.5 * lambda);
    double qfac = 1.0;
    omega[0] = h[0];
    for (long n = 1; n <= z_order + 1; ++n) {
        g *= qfac / std::sqrt(q_bracket(n, q));
        qfac *= qlq;
        omega[n] = h[n] * g;
    }

    GeneratingVector out;
    out.coeffs.assign(omega.begin(), omega.begin() + z_order + 1);
    double worst = 0.0;
    for (long n = 0; n <= z_order; ++n) {
        const double up = q_bracket_lambda(n + 1, q, lambda) * omega[n + 1];
        const double down = n >= 1 ? omega[n - 1] : 0.0;
        const double target = 2.0 * x * omega[n];
        const double scale = std::max(1.0, std::abs(up) + std::abs(down) + std::abs(target));
        worst = std::max(worst, std::abs(up + down - target) / scale);
    }
    out.residual = worst;
    return out;
}

}  // namespace qosc
