#include "qhermite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <sstream>

namespace qosc {

void TridiagonalOperator::validate() const {
    if (diag.size() < 2) throw error(errc::domain, "TridiagonalOperator: dim must be >= 2");
    if (offdiag.size() + 1 != diag.size())
        throw error(errc::domain, "TridiagonalOperator: offdiag size must be dim-1");
    for (double c : offdiag)
        if (!(c > 0.0))
            throw error(errc::domain, "TridiagonalOperator: offdiagonal must be positive");
}

std::vector<double> hermite_sequence(double x, long n_max, const QParams& params) {
    params.validate();
    if (n_max < 0) throw error(errc::domain, "hermite_sequence: n_max must be >= 0");
    std::vector<double> h(n_max + 1);
    h[0] = 1.0;
    if (n_max == 0) return h;
    double c_n = std::sqrt(q_bracket_lambda(1, params.q, params.lambda));  // c_1 = 1
    h[1] = x / c_n;
    for (long n = 1; n < n_max; ++n) {
        const double c_next = std::sqrt(q_bracket_lambda(n + 1, params.q, params.lambda));
        h[n + 1] = (x * h[n] - c_n * h[n - 1]) / c_next;
        c_n = c_next;
    }
    return h;
}

TridiagonalOperator jacobi_matrix(const QParams& params, long dim) {
    params.validate();
    if (dim < 2) throw error(errc::domain, "jacobi_matrix: dim must be >= 2");
    TridiagonalOperator op;
    op.diag.assign(dim, 0.0);
    op.offdiag.resize(dim - 1);
    for (long n = 1; n < dim; ++n)
        op.offdiag[n - 1] = std::sqrt(q_bracket_lambda(n, params.q, params.lambda));
    return op;
}

namespace {

// deterministic start vector for inverse iteration (splitmix64 bits -> (-1,1))
double hash_unit(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    x = x ^ (x >> 31);
    return 2.0 * (static_cast<double>(x >> 11) * 0x1.0p-53) - 1.0;
}

// number of eigenvalues strictly below sigma (LDL^T sign count)
long sturm_count(const std::vector<double>& d, const std::vector<double>& e2, double sigma,
                 double pivmin) {
    long cnt = 0;
    double t = d[0] - sigma;
    if (std::abs(t) < pivmin) t = -pivmin;
    if (t < 0.0) ++cnt;
    for (std::size_t i = 1; i < d.size(); ++i) {
        t = d[i] - sigma - e2[i - 1] / t;
        if (std::abs(t) < pivmin) t = -pivmin;
        if (t < 0.0) ++cnt;
    }
    return cnt;
}

// One inverse-iteration solve: (T - sigma) x = b, Gaussian elimination with
// partial pivoting specialised to tridiagonal structure.
void solve_shifted(const TridiagonalOperator& op, double sigma, std::vector<double>& x) {
    const long n = op.dim();
    std::vector<double> d0(n), d1(n, 0.0), d2(n, 0.0);
    for (long i = 0; i < n; ++i) {
        d0[i] = op.diag[i] - sigma;
        if (i + 1 < n) d1[i] = op.offdiag[i];
    }
    std::vector<double> sub(n, 0.0);
    for (long i = 1; i < n; ++i) sub[i] = op.offdiag[i - 1];

    const double tiny = std::numeric_limits<double>::min() * 4.0;
    for (long i = 0; i + 1 < n; ++i) {
        if (std::abs(sub[i + 1]) > std::abs(d0[i])) {
            std::swap(d0[i], sub[i + 1]);
            std::swap(d1[i], d0[i + 1]);
            std::swap(d2[i], d1[i + 1]);
            std::swap(x[i], x[i + 1]);
        }
        if (std::abs(d0[i]) < tiny) d0[i] = std::copysign(tiny, d0[i]);
        const double m = sub[i + 1] / d0[i];
        d0[i + 1] -= m * d1[i];
        d1[i + 1] -= m * d2[i];
        x[i + 1] -= m * x[i];
    }
    if (std::abs(d0[n - 1]) < tiny) d0[n - 1] = std::copysign(tiny, d0[n - 1]);
    // near-singular pivots push components toward 1/tiny; rescale the suffix
    // (and the pending rhs with it) before anything overflows
    double rhs_scale = 1.0;
    for (long i = n - 1; i >= 0; --i) {
        double s = rhs_scale * x[i];
        if (i + 1 < n) s -= d1[i] * x[i + 1];
        if (i + 2 < n) s -= d2[i] * x[i + 2];
        double xi = s / d0[i];
        if (std::abs(xi) > 1e280) {
            const double sc = 1.0 / std::abs(xi);
            for (long j = i + 1; j < n; ++j) x[j] *= sc;
            rhs_scale *= sc;
            xi *= sc;
        }
        x[i] = xi;
    }
}

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double t : v) s += t * t;
    return std::sqrt(s);
}

std::vector<double> inverse_iteration(const TridiagonalOperator& op, double sigma) {
    const long n = op.dim();
    std::vector<double> v(n);
    for (long i = 0; i < n; ++i) v[i] = hash_unit(static_cast<std::uint64_t>(i) + 1);
    double nv = norm2(v);
    for (double& t : v) t /= nv;
    for (int iter = 0; iter < 3; ++iter) {
        solve_shifted(op, sigma, v);
        // solutions reach ~1/pivmin when sigma is (nearly) exact; rescale by
        // the largest component before the two-norm to keep squares finite
        double amax = 0.0;
        for (double t : v) amax = std::max(amax, std::abs(t));
        if (!(amax > 0.0) || !std::isfinite(amax)) {
            for (long i = 0; i < n; ++i)
                v[i] = hash_unit(static_cast<std::uint64_t>(i) + 7919 * (iter + 1));
            amax = 1.0;
        }
        for (double& t : v) t /= amax;
        nv = norm2(v);
        for (double& t : v) t /= nv;
    }
    // fix sign: first component of noticeable magnitude positive
    for (long i = 0; i < n; ++i) {
        if (std::abs(v[i]) > 1e-300) {
            if (v[i] < 0.0)
                for (double& t : v) t = -t;
            break;
        }
    }
    return v;
}

// w(x) = 1/sum_n H_n(x)^2: the squared first component of the orthonormal
// recurrence eigenvector at node x. A sum of positives, so no cancellation at
// any magnitude. The rescale by exact powers of two keeps strongly graded
// recurrences (H_n spanning hundreds of decades) inside binary64 without
// injecting any rounding; weights below the double range underflow to zero.
double christoffel_weight(const TridiagonalOperator& op, double x) {
    const long n = op.dim();
    double acc = 0.0;  // sum of H^2 in the current scale frame
    long rescales = 0;
    double h_prev = 0.0, h = 1.0;
    for (long k = 0; k < n; ++k) {
        // rescale before squaring: one recurrence step can grow h by the
        // full node magnitude, far past the point where h*h overflows
        while (std::abs(h) > 0x1p500) {
            h *= 0x1p-512;
            h_prev *= 0x1p-512;
            acc *= 0x1p-1024;
            ++rescales;
        }
        acc += h * h;
        if (k + 1 < n) {
            const double c_k = k >= 1 ? op.offdiag[k - 1] : 0.0;
            const double next = ((x - op.diag[k]) * h - c_k * h_prev) / op.offdiag[k];
            h_prev = h;
            h = next;
        }
    }
    if (rescales == 0) return 1.0 / acc;
    return std::ldexp(1.0 / acc, static_cast<int>(-1024 * rescales));
}

std::vector<double> bisect_eigenvalues(const TridiagonalOperator& op, double tol) {
    const long n = op.dim();
    std::vector<double> e2(n - 1);
    double max_e2 = 1.0;
    for (long i = 0; i + 1 < n; ++i) {
        e2[i] = op.offdiag[i] * op.offdiag[i];
        max_e2 = std::max(max_e2, e2[i]);
    }
    const double pivmin = std::numeric_limits<double>::min() * max_e2;

    double gl = op.diag[0], gu = op.diag[0];
    for (long i = 0; i < n; ++i) {
        const double r = (i > 0 ? op.offdiag[i - 1] : 0.0) + (i + 1 < n ? op.offdiag[i] : 0.0);
        gl = std::min(gl, op.diag[i] - r);
        gu = std::max(gu, op.diag[i] + r);
    }
    const double span = gu - gl;
    gl -= 1e-3 * span + 1e-300;
    gu += 1e-3 * span + 1e-300;

    std::vector<double> eig(n);
    for (long k = 0; k < n; ++k) {
        double lo = gl, hi = gu;
        bool converged = false;
        for (int iter = 0; iter < 3000; ++iter) {
            // refine well past the requested tolerance; downstream weight
            // normalization rides directly on node accuracy
            const double width_limit =
                std::max({0.015625 * tol * std::max(std::abs(lo), std::abs(hi)),
                          2.0 * std::numeric_limits<double>::epsilon() *
                              std::max(std::abs(lo), std::abs(hi)),
                          1e-290});
            const double mid = 0.5 * (lo + hi);
            if (hi - lo <= width_limit || mid <= lo || mid >= hi) {
                converged = true;  // bracket at the limit or at machine resolution
                break;
            }
            if (sturm_count(op.diag, e2, mid, pivmin) <= k)
                lo = mid;
            else
                hi = mid;
        }
        if (!converged)
            throw error(errc::non_convergence,
                        "eigendecompose: bisection hit the iteration cap");
        eig[k] = 0.5 * (lo + hi);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

bool zero_diagonal(const TridiagonalOperator& op) {
    for (double d : op.diag)
        if (d != 0.0) return false;
    return true;
}

}  // namespace

SpectralMeasure eigendecompose(const TridiagonalOperator& op, double tol) {
    op.validate();
    if (!(tol > 0.0)) throw error(errc::domain, "eigendecompose: tol must be > 0");
    const long n = op.dim();
    std::vector<double> nodes = bisect_eigenvalues(op, tol);

    // zero diagonal: spectrum is exactly symmetric; pair nodes so the
    // symmetry holds to the last bit (odd dimension pins the middle at 0)
    if (zero_diagonal(op)) {
        for (long i = 0; i < n / 2; ++i) {
            const double v = 0.5 * (nodes[n - 1 - i] - nodes[i]);
            nodes[i] = -v;
            nodes[n - 1 - i] = v;
        }
        if (n % 2 == 1) nodes[n / 2] = 0.0;
    }

    SpectralMeasure out;
    out.weights.resize(n);
    // the weight (squared first component of the orthonormal eigenvector)
    // comes from the recurrence normalization, which stays accurate when
    // that component is many decades below the vector norm
    for (long i = 0; i < n; ++i) out.weights[i] = christoffel_weight(op, nodes[i]);
    out.nodes = std::move(nodes);
    // same |node|, same weight; average out the bisection jitter
    if (zero_diagonal(op)) {
        for (long i = 0; i < n / 2; ++i) {
            const double w = 0.5 * (out.weights[i] + out.weights[n - 1 - i]);
            out.weights[i] = w;
            out.weights[n - 1 - i] = w;
        }
    }
    return out;
}

SpectralDecomposition eigendecompose_full(const TridiagonalOperator& op, double tol) {
    SpectralDecomposition out;
    out.measure = eigendecompose(op, tol);
    const long n = op.dim();
    out.vectors.reserve(n);
    for (long i = 0; i < n; ++i)
        out.vectors.push_back(inverse_iteration(op, out.measure.nodes[i]));
    return out;
}

std::vector<double> measure_moments(const SpectralMeasure& measure, long k_max) {
    if (k_max < 0) throw error(errc::domain, "measure_moments: k_max must be >= 0");
    const long n = measure.size();
    std::vector<double> moments(k_max + 1, 0.0);
    std::vector<CompensatedSum> acc(k_max + 1);
    for (long i = 0; i < n; ++i) {
        const double w = measure.weights[i];
        if (w == 0.0) continue;  // underflowed edge weight; skip before powers blow up
        const double x = measure.nodes[i];
        double p = 1.0;
        for (long k = 0; k <= k_max; ++k) {
            acc[k].add(w * p);
            p *= x;
        }
    }
    for (long k = 0; k <= k_max; ++k) moments[k] = acc[k].value();
    return moments;
}

std::vector<double> vacuum_moments(const TridiagonalOperator& op, long k_max) {
    op.validate();
    if (k_max < 0) throw error(errc::domain, "vacuum_moments: k_max must be >= 0");
    const long n = op.dim();
    std::vector<double> u(n, 0.0), next(n);
    u[0] = 1.0;
    std::vector<double> moments(k_max + 1);
    moments[0] = 1.0;
    for (long k = 1; k <= k_max; ++k) {
        for (long i = 0; i < n; ++i) {
            double s = op.diag[i] * u[i];
            if (i > 0) s += op.offdiag[i - 1] * u[i - 1];
            if (i + 1 < n) s += op.offdiag[i] * u[i + 1];
            next[i] = s;
        }
        std::swap(u, next);
        moments[k] = u[0];
    }
    return moments;
}

MomentRecovery jacobi_from_moments(std::span<const double> moments, long n_out) {
    if (n_out < 1) throw error(errc::domain, "jacobi_from_moments: n_out must be >= 1");
    if (static_cast<long>(moments.size()) < 2 * n_out) {
        std::ostringstream os;
        os << "jacobi_from_moments: need " << 2 * n_out << " moments, got "
           << moments.size();
        throw error(errc::domain, os.str());
    }
    if (!(moments[0] > 0.0))
        throw error(errc::domain, "jacobi_from_moments: m_0 must be positive");

    using ld = long double;
    const long m = 2 * n_out;
    std::vector<ld> row_prev(m, 0.0L);  // sigma_{k-2,*}
    std::vector<ld> row_cur(m);         // sigma_{k-1,*}
    std::vector<ld> row_next(m, 0.0L);
    for (long l = 0; l < m; ++l) row_cur[l] = static_cast<ld>(moments[l]);

    std::vector<ld> alpha(n_out), beta(n_out);
    alpha[0] = row_cur[1] / row_cur[0];
    beta[0] = row_cur[0];
    double cond = 1.0;

    for (long k = 1; k < n_out; ++k) {
        std::fill(row_next.begin(), row_next.end(), 0.0L);
        ld cancel = 1.0L;
        for (long l = k; l <= m - k - 1; ++l) {
            const ld t1 = row_cur[l + 1];
            const ld t2 = alpha[k - 1] * row_cur[l];
            const ld t3 = beta[k - 1] * row_prev[l];
            row_next[l] = t1 - t2 - t3;
            if (l == k && row_next[l] != 0.0L)
                cancel = (fabsl(t1) + fabsl(t2) + fabsl(t3)) / fabsl(row_next[l]);
        }
        const ld skk = row_next[k];
        const ld skk_prev = row_cur[k - 1];
        if (!(skk > 0.0L) || !std::isfinite(static_cast<double>(skk))) {
            std::ostringstream os;
            os << "jacobi_from_moments: Hankel positivity lost at order " << k
               << " (no positive measure matches this many moments at working precision)";
            throw error(errc::conditioning, os.str());
        }
        cond = std::max(cond, static_cast<double>(cancel));
        alpha[k] = row_next[k + 1] / skk - row_cur[k] / skk_prev;
        beta[k] = skk / skk_prev;
        std::swap(row_prev, row_cur);
        std::swap(row_cur, row_next);
    }

    MomentRecovery out;
    out.mass = moments[0];
    out.condition_estimate = cond;
    out.op.diag.resize(n_out);
    out.op.offdiag.resize(n_out - 1);
    for (long k = 0; k < n_out; ++k) out.op.diag[k] = static_cast<double>(alpha[k]);
    for (long k = 1; k < n_out; ++k) {
        const double b = static_cast<double>(beta[k]);
        if (!(b > 0.0)) {
            std::ostringstream os;
            os << "jacobi_from_moments: Hankel positivity lost at order " << k;
            throw error(errc::conditioning, os.str());
        }
        out.op.offdiag[k - 1] = std::sqrt(b);
    }
    return out;
}

double orthonormality_check(const QParams& params, long dim, long m_max) {
    params.validate();
    if (m_max < 0) throw error(errc::domain, "orthonormality_check: m_max must be >= 0");
    if (m_max > dim - 1)
        throw error(errc::domain, "orthonormality_check: m_max must be <= dim-1");
    const TridiagonalOperator op = jacobi_matrix(params, dim);
    const SpectralMeasure measure = eigendecompose(op);

    // Accumulates sum_i w_i H_a(x_i) H_b(x_i) as H_a H_b / sum_n H_n^2 per
    // node. At extreme nodes the factors w and H^2 overflow/underflow
    // separately while their product is an ordinary number, so everything is
    // carried in a power-of-two scaled frame and recombined per entry.
    std::vector<std::vector<CompensatedSum>> gram(m_max + 1,
                                                  std::vector<CompensatedSum>(m_max + 1));
    std::vector<double> h_at(m_max + 1);
    std::vector<long> frame_at(m_max + 1);
    for (long i = 0; i < measure.size(); ++i) {
        const double x = measure.nodes[i];
        double h_prev = 0.0, h = 1.0, acc = 0.0;
        long frame = 0;  // number of 2^-512 rescales applied so far
        for (long n = 0; n < dim; ++n) {
            while (std::abs(h) > 0x1p500) {
                h *= 0x1p-512;
                h_prev *= 0x1p-512;
                acc *= 0x1p-1024;
                ++frame;
            }
            if (n <= m_max) {
                h_at[n] = h;
                frame_at[n] = frame;
            }
            acc += h * h;
            if (n + 1 < dim) {
                const double c_n = n >= 1 ? op.offdiag[n - 1] : 0.0;
                const double next = ((x - op.diag[n]) * h - c_n * h_prev) / op.offdiag[n];
                h_prev = h;
                h = next;
            }
        }
        for (long a = 0; a <= m_max; ++a)
            for (long b = a; b <= m_max; ++b) {
                const long e = 512 * (frame_at[a] + frame_at[b] - 2 * frame);
                gram[a][b].add(std::ldexp(h_at[a] * h_at[b] / acc, static_cast<int>(e)));
            }
    }
    double worst = 0.0;
    for (long a = 0; a <= m_max; ++a)
        for (long b = a; b <= m_max; ++b) {
            const double want = a == b ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(gram[a][b].value() - want));
        }
    return worst;
}

}  // namespace qosc
