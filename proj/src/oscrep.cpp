#include "oscrep.hpp"

#include <cmath>
#include <sstream>

#include "ddouble.hpp"

namespace qosc {

void BasisWindow::validate() const {
    if (!(n_min <= 0 && 0 <= n_max))
        throw error(errc::domain, "BasisWindow: window must contain n = 0");
    if (dim() < 2) throw error(errc::domain, "BasisWindow: need at least two states");
}

void RepSpec::validate() const {
    params.validate();
    window.validate();
    if (kind == RepKind::h0 && window.n_min != 0)
        throw error(errc::domain, "RepSpec: the Fock module starts at n_min = 0");
    if (kind == RepKind::hgamma) {
        if (!params.gamma.has_value())
            throw error(errc::domain, "RepSpec: gamma parameter required");
        if (!(window.n_min < 0 && window.n_max > 0))
            throw error(errc::domain,
                        "RepSpec: the Z-graded window must span negative and positive n");
    }
}

namespace {

RepOperators assemble(const RepSpec& spec, std::vector<double> c) {
    const long dim = spec.window.dim();
    const bool vacuum = spec.kind == RepKind::h0;
    Matrix a(dim, dim), adag(dim, dim), num(dim, dim);
    for (long i = 0; i + 1 < dim; ++i) {
        // a_dagger |n-1> = c_n |n> puts c_n on the subdiagonal
        a(i, i + 1) = c[i];
        adag(i + 1, i) = c[i];
    }
    for (long i = 0; i < dim; ++i) num(i, i) = static_cast<double>(spec.window.level_of(i));
    RepOperators ops;
    ops.spec = spec;
    ops.a = {spec.window, std::move(a), "a", vacuum};
    ops.a_dagger = {spec.window, std::move(adag), "a_dagger", vacuum};
    ops.number = {spec.window, std::move(num), "N", vacuum};
    ops.c = std::move(c);
    return ops;
}

// interior max of |residual| / max(1, local scale)
double scaled_interior_max(const Matrix& residual, const Matrix& scale, long top_cut,
                           long bottom_cut) {
    const long dim = static_cast<long>(residual.rows());
    double worst = 0.0;
    for (long i = bottom_cut; i < dim - top_cut; ++i) {
        for (long j = bottom_cut; j < dim - top_cut; ++j) {
            const double s = std::max(1.0, std::abs(scale(i, j)));
            worst = std::max(worst, std::abs(residual(i, j)) / s);
        }
    }
    return worst;
}

Matrix abs_sum(const Matrix& x, const Matrix& y, const Matrix& z) {
    Matrix s(x.rows(), x.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j)
            s(i, j) = std::abs(x(i, j)) + std::abs(y(i, j)) + std::abs(z(i, j));
    return s;
}

double required_lambda(Relation r, double ops_lambda) {
    switch (r) {
        case Relation::canonical: return 0.0;
        case Relation::sqrt_form: return 0.5;
        case Relation::commutator: return 1.0;
        case Relation::lambda_form: return ops_lambda;
    }
    return ops_lambda;
}

}  // namespace

const char* relation_text(Relation r) noexcept {
    switch (r) {
        case Relation::canonical: return "a a+ - q a+ a = 1";
        case Relation::sqrt_form: return "A A+ - q^{1/2} A+ A = q^{-N/2}";
        case Relation::commutator: return "[alpha, alpha+] = q^{-N}";
        case Relation::lambda_form:
            return "a(l) a+(l) - q^{1-l} a+(l) a(l) = q^{-l N}";
    }
    return "";
}

RepOperators build_h0(const RepSpec& spec) {
    if (spec.kind != RepKind::h0)
        throw error(errc::domain, "build_h0: spec.kind must be h0");
    spec.validate();
    const double q = spec.params.q;
    const double lambda = spec.params.lambda;
    std::vector<double> c;
    c.reserve(spec.window.n_max);
    for (long n = 1; n <= spec.window.n_max; ++n)
        c.push_back(std::sqrt(q_bracket_lambda(n, q, lambda)));
    return assemble(spec, std::move(c));
}

RepOperators build_hgamma(const RepSpec& spec) {
    if (spec.kind != RepKind::hgamma)
        throw error(errc::domain, "build_hgamma: spec.kind must be hgamma");
    spec.validate();
    const double q = spec.params.q;
    const double lambda = spec.params.lambda;
    const double gamma = *spec.params.gamma;
    std::vector<double> c;
    c.reserve(spec.window.dim() - 1);
    for (long n = spec.window.n_min + 1; n <= spec.window.n_max; ++n) {
        const double c2 = gamma * std::pow(q, static_cast<double>(n)) + q_bracket(n, q);
        if (!(c2 > 0.0)) {
            std::ostringstream os;
            os << "build_hgamma: c_n^2 = " << c2 << " non-positive at n = " << n;
            throw error(errc::domain, os.str());
        }
        double cn = std::sqrt(c2);
        if (lambda != 0.0)
            cn *= std::pow(q, -0.5 * lambda * static_cast<double>(n - 1));
        c.push_back(cn);
    }
    return assemble(spec, std::move(c));
}

double commutation_residual(const RepOperators& ops, Relation relation) {
    if (ops.spec.window.dim() < 3)
        throw error(errc::domain, "commutation_residual: window too small (< 3 states)");
    const double lambda = required_lambda(relation, ops.spec.params.lambda);
    if (ops.spec.params.lambda != lambda) {
        std::ostringstream os;
        os << "commutation_residual: relation expects lambda = " << lambda
           << " but operators were built with lambda = " << ops.spec.params.lambda;
        throw error(errc::domain, os.str());
    }
    const double q = ops.spec.params.q;
    const double p = std::pow(q, 1.0 - lambda);
    const long dim = ops.spec.window.dim();

    const Matrix lhs = ops.a.entries * ops.a_dagger.entries;
    const Matrix mid = (ops.a_dagger.entries * ops.a.entries) * cplx(p);
    std::vector<double> rdiag(dim);
    for (long i = 0; i < dim; ++i)
        rdiag[i] = std::pow(q, -lambda * static_cast<double>(ops.spec.window.level_of(i)));
    const Matrix rhs = Matrix::diagonal(rdiag);

    const Matrix residual = lhs - mid - rhs;
    const Matrix scale = abs_sum(lhs, mid, rhs);
    const long bottom_cut = ops.spec.kind == RepKind::hgamma ? 1 : 0;
    return scaled_interior_max(residual, scale, 1, bottom_cut);
}

OperatorMatrix central_element(const RepOperators& ops) {
    if (ops.spec.params.lambda != 0.0)
        throw error(errc::domain, "central_element: lambda = 0 operators required");
    const double q = ops.spec.params.q;
    const BasisWindow& w = ops.spec.window;
    const long dim = w.dim();

    // off-diagonal structure from the banded product (exactly zero entries)
    const Matrix adag_a = ops.a_dagger.entries * ops.a.entries;
    Matrix zeta(dim, dim);
    for (long i = 0; i < dim; ++i) {
        const double qmn = std::pow(q, -static_cast<double>(w.level_of(i)));
        for (long j = 0; j < dim; ++j)
            if (i != j) zeta(i, j) = -qmn * adag_a(i, j);
    }

    // diagonal in double-double: q^{-n} ([n;q] - c_n^2)
    const dd::DD qd = dd::from(q);
    for (long i = 0; i < dim; ++i) {
        const long n = w.level_of(i);
        const dd::DD bracket = dd::q_bracket(n, qd);
        dd::DD c2 = dd::from(0.0);
        if (i > 0) {  // bottom state: a kills it in the truncated window
            if (ops.spec.kind == RepKind::h0) {
                c2 = dd::q_bracket(n, qd);
            } else {
                c2 = dd::add(dd::mul(dd::from(*ops.spec.params.gamma), dd::pow_int(qd, n)),
                             dd::q_bracket(n, qd));
            }
        }
        const dd::DD value = dd::mul(dd::pow_int(qd, -n), dd::sub(bracket, c2));
        zeta(i, i) = dd::to_double(value);
    }
    return {w, std::move(zeta), "zeta", ops.a.vacuum_floor};
}

double ordering_residual(const RepOperators& ops, long m) {
    const long dim = ops.spec.window.dim();
    if (m < 1) throw error(errc::domain, "ordering_residual: m must be >= 1");
    if (m > dim - 2)
        throw error(errc::domain, "ordering_residual: m too large for the window");
    const double q = ops.spec.params.q;
    const double lambda = ops.spec.params.lambda;
    const double p = std::pow(q, 1.0 - lambda);
    const double r = std::pow(q, -lambda);
    const double bracket = q_bracket(m, r / p);

    const Matrix adag_m = ops.a_dagger.entries.pow(m);
    const Matrix adag_m1 = ops.a_dagger.entries.pow(m - 1);
    std::vector<double> rn(dim);
    for (long i = 0; i < dim; ++i)
        rn[i] = std::pow(r, static_cast<double>(ops.spec.window.level_of(i)));

    const Matrix t1 = ops.a.entries * adag_m;
    const Matrix t2 = (adag_m * ops.a.entries) * cplx(std::pow(p, static_cast<double>(m)));
    const Matrix t3 = (adag_m1 * Matrix::diagonal(rn)) *
                      cplx(std::pow(p, static_cast<double>(m - 1)) * bracket);

    const Matrix residual = t1 - t2 - t3;
    const Matrix scale = abs_sum(t1, t2, t3);
    const long bottom_cut = ops.spec.kind == RepKind::hgamma ? 1 : 0;
    return scaled_interior_max(residual, scale, m, bottom_cut);
}

OperatorMatrix shifted_number(const RepOperators& ops, double nu) {
    Matrix shifted = ops.number.entries;
    for (long i = 0; i < ops.spec.window.dim(); ++i) shifted(i, i) += nu;
    return {ops.spec.window, std::move(shifted), "N+nu", ops.number.vacuum_floor};
}

WignerDeformation wigner_deformation(std::span<const double> c, long n_first) {
    if (c.empty()) throw error(errc::domain, "wigner_deformation: empty sequence");
    for (double v : c)
        if (!(v > 0.0))
            throw error(errc::domain, "wigner_deformation: c values must be positive");
    const bool anchored = n_first == 1;
    if (!anchored && c.size() < 2)
        throw error(errc::domain,
                    "wigner_deformation: floating window needs at least two c values");
    const long count = static_cast<long>(c.size());

    // c2(n) with the vacuum convention c_0 = 0 when anchored
    auto c2_of = [&](long n) -> double {
        if (anchored && n == 0) return 0.0;
        return c[n - n_first] * c[n - n_first];
    };

    WignerDeformation out;
    out.f_first = anchored ? 0 : n_first;
    const long f_last = n_first + count - 2;  // F(n) needs both c_n and c_{n+1}
    for (long n = out.f_first; n <= f_last; ++n) out.f.push_back(c2_of(n + 1) - c2_of(n));

    // matrix verification on the window [n_first-1, n_first+count-1]
    const long lo = n_first - 1;
    const long dim = count + 1;
    Matrix a(dim, dim), adag(dim, dim);
    for (long i = 0; i + 1 < dim; ++i) {
        a(i, i + 1) = c[i];
        adag(i + 1, i) = c[i];
    }
    const Matrix comm = a * adag - adag * a;
    const long bottom = anchored ? 0 : 1;
    double comm_res = 0.0;
    for (long i = bottom; i < dim - 1; ++i) {
        const long n = lo + i;
        for (long j = bottom; j < dim - 1; ++j) {
            const double want = (i == j) ? c2_of(n + 1) - c2_of(n) : 0.0;
            const double s = std::max(1.0, std::abs(c2_of(n + 1)) + std::abs(c2_of(n)));
            comm_res = std::max(comm_res, std::abs(comm(i, j).real() - want) / s);
        }
    }
    out.commutator_residual = comm_res;

    const Matrix adag_a = adag * a;
    bool first = true;
    double spread = 0.0;
    for (long i = bottom; i < dim - 1; ++i) {
        const long n = lo + i;
        const double central = c2_of(n) - adag_a(i, i).real();
        if (first) {
            out.zeta_shift = central;
            first = false;
        }
        spread = std::max(spread, std::abs(central - out.zeta_shift));
    }
    out.central_residual = spread;
    return out;
}

}  // namespace qosc
