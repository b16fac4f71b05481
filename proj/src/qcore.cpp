#include "qcore.hpp"

#include <limits>
#include <sstream>

namespace qosc {

namespace {

[[noreturn]] void throw_domain(const std::string& msg) { throw error(errc::domain, msg); }

void require_positive_q(double q, const char* who) {
    if (!(q > 0.0)) {
        std::ostringstream os;
        os << who << ": q must be positive (got " << q << ")";
        throw_domain(os.str());
    }
}

void require_finite(double v, const char* who) {
    if (!std::isfinite(v)) {
        std::ostringstream os;
        os << who << ": value left the binary64 range";
        throw error(errc::overflow, os.str());
    }
}

}  // namespace

const char* errc_name(errc c) noexcept {
    switch (c) {
        case errc::domain: return "domain";
        case errc::non_convergence: return "non_convergence";
        case errc::divergence: return "divergence";
        case errc::pole: return "pole";
        case errc::overflow: return "overflow";
        case errc::conditioning: return "conditioning";
        case errc::window_mismatch: return "window_mismatch";
        case errc::evaluation: return "evaluation";
    }
    return "unknown";
}

void SeriesPolicy::validate() const {
    if (!(eps_term > 0.0)) throw_domain("SeriesPolicy: eps_term must be > 0");
    if (max_terms < 1) throw_domain("SeriesPolicy: max_terms must be >= 1");
    if (!(tail_cutoff > 0.0)) throw_domain("SeriesPolicy: tail_cutoff must be > 0");
}

void QParams::validate() const {
    require_positive_q(q, "QParams");
    if (!std::isfinite(lambda)) throw_domain("QParams: lambda must be finite");
    if (gamma.has_value()) {
        if (!(q < 1.0)) throw_domain("QParams: gamma requires 0 < q < 1");
        // admit the critical value itself even when 1/(1-q) rounds up by an ulp
        const double gc = gamma_critical();
        if (!(*gamma >= gc * (1.0 - 4e-16))) {
            std::ostringstream os;
            os << "QParams: gamma = " << *gamma << " below critical value " << gc;
            throw_domain(os.str());
        }
    }
}

double QParams::gamma_critical() const {
    if (!(q > 0.0 && q < 1.0)) throw_domain("gamma_critical requires 0 < q < 1");
    return 1.0 / (1.0 - q);
}

double q_bracket(long n, double q) {
    require_positive_q(q, "q_bracket");
    if (q == 1.0) return static_cast<double>(n);
    const double v = (1.0 - std::pow(q, static_cast<double>(n))) / (1.0 - q);
    require_finite(v, "q_bracket");
    return v;
}

double q_bracket_sym(long m, double q) {
    require_positive_q(q, "q_bracket_sym");
    if (q == 1.0) return static_cast<double>(m);
    const double dm = static_cast<double>(m);
    const double v = (std::pow(q, dm) - std::pow(q, -dm)) / (q - 1.0 / q);
    require_finite(v, "q_bracket_sym");
    return v;
}

double q_bracket_lambda(long m, double q, double lambda) {
    require_positive_q(q, "q_bracket_lambda");
    if (q == 1.0) return static_cast<double>(m);
    const double v =
        std::pow(q, lambda * (1.0 - static_cast<double>(m))) * q_bracket(m, q);
    require_finite(v, "q_bracket_lambda");
    return v;
}

double q_factorial_lambda(long n, double q, double lambda) {
    if (n < 0) throw_domain("q_factorial_lambda: n must be >= 0");
    require_positive_q(q, "q_factorial_lambda");
    double prod = 1.0;
    for (long k = 1; k <= n; ++k) {
        prod *= q_bracket_lambda(k, q, lambda);
        if (!std::isfinite(prod)) {
            std::ostringstream os;
            os << "q_factorial_lambda: overflow at k = " << k << " of n = " << n;
            throw error(errc::overflow, os.str());
        }
    }
    return prod;
}

cplx q_pochhammer(cplx x, double q, long n) {
    require_positive_q(q, "q_pochhammer");
    if (n < 0) throw_domain("q_pochhammer: finite order must be >= 0");
    cplx prod = 1.0;
    double qk = 1.0;
    for (long k = 0; k < n; ++k) {
        prod *= (1.0 - x * qk);
        qk *= q;
    }
    return prod;
}

cplx q_pochhammer_inf(cplx x, double q, const SeriesPolicy& policy) {
    policy.validate();
    if (!(q > 0.0 && q < 1.0))
        throw_domain("q_pochhammer_inf: infinite product requires 0 < q < 1");
    const double ax = std::abs(x);
    cplx prod = 1.0;
    double qk = 1.0;
    for (long k = 0; k < policy.max_terms; ++k) {
        if (ax * qk < policy.eps_term) return prod;
        prod *= (1.0 - x * qk);
        qk *= q;
    }
    throw error(errc::non_convergence,
                "q_pochhammer_inf: term cap reached before tail tolerance");
}

}  // namespace qosc
