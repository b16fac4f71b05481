#ifndef QOSC_QCORE_HPP
#define QOSC_QCORE_HPP

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

namespace qosc {

using cplx = std::complex<double>;

enum class errc {
    domain,           // precondition / parameter domain violated
    non_convergence,  // term cap reached before the tail tolerance
    divergence,       // argument outside the convergence region (strict mode)
    pole,             // evaluation point too close to a pole of a product form
    overflow,         // value left the binary64 range
    conditioning,     // moment recovery lost Hankel positivity
    window_mismatch,  // operator and state built over different basis windows
    evaluation        // user-supplied function returned a non-finite value
};

class error : public std::runtime_error {
public:
    error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

const char* errc_name(errc c) noexcept;

/// Truncation/tolerance contract shared by every infinite sum, product and
/// Jackson integral in the library. eps_term is a relative tail tolerance,
/// tail_cutoff an absolute floor for Jackson sums.
struct SeriesPolicy {
    double eps_term = 1e-16;
    long max_terms = 1000000;
    double tail_cutoff = 1e-18;

    void validate() const;
};

/// Parameter triple (q, lambda, gamma). q > 0 always; gamma, when present,
/// requires 0 < q < 1 and gamma >= gamma_c = 1/(1-q).
struct QParams {
    double q = 0.5;
    double lambda = 0.0;
    std::optional<double> gamma;

    void validate() const;
    // critical value of the central-element parameter; requires 0 < q < 1
    double gamma_critical() const;
};

// --- scalar q-arithmetic ----------------------------------------------------

/// [n;q] = (1-q^n)/(1-q). Continuous limit n at q = 1. Negative n allowed.
double q_bracket(long n, double q);

/// Symmetric bracket [m]_q = (q^m - q^{-m})/(q - q^{-1}); limit m at q = 1.
double q_bracket_sym(long m, double q);

/// Lambda-family bracket [m;q,lambda] = q^{lambda(1-m)} [m;q].
double q_bracket_lambda(long m, double q, double lambda);

/// [n;q,lambda]! = prod_{k=1..n} [k;q,lambda]; empty product 1 at n = 0.
double q_factorial_lambda(long n, double q, double lambda);

inline double q_factorial(long n, double q) { return q_factorial_lambda(n, q, 0.0); }

/// Finite q-Pochhammer (x;q)_n = prod_{k=0}^{n-1} (1 - x q^k).
cplx q_pochhammer(cplx x, double q, long n);

/// (x;q)_inf, truncated once |x q^k| < eps_term. Requires 0 < q < 1.
cplx q_pochhammer_inf(cplx x, double q, const SeriesPolicy& policy = {});

// --- compensated accumulation -----------------------------------------------

// Neumaier variant: carries the rounding error of every addition.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + carry_; }

private:
    double sum_ = 0.0;
    double carry_ = 0.0;
};

class CompensatedComplexSum {
public:
    void add(cplx z) noexcept {
        re_.add(z.real());
        im_.add(z.imag());
    }
    cplx value() const noexcept { return {re_.value(), im_.value()}; }

private:
    CompensatedSum re_, im_;
};

}  // namespace qosc

#endif
