#ifndef QOSC_DDOUBLE_HPP
#define QOSC_DDOUBLE_HPP

#include <cmath>

// Minimal double-double arithmetic (error-free transformations). Used where a
// single binary64 rounding gets amplified past the verification tolerances,
// e.g. the q^{-n}-scaled cancellation in the central element at deep windows.
namespace qosc::dd {

struct DD {
    double hi = 0.0;
    double lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b| or a == 0
inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD from(double x) { return {x, 0.0}; }
inline double to_double(DD a) { return a.hi + a.lo; }

inline DD add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline DD neg(DD a) { return {-a.hi, -a.lo}; }
inline DD sub(DD a, DD b) { return add(a, neg(b)); }

inline DD mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline DD div(DD a, DD b) {
    const double q1 = a.hi / b.hi;
    DD r = sub(a, mul(from(q1), b));
    const double q2 = r.hi / b.hi;
    r = sub(r, mul(from(q2), b));
    const double q3 = r.hi / b.hi;
    return add(quick_two_sum(q1, q2), from(q3));
}

// integer power by repeated squaring; n may be negative
inline DD pow_int(DD base, long n) {
    if (n < 0) return div(from(1.0), pow_int(base, -n));
    DD result = from(1.0);
    DD b = base;
    long e = n;
    while (e > 0) {
        if (e & 1) result = mul(result, b);
        b = mul(b, b);
        e >>= 1;
    }
    return result;
}

// [n;q] = (1 - q^n)/(1 - q) in double-double
inline DD q_bracket(long n, DD q) {
    const DD one = from(1.0);
    return div(sub(one, pow_int(q, n)), sub(one, q));
}

}  // namespace qosc::dd

#endif
