#ifndef QOSC_OSCREP_HPP
#define QOSC_OSCREP_HPP

#include <span>
#include <string>
#include <vector>

#include "cmatrix.hpp"
#include "qcore.hpp"

namespace qosc {

/// Labeled Fock-index window n in [n_min, n_max].
struct BasisWindow {
    long n_min = 0;
    long n_max = 0;

    long dim() const noexcept { return n_max - n_min + 1; }
    long index_of(long n) const noexcept { return n - n_min; }
    long level_of(long index) const noexcept { return n_min + index; }
    bool operator==(const BasisWindow&) const = default;

    void validate() const;
};

enum class RepKind { h0, hgamma };

/// Dense operator over a labeled basis window. vacuum_floor marks windows
/// whose bottom state is a true vacuum (annihilated exactly) rather than a
/// truncation boundary.
struct OperatorMatrix {
    BasisWindow window;
    Matrix entries;
    std::string label;
    bool vacuum_floor = false;
};

struct RepSpec {
    QParams params;
    BasisWindow window;
    RepKind kind = RepKind::h0;

    void validate() const;
};

/// Generator triple of one irreducible representation, with the defining
/// matrix elements c_n (a_dagger maps |n-1> to c_n |n>) kept alongside.
struct RepOperators {
    RepSpec spec;
    OperatorMatrix a;
    OperatorMatrix a_dagger;
    OperatorMatrix number;
    std::vector<double> c;  // c_{n_min+1} .. c_{n_max}, size dim-1
};

/// Fock module: a(lambda)|n> = sqrt([n;q,lambda]) |n-1>, vacuum at n = 0.
RepOperators build_h0(const RepSpec& spec);

/// Z-graded module with central element -gamma: c_n^2 = gamma q^n + [n;q],
/// rescaled by q^{-lambda(n-1)/2} when lambda is nonzero.
RepOperators build_hgamma(const RepSpec& spec);

enum class Relation {
    canonical,   // a a+ - q a+ a = 1                  (lambda = 0)
    sqrt_form,   // A A+ - q^{1/2} A+ A = q^{-N/2}     (lambda = 1/2)
    commutator,  // [alpha, alpha+] = q^{-N}           (lambda = 1)
    lambda_form  // a a+ - q^{1-lambda} a+ a = q^{-lambda N}
};

const char* relation_text(Relation r) noexcept;

/// Scaled interior-block max-norm of (LHS - RHS) for the chosen relation.
/// Entries are normalized by the local magnitude of the operands so the
/// residual stays meaningful when matrix elements span many decades; rows and
/// columns where truncation necessarily injects error are excluded.
double commutation_residual(const RepOperators& ops, Relation relation);

/// zeta = q^{-N}([N;q] - a+ a); lambda = 0 representations only. The diagonal
/// is evaluated in double-double arithmetic: the q^{-n} scaling amplifies a
/// single binary64 rounding far past the verification tolerances on deep
/// windows.
OperatorMatrix central_element(const RepOperators& ops);

/// Scaled interior residual of
///   a (a+)^m - (p a+)^m a - (p a+)^{m-1} r^N [m; r/p],  p = q^{1-lambda},
///   r = q^{-lambda}.
double ordering_residual(const RepOperators& ops, long m);

/// N -> N + nu shift applied to the built number operator.
OperatorMatrix shifted_number(const RepOperators& ops, double nu);

/// Generalized Wigner deformation from a positive matrix-element sequence
/// c_{n_first}..c_{n_first+count-1}: F(n) = c_{n+1}^2 - c_n^2, plus matrix
/// verification residuals. n_first = 1 anchors a vacuum below (c_0 = 0).
struct WignerDeformation {
    std::vector<double> f;       // F(n) for n = f_first .. f_first + f.size() - 1
    long f_first = 0;
    double zeta_shift = 0.0;     // constant value of c^2(N) - a+ a on interior states
    double commutator_residual = 0.0;  // interior residual of [a, a+] - F(N)
    double central_residual = 0.0;     // interior spread of c^2(N) - a+ a
};

WignerDeformation wigner_deformation(std::span<const double> c, long n_first = 1);

}  // namespace qosc

#endif
