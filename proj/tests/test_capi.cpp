// Exercises the shared-library C surface end to end: status codes, handles,
// array outputs, the callback-driven verify entry point.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include "qosc/qosc.h"

TEST_CASE("version and default policy") {
    CHECK(std::strlen(qosc_version()) > 0);
    const qosc_series_policy p = qosc_default_policy();
    CHECK(p.eps_term == 1e-16);
    CHECK(p.max_terms == 1000000);
    CHECK(p.tail_cutoff == 1e-18);
}

TEST_CASE("scalar brackets through the C interface") {
    double v = 0.0;
    CHECK(qosc_q_bracket(2, 0.5, &v) == QOSC_OK);
    CHECK(v == doctest::Approx(1.5));
    CHECK(qosc_q_bracket_sym(2, 0.5, &v) == QOSC_OK);
    CHECK(v == doctest::Approx(2.5));
    CHECK(qosc_q_bracket_lambda(2, 0.5, 1.0, &v) == QOSC_OK);
    CHECK(v == doctest::Approx(3.0));
    CHECK(qosc_q_factorial_lambda(3, 0.5, 0.0, &v) == QOSC_OK);
    CHECK(v == doctest::Approx(2.625));
}

TEST_CASE("errors surface as status codes with messages") {
    double v = 0.0;
    CHECK(qosc_q_bracket(2, -1.0, &v) == QOSC_ERR_DOMAIN);
    CHECK(std::strlen(qosc_last_error_message()) > 0);
    CHECK(qosc_q_bracket(2, 0.5, nullptr) == QOSC_ERR_INVALID_ARGUMENT);

    qosc_series_eval ev{};
    const qosc_status st =
        qosc_exp_q_lambda({1.0, 0.0}, 0.5, -0.5, nullptr, QOSC_MODE_STRICT, &ev);
    CHECK(st == QOSC_ERR_DIVERGENCE);
    CHECK(std::string(qosc_last_error_message()).find("zero radius") != std::string::npos);
    CHECK(std::string(qosc_status_name(st)) == "divergence");
}

TEST_CASE("pochhammer and exponentials") {
    qosc_complex v{0.0, 0.0};
    CHECK(qosc_q_pochhammer({0.5, 0.0}, 0.5, -1, nullptr, &v) == QOSC_OK);
    CHECK(v.re == doctest::Approx(0.28878809508660242).epsilon(1e-13));

    qosc_series_eval series{}, product{};
    CHECK(qosc_e_q({1.5, 0.0}, 0.5, nullptr, &series) == QOSC_OK);
    CHECK(qosc_e_q_product({1.5, 0.0}, 0.5, nullptr, &product) == QOSC_OK);
    CHECK(series.value.re == doctest::Approx(product.value.re).epsilon(1e-12));

    qosc_series_eval formal{};
    CHECK(qosc_exp_q_lambda({1.0, 0.0}, 0.5, -0.5, nullptr, QOSC_MODE_FORMAL, &formal) ==
          QOSC_OK);
    CHECK(formal.divergent == 1);

    qosc_convergence_kind kind;
    double radius = 0.0;
    CHECK(qosc_convergence_class(0.5, 0.0, &kind, &radius) == QOSC_OK);
    CHECK(kind == QOSC_CONV_FINITE_RADIUS);
    CHECK(radius == doctest::Approx(2.0));
}

TEST_CASE("representation handles") {
    qosc_rep* rep = nullptr;
    REQUIRE(qosc_rep_create_h0(0.5, 0.0, 3, &rep) == QOSC_OK);
    CHECK(qosc_rep_dim(rep) == 3);
    long lo = -1, hi = -1;
    CHECK(qosc_rep_window(rep, &lo, &hi) == QOSC_OK);
    CHECK(lo == 0);
    CHECK(hi == 2);

    std::vector<double> m(9);
    CHECK(qosc_rep_matrix(rep, QOSC_GEN_ANNIHILATION, m.data()) == QOSC_OK);
    CHECK(m[0 * 3 + 1] == doctest::Approx(1.0));
    CHECK(m[1 * 3 + 2] == doctest::Approx(std::sqrt(1.5)));

    double residual = 0.0;
    CHECK(qosc_rep_commutation_residual(rep, QOSC_REL_CANONICAL, &residual) == QOSC_OK);
    CHECK(residual <= 1e-13);
    qosc_rep_destroy(rep);

    qosc_rep* bad = nullptr;
    CHECK(qosc_rep_create_hgamma(0.5, 0.0, 1.0, -4, 4, &bad) == QOSC_ERR_DOMAIN);

    qosc_rep* g = nullptr;
    REQUIRE(qosc_rep_create_hgamma(0.5, 0.0, 3.0, -6, 6, &g) == QOSC_OK);
    std::vector<double> zeta(13);
    CHECK(qosc_rep_central_element_diag(g, zeta.data()) == QOSC_OK);
    for (long i = 1; i + 1 < 13; ++i) CHECK(zeta[i] == doctest::Approx(-3.0).epsilon(1e-12));
    double ord = 0.0;
    CHECK(qosc_rep_ordering_residual(g, 2, &ord) == QOSC_OK);
    CHECK(ord <= 1e-12);
    qosc_rep_destroy(g);
}

TEST_CASE("wigner deformation through the C interface") {
    const double c[4] = {1.0, std::sqrt(2.0), std::sqrt(3.0), 2.0};
    double f[4];
    long f_count = 0, f_first = -1;
    double shift = 0.0, comm = 0.0, central = 0.0;
    CHECK(qosc_wigner_deformation(c, 4, 1, f, &f_count, &f_first, &shift, &comm,
                                  &central) == QOSC_OK);
    CHECK(f_count == 4);
    CHECK(f_first == 0);
    for (long i = 0; i < f_count; ++i) CHECK(f[i] == doctest::Approx(1.0));
    CHECK(comm <= 1e-13);
}

TEST_CASE("coherent states and the generating vector") {
    std::vector<qosc_complex> coeffs(24);
    double tail = -1.0;
    CHECK(qosc_coherent_state({0.8, 0.0}, 0.5, 0.0, 24, 0, coeffs.data(), &tail) == QOSC_OK);
    CHECK(coeffs[0].re == 1.0);
    CHECK(coeffs[1].re == doctest::Approx(0.8));
    CHECK(tail >= 0.0);

    double residual = -1.0;
    CHECK(qosc_coherent_eigen_residual({0.8, 0.0}, 0.5, 0.0, 24, &residual) == QOSC_OK);
    CHECK(residual <= 1e-12);

    std::vector<qosc_complex> d(91);
    int normalizable = -1;
    double interior = -1.0;
    CHECK(qosc_hgamma_creation_coherent({10.0, 0.0}, 0.5, 3.0, -30, 60, d.data(),
                                        &normalizable, &interior) == QOSC_OK);
    CHECK(normalizable == 1);
    CHECK(interior <= 1e-10);

    std::vector<double> w(7);
    double gres = -1.0;
    CHECK(qosc_generating_vector(0.9, 6, 0.5, 0.0, 24, w.data(), &gres) == QOSC_OK);
    CHECK(gres <= 1e-10);
    CHECK(w[1] == doctest::Approx(2.0 * 0.9 * w[0]));
}

TEST_CASE("hermite values, orthonormality and rep elements") {
    double h[5];
    CHECK(qosc_hermite_sequence(0.0, 4, 0.5, 0.0, h) == QOSC_OK);
    CHECK(h[0] == 1.0);
    CHECK(h[1] == 0.0);

    double dev = -1.0;
    CHECK(qosc_orthonormality_check(0.5, 0.0, 24, 10, &dev) == QOSC_OK);
    CHECK(dev <= 1e-11);

    qosc_rep* rep = nullptr;
    REQUIRE(qosc_rep_create_h0(0.5, 0.0, 4, &rep) == QOSC_OK);
    double c[3];
    CHECK(qosc_rep_elements(rep, c) == QOSC_OK);
    CHECK(c[0] == doctest::Approx(1.0));
    CHECK(c[1] == doctest::Approx(std::sqrt(1.5)));
    qosc_rep_destroy(rep);

    qosc_series_eval ev{};
    CHECK(qosc_e_q_product({2.0, 0.0}, 0.5, nullptr, &ev) == QOSC_ERR_POLE);
}

TEST_CASE("spectral handles and moment recovery") {
    qosc_spectral* sp = nullptr;
    REQUIRE(qosc_spectral_create(0.5, 0.0, 2, 1e-12, &sp) == QOSC_OK);
    CHECK(qosc_spectral_dim(sp) == 2);
    double nodes[2], weights[2];
    CHECK(qosc_spectral_nodes(sp, nodes) == QOSC_OK);
    CHECK(qosc_spectral_weights(sp, weights) == QOSC_OK);
    CHECK(nodes[0] == doctest::Approx(-1.0));
    CHECK(nodes[1] == doctest::Approx(1.0));
    CHECK(weights[0] == doctest::Approx(0.5));
    CHECK(weights[1] == doctest::Approx(0.5));
    qosc_spectral_destroy(sp);

    REQUIRE(qosc_spectral_create(0.5, 0.0, 32, 1e-12, &sp) == QOSC_OK);
    std::vector<double> quad(11), mat(11);
    CHECK(qosc_spectral_moments(sp, 10, quad.data()) == QOSC_OK);
    CHECK(qosc_vacuum_moments(0.5, 0.0, 32, 10, mat.data()) == QOSC_OK);
    for (long k = 0; k <= 10; ++k)
        CHECK(quad[k] == doctest::Approx(mat[k]).epsilon(1e-9));

    std::vector<double> eigvec(32);
    CHECK(qosc_spectral_eigenvector(sp, 0, eigvec.data()) == QOSC_OK);
    CHECK(qosc_spectral_eigenvector(sp, 99, eigvec.data()) == QOSC_ERR_INVALID_ARGUMENT);
    qosc_spectral_destroy(sp);

    // recover the recurrence from the moments
    std::vector<double> diag(6), offdiag(5);
    double mass = 0.0, cond = 0.0;
    CHECK(qosc_jacobi_from_moments(quad.data(), 11, 5, diag.data(), offdiag.data(), &mass,
                                   &cond) == QOSC_OK);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(offdiag[0] == doctest::Approx(1.0).epsilon(1e-9));

    const double atom[6] = {1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    CHECK(qosc_jacobi_from_moments(atom, 6, 3, diag.data(), offdiag.data(), &mass, &cond) ==
          QOSC_ERR_CONDITIONING);
}

namespace {
double monomial_cb(double x, void* ctx) {
    const long n = *static_cast<long*>(ctx);
    return std::pow(x, static_cast<double>(n));
}
}  // namespace

TEST_CASE("Jackson integration with a C callback") {
    long n = 1;
    double v = 0.0;
    CHECK(qosc_jackson_integral(monomial_cb, &n, 1.0, 0.5, nullptr, &v) == QOSC_OK);
    CHECK(v == doctest::Approx(2.0 / 3.0).epsilon(1e-14));

    CHECK(qosc_resolution_of_unity_diag(4, 0.5, nullptr, &v) == QOSC_OK);
    CHECK(v == doctest::Approx(1.0).epsilon(1e-10));

    CHECK(qosc_stieltjes_moment_target(3, 0.5, 0.0, &v) == QOSC_OK);
    CHECK(v == doctest::Approx(2.625));
}

namespace {
struct Counter {
    int records = 0;
    int failed = 0;
};
void count_cb(const qosc_check_record* r, void* ctx) {
    auto* c = static_cast<Counter*>(ctx);
    ++c->records;
    if (!r->skipped && !r->pass) ++c->failed;
}
}  // namespace

TEST_CASE("verify entry point streams records") {
    Counter counter;
    int all_passed = 0;
    CHECK(qosc_verify(QOSC_SUITE_MEASURE, 0.5, 0.0, 0, 0.0, 16, nullptr, count_cb, &counter,
                      &all_passed) == QOSC_OK);
    CHECK(counter.records > 0);
    CHECK(counter.failed == 0);
    CHECK(all_passed == 1);
}

TEST_CASE("error messages stay thread-local") {
    std::atomic<bool> worker_saw_own_message{false};
    double v = 0.0;
    CHECK(qosc_q_bracket(2, -1.0, &v) == QOSC_ERR_DOMAIN);
    const std::string main_msg = qosc_last_error_message();

    std::thread worker([&] {
        double w = 0.0;
        qosc_q_factorial_lambda(-5, 0.5, 0.0, &w);
        worker_saw_own_message =
            std::string(qosc_last_error_message()).find("q_factorial_lambda") !=
            std::string::npos;
    });
    worker.join();
    CHECK(worker_saw_own_message.load());
    CHECK(std::string(qosc_last_error_message()) == main_msg);
}
