#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lojeig/errors.hpp"
#include "lojeig/exponents.hpp"

using namespace lojeig;

TEST_CASE("r_function exact values") {
    for (int n = 1; n <= 10; ++n) CHECK(r_function(n, 1) == 1);
    CHECK(r_function(2, 2) == 6);
    CHECK(r_function(4, 4) == 2916);
    CHECK(r_function(1, 7) == 7);
    CHECK(r_function(6, 4) == BigInt(4) * 59049); // 4 * 9^5
    CHECK_THROWS_AS(r_function(0, 3), input_error);
    CHECK_THROWS_AS(r_function(3, 0), input_error);
}

TEST_CASE("r_function is strictly increasing in n and d (d >= 2)") {
    for (int n = 1; n <= 8; ++n) {
        for (int d = 2; d <= 8; ++d) {
            CHECK(r_function(n + 1, d) > r_function(n, d));
            CHECK(r_function(n, d + 1) > r_function(n, d));
        }
    }
}

TEST_CASE("certificate formulas reproduce the argument templates") {
    // gradient-local (1,1,1): inner argument 2n+p(n+1) = 4, degree 4
    auto grad = certificate(CertificateKind::GradientLocal, 1, 1, 1);
    CHECK(grad.r_value == 2916);
    CHECK(grad.theta == Rational(2915, 2916));

    auto eig = certificate(CertificateKind::EigenspaceStability, 1, 2, 1);
    CHECK(eig.r_value == 36);
    CHECK(eig.theta == Rational(1, 36));

    auto grad2 = certificate(CertificateKind::GradientLocal, 1, 2, 1);
    CHECK(grad2.r_value == 236196); // R(6, 4) = 4 * 9^5

    // Template re-derivation across a parameter grid for every kind.
    for (int n = 1; n <= 3; ++n) {
        for (int p = 1; p <= 3; ++p) {
            for (int d = 1; d <= 3; ++d) {
                const BigInt local = r_function(2 * n + p * (n + 1), d + 3);
                CHECK(certificate(CertificateKind::GradientLocal, n, p, d).r_value == local);
                CHECK(certificate(CertificateKind::GradientLocal, n, p, d).theta ==
                      Rational(local - 1, local));
                CHECK(certificate(CertificateKind::ErrorBoundLocal, n, p, d).theta ==
                      Rational(1, local));
                CHECK(certificate(CertificateKind::GlobalHolder, n, p, d).theta ==
                      Rational(1, local));
                for (int q = 1; q <= 2; ++q) {
                    const BigInt pair = r_function(2 * n + (p + q) * (n + 1), d + 3);
                    CHECK(certificate(CertificateKind::Separation, n, p, d, q).theta ==
                          Rational(1, pair));
                    CHECK(certificate(CertificateKind::GlobalSeparation, n, p, d, q).theta ==
                          Rational(pair));
                    CHECK(certificate(CertificateKind::Factorization, n, p, d, q).theta ==
                          Rational(1, pair));
                }
                const BigInt kollar = r_function(2 * (n + 1) + (p + 2) * (n + 2), d + 3);
                CHECK(certificate(CertificateKind::GlobalKollar, n, p, d).theta ==
                      Rational(kollar));
                CHECK(certificate(CertificateKind::EigenspaceStability, n, p, d).r_value ==
                      r_function(p, 4));
            }
        }
    }
}

TEST_CASE("certificate argument validation") {
    CHECK_THROWS_AS(certificate(CertificateKind::Separation, 1, 1, 1), input_error);
    CHECK_THROWS_AS(certificate(CertificateKind::Factorization, 1, 1, 1), input_error);
    CHECK_THROWS_AS(certificate(CertificateKind::GradientLocal, 0, 1, 1), input_error);
}

TEST_CASE("theta_log stays accurate for thousand-digit R") {
    // R(2000, 5) = 5 * 12^1999 has ~2160 digits.
    BigInt huge = r_function(2000, 5);
    CHECK(mpz_sizeinbase(huge.get_mpz_t(), 10) > 2000);
    double expected = std::log(5.0) + 1999.0 * std::log(12.0);
    CHECK(log_bigint(huge) == doctest::Approx(expected).epsilon(1e-15));

    // Root-type exponent: theta = 1/R, theta_log = -log R to 1e-15 relative.
    double tl = log_rational(Rational(1, huge));
    CHECK(tl == doctest::Approx(-expected).epsilon(1e-15));

    // Moderate gradient-type exponent: direct log comparison.
    auto grad = certificate(CertificateKind::GradientLocal, 1, 1, 1);
    CHECK(grad.theta_log == doctest::Approx(std::log(2915.0 / 2916.0)).epsilon(1e-15));
    CHECK(grad.theta_double == doctest::Approx(2915.0 / 2916.0));

    // Astronomic gradient-type exponent: log(1 - 1/R) is 0 to double range.
    auto big_grad = certificate(CertificateKind::GradientLocal, 40, 3, 5);
    CHECK(std::abs(big_grad.theta_log) < 1e-10);
}

TEST_CASE("log-domain powering") {
    auto ebl = certificate(CertificateKind::ErrorBoundLocal, 1, 1, 1); // theta = 1/2916
    CHECK(pow_certificate(1.0, ebl) == doctest::Approx(1.0));
    CHECK(pow_certificate(0.5, ebl) ==
          doctest::Approx(std::exp(std::log(0.5) / 2916.0)).epsilon(1e-14));
    // tiny argument stays well conditioned: (1e-300)^(1/2916)
    CHECK(pow_certificate(1e-300, ebl) ==
          doctest::Approx(std::exp(-300.0 * std::log(10.0) / 2916.0)).epsilon(1e-12));

    auto grad = certificate(CertificateKind::GradientLocal, 1, 1, 1);
    CHECK(pow_certificate(0.25, grad) ==
          doctest::Approx(std::pow(0.25, 2915.0 / 2916.0)).epsilon(1e-12));

    // Power-type exponent in the log domain: (1/2)^R underflows any double,
    // but its log is finite and exact to relative rounding.
    auto glob = certificate(CertificateKind::GlobalKollar, 1, 1, 1);
    double expect = -std::log(2.0) * glob.theta.get_d();
    CHECK(log_pow_certificate(0.5, glob) == doctest::Approx(expect).epsilon(1e-12));

    CHECK_THROWS_AS(pow_certificate(0.0, ebl), input_error);
    CHECK_THROWS_AS(pow_certificate(-1.0, ebl), input_error);
}

TEST_CASE("kind names round-trip") {
    for (auto kind : {CertificateKind::GradientLocal, CertificateKind::ErrorBoundLocal,
                      CertificateKind::Separation, CertificateKind::GlobalSeparation,
                      CertificateKind::GlobalKollar, CertificateKind::GlobalHolder,
                      CertificateKind::EigenspaceStability, CertificateKind::Factorization})
        CHECK(certificate_kind_from_string(to_string(kind)) == kind);
    CHECK_FALSE(certificate_kind_from_string("nope").has_value());
}
