#include "lojeig/exponents.hpp"

#include <cmath>

#include "lojeig/errors.hpp"

namespace lojeig {

BigInt r_function(int n, int d) {
    if (n < 1 || d < 1) throw input_error("r_function: n and d must be positive");
    if (d == 1) return BigInt(1);
    BigInt base = 3 * d - 3;
    BigInt pw;
    mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(n - 1));
    return d * pw;
}

std::string to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::GradientLocal: return "gradient-local";
        case CertificateKind::ErrorBoundLocal: return "error-bound-local";
        case CertificateKind::Separation: return "separation";
        case CertificateKind::GlobalSeparation: return "global-separation";
        case CertificateKind::GlobalKollar: return "global-kollar";
        case CertificateKind::GlobalHolder: return "global-holder";
        case CertificateKind::EigenspaceStability: return "eigenspace-stability";
        case CertificateKind::Factorization: return "factorization";
    }
    return "?";
}

std::optional<CertificateKind> certificate_kind_from_string(const std::string& name) {
    for (auto kind : {CertificateKind::GradientLocal, CertificateKind::ErrorBoundLocal,
                      CertificateKind::Separation, CertificateKind::GlobalSeparation,
                      CertificateKind::GlobalKollar, CertificateKind::GlobalHolder,
                      CertificateKind::EigenspaceStability, CertificateKind::Factorization})
        if (to_string(kind) == name) return kind;
    return std::nullopt;
}

ExponentCertificate certificate(CertificateKind kind, int n, int p, int d,
                                std::optional<int> q) {
    if (n < 1 || p < 1 || d < 0)
        throw input_error("certificate: require n >= 1, p >= 1, d >= 0");

    const bool needs_q = kind == CertificateKind::Separation ||
                         kind == CertificateKind::GlobalSeparation ||
                         kind == CertificateKind::Factorization;
    if (needs_q && (!q || *q < 1))
        throw input_error("certificate: kind '" + to_string(kind) +
                          "' requires the second order q >= 1");

    ExponentCertificate cert;
    cert.kind = kind;
    cert.n = n;
    cert.p = p;
    cert.d = d;
    cert.q = needs_q ? q : std::nullopt;

    switch (kind) {
        case CertificateKind::GradientLocal:
            cert.r_value = r_function(2 * n + p * (n + 1), d + 3);
            cert.theta = Rational(cert.r_value - 1, cert.r_value);
            break;
        case CertificateKind::ErrorBoundLocal:
        case CertificateKind::GlobalHolder:
            cert.r_value = r_function(2 * n + p * (n + 1), d + 3);
            cert.theta = Rational(1, cert.r_value);
            break;
        case CertificateKind::Separation:
        case CertificateKind::Factorization:
            cert.r_value = r_function(2 * n + (p + *q) * (n + 1), d + 3);
            cert.theta = Rational(1, cert.r_value);
            break;
        case CertificateKind::GlobalSeparation:
            cert.r_value = r_function(2 * n + (p + *q) * (n + 1), d + 3);
            cert.theta = Rational(cert.r_value);
            break;
        case CertificateKind::GlobalKollar:
            cert.r_value = r_function(2 * (n + 1) + (p + 2) * (n + 2), d + 3);
            cert.theta = Rational(cert.r_value);
            break;
        case CertificateKind::EigenspaceStability:
            cert.r_value = r_function(p, 4);
            cert.theta = Rational(1, cert.r_value);
            break;
    }
    cert.theta.canonicalize();
    cert.theta_log = log_rational(cert.theta);
    cert.theta_double = cert.theta.get_d();
    return cert;
}

double log_pow_certificate(double v, const ExponentCertificate& cert) {
    if (!(v > 0.0)) throw input_error("log_pow_certificate: argument must be positive");
    double lv = std::log(v);
    if (lv == 0.0) return 0.0;
    // theta * log(v) via logs, so theta itself never has to fit in a double.
    double mag = cert.theta_log + std::log(std::abs(lv));
    double t = std::exp(mag);
    return lv > 0 ? t : -t;
}

double pow_certificate(double v, const ExponentCertificate& cert) {
    return std::exp(log_pow_certificate(v, cert));
}

} // namespace lojeig
