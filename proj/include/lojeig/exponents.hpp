#ifndef LOJEIG_EXPONENTS_HPP
#define LOJEIG_EXPONENTS_HPP

#include <optional>
#include <string>

#include "lojeig/rational.hpp"

namespace lojeig {

// R(n, d) = d (3d - 3)^(n-1) for d >= 2, and 1 for d = 1. Exact.
BigInt r_function(int n, int d);

enum class CertificateKind {
    GradientLocal,      // slope >= c |f - f(xbar)|^(1 - 1/R(2n+p(n+1), d+3))
    ErrorBoundLocal,    // c dist(x, S_F) <= [f]_+^(1/R(2n+p(n+1), d+3)) on compacts
    Separation,         // c dist(x, S_F ∩ S_G) <= (dist_F + dist_G)^(1/R(2n+(p+q)(n+1), d+3))
    GlobalSeparation,   // c (dist_∩ / (1+|x|^2))^R(2n+(p+q)(n+1), d+3) <= dist_F + dist_G
    GlobalKollar,       // c (dist / (1+|x|^2))^R(2(n+1)+(p+2)(n+2), d+3) <= [f]_+
    GlobalHolder,       // c dist <= [f]_+^(1/R(2n+p(n+1), d+3)) + [f]_+
    EigenspaceStability,// E(x) ⊂ E(xbar) + c |x - xbar|^(1/R(p, 4)) B
    Factorization       // [g]_+ <= c [f]_+^(1/R(2n+(p+r)(n+1), d+3)) on {h <= 0}
};

std::string to_string(CertificateKind kind);
std::optional<CertificateKind> certificate_kind_from_string(const std::string& name);

/// Exact exponent data for one inequality. theta is the exponent applied in
/// the inequality (1 - 1/R, 1/R, or R itself for the weighted global forms);
/// theta_log carries log(theta) accurately even when R has thousands of
/// digits and the rational underflows in binary floating point.
struct ExponentCertificate {
    CertificateKind kind;
    BigInt r_value;
    Rational theta;
    double theta_log = 0.0;
    double theta_double = 0.0; // may round to 0 or inf; informational only
    int n = 0, p = 0, d = 0;
    std::optional<int> q;
};

// q is the second matrix order for Separation/GlobalSeparation and plays
// the third matrix order's role for Factorization.
ExponentCertificate certificate(CertificateKind kind, int n, int p, int d,
                                std::optional<int> q = std::nullopt);

// v^theta for v > 0, evaluated in the log domain so that tiny 1/R exponents
// neither underflow nor lose the leading digits.
double pow_certificate(double v, const ExponentCertificate& cert);

// theta * log(v); the log-domain form of pow_certificate (may be +-inf).
double log_pow_certificate(double v, const ExponentCertificate& cert);

} // namespace lojeig

#endif
