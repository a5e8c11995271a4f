#ifndef LOJEIG_POLYNOMIAL_HPP
#define LOJEIG_POLYNOMIAL_HPP

#include <map>
#include <set>
#include <string>
#include <vector>

#include "lojeig/rational.hpp"

namespace lojeig {

// Exponent vector kappa of a monomial x^kappa; length = ambient variable count.
using ExponentVector = std::vector<int>;

/// Sparse multivariate polynomial with exact rational coefficients.
/// Zero coefficients are never stored; the zero polynomial has no terms.
class Polynomial {
public:
    explicit Polynomial(int n = 0) : n_(n) {}

    int var_count() const { return n_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<ExponentVector, Rational>& terms() const { return terms_; }

    // Adds coeff * x^kappa, erasing the term if the sum cancels.
    void add_term(const ExponentVector& kappa, const Rational& coeff);

    double eval(const std::vector<double>& x) const;

    // Exact symbolic partial derivative with respect to variable s (0-based).
    Polynomial partial(int s) const;

    // All n partials evaluated at x.
    std::vector<double> gradient(const std::vector<double>& x) const;

    std::set<ExponentVector> support() const;

    // deg = max |kappa| over the support; 0 for the zero polynomial.
    int degree() const;

    // Keeps exactly the terms supported inside R^J (variables outside J set to 0).
    // J holds 0-based variable indices and must be nonempty.
    Polynomial restrict_to_axes(const std::set<int>& J) const;

    bool operator==(const Polynomial& other) const {
        return n_ == other.n_ && terms_ == other.terms_;
    }

    std::string to_string() const; // for diagnostics

private:
    int n_;
    std::map<ExponentVector, Rational> terms_;
};

} // namespace lojeig

#endif
