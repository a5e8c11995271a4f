#include "lojeig/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "lojeig/errors.hpp"

namespace lojeig {

void Polynomial::add_term(const ExponentVector& kappa, const Rational& coeff) {
    if (static_cast<int>(kappa.size()) != n_)
        throw input_error("exponent vector length " + std::to_string(kappa.size()) +
                          " does not match variable count " + std::to_string(n_));
    for (int e : kappa)
        if (e < 0) throw input_error("negative exponent in monomial");
    if (coeff == 0) return;
    auto it = terms_.find(kappa);
    if (it == terms_.end()) {
        terms_.emplace(kappa, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0) terms_.erase(it);
    }
}

double Polynomial::eval(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw input_error("eval: point dimension " + std::to_string(x.size()) +
                          " does not match variable count " + std::to_string(n_));
    double acc = 0.0;
    for (const auto& [kappa, coeff] : terms_) {
        double mono = coeff.get_d();
        for (int s = 0; s < n_; ++s) {
            for (int e = 0; e < kappa[s]; ++e) mono *= x[s];
        }
        acc += mono;
    }
    return acc;
}

Polynomial Polynomial::partial(int s) const {
    if (s < 0 || s >= n_) throw input_error("partial: variable index out of range");
    Polynomial out(n_);
    for (const auto& [kappa, coeff] : terms_) {
        if (kappa[s] == 0) continue;
        ExponentVector dk = kappa;
        dk[s] -= 1;
        out.add_term(dk, coeff * kappa[s]);
    }
    return out;
}

std::vector<double> Polynomial::gradient(const std::vector<double>& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw input_error("gradient: point dimension does not match variable count");
    std::vector<double> g(n_, 0.0);
    for (int s = 0; s < n_; ++s) g[s] = partial(s).eval(x);
    return g;
}

std::set<ExponentVector> Polynomial::support() const {
    std::set<ExponentVector> supp;
    for (const auto& [kappa, _] : terms_) supp.insert(kappa);
    return supp;
}

int Polynomial::degree() const {
    int d = 0;
    for (const auto& [kappa, _] : terms_)
        d = std::max(d, std::accumulate(kappa.begin(), kappa.end(), 0));
    return d;
}

Polynomial Polynomial::restrict_to_axes(const std::set<int>& J) const {
    if (J.empty()) throw input_error("restrict_to_axes: J must be nonempty");
    for (int j : J)
        if (j < 0 || j >= n_) throw input_error("restrict_to_axes: index out of range");
    Polynomial out(n_);
    for (const auto& [kappa, coeff] : terms_) {
        bool inside = true;
        for (int s = 0; s < n_; ++s) {
            if (kappa[s] > 0 && !J.count(s)) {
                inside = false;
                break;
            }
        }
        if (inside) out.add_term(kappa, coeff);
    }
    return out;
}

std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [kappa, coeff] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << rational_to_string(coeff);
        for (int s = 0; s < n_; ++s) {
            if (kappa[s] == 0) continue;
            os << "*x" << (s + 1);
            if (kappa[s] > 1) os << "^" << kappa[s];
        }
    }
    return os.str();
}

} // namespace lojeig
