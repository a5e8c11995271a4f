#ifndef LOJEIG_TEST_SUPPORT_HPP
#define LOJEIG_TEST_SUPPORT_HPP

#include <random>
#include <vector>

#include "lojeig/polynomial.hpp"
#include "lojeig/sampling.hpp"
#include "lojeig/spectral.hpp"

namespace lojeig::testing {

// Fluent polynomial builder for fixtures: poly(2).t({2,0},"1").t({1,1},"2").done()
class poly {
public:
    explicit poly(int n) : p_(n) {}
    poly& t(const ExponentVector& kappa, const std::string& coeff) {
        p_.add_term(kappa, parse_rational(coeff));
        return *this;
    }
    Polynomial done() const { return p_; }
    operator Polynomial() const { return p_; }

private:
    Polynomial p_;
};

inline SymPolyMatrix scalar_matrix(const Polynomial& f) {
    SymPolyMatrix F(f.var_count(), 1);
    F.set_entry(0, 0, f);
    return F;
}

// F = [[x1, x2], [x2, -x1]]; f(x) = ||x||, the guiding nonsmooth example.
inline SymPolyMatrix bloch_matrix() {
    SymPolyMatrix F(2, 2);
    F.set_entry(0, 0, poly(2).t({1, 0}, "1"));
    F.set_entry(0, 1, poly(2).t({0, 1}, "1"));
    F.set_entry(1, 1, poly(2).t({1, 0}, "-1"));
    return F;
}

// F = [x1]; S_F is the left half line.
inline SymPolyMatrix half_space_matrix() {
    return scalar_matrix(poly(1).t({1}, "1"));
}

// F = [x1^2].
inline SymPolyMatrix parabola_matrix() {
    return scalar_matrix(poly(1).t({2}, "1"));
}

// F = diag(x1, -x1); f(x) = |x1|.
inline SymPolyMatrix abs_matrix() {
    SymPolyMatrix F(1, 2);
    F.set_entry(0, 0, poly(1).t({1}, "1"));
    F.set_entry(1, 1, poly(1).t({1}, "-1"));
    return F;
}

// F = [x1^2 + x2^2 - 1]; S_F is the closed unit disk.
inline SymPolyMatrix circle_matrix() {
    return scalar_matrix(poly(2).t({2, 0}, "1").t({0, 2}, "1").t({0, 0}, "-1"));
}

inline Rational rat(long num, long den = 1) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// Random sparse polynomial with small rational coefficients.
inline Polynomial random_polynomial(int n, int max_degree, std::mt19937_64& rng,
                                    int terms = 4) {
    Polynomial p(n);
    for (int t = 0; t < terms; ++t) {
        ExponentVector kappa(n, 0);
        int budget = static_cast<int>(rng() % (max_degree + 1));
        for (int b = 0; b < budget; ++b) kappa[rng() % n] += 1;
        long num = static_cast<long>(rng() % 19) - 9;
        long den = 1 + static_cast<long>(rng() % 9);
        p.add_term(kappa, rat(num, den));
    }
    return p;
}

inline SymPolyMatrix random_matrix(int n, int p, int max_degree, std::mt19937_64& rng) {
    SymPolyMatrix F(n, p);
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) F.set_entry(i, j, random_polynomial(n, max_degree, rng));
    return F;
}

inline Vec random_point(int n, std::mt19937_64& rng, double scale = 1.0) {
    Vec x(n);
    for (int s = 0; s < n; ++s) x[s] = scale * (2.0 * rng_uniform01(rng) - 1.0);
    return x;
}

inline Vec random_unit(int n, std::mt19937_64& rng) {
    Vec v(n);
    double sq = 0.0;
    do {
        sq = 0.0;
        for (int s = 0; s < n; ++s) {
            v[s] = rng_gaussian(rng);
            sq += v[s] * v[s];
        }
    } while (sq == 0.0);
    double inv = 1.0 / std::sqrt(sq);
    for (auto& c : v) c *= inv;
    return v;
}

} // namespace lojeig::testing

#endif
