#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "lojeig/errors.hpp"
#include "lojeig/spectral.hpp"
#include "test_support.hpp"

using namespace lojeig;
using namespace lojeig::testing;

namespace {

// Rank-one density matrix W = u u^T.
Mat rank_one(const Vec& u) {
    Mat W(static_cast<int>(u.size()), static_cast<int>(u.size()));
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j) W(i, j) = u[i] * u[j];
    return W;
}

Mat random_density(int m, std::mt19937_64& rng, int atoms = 3) {
    Mat W(m, m);
    Vec weights(atoms);
    double total = 0;
    for (int k = 0; k < atoms; ++k) {
        weights[k] = rng_uniform01(rng) + 1e-3;
        total += weights[k];
    }
    for (int k = 0; k < atoms; ++k) {
        Vec u = random_unit(m, rng);
        double w = weights[k] / total;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) W(i, j) += w * u[i] * u[j];
    }
    return W;
}

// Brute-force min of ||clarke_point(W)|| over rank-one and mixed samples.
double sampled_min_norm(const SubdiffModel& model, int count, std::mt19937_64& rng) {
    const int m = model.multiplicity();
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < count; ++k) {
        best = std::min(best, norm2(clarke_point(model, rank_one(random_unit(m, rng)))));
        best = std::min(best, norm2(clarke_point(model, random_density(m, rng))));
    }
    return best;
}

} // namespace

TEST_CASE("eval_matrix") {
    auto bloch = bloch_matrix();
    Mat M = bloch.eval({3.0, 4.0});
    CHECK(M(0, 0) == doctest::Approx(3.0));
    CHECK(M(0, 1) == doctest::Approx(4.0));
    CHECK(M(1, 0) == doctest::Approx(4.0));
    CHECK(M(1, 1) == doctest::Approx(-3.0));

    Mat sq = parabola_matrix().eval({2.0});
    CHECK(sq(0, 0) == doctest::Approx(4.0));

    SymPolyMatrix zero(2, 2);
    Mat Z = zero.eval({1.0, 1.0});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(Z(i, j) == 0.0);

    CHECK_THROWS_AS(bloch.eval({1.0}), input_error);
}

TEST_CASE("largest_eigenvalue exact cases") {
    auto [f, fp] = largest_eigenvalue(bloch_matrix(), {3.0, 4.0});
    CHECK(f == doctest::Approx(5.0).epsilon(1e-13));
    CHECK(fp == doctest::Approx(5.0));

    auto [g, gp] = largest_eigenvalue(abs_matrix(), {-2.0});
    CHECK(g == doctest::Approx(2.0));
    CHECK(gp == doctest::Approx(2.0));

    auto [h, hp] = largest_eigenvalue(half_space_matrix(), {-0.5});
    CHECK(h == doctest::Approx(-0.5));
    CHECK(hp == 0.0);
}

TEST_CASE("largest_eigenvalue against the Rayleigh sampling oracle") {
    // Dense unit-circle sweep; the Rayleigh maximum approaches the top
    // eigenvalue quadratically, so 1e4 directions give 1e-6 headroom.
    auto bloch = bloch_matrix();
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 5; ++trial) {
        Vec x = random_point(2, rng, 2.0);
        Mat M = bloch.eval(x);
        auto [f, fp] = largest_eigenvalue(bloch, x);
        (void)fp;
        double best = -std::numeric_limits<double>::infinity();
        const int N = 10000;
        for (int k = 0; k < N; ++k) {
            double t = M_PI * k / N;
            Vec v{std::cos(t), std::sin(t)};
            best = std::max(best, dot(matvec(M, v), v));
        }
        CHECK(best <= f + 1e-12);
        CHECK(f - best <= 1e-6);
    }
}

TEST_CASE("non-finite input raises a numeric error") {
    auto F = parabola_matrix();
    CHECK_THROWS_AS(largest_eigenvalue(F, {std::numeric_limits<double>::infinity()}),
                    numeric_error);
}

TEST_CASE("top_eigenspace") {
    auto bloch = bloch_matrix();
    auto top = top_eigenspace(bloch, {3.0, 4.0}, 1e-8);
    CHECK(top.multiplicity == 1);
    CHECK(top.lambda_max == doctest::Approx(5.0));
    // eigenvector proportional to (2, 1)/sqrt(5)
    double vx = top.basis(0, 0), vy = top.basis(1, 0);
    if (vx < 0) {
        vx = -vx;
        vy = -vy;
    }
    CHECK(vx == doctest::Approx(2.0 / std::sqrt(5.0)).epsilon(1e-12));
    CHECK(vy == doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-12));

    auto origin = top_eigenspace(bloch, {0.0, 0.0}, 1e-8);
    CHECK(origin.multiplicity == 2);

    // constant diag(1, 1-t, 0) with t = cluster_tol/2 clusters two eigenvalues
    const double tol = 1e-8;
    SymPolyMatrix D(1, 3);
    D.set_entry(0, 0, poly(1).t({0}, "1"));
    D.set_entry(1, 1, poly(1).t({0}, "0.999999995")); // 1 - tol/2
    CHECK(top_eigenspace(D, {0.0}, tol).multiplicity == 2);

    CHECK_THROWS_AS(top_eigenspace(bloch, {0.0, 0.0}, 0.0), input_error);
}

TEST_CASE("top eigenspace residual invariant") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 20; ++trial) {
        int n = 1 + static_cast<int>(rng() % 3);
        int p = 1 + static_cast<int>(rng() % 3);
        auto F = random_matrix(n, p, 3, rng);
        Vec x = random_point(n, rng);
        auto top = top_eigenspace(F, x, 1e-8);
        Mat M = F.eval(x);
        double bound = top.cluster_tol * std::max(1.0, std::abs(top.lambda_max));
        for (int c = 0; c < top.multiplicity; ++c) {
            Vec q = top.basis.col(c);
            Vec Mq = matvec(M, q);
            for (int i = 0; i < p; ++i) Mq[i] -= top.lambda_max * q[i];
            CHECK(norm2(Mq) <= bound * (1.0 + 1e-6) + 1e-12);
        }
        // orthonormality
        for (int a = 0; a < top.multiplicity; ++a)
            for (int b = 0; b < top.multiplicity; ++b) {
                double want = a == b ? 1.0 : 0.0;
                CHECK(std::abs(dot(top.basis.col(a), top.basis.col(b)) - want) <= 1e-12);
            }
    }
}

TEST_CASE("subdiff_model generators") {
    auto bloch = bloch_matrix();
    auto model = subdiff_model(bloch, {0.0, 0.0}, 1e-8);
    REQUIRE(model.multiplicity() == 2);
    // With Q = I: A_1 = diag(1, -1), A_2 = offdiag(1, 1).
    CHECK(model.generators[0](0, 0) == doctest::Approx(1.0));
    CHECK(model.generators[0](1, 1) == doctest::Approx(-1.0));
    CHECK(model.generators[0](0, 1) == doctest::Approx(0.0));
    CHECK(model.generators[1](0, 1) == doctest::Approx(1.0));
    CHECK(model.generators[1](0, 0) == doctest::Approx(0.0));

    // m = 1: scalars v^T dF v; p = 1: the plain gradient.
    auto scal = subdiff_model(parabola_matrix(), {3.0}, 1e-8);
    CHECK(scal.multiplicity() == 1);
    CHECK(scal.generators[0](0, 0) == doctest::Approx(6.0));
}

TEST_CASE("clarke_point on the Bloch model") {
    auto model = subdiff_model(bloch_matrix(), {0.0, 0.0}, 1e-8);

    Mat half(2, 2);
    half(0, 0) = half(1, 1) = 0.5;
    Vec y = clarke_point(model, half);
    CHECK(y[0] == doctest::Approx(0.0));
    CHECK(y[1] == doctest::Approx(0.0));

    Vec e1{1.0, 0.0};
    Vec y1 = clarke_point(model, rank_one(e1));
    CHECK(y1[0] == doctest::Approx(1.0));
    CHECK(y1[1] == doctest::Approx(0.0));

    for (double t : {0.3, 1.1, 2.0}) {
        Vec u{std::cos(t), std::sin(t)};
        Vec yt = clarke_point(model, rank_one(u));
        CHECK(yt[0] == doctest::Approx(std::cos(2 * t)).epsilon(1e-12));
        CHECK(yt[1] == doctest::Approx(std::sin(2 * t)).epsilon(1e-12));
    }

    Mat bad = Mat::identity(2); // trace 2
    CHECK_THROWS_AS(clarke_point(model, bad), input_error);
    Mat neg(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(clarke_point(model, neg), input_error);
}

TEST_CASE("clarke_slope exact cases") {
    auto model0 = subdiff_model(bloch_matrix(), {0.0, 0.0}, 1e-8);
    auto res0 = clarke_slope(model0);
    CHECK(res0.slope <= 1e-6); // 0 is inside the unit disk
    CHECK(res0.converged);

    auto model34 = subdiff_model(bloch_matrix(), {3.0, 4.0}, 1e-8);
    auto res34 = clarke_slope(model34);
    CHECK(res34.slope == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("clarke_slope matches the sampling oracle on a frozen m=2 model") {
    // Random 2x2 generators with the origin outside the image, so the
    // minimum sits on the (densely sampled) rank-one boundary.
    std::mt19937_64 rng(2025);
    SubdiffModel model;
    model.eigenspace.multiplicity = 2;
    for (int s = 0; s < 2; ++s) {
        Mat A(2, 2);
        A(0, 0) = 2.0 * rng_uniform01(rng) - 1.0;
        A(1, 1) = 2.0 * rng_uniform01(rng) - 1.0;
        A(0, 1) = A(1, 0) = 2.0 * rng_uniform01(rng) - 1.0;
        A(s, s) += 2.5; // push the image away from the origin
        model.generators.push_back(A);
    }
    auto res = clarke_slope(model);
    CHECK(res.converged);
    CHECK(res.slope > 0.5);

    double best = sampled_min_norm(model, 10000, rng);
    CHECK(res.slope <= best + 1e-9);
    CHECK(std::abs(res.slope - best) <= 1e-4);
}

TEST_CASE("clarke_slope lower-bounds the norm at random feasible W") {
    std::mt19937_64 rng(31);
    auto model = subdiff_model(bloch_matrix(), {0.2, -0.4}, 2.0); // wide cluster: m=2
    REQUIRE(model.multiplicity() == 2);
    auto res = clarke_slope(model);
    for (int k = 0; k < 100; ++k) {
        Mat W = random_density(2, rng);
        CHECK(res.slope <= norm2(clarke_point(model, W)) + 1e-9);
    }
}

TEST_CASE("clarke_slope equals the finite-difference gradient norm when smooth") {
    std::mt19937_64 rng(907);
    const double h = 1e-6;
    int done = 0;
    while (done < 12) {
        int n = 1 + static_cast<int>(rng() % 3);
        int p = 1 + static_cast<int>(rng() % 3);
        auto F = random_matrix(n, p, 3, rng);
        Vec x = random_point(n, rng);
        auto dec = jacobi_eigensym(F.eval(x));
        if (p > 1 && dec.eigenvalues[0] - dec.eigenvalues[1] < 1e-2) continue;

        auto model = subdiff_model(F, x, 1e-8);
        if (model.multiplicity() != 1) continue;
        double slope = clarke_slope(model).slope;
        if (slope < 1e-3) continue;

        double sq = 0.0;
        for (int s = 0; s < n; ++s) {
            Vec xp = x, xm = x;
            xp[s] += h;
            xm[s] -= h;
            double fd = (largest_eigenvalue(F, xp).first - largest_eigenvalue(F, xm).first) /
                        (2.0 * h);
            sq += fd * fd;
        }
        CHECK(std::abs(slope - std::sqrt(sq)) <= 1e-5 * std::max(1.0, slope));
        ++done;
    }
}

TEST_CASE("largest_eigenvalue is 1-Lipschitz under matrix perturbations") {
    std::mt19937_64 rng(117);
    for (int trial = 0; trial < 30; ++trial) {
        int p = 2 + static_cast<int>(rng() % 2);
        Mat A(p, p), E(p, p);
        for (int i = 0; i < p; ++i)
            for (int j = i; j < p; ++j) {
                A(i, j) = A(j, i) = 2.0 * rng_uniform01(rng) - 1.0;
                E(i, j) = E(j, i) = 0.1 * (2.0 * rng_uniform01(rng) - 1.0);
            }
        Mat B = A;
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j) B(i, j) += E(i, j);
        double la = jacobi_eigensym(A).eigenvalues[0];
        double lb = jacobi_eigensym(B).eigenvalues[0];
        double op = std::abs(jacobi_eigensym(E).eigenvalues[0]);
        op = std::max(op, std::abs(jacobi_eigensym(E).eigenvalues[p - 1]));
        CHECK(std::abs(la - lb) <= op + 1e-12);
    }
}

TEST_CASE("directional_derivative") {
    auto model0 = subdiff_model(bloch_matrix(), {0.0, 0.0}, 1e-8);
    std::mt19937_64 rng(44);
    for (int k = 0; k < 100; ++k) {
        Vec d = random_unit(2, rng);
        CHECK(std::abs(directional_derivative(model0, d) - 1.0) <= 1e-8);
    }
    // support function property: dd(d) + dd(-d) >= 0
    for (int k = 0; k < 50; ++k) {
        Vec d = random_point(2, rng, 2.0);
        Vec nd = d;
        for (auto& c : nd) c = -c;
        CHECK(directional_derivative(model0, d) + directional_derivative(model0, nd) >= -1e-12);
    }

    // m = 1 smooth case: <grad f, d>
    auto model34 = subdiff_model(bloch_matrix(), {3.0, 4.0}, 1e-8);
    Vec d{0.3, -0.7};
    double expect = (0.3 * 3.0 + (-0.7) * 4.0) / 5.0; // grad ||x|| = x/||x||
    CHECK(directional_derivative(model34, d) == doctest::Approx(expect).epsilon(1e-10));

    // one-sided finite differences at a stable simple eigenvalue
    const double h = 1e-6;
    auto F = bloch_matrix();
    double fd = (largest_eigenvalue(F, {3.0 + h * 0.3, 4.0 - h * 0.7}).first -
                 largest_eigenvalue(F, {3.0, 4.0}).first) /
                h;
    CHECK(std::abs(directional_derivative(model34, d) - fd) <= 1e-4);

    CHECK_THROWS_AS(directional_derivative(model34, Vec{1.0}), input_error);
}

TEST_CASE("g_r_probe identity at eigenvector tuples") {
    auto bloch = bloch_matrix();

    // f = 0 at the origin: any unit vectors are eigenvectors of F(0) = 0.
    Vec lam{0.25, 0.25};
    std::vector<Vec> vs{{1.0, 0.0}, {0.0, 1.0}, {std::sqrt(0.5), std::sqrt(0.5)}};
    auto probe0 = g_r_probe(bloch, {0.0, 0.0}, lam, vs);
    CHECK(probe0.f_value == doctest::Approx(0.0));
    CHECK(probe0.identity_residual <= 1e-9);

    // f != 0 at (3, 4): the top eigenvector is (2, 1)/sqrt(5).
    Vec v{2.0 / std::sqrt(5.0), 1.0 / std::sqrt(5.0)};
    auto probe = g_r_probe(bloch, {3.0, 4.0}, Vec{0.4}, {v, v});
    CHECK(probe.f_value == doctest::Approx(5.0));
    CHECK(probe.value == doctest::Approx(5.0));
    CHECK(probe.identity_residual <= 1e-9);
    // the identity itself: total block norm = ||w|| + 2|f|
    CHECK(probe.block_norm_total ==
          doctest::Approx(probe.x_block_norm + 2.0 * 5.0).epsilon(1e-12));

    // r = 1: lambda empty, G_1 = <F(x)v, v>.
    auto probe1 = g_r_probe(bloch, {3.0, 4.0}, Vec{}, {v});
    CHECK(probe1.value == doctest::Approx(5.0));
    CHECK(probe1.identity_residual <= 1e-9);
}

TEST_CASE("g_r_probe rejects bad inputs") {
    auto bloch = bloch_matrix();
    Vec unit{1.0, 0.0};
    CHECK_THROWS_AS(g_r_probe(bloch, {0.0, 0.0}, Vec{0.7, 0.7}, {unit, unit, unit}),
                    input_error); // lambda sums past 1
    CHECK_THROWS_AS(g_r_probe(bloch, {0.0, 0.0}, Vec{-0.1}, {unit, unit}), input_error);
    CHECK_THROWS_AS(g_r_probe(bloch, {0.0, 0.0}, Vec{}, {Vec{2.0, 0.0}}), input_error);
    CHECK_THROWS_AS(
        g_r_probe(bloch, {0.0, 0.0}, Vec{0.1, 0.1, 0.1}, {unit, unit, unit, unit}),
        input_error); // r = 4 > n + 1 = 3
}

TEST_CASE("g_r_probe identity on random eigenvector tuples") {
    std::mt19937_64 rng(321);
    int done = 0;
    while (done < 30) {
        int n = 1 + static_cast<int>(rng() % 3);
        int p = 1 + static_cast<int>(rng() % 3);
        auto F = random_matrix(n, p, 3, rng);
        Vec x = random_point(n, rng);
        auto top = top_eigenspace(F, x, 1e-10);

        int r = 1 + static_cast<int>(rng() % (n + 1));
        std::vector<Vec> vs;
        for (int l = 0; l < r; ++l) {
            Vec u = random_unit(top.multiplicity, rng);
            Vec v(p, 0.0);
            for (int i = 0; i < p; ++i)
                for (int c = 0; c < top.multiplicity; ++c) v[i] += top.basis(i, c) * u[c];
            double nv = norm2(v);
            for (auto& c : v) c /= nv;
            vs.push_back(std::move(v));
        }
        Vec lam(r - 1);
        double rest = 1.0;
        for (int l = 0; l < r - 1; ++l) {
            lam[l] = rest * rng_uniform01(rng);
            rest -= lam[l];
        }
        auto probe = g_r_probe(F, x, lam, vs);
        CHECK(probe.identity_residual <= 1e-9);
        ++done;
    }
}
