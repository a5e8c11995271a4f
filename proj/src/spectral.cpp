#include "lojeig/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "lojeig/errors.hpp"

namespace lojeig {

namespace {

// tr(W A) for symmetric matrices.
double trace_product(const Mat& W, const Mat& A) {
    double s = 0.0;
    for (int i = 0; i < W.rows(); ++i)
        for (int j = 0; j < W.cols(); ++j) s += W(i, j) * A(i, j);
    return s;
}

} // namespace

SymPolyMatrix::SymPolyMatrix(int n, int p) : n_(n), p_(p) {
    if (n < 0 || p < 1) throw input_error("SymPolyMatrix: require n >= 0, p >= 1");
    const int count = p * (p + 1) / 2;
    entries_.assign(count, Polynomial(n));
    partials_.assign(count, std::vector<Polynomial>(n, Polynomial(n)));
}

int SymPolyMatrix::index(int i, int j) const {
    if (i < 0 || j < 0 || i >= p_ || j >= p_)
        throw input_error("SymPolyMatrix: entry index out of range");
    if (i > j) std::swap(i, j);
    return i * p_ - i * (i - 1) / 2 + (j - i);
}

void SymPolyMatrix::set_entry(int i, int j, Polynomial poly) {
    if (poly.var_count() != n_)
        throw input_error("SymPolyMatrix: entry has wrong variable count");
    const int idx = index(i, j);
    for (int s = 0; s < n_; ++s) partials_[idx][s] = poly.partial(s);
    entries_[idx] = std::move(poly);
}

const Polynomial& SymPolyMatrix::entry(int i, int j) const { return entries_[index(i, j)]; }

const Polynomial& SymPolyMatrix::entry_partial(int i, int j, int s) const {
    if (s < 0 || s >= n_) throw input_error("SymPolyMatrix: variable index out of range");
    return partials_[index(i, j)][s];
}

int SymPolyMatrix::max_degree() const {
    int d = 0;
    for (const auto& e : entries_) d = std::max(d, e.degree());
    return d;
}

Mat SymPolyMatrix::eval(const Vec& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw input_error("SymPolyMatrix::eval: point dimension mismatch");
    Mat M(p_, p_);
    for (int i = 0; i < p_; ++i)
        for (int j = i; j < p_; ++j) M(i, j) = M(j, i) = entries_[index(i, j)].eval(x);
    return M;
}

Mat SymPolyMatrix::eval_partial(int s, const Vec& x) const {
    if (static_cast<int>(x.size()) != n_)
        throw input_error("SymPolyMatrix::eval_partial: point dimension mismatch");
    if (s < 0 || s >= n_) throw input_error("SymPolyMatrix: variable index out of range");
    Mat M(p_, p_);
    for (int i = 0; i < p_; ++i)
        for (int j = i; j < p_; ++j) M(i, j) = M(j, i) = partials_[index(i, j)][s].eval(x);
    return M;
}

std::pair<double, double> largest_eigenvalue(const SymPolyMatrix& F, const Vec& x) {
    Mat M = F.eval(x);
    if (!M.all_finite()) throw numeric_error("largest_eigenvalue: non-finite matrix entries");
    auto dec = jacobi_eigensym(M);
    double f = dec.eigenvalues[0];
    return {f, std::max(f, 0.0)};
}

TopEigenspace top_eigenspace(const SymPolyMatrix& F, const Vec& x, double cluster_tol) {
    if (!(cluster_tol > 0)) throw input_error("top_eigenspace: cluster_tol must be positive");
    Mat M = F.eval(x);
    if (!M.all_finite()) throw numeric_error("top_eigenspace: non-finite matrix entries");
    auto dec = jacobi_eigensym(M);

    const double lmax = dec.eigenvalues[0];
    const double width = cluster_tol * std::max(1.0, std::abs(lmax));
    int m = 1;
    while (m < F.order() && lmax - dec.eigenvalues[m] <= width) ++m;

    TopEigenspace top;
    top.point = x;
    top.lambda_max = lmax;
    top.multiplicity = m;
    top.cluster_tol = cluster_tol;
    top.basis = Mat(F.order(), m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < F.order(); ++i) top.basis(i, j) = dec.eigenvectors(i, j);
    return top;
}

SubdiffModel subdiff_model(const SymPolyMatrix& F, const Vec& x, double cluster_tol) {
    SubdiffModel model;
    model.eigenspace = top_eigenspace(F, x, cluster_tol);
    const Mat& Q = model.eigenspace.basis;
    const int p = F.order();
    const int m = model.eigenspace.multiplicity;

    model.generators.reserve(F.var_count());
    for (int s = 0; s < F.var_count(); ++s) {
        Mat D = F.eval_partial(s, x);
        Mat A(m, m);
        for (int a = 0; a < m; ++a) {
            for (int b = a; b < m; ++b) {
                double acc = 0.0;
                for (int i = 0; i < p; ++i)
                    for (int j = 0; j < p; ++j) acc += Q(i, a) * D(i, j) * Q(j, b);
                A(a, b) = A(b, a) = acc;
            }
        }
        model.generators.push_back(std::move(A));
    }
    return model;
}

Vec clarke_point(const SubdiffModel& model, const Mat& W) {
    const int m = model.multiplicity();
    if (W.rows() != m || W.cols() != m)
        throw input_error("clarke_point: W has wrong order");
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (std::abs(W(i, j) - W(j, i)) > 1e-10)
                throw input_error("clarke_point: W is not symmetric");
    double tr = 0.0;
    for (int i = 0; i < m; ++i) tr += W(i, i);
    if (std::abs(tr - 1.0) > 1e-10) throw input_error("clarke_point: trace of W is not 1");
    auto dec = jacobi_eigensym(W);
    if (dec.eigenvalues.back() < -1e-10)
        throw input_error("clarke_point: W is not positive semidefinite");

    Vec y(model.var_count());
    for (int s = 0; s < model.var_count(); ++s) y[s] = trace_product(W, model.generators[s]);
    return y;
}

SlopeResult clarke_slope(const SubdiffModel& model, double gap_tol, int max_iter) {
    const int n = model.var_count();
    const int m = model.multiplicity();

    SlopeResult res;
    if (m == 1) {
        res.W = Mat(1, 1);
        res.W(0, 0) = 1.0;
        res.subgradient.resize(n);
        for (int s = 0; s < n; ++s) res.subgradient[s] = model.generators[s](0, 0);
        res.slope = norm2(res.subgradient);
        return res;
    }

    // Frank-Wolfe on ||y(W)||^2 over the spectraplex, started at the
    // barycenter; the linear oracle is the smallest eigenvector of the
    // gradient matrix sum 2 y_s A_s.
    Mat W(m, m);
    for (int i = 0; i < m; ++i) W(i, i) = 1.0 / m;
    Vec y(n);
    auto refresh = [&]() {
        for (int s = 0; s < n; ++s) y[s] = trace_product(W, model.generators[s]);
    };
    refresh();

    int it = 0;
    double gap = 0.0;
    bool converged = false;
    for (; it < max_iter; ++it) {
        Mat G(m, m);
        for (int s = 0; s < n; ++s)
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) G(i, j) += 2.0 * y[s] * model.generators[s](i, j);

        auto dec = jacobi_eigensym(G);
        Vec u = dec.eigenvectors.col(m - 1); // smallest eigenvalue direction
        Vec b(n);
        for (int s = 0; s < n; ++s) {
            double acc = 0.0;
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < m; ++j) acc += u[i] * model.generators[s](i, j) * u[j];
            b[s] = acc;
        }

        double num = 0.0, den = 0.0;
        for (int s = 0; s < n; ++s) {
            num += y[s] * (y[s] - b[s]);
            den += (y[s] - b[s]) * (y[s] - b[s]);
        }
        gap = 2.0 * num;
        if (gap <= gap_tol) {
            converged = true;
            break;
        }

        double step = den > 0 ? std::clamp(num / den, 0.0, 1.0) : 0.0;
        if (step == 0.0) {
            converged = true; // no admissible progress left
            break;
        }
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                W(i, j) = (1.0 - step) * W(i, j) + step * u[i] * u[j];
        for (int s = 0; s < n; ++s) y[s] = (1.0 - step) * y[s] + step * b[s];
        if ((it & 127) == 127) refresh(); // shed linear-update drift
    }

    res.W = W;
    res.subgradient = y;
    res.slope = norm2(y);
    res.converged = converged;
    res.iterations = it;
    res.duality_gap = gap;
    return res;
}

double directional_derivative(const SubdiffModel& model, const Vec& d) {
    if (static_cast<int>(d.size()) != model.var_count())
        throw input_error("directional_derivative: direction dimension mismatch");
    const int m = model.multiplicity();
    Mat S(m, m);
    for (int s = 0; s < model.var_count(); ++s)
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) S(i, j) += d[s] * model.generators[s](i, j);
    return jacobi_eigensym(S).eigenvalues[0];
}

GrProbeResult g_r_probe(const SymPolyMatrix& F, const Vec& x, const Vec& lambda,
                        const std::vector<Vec>& v) {
    const int n = F.var_count();
    const int p = F.order();
    const int r = static_cast<int>(v.size());
    if (r < 1 || r > n + 1)
        throw input_error("g_r_probe: require 1 <= r <= n+1");
    if (static_cast<int>(lambda.size()) != r - 1)
        throw input_error("g_r_probe: lambda must have length r-1");

    double lam_sum = 0.0;
    for (double l : lambda) {
        if (l < -1e-9) throw input_error("g_r_probe: lambda outside the simplex");
        lam_sum += l;
    }
    if (lam_sum > 1.0 + 1e-9) throw input_error("g_r_probe: lambda outside the simplex");
    for (const auto& vl : v) {
        if (static_cast<int>(vl.size()) != p)
            throw input_error("g_r_probe: eigenvector of wrong dimension");
        if (std::abs(norm2(vl) - 1.0) > 1e-9)
            throw input_error("g_r_probe: v is not a unit vector");
    }

    Vec weights(r);
    for (int l = 0; l < r - 1; ++l) weights[l] = lambda[l];
    weights[r - 1] = 1.0 - lam_sum;

    Mat Fx = F.eval(x);
    if (!Fx.all_finite()) throw numeric_error("g_r_probe: non-finite matrix entries");

    Vec g_vals(r);
    std::vector<Vec> Fv(r);
    for (int l = 0; l < r; ++l) {
        Fv[l] = matvec(Fx, v[l]);
        g_vals[l] = dot(Fv[l], v[l]);
    }

    GrProbeResult res;
    res.value = 0.0;
    for (int l = 0; l < r; ++l) res.value += weights[l] * g_vals[l];

    res.grad_x.assign(n, 0.0);
    for (int s = 0; s < n; ++s) {
        Mat Ds = F.eval_partial(s, x);
        double acc = 0.0;
        for (int l = 0; l < r; ++l) {
            Vec Dv = matvec(Ds, v[l]);
            acc += weights[l] * dot(Dv, v[l]);
        }
        res.grad_x[s] = acc;
    }
    res.x_block_norm = norm2(res.grad_x);

    double lam_sq = 0.0;
    for (int l = 0; l < r - 1; ++l) {
        double dl = g_vals[l] - g_vals[r - 1];
        lam_sq += dl * dl;
    }
    res.lambda_block_norm = std::sqrt(lam_sq);

    res.v_block_norms.resize(r);
    double v_total = 0.0;
    for (int l = 0; l < r; ++l) {
        res.v_block_norms[l] = 2.0 * std::abs(weights[l]) * norm2(Fv[l]);
        v_total += res.v_block_norms[l];
    }

    res.block_norm_total = res.x_block_norm + res.lambda_block_norm + v_total;
    res.f_value = jacobi_eigensym(Fx).eigenvalues[0];
    res.identity_residual =
        std::abs(res.block_norm_total - (res.x_block_norm + 2.0 * std::abs(res.f_value)));
    return res;
}

} // namespace lojeig
