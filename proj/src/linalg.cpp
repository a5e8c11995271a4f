#include "lojeig/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lojeig/errors.hpp"

namespace lojeig {

Mat Mat::identity(int n) {
    Mat I(n, n);
    for (int i = 0; i < n; ++i) I(i, i) = 1.0;
    return I;
}

Vec Mat::col(int j) const {
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

bool Mat::all_finite() const {
    return std::all_of(a_.begin(), a_.end(), [](double v) { return std::isfinite(v); });
}

double dot(const Vec& a, const Vec& b) {
    if (a.size() != b.size()) throw input_error("dot: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec matvec(const Mat& A, const Vec& x) {
    if (A.cols() != static_cast<int>(x.size())) throw input_error("matvec: size mismatch");
    Vec y(A.rows(), 0.0);
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) y[i] += A(i, j) * x[j];
    return y;
}

double frobenius_norm(const Mat& A) {
    double s = 0.0;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) s += A(i, j) * A(i, j);
    return std::sqrt(s);
}

double max_abs_offdiag(const Mat& A) {
    double m = 0.0;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j)
            if (i != j) m = std::max(m, std::abs(A(i, j)));
    return m;
}

EigenDecomposition jacobi_eigensym(const Mat& A, double tol) {
    const int n = A.rows();
    if (n != A.cols()) throw input_error("jacobi_eigensym: matrix not square");
    if (!A.all_finite()) throw numeric_error("jacobi_eigensym: non-finite entries");

    Mat B = A;
    // Work on the symmetrized copy; asymmetry beyond roundoff is a caller bug.
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double v = 0.5 * (B(i, j) + B(j, i));
            B(i, j) = B(j, i) = v;
        }

    Mat V = Mat::identity(n);
    const double scale = std::max(frobenius_norm(B), 1e-300);
    int sweeps = 0;
    const int max_sweeps = 100;

    auto offdiag_mass = [&]() {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) s += 2.0 * B(i, j) * B(i, j);
        return std::sqrt(s);
    };

    while (offdiag_mass() > tol * scale && sweeps < max_sweeps) {
        ++sweeps;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                double apq = B(p, q);
                if (std::abs(apq) <= 1e-3 * tol * scale / std::max(1, n * n)) continue;
                double theta = (B(q, q) - B(p, p)) / (2.0 * apq);
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double s = t * c;
                double tau = s / (1.0 + c);

                double bpp = B(p, p), bqq = B(q, q);
                B(p, p) = bpp - t * apq;
                B(q, q) = bqq + t * apq;
                B(p, q) = B(q, p) = 0.0;
                for (int k = 0; k < n; ++k) {
                    if (k == p || k == q) continue;
                    double bkp = B(k, p), bkq = B(k, q);
                    B(k, p) = B(p, k) = bkp - s * (bkq + tau * bkp);
                    B(k, q) = B(q, k) = bkq + s * (bkp - tau * bkq);
                }
                for (int k = 0; k < n; ++k) {
                    double vkp = V(k, p), vkq = V(k, q);
                    V(k, p) = vkp - s * (vkq + tau * vkp);
                    V(k, q) = vkq + s * (vkp - tau * vkq);
                }
            }
        }
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return B(i, i) > B(j, j); });

    EigenDecomposition dec;
    dec.eigenvalues.resize(n);
    dec.eigenvectors = Mat(n, n);
    for (int j = 0; j < n; ++j) {
        dec.eigenvalues[j] = B(order[j], order[j]);
        for (int i = 0; i < n; ++i) dec.eigenvectors(i, j) = V(i, order[j]);
    }
    dec.sweeps = sweeps;
    return dec;
}

} // namespace lojeig
