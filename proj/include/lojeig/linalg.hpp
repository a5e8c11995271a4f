#ifndef LOJEIG_LINALG_HPP
#define LOJEIG_LINALG_HPP

#include <vector>

namespace lojeig {

using Vec = std::vector<double>;

// Dense row-major matrix; small orders only (desk scale).
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols, fill) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    double& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    Vec col(int j) const;
    bool all_finite() const;

private:
    int rows_ = 0, cols_ = 0;
    std::vector<double> a_;
};

double dot(const Vec& a, const Vec& b);
double norm2(const Vec& a);
Vec matvec(const Mat& A, const Vec& x);
double frobenius_norm(const Mat& A);
double max_abs_offdiag(const Mat& A);

struct EigenDecomposition {
    Vec eigenvalues; // sorted descending
    Mat eigenvectors; // orthonormal columns, same order
    int sweeps = 0;
};

// Cyclic Jacobi rotations on a symmetric matrix; sweeps until the
// off-diagonal Frobenius mass falls below tol * ||A||_F.
EigenDecomposition jacobi_eigensym(const Mat& A, double tol = 1e-13);

} // namespace lojeig

#endif
