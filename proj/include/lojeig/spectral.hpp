#ifndef LOJEIG_SPECTRAL_HPP
#define LOJEIG_SPECTRAL_HPP

#include <utility>
#include <vector>

#include "lojeig/linalg.hpp"
#include "lojeig/polynomial.hpp"

namespace lojeig {

/// Symmetric p x p matrix of polynomials in n variables. Only the upper
/// triangle is stored; f_ji is f_ij by construction. Entry partial
/// derivatives are kept symbolically so gradient evaluations stay exact.
class SymPolyMatrix {
public:
    SymPolyMatrix(int n, int p);

    int var_count() const { return n_; }
    int order() const { return p_; }
    int max_degree() const; // d = max over entries

    // i, j are 0-based; (i, j) and (j, i) refer to the same entry.
    void set_entry(int i, int j, Polynomial poly);
    const Polynomial& entry(int i, int j) const;
    const Polynomial& entry_partial(int i, int j, int s) const;

    Mat eval(const Vec& x) const;              // F(x), exactly symmetric
    Mat eval_partial(int s, const Vec& x) const; // dF/dx_s at x

private:
    int index(int i, int j) const;
    int n_, p_;
    std::vector<Polynomial> entries_;               // upper triangle, row-major
    std::vector<std::vector<Polynomial>> partials_; // per entry, per variable
};

// (f(x), [f(x)]_+) where f is the largest eigenvalue of F(x).
std::pair<double, double> largest_eigenvalue(const SymPolyMatrix& F, const Vec& x);

/// Orthonormal basis Q of the clustered top eigenspace at x: eigenvalues
/// within cluster_tol * max(1, |lambda_max|) of the top one.
struct TopEigenspace {
    Vec point;
    double lambda_max = 0.0;
    Mat basis; // p x m, orthonormal columns
    int multiplicity = 0;
    double cluster_tol = 0.0;
};

TopEigenspace top_eigenspace(const SymPolyMatrix& F, const Vec& x, double cluster_tol);

/// Compressed Clarke-subdifferential model over the top eigenspace:
/// the set {(tr(W A_1), ..., tr(W A_n)) : W PSD, tr W = 1} with
/// A_s = Q^T (dF/dx_s)(x) Q. Rank-one W = u u^T correspond to single unit
/// eigenvectors v = Q u, mixtures to their convex combinations.
struct SubdiffModel {
    std::vector<Mat> generators; // n symmetric m x m matrices
    TopEigenspace eigenspace;

    int var_count() const { return static_cast<int>(generators.size()); }
    int multiplicity() const { return eigenspace.multiplicity; }
};

SubdiffModel subdiff_model(const SymPolyMatrix& F, const Vec& x, double cluster_tol);

// One point of the model: (tr(W A_s))_s. W must be PSD with unit trace
// (tolerance 1e-10 on both).
Vec clarke_point(const SubdiffModel& model, const Mat& W);

struct SlopeResult {
    double slope = 0.0;   // min norm over the spectraplex image
    Mat W;                // the minimizing density matrix
    Vec subgradient;      // clarke_point(model, W)
    bool converged = true;
    int iterations = 0;
    double duality_gap = 0.0;
};

/// Minimum-norm point of the subdifferential model by Frank-Wolfe over the
/// spectraplex; the linear subproblem is one small eigenproblem.
SlopeResult clarke_slope(const SubdiffModel& model, double gap_tol = 1e-9,
                         int max_iter = 10000);

// Support function of the model in direction d: lambda_max(sum_s d_s A_s).
double directional_derivative(const SubdiffModel& model, const Vec& d);

/// One evaluation of the eigenvector-weighted objective
///   G_r(x, lambda, v^1..v^r) = sum_{l<r} lambda_l <F(x)v^l, v^l>
///                              + (1 - sum lambda_l) <F(x)v^r, v^r>
/// with its gradient split into the x / lambda / v blocks. Under the block
/// sum norm, eigenvector inputs satisfy
///   ||grad G_r|| = ||grad_x G_r|| + 2 |f(x)|,
/// and identity_residual measures the defect of that identity.
struct GrProbeResult {
    double value = 0.0;
    Vec grad_x;
    double x_block_norm = 0.0;
    double lambda_block_norm = 0.0;
    std::vector<double> v_block_norms;
    double block_norm_total = 0.0;
    double f_value = 0.0;
    double identity_residual = 0.0;
};

// lambda has length r-1 and must lie in the simplex {lambda_j >= 0,
// sum <= 1}; each v^l must be a unit vector; r <= n+1.
GrProbeResult g_r_probe(const SymPolyMatrix& F, const Vec& x,
                        const Vec& lambda, const std::vector<Vec>& v);

} // namespace lojeig

#endif
