#ifndef LOJEIG_NONDEGENERACY_HPP
#define LOJEIG_NONDEGENERACY_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "lojeig/newton.hpp"
#include "lojeig/spectral.hpp"

namespace lojeig {

/// Gamma(F) = Minkowski sum of the entry polyhedra over all p^2 ordered
/// pairs (i, j); zero entries contribute nothing. The summand list is kept
/// so that faces can be decomposed entrywise later.
struct MatrixNewtonData {
    NewtonPolyhedron gamma;
    std::vector<std::pair<int, int>> summand_ij; // 0-based ordered pairs, nonzero entries
    std::vector<NewtonPolyhedron> summands;
};

MatrixNewtonData gamma_of_matrix(const SymPolyMatrix& F);

/// F_Delta: entrywise principal-part matrix for a face Delta of Gamma(F),
/// built from the unique Minkowski decomposition Delta = sum Delta_ij.
struct FaceMatrix {
    Face face;
    std::vector<std::pair<int, int>> summand_ij;
    FaceDecomposition decomposition; // aligned with summand_ij
    SymPolyMatrix matrix;            // F_Delta
};

FaceMatrix principal_matrix(const SymPolyMatrix& F, const Face& delta);

/// A certificate of degeneracy: a symmetric Omega with nonnegative diagonal
/// and unit trace annihilating all derivative traces and the value trace of
/// F_Delta at a torus point x. residuals hold the re-verified violations.
struct DegeneracyWitness {
    Face face;
    Vec x;
    Mat omega;
    double min_diag = 0.0;    // most negative diagonal entry (>= -1e-9)
    double trace_dev = 0.0;   // |tr(Omega) - 1|
    double max_deriv = 0.0;   // max_k |tr(Omega dF_Delta/dx_k(x))|
    double value_dev = 0.0;   // |tr(Omega F_Delta(x))|
};

// Phase-1 simplex feasibility in the p(p+1)/2 entries of Omega; any solution
// is re-verified with freshly evaluated traces before being reported.
std::optional<DegeneracyWitness> witness_search_at_point(const FaceMatrix& fm, const Vec& x);

struct FaceScanResult {
    Face face;
    bool degenerate = false;
    std::optional<DegeneracyWitness> witness;
    int points_tried = 0;
    int near_misses = 0; // LP-feasible candidates that failed re-verification
};

/// One-sided randomized scan: DEGENERATE verdicts carry a re-verified
/// witness; NO-WITNESS-FOUND only records that the budget found nothing.
struct NondegeneracyScanReport {
    bool degenerate = false;
    std::vector<FaceScanResult> faces;
    int budget = 0;
    std::uint64_t seed = 0;
};

NondegeneracyScanReport nondegeneracy_scan(const SymPolyMatrix& F, int budget,
                                           std::uint64_t seed);

// Reference reductions used to cross-check the Omega LP.
// p = 1: a witness exists iff grad f_Delta(x) = 0 and f_Delta(x) = 0.
bool scalar_witness_at_point(const Polynomial& f_delta, const Vec& x, double tol = 1e-9);
// Diagonal matrices: simplex weights on the diagonal principal parts.
std::optional<Vec> diagonal_witness_at_point(const std::vector<Polynomial>& diag_parts,
                                             const Vec& x, double tol = 1e-10);

struct Theorem13Report {
    bool all_diagonal_convenient = false;
    std::vector<int> inconvenient_indices; // 0-based i with Gamma(f_ii) not convenient
    bool containment_ok = false;
    std::vector<std::pair<int, int>> containment_violations; // Gamma(f_ij) not in Gamma(f_ii)
    bool feasible_point_found = false;
    Vec feasible_point;
    int probe_budget = 0;
};

// Checks the hypotheses "every f_ii convenient" and "Gamma(f_ij) contained in
// Gamma(f_ii)", plus a sampled probe for S_F being nonempty.
Theorem13Report theorem13_preconditions(const SymPolyMatrix& F, int probe_budget = 4096,
                                        std::uint64_t seed = 0, double feas_tol = 1e-9);

} // namespace lojeig

#endif
