#ifndef LOJEIG_HARNESS_HPP
#define LOJEIG_HARNESS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lojeig/exponents.hpp"
#include "lojeig/sampling.hpp"
#include "lojeig/spectral.hpp"

namespace lojeig {

enum class CheckKind {
    GradientLocal,
    ErrorBoundLocal,
    Separation,
    Factorization,
    GlobalSeparation,
    GlobalKollar,
    CompactKollar,
    GlobalHolder,
    SlopeAtInfinity,
    EigenspaceStability
};

std::string to_string(CheckKind kind);
std::optional<CheckKind> check_kind_from_string(const std::string& name);

// The exponent family the check verifies; SlopeAtInfinity has a constant
// right-hand side and takes no certificate.
std::optional<CertificateKind> certificate_kind_for_check(CheckKind kind);

struct CheckProblem {
    const SymPolyMatrix* F = nullptr;
    const SymPolyMatrix* G = nullptr; // Separation/GlobalSeparation/Factorization
    const SymPolyMatrix* H = nullptr; // Factorization domain matrix
    Vec xbar;                         // GradientLocal / EigenspaceStability base point
};

struct CheckConfig {
    Region region = Region::box(1, -1.0, 1.0);
    int samples = 1000;
    std::uint64_t seed = 0;
    double cluster_tol = 1e-8;
    double feas_tol = 1e-9;
    double c_floor = 1e-12;
    // Distance-oracle screening; defaults derive a box from the region.
    std::optional<Region> oracle_region;
    std::optional<double> oracle_grid_step; // grid mesh when set (box oracle regions)
    int oracle_samples = 100000;            // random screening fallback
    int octaves = 4;                        // SlopeAtInfinity shell doublings
};

// Builds the matching exponent certificate from the problem dimensions.
ExponentCertificate default_certificate(CheckKind kind, const CheckProblem& problem);

struct SampleRow {
    enum class Status { Usable, Excluded, Skipped };
    Vec x;
    double f = 0.0, f_plus = 0.0;
    double slope = std::numeric_limits<double>::quiet_NaN();
    double distance = std::numeric_limits<double>::quiet_NaN();
    double left = 0.0, right = 0.0, ratio = 0.0; // c * left <= right; ratio = right/left
    double log_ratio = 0.0;
    Status status = Status::Usable;
};

struct CheckReport {
    CheckKind kind;
    std::optional<ExponentCertificate> certificate;
    // inf over usable samples of right/left; the empirical constant of the
    // inequality written as c * left <= right (log copy is authoritative at
    // astronomic exponents).
    double c_estimate = 0.0;
    double c_estimate_log = 0.0;
    Vec worst_point;
    double worst_left = 0.0, worst_right = 0.0;
    int sample_count = 0, usable_count = 0, excluded_count = 0, skipped_count = 0;
    std::string verdict; // PASS / FAIL / INCONCLUSIVE
    std::string note;
    double oracle_resolution = 0.0;
    int oracle_points = 0;
    std::vector<double> octave_minima;                  // SlopeAtInfinity
    std::vector<std::pair<double, double>> octave_shells;
    std::vector<SampleRow> rows;
};

/// Precomputed evaluation context (feasible clouds, base values); exposed so
/// reports can be re-verified sample by sample.
struct CheckContext {
    CheckKind kind;
    const CheckProblem* problem = nullptr;
    CheckConfig config;
    std::optional<ExponentCertificate> certificate;
    std::optional<FeasibleCloud> cloud_f, cloud_g, cloud_fg;
    double fbar = 0.0;                       // f(xbar) for GradientLocal
    std::optional<TopEigenspace> base_space; // EigenspaceStability
};

CheckContext make_check_context(CheckKind kind, const CheckProblem& problem,
                                const CheckConfig& config,
                                std::optional<ExponentCertificate> certificate);

SampleRow evaluate_check_sample(const CheckContext& ctx, const Vec& x);

CheckReport run_inequality_check(CheckKind kind, const CheckProblem& problem,
                                 const CheckConfig& config,
                                 std::optional<ExponentCertificate> certificate);

/// Least-squares estimate of the local gradient-inequality exponent:
/// slope of log(clarke slope) against log |f - f(xbar)|.
struct ExponentFit {
    double theta_hat = 0.0;
    double intercept = 0.0;
    double residual_stddev = 0.0;
    int usable = 0;
    int sample_count = 0;
    bool ok = false;
    std::string note;
};

ExponentFit empirical_exponent(const SymPolyMatrix& F, const Vec& xbar,
                               const Region& region, int samples, std::uint64_t seed,
                               double cluster_tol = 1e-8);

struct FlowStep {
    Vec x;
    double f_plus = 0.0;
    double slope = 0.0;
    double step = 0.0; // accepted step size that produced this iterate (0 for x0)
};

struct FlowOptions {
    double feas_tol = 1e-6;
    int max_iter = 10000;
    double cluster_tol = 1e-8;
    double slope_tol = 1e-12;
};

/// Discrete steepest descent on f_+ along minimum-norm Clarke subgradients,
/// with backtracking on a quarter-quadratic sufficient-decrease test.
struct Trajectory {
    std::vector<FlowStep> iterates;
    double total_length = 0.0;
    std::string terminated; // SUCCESS / STALLED / MAX_ITER / LINE_SEARCH_FAILED
    double final_f = 0.0;
    // length vs. the local error-bound scale [f_+(x0)]^(1/R); reported as
    // log(length) - (1/R) log f_+(x0), never asserted against a constant.
    double length_ratio_log = 0.0;
};

Trajectory solve_feasibility_flow(const SymPolyMatrix& F, const Vec& x0,
                                  const FlowOptions& options = {});

} // namespace lojeig

#endif
