#include "lojeig/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "lojeig/errors.hpp"

namespace lojeig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_log(double v) { return v > 0 ? std::log(v) : -kInf; }

// One-sided deviation of the top eigenspace at x from the base eigenspace:
// max over unit v in span(Q) of dist(v, unit sphere of span(Qbar)), which is
// sqrt(2 - 2 sigma_min(Qbar^T Q)).
double eigenspace_deviation(const TopEigenspace& base, const TopEigenspace& at) {
    const Mat& Qb = base.basis;
    const Mat& Q = at.basis;
    const int mb = base.multiplicity, m = at.multiplicity;
    if (m > mb) return std::sqrt(2.0); // eigenspace grew: some direction leaves entirely

    Mat M(mb, m); // Qbar^T Q
    for (int a = 0; a < mb; ++a)
        for (int b = 0; b < m; ++b) {
            double acc = 0.0;
            for (int i = 0; i < Qb.rows(); ++i) acc += Qb(i, a) * Q(i, b);
            M(a, b) = acc;
        }
    Mat MtM(m, m);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b) {
            double acc = 0.0;
            for (int r = 0; r < mb; ++r) acc += M(r, a) * M(r, b);
            MtM(a, b) = acc;
        }
    double smin_sq = std::max(0.0, jacobi_eigensym(MtM).eigenvalues[m - 1]);
    double h_sq = std::max(0.0, 2.0 - 2.0 * std::sqrt(smin_sq));
    return std::sqrt(h_sq);
}

double squared_norm(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return s;
}

Region default_oracle_region(const Region& region) {
    double bound = std::max(1.25 * region.outer_bound(), 1e-6);
    return Region::box(region.dim, -bound, bound);
}

FeasibleCloud build_cloud(const FeasibilityFn& value, const CheckConfig& cfg,
                          std::uint64_t salt) {
    Region oracle = cfg.oracle_region ? *cfg.oracle_region
                                      : default_oracle_region(cfg.region);
    if (cfg.oracle_grid_step) {
        if (oracle.kind != Region::Kind::Box)
            throw input_error("oracle grid screening requires a box oracle region");
        return feasible_cloud_grid(value, oracle, *cfg.oracle_grid_step, cfg.feas_tol);
    }
    if (oracle.kind == Region::Kind::Box && oracle.dim <= 2) {
        // Mesh fine enough for honest distances at desk scale.
        double span = oracle.hi - oracle.lo;
        double step = oracle.dim == 1 ? span / 4000.0 : span / 700.0;
        return feasible_cloud_grid(value, oracle, step, cfg.feas_tol);
    }
    return feasible_cloud_random(value, oracle, cfg.oracle_samples,
                                 cfg.seed ^ 0x5eedc10ddULL ^ salt, cfg.feas_tol);
}

} // namespace

std::string to_string(CheckKind kind) {
    switch (kind) {
        case CheckKind::GradientLocal: return "gradient-local";
        case CheckKind::ErrorBoundLocal: return "error-bound-local";
        case CheckKind::Separation: return "separation";
        case CheckKind::Factorization: return "factorization";
        case CheckKind::GlobalSeparation: return "global-separation";
        case CheckKind::GlobalKollar: return "global-kollar";
        case CheckKind::CompactKollar: return "compact-kollar";
        case CheckKind::GlobalHolder: return "global-holder";
        case CheckKind::SlopeAtInfinity: return "slope-at-infinity";
        case CheckKind::EigenspaceStability: return "eigenspace-stability";
    }
    return "?";
}

std::optional<CheckKind> check_kind_from_string(const std::string& name) {
    for (auto kind : {CheckKind::GradientLocal, CheckKind::ErrorBoundLocal,
                      CheckKind::Separation, CheckKind::Factorization,
                      CheckKind::GlobalSeparation, CheckKind::GlobalKollar,
                      CheckKind::CompactKollar, CheckKind::GlobalHolder,
                      CheckKind::SlopeAtInfinity, CheckKind::EigenspaceStability})
        if (to_string(kind) == name) return kind;
    return std::nullopt;
}

std::optional<CertificateKind> certificate_kind_for_check(CheckKind kind) {
    switch (kind) {
        case CheckKind::GradientLocal: return CertificateKind::GradientLocal;
        case CheckKind::ErrorBoundLocal: return CertificateKind::ErrorBoundLocal;
        case CheckKind::Separation: return CertificateKind::Separation;
        case CheckKind::Factorization: return CertificateKind::Factorization;
        case CheckKind::GlobalSeparation: return CertificateKind::GlobalSeparation;
        case CheckKind::GlobalKollar:
        case CheckKind::CompactKollar: return CertificateKind::GlobalKollar;
        case CheckKind::GlobalHolder: return CertificateKind::GlobalHolder;
        case CheckKind::EigenspaceStability: return CertificateKind::EigenspaceStability;
        case CheckKind::SlopeAtInfinity: return std::nullopt;
    }
    return std::nullopt;
}

ExponentCertificate default_certificate(CheckKind kind, const CheckProblem& problem) {
    if (!problem.F) throw input_error("default_certificate: problem has no F matrix");
    auto cert_kind = certificate_kind_for_check(kind);
    if (!cert_kind)
        throw input_error("default_certificate: check kind '" + to_string(kind) +
                          "' takes no exponent certificate");
    const int n = problem.F->var_count();
    const int p = problem.F->order();
    int d = problem.F->max_degree();
    std::optional<int> q;
    if (kind == CheckKind::Separation || kind == CheckKind::GlobalSeparation) {
        if (!problem.G) throw input_error("default_certificate: kind requires G");
        q = problem.G->order();
        d = std::max(d, problem.G->max_degree());
    } else if (kind == CheckKind::Factorization) {
        if (!problem.H) throw input_error("default_certificate: kind requires H");
        q = problem.H->order();
        d = std::max(d, problem.H->max_degree());
    }
    return certificate(*cert_kind, n, p, d, q);
}

CheckContext make_check_context(CheckKind kind, const CheckProblem& problem,
                                const CheckConfig& config,
                                std::optional<ExponentCertificate> certificate) {
    if (!problem.F) throw input_error("run_inequality_check: problem has no F matrix");
    const bool needs_g = kind == CheckKind::Separation || kind == CheckKind::GlobalSeparation ||
                         kind == CheckKind::Factorization;
    if (needs_g && !problem.G)
        throw input_error("run_inequality_check: kind '" + to_string(kind) + "' requires G");
    if (kind == CheckKind::Factorization && !problem.H)
        throw input_error("run_inequality_check: factorization requires H");
    if ((kind == CheckKind::GradientLocal || kind == CheckKind::EigenspaceStability) &&
        static_cast<int>(problem.xbar.size()) != problem.F->var_count())
        throw input_error("run_inequality_check: kind '" + to_string(kind) +
                          "' requires a base point xbar of dimension n");
    if (config.region.dim != problem.F->var_count())
        throw input_error("run_inequality_check: region dimension mismatch");
    if (config.samples < 1) throw input_error("run_inequality_check: samples must be >= 1");

    auto expected = certificate_kind_for_check(kind);
    if (expected) {
        if (!certificate)
            throw input_error("run_inequality_check: kind '" + to_string(kind) +
                              "' requires a certificate");
        if (certificate->kind != *expected)
            throw input_error("run_inequality_check: certificate kind '" +
                              to_string(certificate->kind) + "' does not match check '" +
                              to_string(kind) + "'");
    } else if (certificate) {
        throw input_error("run_inequality_check: slope-at-infinity takes no certificate");
    }

    CheckContext ctx;
    ctx.kind = kind;
    ctx.problem = &problem;
    ctx.config = config;
    ctx.certificate = std::move(certificate);

    const SymPolyMatrix& F = *problem.F;
    auto f_of = [&F](const Vec& x) { return largest_eigenvalue(F, x).first; };

    switch (kind) {
        case CheckKind::ErrorBoundLocal:
        case CheckKind::GlobalKollar:
        case CheckKind::GlobalHolder:
            ctx.cloud_f = build_cloud(f_of, config, 1);
            break;
        case CheckKind::Separation:
        case CheckKind::GlobalSeparation: {
            const SymPolyMatrix& G = *problem.G;
            auto g_of = [&G](const Vec& x) { return largest_eigenvalue(G, x).first; };
            auto fg_of = [&](const Vec& x) { return std::max(f_of(x), g_of(x)); };
            ctx.cloud_f = build_cloud(f_of, config, 1);
            ctx.cloud_g = build_cloud(g_of, config, 2);
            ctx.cloud_fg = build_cloud(fg_of, config, 3);
            break;
        }
        default: break;
    }

    if (kind == CheckKind::GradientLocal)
        ctx.fbar = largest_eigenvalue(F, problem.xbar).first;
    if (kind == CheckKind::EigenspaceStability)
        ctx.base_space = top_eigenspace(F, problem.xbar, config.cluster_tol);
    return ctx;
}

SampleRow evaluate_check_sample(const CheckContext& ctx, const Vec& x) {
    const SymPolyMatrix& F = *ctx.problem->F;
    const CheckConfig& cfg = ctx.config;
    const ExponentCertificate* cert = ctx.certificate ? &*ctx.certificate : nullptr;

    SampleRow row;
    row.x = x;
    auto [f, fplus] = largest_eigenvalue(F, x);
    row.f = f;
    row.f_plus = fplus;

    double log_left = -kInf, log_right = -kInf;

    switch (ctx.kind) {
        case CheckKind::GradientLocal: {
            double gap = std::abs(f - ctx.fbar);
            if (gap == 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            row.slope = clarke_slope(subdiff_model(F, x, cfg.cluster_tol)).slope;
            log_left = log_pow_certificate(gap, *cert);
            log_right = safe_log(row.slope);
            break;
        }
        case CheckKind::ErrorBoundLocal: {
            if (fplus <= 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            row.distance = distance_oracle(x, *ctx.cloud_f);
            log_left = safe_log(row.distance);
            log_right = log_pow_certificate(fplus, *cert);
            break;
        }
        case CheckKind::Separation: {
            double g = largest_eigenvalue(*ctx.problem->G, x).first;
            if (f <= 0.0 && g <= 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            double dF = distance_oracle(x, *ctx.cloud_f);
            double dG = distance_oracle(x, *ctx.cloud_g);
            row.distance = distance_oracle(x, *ctx.cloud_fg);
            if (dF + dG == 0.0) { // feasible for both up to cloud tolerance
                row.status = SampleRow::Status::Skipped;
                return row;
            }
            log_left = safe_log(row.distance);
            log_right = log_pow_certificate(dF + dG, *cert);
            break;
        }
        case CheckKind::Factorization: {
            double h = largest_eigenvalue(*ctx.problem->H, x).first;
            if (h > cfg.feas_tol) { // outside the compact domain K = {h <= 0}
                row.status = SampleRow::Status::Skipped;
                return row;
            }
            double gp = std::max(largest_eigenvalue(*ctx.problem->G, x).first, 0.0);
            if (fplus == 0.0 && gp == 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            log_left = safe_log(gp);
            log_right = fplus > 0 ? log_pow_certificate(fplus, *cert) : -kInf;
            break;
        }
        case CheckKind::GlobalSeparation: {
            double g = largest_eigenvalue(*ctx.problem->G, x).first;
            if (f <= 0.0 && g <= 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            double dF = distance_oracle(x, *ctx.cloud_f);
            double dG = distance_oracle(x, *ctx.cloud_g);
            row.distance = distance_oracle(x, *ctx.cloud_fg);
            double weighted = row.distance / (1.0 + squared_norm(x));
            if (dF + dG == 0.0 || weighted == 0.0) {
                row.status = SampleRow::Status::Skipped;
                return row;
            }
            log_left = log_pow_certificate(weighted, *cert);
            log_right = safe_log(dF + dG);
            break;
        }
        case CheckKind::GlobalKollar: {
            if (fplus <= 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            row.distance = distance_oracle(x, *ctx.cloud_f);
            double weighted = row.distance / (1.0 + squared_norm(x));
            if (weighted == 0.0) {
                row.status = SampleRow::Status::Skipped;
                return row;
            }
            log_left = log_pow_certificate(weighted, *cert);
            log_right = safe_log(fplus);
            break;
        }
        case CheckKind::CompactKollar: {
            if (fplus <= 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            double r = std::sqrt(squared_norm(x));
            if (r == 0.0) {
                row.status = SampleRow::Status::Skipped;
                return row;
            }
            log_left = -log_pow_certificate(r, *cert); // ||x||^(-R)
            log_right = safe_log(fplus);
            break;
        }
        case CheckKind::GlobalHolder: {
            if (fplus <= 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            row.distance = distance_oracle(x, *ctx.cloud_f);
            log_left = safe_log(row.distance);
            log_right = safe_log(pow_certificate(fplus, *cert) + fplus);
            break;
        }
        case CheckKind::SlopeAtInfinity: {
            if (f <= 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            row.slope = clarke_slope(subdiff_model(F, x, cfg.cluster_tol)).slope;
            log_left = 0.0; // constant lower bound: c * 1 <= slope
            log_right = safe_log(row.slope);
            break;
        }
        case CheckKind::EigenspaceStability: {
            Vec diff = x;
            for (std::size_t s = 0; s < diff.size(); ++s) diff[s] -= ctx.problem->xbar[s];
            double delta = norm2(diff);
            if (delta == 0.0) {
                row.status = SampleRow::Status::Excluded;
                return row;
            }
            double dev = eigenspace_deviation(*ctx.base_space,
                                              top_eigenspace(F, x, cfg.cluster_tol));
            log_left = safe_log(dev);
            log_right = log_pow_certificate(delta, *cert);
            break;
        }
    }

    row.left = std::exp(log_left);
    row.right = std::exp(log_right);
    row.log_ratio = log_right - log_left; // +inf when left = 0: non-binding sample
    if (std::isnan(row.log_ratio)) row.log_ratio = 0.0; // both sides zero; excluded earlier
    row.ratio = std::exp(row.log_ratio);
    row.status = SampleRow::Status::Usable;
    return row;
}

CheckReport run_inequality_check(CheckKind kind, const CheckProblem& problem,
                                 const CheckConfig& config,
                                 std::optional<ExponentCertificate> certificate) {
    CheckReport report;
    report.kind = kind;
    report.certificate = certificate;

    CheckContext ctx;
    try {
        ctx = make_check_context(kind, problem, config, std::move(certificate));
    } catch (const empty_cloud_error& e) {
        report.verdict = "INCONCLUSIVE";
        report.note = e.what();
        return report;
    }
    if (ctx.cloud_f) {
        report.oracle_resolution = ctx.cloud_f->resolution;
        report.oracle_points = static_cast<int>(ctx.cloud_f->points.size());
        if (ctx.cloud_f->points.empty()) {
            report.verdict = "INCONCLUSIVE";
            report.note = "feasible cloud for F is empty at tolerance " +
                          std::to_string(config.feas_tol);
            return report;
        }
    }
    for (const auto* cloud : {&ctx.cloud_g, &ctx.cloud_fg}) {
        if (*cloud && (*cloud)->points.empty()) {
            report.verdict = "INCONCLUSIVE";
            report.note = "a feasible cloud needed by the check is empty";
            return report;
        }
    }

    // Assemble the sample set; SlopeAtInfinity sweeps doubling shells.
    std::vector<Vec> samples;
    std::vector<int> octave_of;
    if (kind == CheckKind::SlopeAtInfinity) {
        if (config.region.kind != Region::Kind::Shell)
            throw input_error("slope-at-infinity check requires a shell region");
        for (int o = 0; o < config.octaves; ++o) {
            double scale = std::pow(2.0, o);
            Region shell = Region::shell(config.region.dim, config.region.r1 * scale,
                                         config.region.r2 * scale);
            auto cloud = sample_region(shell, config.samples, config.seed + o);
            report.octave_shells.emplace_back(shell.r1, shell.r2);
            for (auto& x : cloud.points) {
                samples.push_back(std::move(x));
                octave_of.push_back(o);
            }
        }
    } else {
        auto cloud = sample_region(config.region, config.samples, config.seed);
        samples = std::move(cloud.points);
    }

    double min_log_ratio = kInf;
    std::vector<double> octave_min(kind == CheckKind::SlopeAtInfinity ? config.octaves : 0,
                                   kInf);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        SampleRow row = evaluate_check_sample(ctx, samples[i]);
        ++report.sample_count;
        switch (row.status) {
            case SampleRow::Status::Usable: {
                ++report.usable_count;
                if (row.log_ratio < min_log_ratio) {
                    min_log_ratio = row.log_ratio;
                    report.worst_point = row.x;
                    report.worst_left = row.left;
                    report.worst_right = row.right;
                }
                if (kind == CheckKind::SlopeAtInfinity)
                    octave_min[octave_of[i]] = std::min(octave_min[octave_of[i]], row.log_ratio);
                break;
            }
            case SampleRow::Status::Excluded: ++report.excluded_count; break;
            case SampleRow::Status::Skipped: ++report.skipped_count; break;
        }
        report.rows.push_back(std::move(row));
    }

    report.c_estimate_log = min_log_ratio;
    report.c_estimate = std::exp(min_log_ratio);

    const double floor_log = std::log(config.c_floor);
    if (report.usable_count == 0) {
        report.verdict = "INCONCLUSIVE";
        report.note = "no usable samples (all excluded or skipped)";
        return report;
    }
    if (min_log_ratio <= floor_log) {
        report.verdict = "FAIL";
        report.note = "empirical constant fell below the floor";
        return report;
    }
    if (kind == CheckKind::SlopeAtInfinity) {
        for (double m : octave_min) report.octave_minima.push_back(std::exp(m));
        for (int o = 0; o < config.octaves; ++o) {
            if (!std::isfinite(octave_min[o])) {
                report.verdict = "INCONCLUSIVE";
                report.note = "octave " + std::to_string(o) + " has no usable samples";
                return report;
            }
        }
        for (int o = 1; o < config.octaves; ++o) {
            if (report.octave_minima[o] < 0.5 * report.octave_minima[o - 1]) {
                report.verdict = "FAIL";
                report.note = "minimum slope decays across octave " + std::to_string(o) +
                              " (ratio below 0.5)";
                return report;
            }
        }
    }
    if (2 * report.usable_count < report.sample_count) {
        report.verdict = "INCONCLUSIVE";
        report.note = "fewer than half of the samples were usable";
        return report;
    }
    report.verdict = "PASS";
    return report;
}

ExponentFit empirical_exponent(const SymPolyMatrix& F, const Vec& xbar,
                               const Region& region, int samples, std::uint64_t seed,
                               double cluster_tol) {
    ExponentFit fit;
    fit.sample_count = samples;
    const double fbar = largest_eigenvalue(F, xbar).first;

    std::vector<double> xi, eta; // log|f - fbar|, log slope
    for (const auto& x : sample_region(region, samples, seed).points) {
        double gap = std::abs(largest_eigenvalue(F, x).first - fbar);
        if (gap <= 0.0) continue;
        double slope = clarke_slope(subdiff_model(F, x, cluster_tol)).slope;
        if (slope <= 0.0) continue;
        xi.push_back(std::log(gap));
        eta.push_back(std::log(slope));
    }
    fit.usable = static_cast<int>(xi.size());
    if (fit.usable < 10) {
        fit.ok = false;
        fit.note = "INCONCLUSIVE: fewer than 10 usable samples";
        return fit;
    }

    double mx = 0, my = 0;
    for (int i = 0; i < fit.usable; ++i) {
        mx += xi[i];
        my += eta[i];
    }
    mx /= fit.usable;
    my /= fit.usable;
    double sxx = 0, sxy = 0;
    for (int i = 0; i < fit.usable; ++i) {
        sxx += (xi[i] - mx) * (xi[i] - mx);
        sxy += (xi[i] - mx) * (eta[i] - my);
    }
    if (sxx == 0.0) {
        fit.ok = false;
        fit.note = "INCONCLUSIVE: no spread in log|f - f(xbar)|";
        return fit;
    }
    fit.theta_hat = sxy / sxx;
    fit.intercept = my - fit.theta_hat * mx;
    double ss = 0;
    for (int i = 0; i < fit.usable; ++i) {
        double r = eta[i] - (fit.intercept + fit.theta_hat * xi[i]);
        ss += r * r;
    }
    fit.residual_stddev = std::sqrt(ss / fit.usable);
    fit.ok = true;
    return fit;
}

Trajectory solve_feasibility_flow(const SymPolyMatrix& F, const Vec& x0,
                                  const FlowOptions& options) {
    if (!(options.feas_tol > 0))
        throw input_error("solve_feasibility_flow: feas_tol must be positive");
    if (static_cast<int>(x0.size()) != F.var_count())
        throw input_error("solve_feasibility_flow: start point dimension mismatch");

    Trajectory traj;
    Vec x = x0;
    auto fp_of = [&](const Vec& pt) { return largest_eigenvalue(F, pt).second; };

    double fp = fp_of(x);
    const double fp0 = fp;
    traj.iterates.push_back({x, fp, 0.0, 0.0});

    for (int it = 0; it < options.max_iter; ++it) {
        if (fp <= options.feas_tol) {
            traj.terminated = "SUCCESS";
            break;
        }
        auto slope_res = clarke_slope(subdiff_model(F, x, options.cluster_tol));
        const double slope = slope_res.slope;
        traj.iterates.back().slope = slope;
        if (slope < options.slope_tol) {
            traj.terminated = "STALLED"; // critical point above the feasibility level
            break;
        }

        // Start from the Polyak step capped at 1 so an exact kink is hit
        // rather than overshot, then backtrack on sufficient decrease.
        const Vec& w = slope_res.subgradient;
        double h = std::min(1.0, fp / (slope * slope));
        bool accepted = false;
        while (h >= 1e-16) {
            Vec xn = x;
            for (std::size_t s = 0; s < xn.size(); ++s) xn[s] -= h * w[s];
            double fpn = fp_of(xn);
            if (!std::isfinite(fpn)) throw numeric_error("solve_feasibility_flow: non-finite f");
            if (fp - fpn >= 0.25 * h * slope * slope) {
                traj.total_length += h * slope;
                x = std::move(xn);
                fp = fpn;
                traj.iterates.push_back({x, fp, 0.0, h});
                accepted = true;
                break;
            }
            h *= 0.5;
        }
        if (!accepted) {
            traj.terminated = "LINE_SEARCH_FAILED";
            break;
        }
    }
    if (traj.terminated.empty())
        traj.terminated = fp <= options.feas_tol ? "SUCCESS" : "MAX_ITER";

    traj.final_f = largest_eigenvalue(F, x).first;
    if (fp0 > 0 && traj.total_length > 0) {
        auto cert = certificate(CertificateKind::ErrorBoundLocal, F.var_count(), F.order(),
                                F.max_degree());
        traj.length_ratio_log = std::log(traj.total_length) - log_pow_certificate(fp0, cert);
    } else {
        traj.length_ratio_log = -kInf;
    }
    return traj;
}

} // namespace lojeig
