// lojeig: largest-eigenvalue nonsmooth-analysis toolkit.
//
// Subcommands: eval, slope, ddir, exponent, newton, nondegen, check,
// exponent-fit, flow. Exit codes: 0 PASS/SUCCESS, 1 FAIL/DEGENERATE,
// 2 INCONCLUSIVE, 3 usage error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lojeig/errors.hpp"
#include "lojeig/harness.hpp"
#include "lojeig/nondegeneracy.hpp"
#include "lojeig/problem_io.hpp"
#include "lojeig/version.hpp"

using json = nlohmann::json;
using namespace lojeig;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitInconclusive = 2;
constexpr int kExitUsage = 3;

json vec_json(const Vec& v) { return json(v); }

json mat_json(const Mat& M) {
    json rows = json::array();
    for (int i = 0; i < M.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < M.cols(); ++j) row.push_back(M(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

json certificate_json(const ExponentCertificate& cert) {
    json j;
    j["kind"] = to_string(cert.kind);
    j["r_value"] = cert.r_value.get_str();
    j["theta_exact"] = rational_to_string(cert.theta);
    j["theta_decimal"] = cert.theta_double;
    j["theta_log"] = cert.theta_log;
    json inputs;
    inputs["n"] = cert.n;
    inputs["p"] = cert.p;
    inputs["d"] = cert.d;
    if (cert.q) inputs["q"] = *cert.q;
    j["inputs"] = std::move(inputs);
    return j;
}

json face_json(const Face& face) {
    json j;
    json verts = json::array();
    for (const auto& v : face.vertices) verts.push_back(v);
    j["vertices"] = std::move(verts);
    json q = json::array();
    for (const auto& qi : face.witness_q) q.push_back(rational_to_string(qi));
    j["witness_q"] = std::move(q);
    j["support_value"] = rational_to_string(face.support_value);
    j["at_infinity"] = face.at_infinity;
    return j;
}

json polyhedron_json(const NewtonPolyhedron& gamma) {
    json j;
    j["n"] = gamma.n;
    j["empty"] = gamma.empty();
    json verts = json::array();
    for (const auto& v : gamma.vertices) verts.push_back(v);
    j["vertices"] = std::move(verts);
    return j;
}

json trajectory_json(const Trajectory& traj) {
    json j;
    j["terminated"] = traj.terminated;
    j["total_length"] = traj.total_length;
    j["final_f"] = traj.final_f;
    j["iterations"] = traj.iterates.size() - 1;
    j["initial_f_plus"] = traj.iterates.front().f_plus;
    j["final_f_plus"] = traj.iterates.back().f_plus;
    j["length_ratio_log"] = traj.length_ratio_log;
    j["start"] = vec_json(traj.iterates.front().x);
    j["end"] = vec_json(traj.iterates.back().x);
    return j;
}

json check_report_json(const CheckReport& report) {
    json j;
    j["kind"] = to_string(report.kind);
    if (report.certificate) j["certificate"] = certificate_json(*report.certificate);
    j["verdict"] = report.verdict;
    if (!report.note.empty()) j["note"] = report.note;
    j["c_estimate"] = report.c_estimate;
    j["c_estimate_log"] = report.c_estimate_log;
    j["sample_count"] = report.sample_count;
    j["usable_count"] = report.usable_count;
    j["excluded_count"] = report.excluded_count;
    j["skipped_count"] = report.skipped_count;
    if (!report.worst_point.empty()) {
        j["worst_point"] = vec_json(report.worst_point);
        j["worst_left"] = report.worst_left;
        j["worst_right"] = report.worst_right;
    }
    if (report.oracle_points > 0) {
        j["oracle_points"] = report.oracle_points;
        j["oracle_resolution"] = report.oracle_resolution;
    }
    if (!report.octave_minima.empty()) {
        j["octave_minima"] = report.octave_minima;
        json shells = json::array();
        for (auto [r1, r2] : report.octave_shells) shells.push_back({r1, r2});
        j["octave_shells"] = std::move(shells);
    }
    return j;
}

void write_csv(const std::string& path, int n, const std::vector<SampleRow>& rows) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open CSV output file '" + path + "'");
    for (int s = 1; s <= n; ++s) out << "x" << s << ",";
    out << "f,f_plus,slope,distance,left,right,ratio\n";
    out.precision(17);
    for (const auto& row : rows) {
        for (double c : row.x) out << c << ",";
        out << row.f << "," << row.f_plus << "," << row.slope << "," << row.distance << ","
            << row.left << "," << row.right << "," << row.ratio << "\n";
    }
}

void write_flow_csv(const std::string& path, int n, const Trajectory& traj) {
    std::ofstream out(path);
    if (!out) throw input_error("cannot open CSV output file '" + path + "'");
    for (int s = 1; s <= n; ++s) out << "x" << s << ",";
    out << "f_plus,slope,step\n";
    out.precision(17);
    for (const auto& it : traj.iterates) {
        for (double c : it.x) out << c << ",";
        out << it.f_plus << "," << it.slope << "," << it.step << "\n";
    }
}

struct ReportWriter {
    std::string command;
    json config = json::object();
    json results = json::object();
    std::optional<std::uint64_t> seed;
    std::string report_path;
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    void emit() const {
        json j;
        j["command"] = command;
        j["config"] = config;
        j["results"] = results;
        json prov;
        prov["version"] = kVersion;
        if (seed) prov["seed"] = *seed;
        prov["wall_ms"] =
            std::chrono::duration_cast<std::chrono::milliseconds>(
                std::chrono::steady_clock::now() - started)
                .count();
        j["provenance"] = std::move(prov);
        std::string payload = j.dump(2);
        if (report_path.empty()) {
            std::cout << payload << std::endl;
        } else {
            std::ofstream out(report_path);
            if (!out) throw input_error("cannot open report file '" + report_path + "'");
            out << payload << "\n";
        }
    }
};

// Shared flag bundle; each subcommand registers the subset it needs.
struct Options {
    std::string problem_path;
    std::vector<double> point;
    std::vector<double> dir;
    std::vector<double> box;   // lo hi
    std::vector<double> ball;  // c1 .. cn radius
    std::vector<double> shell; // r1 r2
    std::vector<double> oracle_box;
    double oracle_grid_step = 0.0;
    int oracle_samples = 100000;
    int samples = 1000;
    std::uint64_t seed = 0;
    bool seed_set = false;
    double tol = 1e-9;
    bool tol_set = false;
    double cluster_tol = 1e-8;
    bool cluster_tol_set = false;
    double c_floor = 1e-12;
    int budget = 500;
    int octaves = 4;
    int max_iter = 10000;
    std::string kind;
    int n = 0, p = 0, d = 0, q = 0;
    std::string report_path;
    std::string csv_path;
};

Region region_from_options(const Options& opt, const ProblemFile& pf, int n,
                           const Vec& fallback_center) {
    int given = (!opt.box.empty()) + (!opt.ball.empty()) + (!opt.shell.empty());
    if (given > 1) throw input_error("give at most one of --box / --ball / --shell");
    if (!opt.box.empty()) return Region::box(n, opt.box[0], opt.box[1]);
    if (!opt.shell.empty()) return Region::shell(n, opt.shell[0], opt.shell[1]);
    if (!opt.ball.empty()) {
        if (static_cast<int>(opt.ball.size()) != n + 1)
            throw input_error("--ball needs n center coordinates and a radius");
        Vec center(opt.ball.begin(), opt.ball.end() - 1);
        return Region::ball(std::move(center), opt.ball.back());
    }
    if (pf.region) {
        if (pf.region->dim != n)
            throw input_error("problem-file default region has the wrong dimension");
        return *pf.region;
    }
    if (!fallback_center.empty()) return Region::ball(fallback_center, 1.0);
    return Region::box(n, -1.0, 1.0);
}

Vec require_point(const Options& opt, int n, const char* what) {
    if (static_cast<int>(opt.point.size()) != n)
        throw input_error(std::string("--point must supply ") + std::to_string(n) +
                          " coordinates for " + what);
    return opt.point;
}

void resolve_defaults(Options& opt, const ProblemFile& pf) {
    if (!opt.seed_set && pf.seed) opt.seed = *pf.seed;
    if (!opt.cluster_tol_set && pf.cluster_tol) opt.cluster_tol = *pf.cluster_tol;
    if (!opt.tol_set && pf.feas_tol) opt.tol = *pf.feas_tol;
}

json problem_config_json(const Options& opt, const ProblemFile& pf) {
    json j;
    j["problem"] = opt.problem_path;
    j["n"] = pf.F.var_count();
    j["p"] = pf.F.order();
    j["d"] = pf.F.max_degree();
    if (pf.G) j["q_order"] = pf.G->order();
    if (pf.H) j["h_order"] = pf.H->order();
    return j;
}

int run_eval(Options& opt) {
    ProblemFile pf = parse_problem(opt.problem_path);
    resolve_defaults(opt, pf);
    Vec x = require_point(opt, pf.F.var_count(), "eval");

    ReportWriter rw;
    rw.command = "eval";
    rw.report_path = opt.report_path;
    rw.config = problem_config_json(opt, pf);
    rw.config["point"] = vec_json(x);
    rw.config["cluster_tol"] = opt.cluster_tol;

    auto [f, fplus] = largest_eigenvalue(pf.F, x);
    auto top = top_eigenspace(pf.F, x, opt.cluster_tol);
    rw.results["f"] = f;
    rw.results["f_plus"] = fplus;
    rw.results["multiplicity"] = top.multiplicity;
    rw.results["basis"] = mat_json(top.basis);
    rw.emit();
    return kExitPass;
}

int run_slope(Options& opt) {
    ProblemFile pf = parse_problem(opt.problem_path);
    resolve_defaults(opt, pf);
    Vec x = require_point(opt, pf.F.var_count(), "slope");

    ReportWriter rw;
    rw.command = "slope";
    rw.report_path = opt.report_path;
    rw.config = problem_config_json(opt, pf);
    rw.config["point"] = vec_json(x);
    rw.config["cluster_tol"] = opt.cluster_tol;

    auto model = subdiff_model(pf.F, x, opt.cluster_tol);
    auto res = clarke_slope(model);
    rw.results["slope"] = res.slope;
    rw.results["subgradient"] = vec_json(res.subgradient);
    rw.results["W"] = mat_json(res.W);
    rw.results["multiplicity"] = model.multiplicity();
    rw.results["converged"] = res.converged;
    rw.results["iterations"] = res.iterations;
    rw.results["duality_gap"] = res.duality_gap;
    rw.emit();
    return res.converged ? kExitPass : kExitInconclusive;
}

int run_ddir(Options& opt) {
    ProblemFile pf = parse_problem(opt.problem_path);
    resolve_defaults(opt, pf);
    Vec x = require_point(opt, pf.F.var_count(), "ddir");
    if (static_cast<int>(opt.dir.size()) != pf.F.var_count())
        throw input_error("--dir must supply n coordinates");

    ReportWriter rw;
    rw.command = "ddir";
    rw.report_path = opt.report_path;
    rw.config = problem_config_json(opt, pf);
    rw.config["point"] = vec_json(x);
    rw.config["dir"] = vec_json(opt.dir);
    rw.config["cluster_tol"] = opt.cluster_tol;

    auto model = subdiff_model(pf.F, x, opt.cluster_tol);
    rw.results["directional_derivative"] = directional_derivative(model, opt.dir);
    rw.results["multiplicity"] = model.multiplicity();
    rw.emit();
    return kExitPass;
}

int run_exponent(Options& opt) {
    auto kind = certificate_kind_from_string(opt.kind);
    if (!kind) throw input_error("unknown certificate kind '" + opt.kind + "'");
    std::optional<int> q;
    if (opt.q > 0) q = opt.q;
    auto cert = certificate(*kind, opt.n, opt.p, opt.d, q);

    ReportWriter rw;
    rw.command = "exponent";
    rw.report_path = opt.report_path;
    rw.config["kind"] = opt.kind;
    rw.config["n"] = opt.n;
    rw.config["p"] = opt.p;
    rw.config["d"] = opt.d;
    if (q) rw.config["q"] = *q;
    rw.results = certificate_json(cert);
    rw.emit();
    return kExitPass;
}

int run_newton(Options& opt) {
    ProblemFile pf = parse_problem(opt.problem_path);

    ReportWriter rw;
    rw.command = "newton";
    rw.report_path = opt.report_path;
    rw.config = problem_config_json(opt, pf);

    json entries = json::array();
    const auto& F = pf.F;
    for (int i = 0; i < F.order(); ++i) {
        for (int jj = i; jj < F.order(); ++jj) {
            if (F.entry(i, jj).is_zero()) continue;
            auto gamma = newton_polyhedron_of(F.entry(i, jj));
            json e;
            e["i"] = i + 1;
            e["j"] = jj + 1;
            e["polyhedron"] = polyhedron_json(gamma);
            e["convenient"] = is_convenient(gamma);
            entries.push_back(std::move(e));
        }
    }
    rw.results["entries"] = std::move(entries);

    auto data = gamma_of_matrix(F);
    rw.results["gamma_F"] = polyhedron_json(data.gamma);
    if (!data.gamma.empty()) {
        json faces = json::array();
        for (const auto& face : enumerate_faces_at_infinity(data.gamma))
            faces.push_back(face_json(face));
        rw.results["faces_at_infinity"] = std::move(faces);
    }

    auto pre = theorem13_preconditions(F, opt.budget, opt.seed, opt.tol);
    json prej;
    prej["all_diagonal_convenient"] = pre.all_diagonal_convenient;
    prej["inconvenient_indices"] = pre.inconvenient_indices;
    prej["containment_ok"] = pre.containment_ok;
    json viols = json::array();
    for (auto [i, jj] : pre.containment_violations) viols.push_back({i + 1, jj + 1});
    prej["containment_violations"] = std::move(viols);
    prej["feasible_point_found"] = pre.feasible_point_found;
    if (pre.feasible_point_found) prej["feasible_point"] = vec_json(pre.feasible_point);
    rw.results["hypotheses"] = std::move(prej);
    rw.emit();
    return kExitPass;
}

int run_nondegen(Options& opt) {
    ProblemFile pf = parse_problem(opt.problem_path);
    resolve_defaults(opt, pf);

    ReportWriter rw;
    rw.command = "nondegen";
    rw.report_path = opt.report_path;
    rw.seed = opt.seed;
    rw.config = problem_config_json(opt, pf);
    rw.config["budget"] = opt.budget;
    rw.config["seed"] = opt.seed;

    auto report = nondegeneracy_scan(pf.F, opt.budget, opt.seed);
    rw.results["verdict"] = report.degenerate ? "DEGENERATE" : "NO-WITNESS-FOUND";
    json faces = json::array();
    for (const auto& fs : report.faces) {
        json fj;
        fj["face"] = face_json(fs.face);
        fj["verdict"] = fs.degenerate ? "DEGENERATE" : "NO-WITNESS-FOUND";
        fj["points_tried"] = fs.points_tried;
        if (fs.witness) {
            json wj;
            wj["x"] = vec_json(fs.witness->x);
            wj["omega"] = mat_json(fs.witness->omega);
            wj["residuals"] = {{"min_diag", fs.witness->min_diag},
                               {"trace_dev", fs.witness->trace_dev},
                               {"max_deriv", fs.witness->max_deriv},
                               {"value_dev", fs.witness->value_dev}};
            fj["witness"] = std::move(wj);
        }
        faces.push_back(std::move(fj));
    }
    rw.results["faces"] = std::move(faces);
    rw.emit();
    return report.degenerate ? kExitFail : kExitPass;
}

int run_check(Options& opt) {
    auto kind = check_kind_from_string(opt.kind);
    if (!kind) throw input_error("unknown check kind '" + opt.kind + "'");

    ProblemFile pf = parse_problem(opt.problem_path);
    resolve_defaults(opt, pf);
    const int n = pf.F.var_count();

    CheckProblem prob;
    prob.F = &pf.F;
    if (pf.G) prob.G = &*pf.G;
    if (pf.H) prob.H = &*pf.H;
    if (*kind == CheckKind::GradientLocal || *kind == CheckKind::EigenspaceStability)
        prob.xbar = require_point(opt, n, "this check");

    CheckConfig cfg;
    cfg.region = region_from_options(opt, pf, n, prob.xbar);
    cfg.samples = opt.samples;
    cfg.seed = opt.seed;
    cfg.cluster_tol = opt.cluster_tol;
    cfg.feas_tol = opt.tol;
    cfg.c_floor = opt.c_floor;
    cfg.oracle_samples = opt.oracle_samples;
    cfg.octaves = opt.octaves;
    if (!opt.oracle_box.empty())
        cfg.oracle_region = Region::box(n, opt.oracle_box[0], opt.oracle_box[1]);
    if (opt.oracle_grid_step > 0) cfg.oracle_grid_step = opt.oracle_grid_step;

    std::optional<ExponentCertificate> cert;
    if (certificate_kind_for_check(*kind)) cert = default_certificate(*kind, prob);

    ReportWriter rw;
    rw.command = "check";
    rw.report_path = opt.report_path;
    rw.seed = opt.seed;
    rw.config = problem_config_json(opt, pf);
    rw.config["kind"] = opt.kind;
    rw.config["region"] = region_to_json(cfg.region);
    rw.config["samples"] = opt.samples;
    rw.config["seed"] = opt.seed;
    rw.config["cluster_tol"] = cfg.cluster_tol;
    rw.config["feas_tol"] = cfg.feas_tol;
    rw.config["c_floor"] = cfg.c_floor;
    if (!prob.xbar.empty()) rw.config["point"] = vec_json(prob.xbar);
    if (cfg.oracle_region) rw.config["oracle_region"] = region_to_json(*cfg.oracle_region);
    if (cfg.oracle_grid_step) rw.config["oracle_grid_step"] = *cfg.oracle_grid_step;

    auto report = run_inequality_check(*kind, prob, cfg, cert);
    rw.results = check_report_json(report);
    if (!opt.csv_path.empty()) write_csv(opt.csv_path, n, report.rows);
    rw.emit();

    if (report.verdict == "PASS") return kExitPass;
    if (report.verdict == "FAIL") return kExitFail;
    return kExitInconclusive;
}

int run_exponent_fit(Options& opt) {
    ProblemFile pf = parse_problem(opt.problem_path);
    resolve_defaults(opt, pf);
    const int n = pf.F.var_count();
    Vec xbar = require_point(opt, n, "exponent-fit");
    Region region = region_from_options(opt, pf, n, xbar);

    ReportWriter rw;
    rw.command = "exponent-fit";
    rw.report_path = opt.report_path;
    rw.seed = opt.seed;
    rw.config = problem_config_json(opt, pf);
    rw.config["point"] = vec_json(xbar);
    rw.config["region"] = region_to_json(region);
    rw.config["samples"] = opt.samples;
    rw.config["seed"] = opt.seed;
    rw.config["cluster_tol"] = opt.cluster_tol;

    auto fit = empirical_exponent(pf.F, xbar, region, opt.samples, opt.seed, opt.cluster_tol);
    rw.results["ok"] = fit.ok;
    rw.results["theta_hat"] = fit.theta_hat;
    rw.results["intercept"] = fit.intercept;
    rw.results["residual_stddev"] = fit.residual_stddev;
    rw.results["usable"] = fit.usable;
    rw.results["sample_count"] = fit.sample_count;
    if (!fit.note.empty()) rw.results["note"] = fit.note;
    rw.emit();
    return fit.ok ? kExitPass : kExitInconclusive;
}

int run_flow(Options& opt) {
    ProblemFile pf = parse_problem(opt.problem_path);
    resolve_defaults(opt, pf);
    Vec x0 = require_point(opt, pf.F.var_count(), "flow");

    FlowOptions fopt;
    fopt.feas_tol = opt.tol_set ? opt.tol : 1e-6;
    fopt.max_iter = opt.max_iter;
    fopt.cluster_tol = opt.cluster_tol;

    ReportWriter rw;
    rw.command = "flow";
    rw.report_path = opt.report_path;
    rw.config = problem_config_json(opt, pf);
    rw.config["point"] = vec_json(x0);
    rw.config["feas_tol"] = fopt.feas_tol;
    rw.config["max_iter"] = fopt.max_iter;
    rw.config["cluster_tol"] = fopt.cluster_tol;

    auto traj = solve_feasibility_flow(pf.F, x0, fopt);
    rw.results = trajectory_json(traj);
    if (!opt.csv_path.empty()) write_flow_csv(opt.csv_path, pf.F.var_count(), traj);
    rw.emit();
    return traj.terminated == "SUCCESS" ? kExitPass : kExitInconclusive;
}

void add_common_output(CLI::App* cmd, Options& opt) {
    cmd->add_option("--report", opt.report_path, "write the JSON report to this path");
}

void add_problem_flag(CLI::App* cmd, Options& opt) {
    cmd->add_option("--problem", opt.problem_path, "problem JSON file")->required();
}

void add_region_flags(CLI::App* cmd, Options& opt) {
    cmd->add_option("--box", opt.box, "sampling box: lo hi (per coordinate)")
        ->expected(2);
    cmd->add_option("--ball", opt.ball, "sampling ball: c1 ... cn radius");
    cmd->add_option("--shell", opt.shell, "sampling shell: r1 r2 (origin centered)")
        ->expected(2);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"largest-eigenvalue nonsmooth analysis toolkit"};
    app.require_subcommand(1);
    Options opt;

    auto* eval_cmd = app.add_subcommand("eval", "evaluate f(x) and the top eigenspace");
    add_problem_flag(eval_cmd, opt);
    eval_cmd->add_option("--point", opt.point, "evaluation point")->required();
    eval_cmd->add_option("--cluster-tol", opt.cluster_tol, "eigenvalue cluster tolerance")
        ->check(CLI::PositiveNumber);
    add_common_output(eval_cmd, opt);

    auto* slope_cmd =
        app.add_subcommand("slope", "minimum-norm Clarke subgradient at a point");
    add_problem_flag(slope_cmd, opt);
    slope_cmd->add_option("--point", opt.point, "evaluation point")->required();
    slope_cmd->add_option("--cluster-tol", opt.cluster_tol, "eigenvalue cluster tolerance");
    add_common_output(slope_cmd, opt);

    auto* ddir_cmd = app.add_subcommand("ddir", "directional derivative of f at a point");
    add_problem_flag(ddir_cmd, opt);
    ddir_cmd->add_option("--point", opt.point, "evaluation point")->required();
    ddir_cmd->add_option("--dir", opt.dir, "direction")->required();
    ddir_cmd->add_option("--cluster-tol", opt.cluster_tol, "eigenvalue cluster tolerance");
    add_common_output(ddir_cmd, opt);

    auto* exp_cmd = app.add_subcommand("exponent", "exact exponent certificates");
    exp_cmd->add_option("--kind", opt.kind, "certificate kind")->required();
    exp_cmd->add_option("--n", opt.n, "variable count")->required();
    exp_cmd->add_option("--p", opt.p, "matrix order")->required();
    exp_cmd->add_option("--d", opt.d, "max entry degree")->required();
    exp_cmd->add_option("--q", opt.q, "second matrix order (separation/factorization)");
    add_common_output(exp_cmd, opt);

    auto* newton_cmd =
        app.add_subcommand("newton", "Newton polyhedra, faces at infinity, hypotheses");
    add_problem_flag(newton_cmd, opt);
    newton_cmd->add_option("--budget", opt.budget, "feasibility probe budget");
    newton_cmd->add_option("--seed", opt.seed, "probe seed");
    newton_cmd->add_option("--tol", opt.tol, "feasibility tolerance");
    add_common_output(newton_cmd, opt);

    auto* nd_cmd = app.add_subcommand("nondegen", "non-degeneracy-at-infinity scan");
    add_problem_flag(nd_cmd, opt);
    nd_cmd->add_option("--budget", opt.budget, "sample points per face");
    nd_cmd->add_option("--seed", opt.seed, "scan seed")
        ->capture_default_str();
    add_common_output(nd_cmd, opt);

    auto* check_cmd = app.add_subcommand("check", "empirical inequality verification");
    add_problem_flag(check_cmd, opt);
    check_cmd->add_option("--kind", opt.kind, "check kind")->required();
    check_cmd->add_option("--point", opt.point, "base point (gradient-local, eigenspace)");
    add_region_flags(check_cmd, opt);
    check_cmd->add_option("--samples", opt.samples, "sample count");
    auto* seed_opt = check_cmd->add_option("--seed", opt.seed, "sampling seed");
    auto* tol_opt = check_cmd->add_option("--tol", opt.tol, "feasibility tolerance");
    auto* ctol_opt =
        check_cmd->add_option("--cluster-tol", opt.cluster_tol, "eigenvalue cluster tolerance");
    check_cmd->add_option("--c-floor", opt.c_floor, "PASS floor for the constant");
    check_cmd->add_option("--oracle-box", opt.oracle_box,
                          "distance-oracle screening box: lo hi")
        ->expected(2);
    check_cmd->add_option("--oracle-grid-step", opt.oracle_grid_step,
                          "distance-oracle grid step");
    check_cmd->add_option("--oracle-samples", opt.oracle_samples,
                          "distance-oracle random screen size");
    check_cmd->add_option("--octaves", opt.octaves, "shell doublings (slope-at-infinity)");
    check_cmd->add_option("--csv", opt.csv_path, "write per-sample CSV to this path");
    add_common_output(check_cmd, opt);

    auto* fit_cmd = app.add_subcommand("exponent-fit", "empirical gradient exponent");
    add_problem_flag(fit_cmd, opt);
    fit_cmd->add_option("--point", opt.point, "base point")->required();
    add_region_flags(fit_cmd, opt);
    fit_cmd->add_option("--samples", opt.samples, "sample count");
    fit_cmd->add_option("--seed", opt.seed, "sampling seed");
    fit_cmd->add_option("--cluster-tol", opt.cluster_tol, "eigenvalue cluster tolerance");
    add_common_output(fit_cmd, opt);

    auto* flow_cmd = app.add_subcommand("flow", "subgradient feasibility flow");
    add_problem_flag(flow_cmd, opt);
    flow_cmd->add_option("--point", opt.point, "start point")->required();
    auto* ftol_opt = flow_cmd->add_option("--tol", opt.tol, "feasibility tolerance");
    flow_cmd->add_option("--max-iter", opt.max_iter, "iteration cap");
    flow_cmd->add_option("--cluster-tol", opt.cluster_tol, "eigenvalue cluster tolerance");
    flow_cmd->add_option("--csv", opt.csv_path, "write the iterate CSV to this path");
    add_common_output(flow_cmd, opt);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    opt.seed_set = seed_opt->count() > 0 || nd_cmd->count("--seed") > 0;
    opt.tol_set = tol_opt->count() > 0 || ftol_opt->count() > 0;
    opt.cluster_tol_set = ctol_opt->count() > 0;

    try {
        if (eval_cmd->parsed()) return run_eval(opt);
        if (slope_cmd->parsed()) return run_slope(opt);
        if (ddir_cmd->parsed()) return run_ddir(opt);
        if (exp_cmd->parsed()) return run_exponent(opt);
        if (newton_cmd->parsed()) return run_newton(opt);
        if (nd_cmd->parsed()) return run_nondegen(opt);
        if (check_cmd->parsed()) return run_check(opt);
        if (fit_cmd->parsed()) return run_exponent_fit(opt);
        if (flow_cmd->parsed()) return run_flow(opt);
    } catch (const parse_error& e) {
        std::cerr << "problem file error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const numeric_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
