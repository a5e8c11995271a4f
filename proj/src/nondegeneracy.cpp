#include "lojeig/nondegeneracy.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "lojeig/errors.hpp"
#include "lojeig/simplex.hpp"

namespace lojeig {

namespace {

double trace_product(const Mat& omega, const Mat& A) {
    double s = 0.0;
    for (int i = 0; i < omega.rows(); ++i)
        for (int j = 0; j < omega.cols(); ++j) s += omega(i, j) * A(i, j);
    return s;
}

double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// All coordinates nonzero, cycling through the 2^n sign orthants, with
// log-uniform magnitudes in [1e-2, 1e2]. Three strata: the unit orthant
// corners first (they catch symmetric vanishing loci such as diagonals),
// then diagonal rays with one shared magnitude, then independent draws.
Vec torus_point(int n, std::size_t point_index, std::mt19937_64& rng) {
    Vec x(n);
    const double lo = std::log(1e-2), hi = std::log(1e2);
    const std::size_t orthants = std::size_t(1) << n;

    double shared = 1.0;
    bool diagonal = false;
    if (point_index < orthants) {
        diagonal = true; // unit corner
    } else if (point_index % 3 == 2) {
        diagonal = true;
        shared = std::exp(lo + uniform01(rng) * (hi - lo));
    }
    for (int s = 0; s < n; ++s) {
        double mag = diagonal ? shared : std::exp(lo + uniform01(rng) * (hi - lo));
        bool negative = (point_index >> s) & 1;
        x[s] = negative ? -mag : mag;
    }
    return x;
}

} // namespace

MatrixNewtonData gamma_of_matrix(const SymPolyMatrix& F) {
    MatrixNewtonData data;
    const int p = F.order();
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            if (F.entry(i, j).is_zero()) continue;
            data.summand_ij.emplace_back(i, j);
            data.summands.push_back(newton_polyhedron_of(F.entry(i, j)));
        }
    }
    if (data.summands.empty()) {
        data.gamma.n = F.var_count();
        return data;
    }
    data.gamma = minkowski_sum(data.summands);
    return data;
}

FaceMatrix principal_matrix(const SymPolyMatrix& F, const Face& delta) {
    MatrixNewtonData data = gamma_of_matrix(F);
    if (!is_face_of(data.gamma, delta))
        throw input_error("principal_matrix: not a face of Gamma(F)");

    FaceMatrix fm{delta, data.summand_ij, decompose_face(delta, data.summands),
                  SymPolyMatrix(F.var_count(), F.order())};
    for (std::size_t k = 0; k < data.summand_ij.size(); ++k) {
        auto [i, j] = data.summand_ij[k];
        if (i > j) continue; // (j, i) duplicates the same entry face
        fm.matrix.set_entry(i, j, principal_part(F.entry(i, j), fm.decomposition.parts[k]));
    }
    return fm;
}

std::optional<DegeneracyWitness> witness_search_at_point(const FaceMatrix& fm, const Vec& x) {
    const int n = fm.matrix.var_count();
    const int p = fm.matrix.order();
    if (static_cast<int>(x.size()) != n)
        throw input_error("witness_search_at_point: point dimension mismatch");
    for (double xi : x)
        if (xi == 0.0)
            throw input_error("witness_search_at_point: point must avoid coordinate hyperplanes");

    Mat value = fm.matrix.eval(x);
    std::vector<Mat> derivs;
    derivs.reserve(n);
    for (int s = 0; s < n; ++s) derivs.push_back(fm.matrix.eval_partial(s, x));
    if (!value.all_finite())
        throw numeric_error("witness_search_at_point: non-finite principal-part values");

    // Variables: omega_ii (p, >= 0), then omega_ij (i<j) split into +/-.
    const int off = p * (p - 1) / 2;
    const int nv = p + 2 * off;
    auto row_of = [&](const Mat& A) {
        std::vector<double> row(nv, 0.0);
        for (int i = 0; i < p; ++i) row[i] = A(i, i);
        int k = 0;
        for (int i = 0; i < p; ++i) {
            for (int j = i + 1; j < p; ++j, ++k) {
                row[p + 2 * k] = 2.0 * A(i, j);
                row[p + 2 * k + 1] = -2.0 * A(i, j);
            }
        }
        return row;
    };

    std::vector<std::vector<double>> A;
    std::vector<double> b;
    A.emplace_back(nv, 0.0); // tr(Omega) = 1
    for (int i = 0; i < p; ++i) A.back()[i] = 1.0;
    b.push_back(1.0);
    for (int s = 0; s < n; ++s) {
        A.push_back(row_of(derivs[s]));
        b.push_back(0.0);
    }
    A.push_back(row_of(value));
    b.push_back(0.0);

    // Scale rows to unit max magnitude; feasibility is scale invariant and the
    // simplex tolerance is absolute.
    for (std::size_t r = 0; r < A.size(); ++r) {
        double scale = std::abs(b[r]);
        for (double v : A[r]) scale = std::max(scale, std::abs(v));
        if (scale > 0) {
            for (double& v : A[r]) v /= scale;
            b[r] /= scale;
        }
    }

    auto sol = phase1_feasible<double>(A, b, 1e-10);
    if (!sol) return std::nullopt;

    DegeneracyWitness w;
    w.face = fm.face;
    w.x = x;
    w.omega = Mat(p, p);
    for (int i = 0; i < p; ++i) w.omega(i, i) = (*sol)[i];
    int k = 0;
    for (int i = 0; i < p; ++i)
        for (int j = i + 1; j < p; ++j, ++k)
            w.omega(i, j) = w.omega(j, i) = (*sol)[p + 2 * k] - (*sol)[p + 2 * k + 1];

    // Independent re-verification with freshly evaluated traces.
    w.min_diag = 0.0;
    double tr = 0.0;
    for (int i = 0; i < p; ++i) {
        w.min_diag = std::min(w.min_diag, w.omega(i, i));
        tr += w.omega(i, i);
    }
    w.trace_dev = std::abs(tr - 1.0);
    w.max_deriv = 0.0;
    for (int s = 0; s < n; ++s)
        w.max_deriv = std::max(w.max_deriv,
                               std::abs(trace_product(w.omega, fm.matrix.eval_partial(s, x))));
    w.value_dev = std::abs(trace_product(w.omega, fm.matrix.eval(x)));

    if (w.min_diag < -1e-9 || w.trace_dev > 1e-9 || w.max_deriv > 1e-9 || w.value_dev > 1e-9)
        return std::nullopt; // candidate failed independent re-verification
    return w;
}

NondegeneracyScanReport nondegeneracy_scan(const SymPolyMatrix& F, int budget,
                                           std::uint64_t seed) {
    if (budget < 1) throw input_error("nondegeneracy_scan: budget must be >= 1");
    NondegeneracyScanReport report;
    report.budget = budget;
    report.seed = seed;

    MatrixNewtonData data = gamma_of_matrix(F);
    if (data.gamma.empty()) return report; // zero matrix: no faces at infinity

    std::mt19937_64 rng(seed);
    const int n = F.var_count();
    for (const Face& face : enumerate_faces_at_infinity(data.gamma)) {
        FaceMatrix fm{face, data.summand_ij, decompose_face(face, data.summands),
                      SymPolyMatrix(n, F.order())};
        for (std::size_t k = 0; k < data.summand_ij.size(); ++k) {
            auto [i, j] = data.summand_ij[k];
            if (i > j) continue;
            fm.matrix.set_entry(i, j,
                                principal_part(F.entry(i, j), fm.decomposition.parts[k]));
        }

        FaceScanResult scan;
        scan.face = face;
        for (int t = 0; t < budget; ++t) {
            Vec x = torus_point(n, static_cast<std::size_t>(t), rng);
            ++scan.points_tried;
            auto w = witness_search_at_point(fm, x);
            if (w) {
                scan.degenerate = true;
                scan.witness = std::move(w);
                break;
            }
        }
        report.degenerate = report.degenerate || scan.degenerate;
        report.faces.push_back(std::move(scan));
    }
    return report;
}

bool scalar_witness_at_point(const Polynomial& f_delta, const Vec& x, double tol) {
    if (std::abs(f_delta.eval(x)) > tol) return false;
    for (double g : f_delta.gradient(x))
        if (std::abs(g) > tol) return false;
    return true;
}

std::optional<Vec> diagonal_witness_at_point(const std::vector<Polynomial>& diag_parts,
                                             const Vec& x, double tol) {
    const int p = static_cast<int>(diag_parts.size());
    if (p < 1) throw input_error("diagonal_witness_at_point: empty diagonal");
    const int n = diag_parts[0].var_count();

    std::vector<std::vector<double>> A;
    std::vector<double> b;
    A.emplace_back(p, 1.0);
    b.push_back(1.0);
    for (int s = 0; s < n; ++s) {
        std::vector<double> row(p);
        for (int i = 0; i < p; ++i) row[i] = diag_parts[i].partial(s).eval(x);
        A.push_back(std::move(row));
        b.push_back(0.0);
    }
    std::vector<double> vrow(p);
    for (int i = 0; i < p; ++i) vrow[i] = diag_parts[i].eval(x);
    A.push_back(std::move(vrow));
    b.push_back(0.0);

    for (std::size_t r = 0; r < A.size(); ++r) {
        double scale = std::abs(b[r]);
        for (double v : A[r]) scale = std::max(scale, std::abs(v));
        if (scale > 0) {
            for (double& v : A[r]) v /= scale;
            b[r] /= scale;
        }
    }
    return phase1_feasible<double>(A, b, tol);
}

Theorem13Report theorem13_preconditions(const SymPolyMatrix& F, int probe_budget,
                                        std::uint64_t seed, double feas_tol) {
    Theorem13Report rep;
    rep.probe_budget = probe_budget;
    const int p = F.order();
    const int n = F.var_count();

    std::vector<NewtonPolyhedron> diag(p);
    for (int i = 0; i < p; ++i) {
        diag[i] = newton_polyhedron_of(F.entry(i, i));
        if (!is_convenient(diag[i])) rep.inconvenient_indices.push_back(i);
    }
    rep.all_diagonal_convenient = rep.inconvenient_indices.empty();

    rep.containment_ok = true;
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) {
            if (i == j) continue;
            if (!polyhedron_contains(diag[i], newton_polyhedron_of(F.entry(i, j)))) {
                rep.containment_ok = false;
                rep.containment_violations.emplace_back(i, j);
            }
        }
    }

    // Feasibility probe: origin and axis points first, then a random box.
    std::vector<Vec> candidates;
    candidates.push_back(Vec(n, 0.0));
    for (int s = 0; s < n; ++s) {
        for (double mag : {1.0, -1.0, 0.5, -0.5, 2.0, -2.0}) {
            Vec x(n, 0.0);
            x[s] = mag;
            candidates.push_back(std::move(x));
        }
    }
    std::mt19937_64 rng(seed);
    while (static_cast<int>(candidates.size()) < probe_budget) {
        Vec x(n);
        for (int s = 0; s < n; ++s) x[s] = -10.0 + 20.0 * uniform01(rng);
        candidates.push_back(std::move(x));
    }
    for (const auto& x : candidates) {
        if (largest_eigenvalue(F, x).first <= feas_tol) {
            rep.feasible_point_found = true;
            rep.feasible_point = x;
            break;
        }
    }
    return rep;
}

} // namespace lojeig
