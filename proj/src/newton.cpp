#include "lojeig/newton.hpp"

#include <algorithm>

#include "lojeig/errors.hpp"
#include "lojeig/simplex.hpp"

namespace lojeig {

namespace {

const Rational kZero(0);

Rational dot(const std::vector<Rational>& q, const ExponentVector& kappa) {
    Rational acc(0);
    for (std::size_t s = 0; s < q.size(); ++s) acc += q[s] * kappa[s];
    return acc;
}

bool is_origin(const ExponentVector& v) {
    return std::all_of(v.begin(), v.end(), [](int e) { return e == 0; });
}

std::vector<ExponentVector> sorted_unique(std::vector<ExponentVector> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

// Extreme points of a finite set: p is kept iff p is not a convex
// combination of the remaining points (exact LP).
std::vector<ExponentVector> extreme_points(const std::vector<ExponentVector>& pts) {
    std::vector<ExponentVector> out;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        std::vector<ExponentVector> others;
        others.reserve(pts.size() - 1);
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (j != i) others.push_back(pts[j]);
        if (!in_convex_hull(pts[i], others)) out.push_back(pts[i]);
    }
    return out;
}

} // namespace

bool NewtonPolyhedron::has_vertex(const ExponentVector& v) const {
    return std::binary_search(vertices.begin(), vertices.end(), v);
}

bool in_convex_hull(const ExponentVector& v, const std::vector<ExponentVector>& points) {
    if (points.empty()) return false;
    const std::size_t n = v.size();
    const std::size_t m = points.size();
    // lambda >= 0, sum lambda = 1, sum lambda * p_i = v
    std::vector<std::vector<Rational>> A(n + 1, std::vector<Rational>(m, kZero));
    std::vector<Rational> b(n + 1, kZero);
    for (std::size_t j = 0; j < m; ++j) {
        if (points[j].size() != n) throw input_error("in_convex_hull: dimension mismatch");
        A[0][j] = 1;
        for (std::size_t s = 0; s < n; ++s) A[s + 1][j] = points[j][s];
    }
    b[0] = 1;
    for (std::size_t s = 0; s < n; ++s) b[s + 1] = v[s];
    return phase1_feasible<Rational>(A, b, kZero).has_value();
}

NewtonPolyhedron build_polyhedron(int n, const std::set<ExponentVector>& support) {
    NewtonPolyhedron gamma;
    gamma.n = n;
    if (support.empty()) return gamma;

    std::vector<ExponentVector> pts;
    for (const auto& kappa : support) {
        if (static_cast<int>(kappa.size()) != n)
            throw input_error("build_polyhedron: exponent vector of wrong length");
        for (int e : kappa)
            if (e < 0) throw input_error("build_polyhedron: negative exponent");
        pts.push_back(kappa);
    }
    gamma.generators = sorted_unique(pts);
    pts.push_back(ExponentVector(n, 0));
    gamma.vertices = sorted_unique(extreme_points(sorted_unique(std::move(pts))));
    return gamma;
}

NewtonPolyhedron newton_polyhedron_of(const Polynomial& p) {
    return build_polyhedron(p.var_count(), p.support());
}

Face support_value_and_face(const NewtonPolyhedron& gamma, const std::vector<Rational>& q_in) {
    if (gamma.empty()) throw input_error("support_value_and_face: empty polyhedron");
    if (static_cast<int>(q_in.size()) != gamma.n)
        throw input_error("support_value_and_face: normal of wrong dimension");

    // mpq comparison assumes canonical form; normalize caller-built normals.
    std::vector<Rational> q = q_in;
    for (auto& qi : q) qi.canonicalize();

    Rational best = dot(q, gamma.vertices[0]);
    for (const auto& v : gamma.vertices) best = std::min(best, dot(q, v));

    Face face;
    face.witness_q = q;
    face.support_value = best;
    for (const auto& v : gamma.vertices)
        if (dot(q, v) == best) face.vertices.push_back(v);
    // The origin is extreme in the nonnegative orthant, so it lies in the
    // argmin hull iff it is an argmin vertex.
    face.at_infinity = std::none_of(face.vertices.begin(), face.vertices.end(), is_origin);
    return face;
}

std::vector<Face> enumerate_faces_at_infinity(const NewtonPolyhedron& gamma,
                                              int dim_cap, int vertex_cap) {
    if (gamma.empty()) return {};
    if (gamma.n > dim_cap)
        throw capacity_error("enumerate_faces_at_infinity: dimension " +
                             std::to_string(gamma.n) + " exceeds cap " +
                             std::to_string(dim_cap));
    if (static_cast<int>(gamma.vertices.size()) > vertex_cap)
        throw capacity_error("enumerate_faces_at_infinity: vertex count " +
                             std::to_string(gamma.vertices.size()) + " exceeds cap " +
                             std::to_string(vertex_cap));

    std::vector<ExponentVector> nonzero;
    for (const auto& v : gamma.vertices)
        if (!is_origin(v)) nonzero.push_back(v);

    const std::size_t n = gamma.n;
    const std::size_t k = nonzero.size();
    std::vector<Face> faces;

    // Subset scan: S is (the vertex set of) a face iff some q attains its
    // minimum over the vertices exactly on S; the margin >= 1 is a scaling
    // normalization, so the LP witness is exact.
    for (std::size_t mask = 1; mask < (std::size_t(1) << k); ++mask) {
        std::vector<ExponentVector> S, rest;
        for (std::size_t i = 0; i < k; ++i)
            ((mask >> i) & 1 ? S : rest).push_back(nonzero[i]);
        rest.push_back(ExponentVector(gamma.n, 0)); // origin is never on the face

        // Variables: q+ (n), q- (n), d+ , d-, slack per strict row.
        const std::size_t nv = 2 * n + 2 + rest.size();
        std::vector<std::vector<Rational>> A;
        std::vector<Rational> b;
        auto make_row = [&](const ExponentVector& kappa) {
            std::vector<Rational> row(nv, kZero);
            for (std::size_t s = 0; s < n; ++s) {
                row[s] = kappa[s];
                row[n + s] = -kappa[s];
            }
            row[2 * n] = -1;
            row[2 * n + 1] = 1;
            return row;
        };
        for (const auto& kappa : S) {
            A.push_back(make_row(kappa));
            b.push_back(kZero);
        }
        for (std::size_t r = 0; r < rest.size(); ++r) {
            auto row = make_row(rest[r]);
            row[2 * n + 2 + r] = -1;
            A.push_back(std::move(row));
            b.push_back(Rational(1));
        }

        auto sol = phase1_feasible<Rational>(A, b, kZero);
        if (!sol) continue;

        Face face;
        face.vertices = S; // already sorted: subsets of a sorted list keep order
        face.witness_q.resize(n);
        for (std::size_t s = 0; s < n; ++s) face.witness_q[s] = (*sol)[s] - (*sol)[n + s];
        face.support_value = (*sol)[2 * n] - (*sol)[2 * n + 1];
        face.at_infinity = true;
        faces.push_back(std::move(face));
    }

    std::sort(faces.begin(), faces.end(), [](const Face& a, const Face& b) {
        if (a.vertices.size() != b.vertices.size())
            return a.vertices.size() < b.vertices.size();
        return a.vertices < b.vertices;
    });
    return faces;
}

bool is_convenient(const NewtonPolyhedron& gamma) {
    if (gamma.empty()) return false;
    for (int s = 0; s < gamma.n; ++s) {
        bool touched = false;
        for (const auto& v : gamma.vertices) {
            if (v[s] <= 0) continue;
            bool axis = true;
            for (int t = 0; t < gamma.n; ++t)
                if (t != s && v[t] != 0) axis = false;
            if (axis) {
                touched = true;
                break;
            }
        }
        if (!touched) return false;
    }
    return gamma.n > 0;
}

NewtonPolyhedron minkowski_sum(const std::vector<NewtonPolyhedron>& summands) {
    if (summands.empty()) throw input_error("minkowski_sum: no summands");
    const int n = summands[0].n;
    for (const auto& g : summands)
        if (g.n != n) throw input_error("minkowski_sum: dimension mismatch");
    for (const auto& g : summands) {
        if (g.empty()) {
            NewtonPolyhedron out;
            out.n = n;
            return out;
        }
    }

    std::vector<ExponentVector> acc = summands[0].vertices;
    for (std::size_t i = 1; i < summands.size(); ++i) {
        std::vector<ExponentVector> next;
        for (const auto& a : acc) {
            for (const auto& b : summands[i].vertices) {
                ExponentVector s(n);
                for (int t = 0; t < n; ++t) s[t] = a[t] + b[t];
                next.push_back(std::move(s));
            }
        }
        acc = extreme_points(sorted_unique(std::move(next)));
    }

    NewtonPolyhedron out;
    out.n = n;
    out.vertices = sorted_unique(std::move(acc));
    out.generators = out.vertices;
    return out;
}

FaceDecomposition decompose_face(const Face& face,
                                 const std::vector<NewtonPolyhedron>& summands) {
    if (face.witness_q.empty())
        throw input_error("decompose_face: face carries no witness normal");
    FaceDecomposition dec;
    dec.parts.reserve(summands.size());
    for (const auto& g : summands) dec.parts.push_back(support_value_and_face(g, face.witness_q));
    return dec;
}

bool polyhedron_contains(const NewtonPolyhedron& outer, const NewtonPolyhedron& inner) {
    if (inner.empty()) return true;
    if (outer.empty()) return false;
    if (outer.n != inner.n) throw input_error("polyhedron_contains: dimension mismatch");
    for (const auto& v : inner.vertices)
        if (!in_convex_hull(v, outer.vertices)) return false;
    return true;
}

bool is_face_of(const NewtonPolyhedron& gamma, const Face& face) {
    if (gamma.empty() || face.witness_q.empty()) return false;
    if (static_cast<int>(face.witness_q.size()) != gamma.n) return false;
    Face rebuilt = support_value_and_face(gamma, face.witness_q);
    return rebuilt.vertices == face.vertices && rebuilt.support_value == face.support_value;
}

Polynomial principal_part(const Polynomial& p, const Face& delta) {
    NewtonPolyhedron gamma = newton_polyhedron_of(p);
    if (!is_face_of(gamma, delta))
        throw input_error("principal_part: not a face of the Newton polyhedron");
    Polynomial out(p.var_count());
    for (const auto& [kappa, coeff] : p.terms())
        if (dot(delta.witness_q, kappa) == delta.support_value) out.add_term(kappa, coeff);
    return out;
}

} // namespace lojeig
