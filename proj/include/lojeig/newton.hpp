#ifndef LOJEIG_NEWTON_HPP
#define LOJEIG_NEWTON_HPP

#include <optional>
#include <set>
#include <vector>

#include "lojeig/polynomial.hpp"
#include "lojeig/rational.hpp"

namespace lojeig {

/// Newton polyhedron at infinity: conv(generators ∪ {0}) in the nonnegative
/// orthant, stored by its exact vertex set. Empty iff the generator set is
/// empty (the convention for the zero polynomial).
struct NewtonPolyhedron {
    int n = 0;
    std::vector<ExponentVector> vertices;   // sorted, unique; holds the origin unless empty
    std::vector<ExponentVector> generators; // the defining support set

    bool empty() const { return vertices.empty(); }
    bool has_vertex(const ExponentVector& v) const;
};

/// A face Delta(q, Gamma), canonicalized by its vertex subset; one witness
/// normal is recorded. at_infinity means the origin is not on the face.
struct Face {
    std::vector<ExponentVector> vertices; // sorted subset of the polyhedron's vertices
    std::vector<Rational> witness_q;
    Rational support_value;               // d(q, Gamma)
    bool at_infinity = false;
};

/// The unique family of summand faces whose Minkowski sum is a given face
/// of a Minkowski-sum polyhedron.
struct FaceDecomposition {
    std::vector<Face> parts; // one per summand, in summand order
};

NewtonPolyhedron build_polyhedron(int n, const std::set<ExponentVector>& support);

NewtonPolyhedron newton_polyhedron_of(const Polynomial& p);

// d(q, Gamma) together with the argmin face; error on the empty polyhedron.
Face support_value_and_face(const NewtonPolyhedron& gamma, const std::vector<Rational>& q);

// All faces of Gamma_inf, each certified by an exact LP witness normal.
// Enumeration is exponential in the vertex count, hence the hard caps.
std::vector<Face> enumerate_faces_at_infinity(const NewtonPolyhedron& gamma,
                                              int dim_cap = 6, int vertex_cap = 20);

// True iff some vertex is a positive multiple of every coordinate axis vector.
bool is_convenient(const NewtonPolyhedron& gamma);

NewtonPolyhedron minkowski_sum(const std::vector<NewtonPolyhedron>& summands);

FaceDecomposition decompose_face(const Face& face,
                                 const std::vector<NewtonPolyhedron>& summands);

// Exact membership: every vertex of inner lies in conv(vertices of outer).
bool polyhedron_contains(const NewtonPolyhedron& outer, const NewtonPolyhedron& inner);

// Re-derives the face from its witness and compares; used to validate inputs.
bool is_face_of(const NewtonPolyhedron& gamma, const Face& face);

// f_Delta: the terms of p supported on the face. Delta must be a face of Gamma(p).
Polynomial principal_part(const Polynomial& p, const Face& delta);

// Exact test for v in conv(points).
bool in_convex_hull(const ExponentVector& v, const std::vector<ExponentVector>& points);

} // namespace lojeig

#endif
