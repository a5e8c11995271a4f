#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "lojeig/errors.hpp"
#include "lojeig/newton.hpp"
#include "test_support.hpp"

using namespace lojeig;
using lojeig::testing::poly;

namespace {

std::vector<Rational> rat_vec(std::initializer_list<long> values) {
    std::vector<Rational> q;
    for (long v : values) q.emplace_back(v);
    return q;
}

std::vector<Rational> random_rational_q(int n, std::mt19937_64& rng) {
    std::vector<Rational> q;
    for (int s = 0; s < n; ++s) {
        long num = static_cast<long>(rng() % 21) - 10;
        long den = 1 + static_cast<long>(rng() % 7);
        q.push_back(lojeig::testing::rat(num, den));
    }
    return q;
}

// Hand-labeled convenience corpus: polynomial, expected label.
std::vector<std::pair<Polynomial, bool>> convenience_corpus() {
    return {
        {poly(2).t({2, 0}, "1").t({0, 3}, "1"), true},          // x1^2 + x2^3
        {poly(2).t({2, 0}, "1").t({1, 1}, "1"), false},         // x1^2 + x1 x2
        {poly(2).t({0, 0}, "5"), false},                        // constant
        {poly(2).t({1, 1}, "1"), false},                        // x1 x2
        {poly(2).t({2, 0}, "1").t({0, 2}, "1").t({0, 0}, "-1"), true},
        {poly(2).t({1, 0}, "1").t({0, 1}, "-2"), true},         // linear in both
        {poly(2).t({1, 0}, "1"), false},                        // misses the x2 axis
        {poly(1).t({3}, "2"), true},
        {poly(1).t({0}, "1"), false},
        {poly(3).t({1, 0, 0}, "1").t({0, 2, 0}, "1").t({0, 0, 1}, "1"), true},
        {poly(3).t({1, 0, 0}, "1").t({0, 2, 0}, "1").t({0, 1, 1}, "1"), false},
        {poly(2).t({2, 0}, "1").t({1, 1}, "-2").t({0, 2}, "1"), true}, // (x1-x2)^2
    };
}

// Ten-polytope corpus for the additivity / Lemma-equivalence properties.
std::vector<NewtonPolyhedron> polytope_corpus() {
    std::vector<std::set<ExponentVector>> supports = {
        {{2, 0}, {0, 2}},
        {{2, 0}, {1, 1}, {0, 2}},
        {{3, 0}, {0, 1}},
        {{1, 0}, {0, 1}},
        {{4, 0}, {2, 1}, {0, 3}},
        {{5, 0}, {0, 5}},
        {{2, 0}, {0, 2}, {1, 0}, {0, 1}},
        {{1, 0}, {0, 4}, {2, 2}},
        {{3, 0}, {0, 3}, {1, 1}},
        {{2, 0}, {0, 1}, {3, 3}},
    };
    std::vector<NewtonPolyhedron> out;
    for (const auto& s : supports) out.push_back(build_polyhedron(2, s));
    return out;
}

} // namespace

TEST_CASE("build_polyhedron keeps only extreme points") {
    auto gamma = build_polyhedron(2, {{2, 0}, {1, 1}, {1, 0}});
    CHECK(gamma.vertices == std::vector<ExponentVector>{{0, 0}, {1, 1}, {2, 0}});

    auto empty = build_polyhedron(2, {});
    CHECK(empty.empty());

    auto two = build_polyhedron(2, {{3, 0}, {0, 2}});
    CHECK(two.vertices == std::vector<ExponentVector>{{0, 0}, {0, 2}, {3, 0}});
}

TEST_CASE("build_polyhedron is idempotent on its vertex set") {
    for (const auto& gamma : polytope_corpus()) {
        std::set<ExponentVector> verts(gamma.vertices.begin(), gamma.vertices.end());
        auto again = build_polyhedron(gamma.n, verts);
        CHECK(again.vertices == gamma.vertices);
    }
}

TEST_CASE("support_value_and_face") {
    auto gamma = build_polyhedron(2, {{2, 0}, {0, 2}});

    Face edge = support_value_and_face(gamma, rat_vec({-1, -1}));
    CHECK(edge.support_value == Rational(-2));
    CHECK(edge.vertices == std::vector<ExponentVector>{{0, 2}, {2, 0}});
    CHECK(edge.at_infinity);

    Face origin = support_value_and_face(gamma, rat_vec({1, 1}));
    CHECK(origin.support_value == Rational(0));
    CHECK(origin.vertices == std::vector<ExponentVector>{{0, 0}});
    CHECK_FALSE(origin.at_infinity);

    Face whole = support_value_and_face(gamma, rat_vec({0, 0}));
    CHECK(whole.support_value == Rational(0));
    CHECK(whole.vertices == gamma.vertices);
    CHECK_FALSE(whole.at_infinity);

    NewtonPolyhedron empty;
    empty.n = 2;
    CHECK_THROWS_AS(support_value_and_face(empty, rat_vec({1, 0})), input_error);
}

TEST_CASE("enumerate_faces_at_infinity on the triangle") {
    auto gamma = build_polyhedron(2, {{2, 0}, {0, 2}});
    auto faces = enumerate_faces_at_infinity(gamma);
    REQUIRE(faces.size() == 3); // two vertices and the edge
    CHECK(faces[0].vertices == std::vector<ExponentVector>{{0, 2}});
    CHECK(faces[1].vertices == std::vector<ExponentVector>{{2, 0}});
    CHECK(faces[2].vertices == std::vector<ExponentVector>{{0, 2}, {2, 0}});
    for (const auto& f : faces) {
        CHECK(f.at_infinity);
        CHECK(is_face_of(gamma, f));
        CHECK(f.support_value < 0);
    }
}

TEST_CASE("enumerate_faces_at_infinity in dimension one and on empty input") {
    auto seg = build_polyhedron(1, {{2}});
    auto faces = enumerate_faces_at_infinity(seg);
    REQUIRE(faces.size() == 1);
    CHECK(faces[0].vertices == std::vector<ExponentVector>{{2}});

    NewtonPolyhedron empty;
    empty.n = 1;
    CHECK(enumerate_faces_at_infinity(empty).empty());
}

TEST_CASE("face enumeration caps") {
    NewtonPolyhedron gamma;
    gamma.n = 7;
    gamma.vertices = {ExponentVector(7, 0)};
    CHECK_THROWS_AS(enumerate_faces_at_infinity(gamma), capacity_error);
}

TEST_CASE("is_convenient") {
    CHECK(is_convenient(newton_polyhedron_of(poly(2).t({2, 0}, "1").t({0, 3}, "1"))));
    CHECK_FALSE(is_convenient(newton_polyhedron_of(poly(2).t({2, 0}, "1").t({1, 1}, "1"))));
    CHECK_FALSE(is_convenient(newton_polyhedron_of(poly(2).t({0, 0}, "5"))));

    for (const auto& [p, expected] : convenience_corpus())
        CHECK(is_convenient(newton_polyhedron_of(p)) == expected);
}

TEST_CASE("minkowski_sum basic identities") {
    auto a = build_polyhedron(2, {{2, 0}});
    auto b = build_polyhedron(2, {{0, 2}});
    auto sum = minkowski_sum({a, b});
    CHECK(sum.vertices == std::vector<ExponentVector>{{0, 0}, {0, 2}, {2, 0}, {2, 2}});

    auto origin_only = build_polyhedron(2, {{0, 0}});
    auto same = minkowski_sum({a, origin_only});
    CHECK(same.vertices == a.vertices);
}

TEST_CASE("support values add over Minkowski sums") {
    std::mt19937_64 rng(99);
    auto corpus = polytope_corpus();
    for (int trial = 0; trial < 100; ++trial) {
        const auto& g1 = corpus[rng() % corpus.size()];
        const auto& g2 = corpus[rng() % corpus.size()];
        auto q = random_rational_q(2, rng);
        auto sum = minkowski_sum({g1, g2});
        Face fs = support_value_and_face(sum, q);
        Face f1 = support_value_and_face(g1, q);
        Face f2 = support_value_and_face(g2, q);
        CHECK(fs.support_value == f1.support_value + f2.support_value);

        // Face additivity: the sum face's vertex hull equals the Minkowski
        // sum of the summand faces.
        std::set<ExponentVector> pairwise;
        for (const auto& u : f1.vertices)
            for (const auto& v : f2.vertices) {
                ExponentVector w(2);
                for (int s = 0; s < 2; ++s) w[s] = u[s] + v[s];
                pairwise.insert(w);
            }
        auto face_poly = build_polyhedron(2, std::set<ExponentVector>(fs.vertices.begin(),
                                                                      fs.vertices.end()));
        auto part_poly = build_polyhedron(2, pairwise);
        CHECK(polyhedron_contains(part_poly, face_poly));
        for (const auto& v : fs.vertices) CHECK(in_convex_hull(v, part_poly.vertices));
    }
}

TEST_CASE("Lemma-style three-way equivalence on convenient polyhedra") {
    std::mt19937_64 rng(123);
    auto corpus = polytope_corpus(); // all corpus supports touch both axes
    for (const auto& gamma : corpus) REQUIRE(is_convenient(gamma));
    for (int trial = 0; trial < 100; ++trial) {
        const auto& gamma = corpus[rng() % corpus.size()];
        auto q = random_rational_q(2, rng);
        Face face = support_value_and_face(gamma, q);
        bool d_negative = face.support_value < 0;
        bool q_negative = false;
        for (const auto& qi : q) q_negative = q_negative || qi < 0;
        CHECK(face.at_infinity == d_negative);
        CHECK(d_negative == q_negative);
        CHECK(face.at_infinity == q_negative);
    }
}

TEST_CASE("decompose_face") {
    auto tri = build_polyhedron(2, {{2, 0}, {0, 2}});
    auto sum = minkowski_sum({tri, tri});
    Face edge = support_value_and_face(sum, rat_vec({-1, -1}));
    CHECK(edge.vertices == std::vector<ExponentVector>{{0, 4}, {4, 0}});

    auto dec = decompose_face(edge, {tri, tri});
    REQUIRE(dec.parts.size() == 2);
    for (const auto& part : dec.parts)
        CHECK(part.vertices == std::vector<ExponentVector>{{0, 2}, {2, 0}});

    Face whole = support_value_and_face(sum, rat_vec({0, 0}));
    auto dec0 = decompose_face(whole, {tri, tri});
    for (const auto& part : dec0.parts) CHECK(part.vertices == tri.vertices);

    Face single = support_value_and_face(tri, rat_vec({-1, 0}));
    auto dec1 = decompose_face(single, {tri});
    REQUIRE(dec1.parts.size() == 1);
    CHECK(dec1.parts[0].vertices == single.vertices);

    Face no_witness;
    CHECK_THROWS_AS(decompose_face(no_witness, {tri}), input_error);
}

TEST_CASE("polyhedron_contains") {
    auto inner = newton_polyhedron_of(poly(2).t({1, 1}, "1"));
    auto outer = newton_polyhedron_of(poly(2).t({2, 0}, "1").t({0, 2}, "1"));
    CHECK(polyhedron_contains(outer, inner));

    auto cubic = newton_polyhedron_of(poly(1).t({3}, "1"));
    auto quad = newton_polyhedron_of(poly(1).t({2}, "1"));
    CHECK_FALSE(polyhedron_contains(quad, cubic));
    CHECK(polyhedron_contains(cubic, quad));
    CHECK(polyhedron_contains(outer, outer));
}

TEST_CASE("principal_part") {
    Polynomial p = poly(2).t({2, 0}, "1").t({1, 1}, "1").t({1, 0}, "1");
    auto gamma = newton_polyhedron_of(p);

    Face f1 = support_value_and_face(gamma, rat_vec({-1, 0}));
    CHECK(f1.support_value == Rational(-2));
    Polynomial p1 = principal_part(p, f1);
    CHECK(p1 == Polynomial(poly(2).t({2, 0}, "1")));

    Face f2 = support_value_and_face(gamma, rat_vec({-1, -1}));
    Polynomial p2 = principal_part(p, f2);
    CHECK(p2 == Polynomial(poly(2).t({2, 0}, "1").t({1, 1}, "1")));

    Face whole = support_value_and_face(gamma, rat_vec({0, 0}));
    CHECK(principal_part(p, whole) == p);

    // A face of a different polyhedron is rejected.
    auto other = build_polyhedron(2, {{5, 0}});
    Face alien = support_value_and_face(other, rat_vec({-1, 0}));
    CHECK_THROWS_AS(principal_part(p, alien), input_error);
}

TEST_CASE("principal part support is the support intersected with the face") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 20; ++trial) {
        Polynomial p = lojeig::testing::random_polynomial(2, 4, rng, 6);
        if (p.is_zero()) continue;
        auto gamma = newton_polyhedron_of(p);
        auto q = random_rational_q(2, rng);
        Face face = support_value_and_face(gamma, q);
        Polynomial fp = principal_part(p, face);
        for (const auto& kappa : fp.support()) {
            Rational val(0);
            for (int s = 0; s < 2; ++s) val += q[s] * kappa[s];
            CHECK(val == face.support_value);
        }
        for (const auto& kappa : p.support()) {
            Rational val(0);
            for (int s = 0; s < 2; ++s) val += q[s] * kappa[s];
            bool on_face = (val == face.support_value);
            CHECK(on_face == (fp.support().count(kappa) > 0));
        }
    }
}

TEST_CASE("restrict_to_axes commutes with principal parts on axis faces") {
    // Gamma(f) ∩ R^J = Gamma(f|_J) for convenient f.
    Polynomial p = poly(2).t({2, 0}, "1").t({1, 1}, "1").t({0, 3}, "1");
    Polynomial r = p.restrict_to_axes({1});
    auto gamma = newton_polyhedron_of(p);
    auto gamma_r = newton_polyhedron_of(r);
    // the x2-axis face of Gamma(p) has the same nonzero vertices as Gamma(r)
    Face axis = support_value_and_face(gamma, rat_vec({5, 0}));
    std::vector<ExponentVector> expect = {{0, 0}, {0, 3}};
    CHECK(axis.vertices == expect);
    CHECK(gamma_r.vertices == expect);
}
