#ifndef LOJEIG_SAMPLING_HPP
#define LOJEIG_SAMPLING_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lojeig/errors.hpp"
#include "lojeig/linalg.hpp"

namespace lojeig {

// Raised by the distance oracle when no feasible sample exists in the cloud;
// this signals "no S_F sample found", never "S_F is empty".
class empty_cloud_error : public numeric_error {
public:
    explicit empty_cloud_error(const std::string& msg) : numeric_error(msg) {}
};

/// Sampling region: a coordinate box [lo, hi]^n, a ball, or an
/// origin-centered shell r1 <= ||x|| <= r2.
struct Region {
    enum class Kind { Box, Ball, Shell };
    Kind kind = Kind::Box;
    int dim = 1;
    double lo = -1.0, hi = 1.0; // box
    Vec center;                 // ball
    double radius = 0.0;        // ball
    double r1 = 0.0, r2 = 0.0;  // shell

    static Region box(int dim, double lo, double hi);
    static Region ball(Vec center, double radius);
    static Region shell(int dim, double r1, double r2);

    bool contains(const Vec& x, double tol = 1e-9) const;
    // Largest absolute coordinate value any point of the region can have.
    double outer_bound() const;
    std::string describe() const;
};

// All randomness is derived from mt19937_64 with fixed mappings, so clouds
// are reproducible bit-for-bit for a given seed on a given platform.
double rng_uniform01(std::mt19937_64& rng);
double rng_gaussian(std::mt19937_64& rng);

struct SampleCloud {
    std::vector<Vec> points;
    Region region;
    std::uint64_t seed = 0;
};

// Uniform in box/ball, log-uniform radius with uniform direction in a shell.
SampleCloud sample_region(const Region& region, int count, std::uint64_t seed);

/// Sampled stand-in for a feasible set {feasible(x) <= feas_tol}: points kept
/// from a screening pass, with the screening resolution recorded so distance
/// answers carry their one-sided error.
struct FeasibleCloud {
    std::vector<Vec> points;
    double feas_tol = 0.0;
    double resolution = 0.0; // grid step, or typical spacing for random screens
    int screened = 0;        // candidate count examined
};

using FeasibilityFn = std::function<double(const Vec&)>; // value, feasible iff <= tol

// Full mesh of step-spaced points over a box (dimension-capped: the mesh is
// exponential in n).
FeasibleCloud feasible_cloud_grid(const FeasibilityFn& value, const Region& box,
                                  double step, double feas_tol);

FeasibleCloud feasible_cloud_random(const FeasibilityFn& value, const Region& region,
                                    int count, std::uint64_t seed, double feas_tol);

// min over cloud points of ||x - a||: an upper bound on dist(x, S) whose
// tightness is limited by the recorded resolution.
double distance_oracle(const Vec& x, const FeasibleCloud& cloud);

} // namespace lojeig

#endif
