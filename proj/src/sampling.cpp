#include "lojeig/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lojeig {

Region Region::box(int dim, double lo, double hi) {
    if (dim < 1) throw input_error("Region::box: dimension must be positive");
    if (!(lo < hi)) throw input_error("Region::box: require lo < hi");
    Region r;
    r.kind = Kind::Box;
    r.dim = dim;
    r.lo = lo;
    r.hi = hi;
    return r;
}

Region Region::ball(Vec center, double radius) {
    if (center.empty()) throw input_error("Region::ball: empty center");
    if (!(radius > 0)) throw input_error("Region::ball: radius must be positive");
    Region r;
    r.kind = Kind::Ball;
    r.dim = static_cast<int>(center.size());
    r.center = std::move(center);
    r.radius = radius;
    return r;
}

Region Region::shell(int dim, double r1, double r2) {
    if (dim < 1) throw input_error("Region::shell: dimension must be positive");
    if (!(r1 > 0) || !(r2 >= r1)) throw input_error("Region::shell: require 0 < r1 <= r2");
    Region r;
    r.kind = Kind::Shell;
    r.dim = dim;
    r.r1 = r1;
    r.r2 = r2;
    return r;
}

bool Region::contains(const Vec& x, double tol) const {
    if (static_cast<int>(x.size()) != dim) return false;
    switch (kind) {
        case Kind::Box:
            for (double v : x)
                if (v < lo - tol || v > hi + tol) return false;
            return true;
        case Kind::Ball: {
            Vec d(x);
            for (int s = 0; s < dim; ++s) d[s] -= center[s];
            return norm2(d) <= radius + tol;
        }
        case Kind::Shell: {
            double r = norm2(x);
            return r >= r1 - tol && r <= r2 + tol;
        }
    }
    return false;
}

double Region::outer_bound() const {
    switch (kind) {
        case Kind::Box: return std::max(std::abs(lo), std::abs(hi));
        case Kind::Ball: {
            double m = 0;
            for (double c : center) m = std::max(m, std::abs(c));
            return m + radius;
        }
        case Kind::Shell: return r2;
    }
    return 0;
}

std::string Region::describe() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Box: os << "box[" << lo << "," << hi << "]^" << dim; break;
        case Kind::Ball: os << "ball(r=" << radius << ", dim=" << dim << ")"; break;
        case Kind::Shell: os << "shell[" << r1 << "," << r2 << "]^" << dim; break;
    }
    return os.str();
}

double rng_uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double rng_gaussian(std::mt19937_64& rng) {
    // Box-Muller, one value per call; the partner value is discarded so the
    // stream layout stays simple and reproducible.
    double u1 = rng_uniform01(rng);
    double u2 = rng_uniform01(rng);
    while (u1 <= 0.0) u1 = rng_uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

namespace {

Vec draw_point(const Region& region, std::mt19937_64& rng) {
    const int n = region.dim;
    Vec x(n);
    switch (region.kind) {
        case Region::Kind::Box:
            for (int s = 0; s < n; ++s)
                x[s] = region.lo + (region.hi - region.lo) * rng_uniform01(rng);
            return x;
        case Region::Kind::Ball: {
            while (true) {
                double sq = 0.0;
                for (int s = 0; s < n; ++s) {
                    x[s] = 2.0 * rng_uniform01(rng) - 1.0;
                    sq += x[s] * x[s];
                }
                if (sq <= 1.0) break;
            }
            for (int s = 0; s < n; ++s) x[s] = region.center[s] + region.radius * x[s];
            return x;
        }
        case Region::Kind::Shell: {
            double sq = 0.0;
            do {
                sq = 0.0;
                for (int s = 0; s < n; ++s) {
                    x[s] = rng_gaussian(rng);
                    sq += x[s] * x[s];
                }
            } while (sq == 0.0);
            double r = std::exp(std::log(region.r1) +
                                rng_uniform01(rng) * (std::log(region.r2) - std::log(region.r1)));
            double scale = r / std::sqrt(sq);
            for (int s = 0; s < n; ++s) x[s] *= scale;
            return x;
        }
    }
    throw input_error("draw_point: unknown region kind");
}

} // namespace

SampleCloud sample_region(const Region& region, int count, std::uint64_t seed) {
    if (count < 1) throw input_error("sample_region: count must be >= 1");
    SampleCloud cloud;
    cloud.region = region;
    cloud.seed = seed;
    cloud.points.reserve(count);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) cloud.points.push_back(draw_point(region, rng));
    return cloud;
}

FeasibleCloud feasible_cloud_grid(const FeasibilityFn& value, const Region& box,
                                  double step, double feas_tol) {
    if (box.kind != Region::Kind::Box)
        throw input_error("feasible_cloud_grid: grid screening needs a box region");
    if (!(step > 0)) throw input_error("feasible_cloud_grid: step must be positive");

    const int n = box.dim;
    const long per_axis = std::lround((box.hi - box.lo) / step) + 1;
    double total = std::pow(static_cast<double>(per_axis), n);
    if (total > 5e6)
        throw capacity_error("feasible_cloud_grid: mesh of ~" + std::to_string(total) +
                             " points exceeds the 5e6 cap");

    FeasibleCloud cloud;
    cloud.feas_tol = feas_tol;
    cloud.resolution = step;

    std::vector<long> idx(n, 0);
    Vec x(n);
    while (true) {
        for (int s = 0; s < n; ++s) x[s] = box.lo + step * static_cast<double>(idx[s]);
        ++cloud.screened;
        if (value(x) <= feas_tol) cloud.points.push_back(x);
        int s = 0;
        while (s < n && ++idx[s] >= per_axis) idx[s++] = 0;
        if (s == n) break;
    }
    return cloud;
}

FeasibleCloud feasible_cloud_random(const FeasibilityFn& value, const Region& region,
                                    int count, std::uint64_t seed, double feas_tol) {
    if (count < 1) throw input_error("feasible_cloud_random: count must be >= 1");
    FeasibleCloud cloud;
    cloud.feas_tol = feas_tol;
    cloud.screened = count;
    // Typical inter-candidate spacing as the recorded resolution.
    cloud.resolution = 2.0 * region.outer_bound() *
                       std::pow(1.0 / static_cast<double>(count), 1.0 / region.dim);
    std::mt19937_64 rng(seed);
    for (int i = 0; i < count; ++i) {
        Vec x = draw_point(region, rng);
        if (value(x) <= feas_tol) cloud.points.push_back(std::move(x));
    }
    return cloud;
}

double distance_oracle(const Vec& x, const FeasibleCloud& cloud) {
    if (cloud.points.empty())
        throw empty_cloud_error(
            "distance_oracle: feasible cloud is empty (no feasible sample found; "
            "this does not show the feasible set is empty)");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : cloud.points) {
        double sq = 0.0;
        for (std::size_t s = 0; s < x.size(); ++s) {
            double d = x[s] - a[s];
            sq += d * d;
        }
        best = std::min(best, sq);
    }
    return std::sqrt(best);
}

} // namespace lojeig
