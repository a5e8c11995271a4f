#ifndef LOJEIG_PROBLEM_IO_HPP
#define LOJEIG_PROBLEM_IO_HPP

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "lojeig/sampling.hpp"
#include "lojeig/spectral.hpp"

namespace lojeig {

/// Parsed problem file: the matrix F, optional companions G and H (for the
/// separation and factorization checks), and optional run defaults.
struct ProblemFile {
    SymPolyMatrix F{1, 1};
    std::optional<SymPolyMatrix> G;
    std::optional<SymPolyMatrix> H;
    std::optional<std::uint64_t> seed;
    std::optional<double> cluster_tol;
    std::optional<double> feas_tol;
    std::optional<Region> region;
};

// Schema (UTF-8 JSON):
//   { "n": 2, "p": 2,
//     "entries": [ {"i":1, "j":1, "terms":[{"exponents":[2,0], "coeff":"1"}]} ],
//     "G": {"p":1, "entries":[...]},          // optional, shares n
//     "H": {"p":1, "entries":[...]},          // optional, shares n
//     "defaults": {"seed":7, "cluster_tol":1e-8, "feas_tol":1e-9,
//                  "region": {"kind":"box","lo":-1,"hi":1}} }   // optional
// Entries are upper-triangular (1 <= i <= j <= p); coefficients are exact
// strings ("-3", "2/7", "0.25"); duplicate (i, j, kappa) terms are rejected.
ProblemFile parse_problem(const std::string& path);
ProblemFile parse_problem_text(const std::string& text, const std::string& origin = "<text>");

nlohmann::json serialize_problem(const ProblemFile& problem);

nlohmann::json region_to_json(const Region& region);
Region region_from_json(const nlohmann::json& j, const std::string& path);

} // namespace lojeig

#endif
