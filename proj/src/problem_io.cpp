#include "lojeig/problem_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "lojeig/errors.hpp"

namespace lojeig {

namespace {

using nlohmann::json;

long expect_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer())
        throw parse_error(path, "expected an integer, got " + std::string(j.type_name()));
    return j.get<long>();
}

double expect_number(const json& j, const std::string& path) {
    if (!j.is_number())
        throw parse_error(path, "expected a number, got " + std::string(j.type_name()));
    return j.get<double>();
}

const json& expect_field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw parse_error(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) throw parse_error(path, std::string("missing field '") + key + "'");
    return *it;
}

SymPolyMatrix parse_matrix(const json& j, int n, int p, const std::string& path) {
    SymPolyMatrix M(n, p);
    const json& entries = expect_field(j, "entries", path);
    if (!entries.is_array()) throw parse_error(path + ".entries", "expected an array");

    std::set<std::pair<int, int>> seen;
    for (std::size_t e = 0; e < entries.size(); ++e) {
        const std::string epath = path + ".entries[" + std::to_string(e) + "]";
        const json& entry = entries[e];
        long i = expect_integer(expect_field(entry, "i", epath), epath + ".i");
        long jj = expect_integer(expect_field(entry, "j", epath), epath + ".j");
        if (i < 1 || jj < i || jj > p)
            throw parse_error(epath, "require 1 <= i <= j <= p (= " + std::to_string(p) + ")");
        if (!seen.emplace(i, jj).second)
            throw parse_error(epath, "duplicate entry for (i, j)");

        Polynomial poly(n);
        const json& terms = expect_field(entry, "terms", epath);
        if (!terms.is_array()) throw parse_error(epath + ".terms", "expected an array");
        std::set<ExponentVector> seen_kappa;
        for (std::size_t t = 0; t < terms.size(); ++t) {
            const std::string tpath = epath + ".terms[" + std::to_string(t) + "]";
            const json& term = terms[t];
            const json& exps = expect_field(term, "exponents", tpath);
            if (!exps.is_array() || static_cast<int>(exps.size()) != n)
                throw parse_error(tpath + ".exponents",
                                  "expected an array of length n = " + std::to_string(n));
            ExponentVector kappa(n);
            for (int s = 0; s < n; ++s) {
                long v = expect_integer(exps[s], tpath + ".exponents[" + std::to_string(s) + "]");
                if (v < 0) throw parse_error(tpath + ".exponents", "exponents must be >= 0");
                kappa[s] = static_cast<int>(v);
            }
            if (!seen_kappa.insert(kappa).second)
                throw parse_error(tpath, "duplicate (i, j, kappa) term");
            const json& coeff = expect_field(term, "coeff", tpath);
            if (!coeff.is_string())
                throw parse_error(tpath + ".coeff",
                                  "expected an exact coefficient string (\"1\", \"2/7\", \"0.25\")");
            try {
                poly.add_term(kappa, parse_rational(coeff.get<std::string>()));
            } catch (const input_error& err) {
                throw parse_error(tpath + ".coeff", err.what());
            }
        }
        M.set_entry(static_cast<int>(i) - 1, static_cast<int>(jj) - 1, std::move(poly));
    }
    return M;
}

json matrix_to_json(const SymPolyMatrix& M) {
    json entries = json::array();
    for (int i = 0; i < M.order(); ++i) {
        for (int j = i; j < M.order(); ++j) {
            const Polynomial& poly = M.entry(i, j);
            if (poly.is_zero()) continue;
            json terms = json::array();
            for (const auto& [kappa, coeff] : poly.terms())
                terms.push_back({{"exponents", kappa}, {"coeff", rational_to_string(coeff)}});
            entries.push_back({{"i", i + 1}, {"j", j + 1}, {"terms", std::move(terms)}});
        }
    }
    return entries;
}

} // namespace

Region region_from_json(const json& j, const std::string& path) {
    const json& kind = expect_field(j, "kind", path);
    if (!kind.is_string()) throw parse_error(path + ".kind", "expected a string");
    const std::string k = kind.get<std::string>();
    try {
        if (k == "box") {
            long dim = expect_integer(expect_field(j, "dim", path), path + ".dim");
            return Region::box(static_cast<int>(dim),
                               expect_number(expect_field(j, "lo", path), path + ".lo"),
                               expect_number(expect_field(j, "hi", path), path + ".hi"));
        }
        if (k == "ball") {
            const json& c = expect_field(j, "center", path);
            if (!c.is_array()) throw parse_error(path + ".center", "expected an array");
            Vec center;
            for (std::size_t s = 0; s < c.size(); ++s)
                center.push_back(expect_number(c[s], path + ".center[" + std::to_string(s) + "]"));
            return Region::ball(std::move(center),
                                expect_number(expect_field(j, "radius", path), path + ".radius"));
        }
        if (k == "shell") {
            long dim = expect_integer(expect_field(j, "dim", path), path + ".dim");
            return Region::shell(static_cast<int>(dim),
                                 expect_number(expect_field(j, "r1", path), path + ".r1"),
                                 expect_number(expect_field(j, "r2", path), path + ".r2"));
        }
    } catch (const input_error& err) {
        throw parse_error(path, err.what());
    }
    throw parse_error(path + ".kind", "unknown region kind '" + k + "'");
}

json region_to_json(const Region& region) {
    switch (region.kind) {
        case Region::Kind::Box:
            return {{"kind", "box"}, {"dim", region.dim}, {"lo", region.lo}, {"hi", region.hi}};
        case Region::Kind::Ball:
            return {{"kind", "ball"}, {"center", region.center}, {"radius", region.radius}};
        case Region::Kind::Shell:
            return {{"kind", "shell"}, {"dim", region.dim}, {"r1", region.r1}, {"r2", region.r2}};
    }
    throw input_error("region_to_json: unknown kind");
}

ProblemFile parse_problem_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& err) {
        throw parse_error(origin, err.what());
    }

    long n = expect_integer(expect_field(j, "n", origin), origin + ".n");
    long p = expect_integer(expect_field(j, "p", origin), origin + ".p");
    if (n < 1) throw parse_error(origin + ".n", "variable count must be >= 1");
    if (p < 1) throw parse_error(origin + ".p", "matrix order must be >= 1");

    ProblemFile pf;
    pf.F = parse_matrix(j, static_cast<int>(n), static_cast<int>(p), origin);

    for (const char* key : {"G", "H"}) {
        auto it = j.find(key);
        if (it == j.end()) continue;
        const std::string mpath = origin + "." + key;
        long q = expect_integer(expect_field(*it, "p", mpath), mpath + ".p");
        if (q < 1) throw parse_error(mpath + ".p", "matrix order must be >= 1");
        auto M = parse_matrix(*it, static_cast<int>(n), static_cast<int>(q), mpath);
        if (key[0] == 'G')
            pf.G = std::move(M);
        else
            pf.H = std::move(M);
    }

    auto dit = j.find("defaults");
    if (dit != j.end()) {
        const std::string dpath = origin + ".defaults";
        if (!dit->is_object()) throw parse_error(dpath, "expected an object");
        if (dit->contains("seed"))
            pf.seed = static_cast<std::uint64_t>(
                expect_integer((*dit)["seed"], dpath + ".seed"));
        if (dit->contains("cluster_tol"))
            pf.cluster_tol = expect_number((*dit)["cluster_tol"], dpath + ".cluster_tol");
        if (dit->contains("feas_tol"))
            pf.feas_tol = expect_number((*dit)["feas_tol"], dpath + ".feas_tol");
        if (dit->contains("region"))
            pf.region = region_from_json((*dit)["region"], dpath + ".region");
    }
    return pf;
}

ProblemFile parse_problem(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error(path, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_problem_text(buffer.str(), path);
}

json serialize_problem(const ProblemFile& problem) {
    json j;
    j["n"] = problem.F.var_count();
    j["p"] = problem.F.order();
    j["entries"] = matrix_to_json(problem.F);
    if (problem.G) j["G"] = {{"p", problem.G->order()}, {"entries", matrix_to_json(*problem.G)}};
    if (problem.H) j["H"] = {{"p", problem.H->order()}, {"entries", matrix_to_json(*problem.H)}};

    json defaults = json::object();
    if (problem.seed) defaults["seed"] = *problem.seed;
    if (problem.cluster_tol) defaults["cluster_tol"] = *problem.cluster_tol;
    if (problem.feas_tol) defaults["feas_tol"] = *problem.feas_tol;
    if (problem.region) defaults["region"] = region_to_json(*problem.region);
    if (!defaults.empty()) j["defaults"] = std::move(defaults);
    return j;
}

} // namespace lojeig
