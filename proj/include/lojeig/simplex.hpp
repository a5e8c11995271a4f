#ifndef LOJEIG_SIMPLEX_HPP
#define LOJEIG_SIMPLEX_HPP

#include <cstdlib>
#include <optional>
#include <vector>

#include "lojeig/errors.hpp"

namespace lojeig {

// Phase-1 simplex feasibility kernel: find z >= 0 with A z = b.
//
// Works over any ordered field type T; instantiated with Rational (tol = 0,
// Bland's rule makes termination exact) and double (tol ~ 1e-10). Free
// variables and inequalities are encoded by the caller via splitting/slacks.
// Returns the structural solution, or nullopt when infeasible.
template <class T>
std::optional<std::vector<T>> phase1_feasible(std::vector<std::vector<T>> A,
                                              std::vector<T> b, const T& tol) {
    const std::size_t m = A.size();
    const std::size_t nv = m == 0 ? 0 : A[0].size();
    for (const auto& row : A)
        if (row.size() != nv) throw input_error("phase1_feasible: ragged matrix");
    if (b.size() != m) throw input_error("phase1_feasible: rhs size mismatch");
    if (m == 0) return std::vector<T>(nv, T(0));

    // Flip rows so b >= 0, then start from the all-artificial basis.
    for (std::size_t i = 0; i < m; ++i) {
        if (b[i] < T(0)) {
            for (auto& a : A[i]) a = -a;
            b[i] = -b[i];
        }
    }

    const std::size_t total = nv + m; // structural + artificial
    std::vector<std::vector<T>> tab(m, std::vector<T>(total + 1, T(0)));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < nv; ++j) tab[i][j] = A[i][j];
        tab[i][nv + i] = T(1);
        tab[i][total] = b[i];
    }
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) basis[i] = nv + i;

    // Reduced-cost row for minimizing the artificial sum: r_j = -sum_i a_ij
    // for structural j, 0 for artificials; objective = sum b_i.
    std::vector<T> red(total, T(0));
    T obj(0);
    for (std::size_t i = 0; i < m; ++i) {
        obj += tab[i][total];
        for (std::size_t j = 0; j < nv; ++j) red[j] -= tab[i][j];
    }

    const std::size_t iter_cap = 2000 * (m + total) + 10000;
    std::size_t iters = 0;
    while (true) {
        if (++iters > iter_cap)
            throw numeric_error("phase1_feasible: iteration cap exceeded");

        // Bland: smallest improving column.
        std::size_t enter = total;
        for (std::size_t j = 0; j < total; ++j) {
            if (red[j] < -tol) {
                enter = j;
                break;
            }
        }
        if (enter == total) break;

        // Ratio test, ties broken by smallest basis index (Bland).
        std::size_t leave = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (tab[i][enter] > tol) {
                if (leave == m) {
                    leave = i;
                } else {
                    T lhs = tab[i][total] * tab[leave][enter];
                    T rhs = tab[leave][total] * tab[i][enter];
                    if (lhs < rhs || (lhs == rhs && basis[i] < basis[leave])) leave = i;
                }
            }
        }
        if (leave == m)
            throw numeric_error("phase1_feasible: unbounded phase-1 (should not happen)");

        // Pivot on (leave, enter).
        T piv = tab[leave][enter];
        for (auto& v : tab[leave]) v /= piv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == leave) continue;
            T factor = tab[i][enter];
            if (factor == T(0)) continue;
            for (std::size_t j = 0; j <= total; ++j) tab[i][j] -= factor * tab[leave][j];
            tab[i][enter] = T(0);
        }
        T rfactor = red[enter];
        for (std::size_t j = 0; j < total; ++j) red[j] -= rfactor * tab[leave][j];
        red[enter] = T(0);
        obj -= rfactor * tab[leave][total];
        basis[leave] = enter;
    }

    // Feasible iff the artificial sum vanished.
    T resid(0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= nv) resid += tab[i][total];
    T gate = tol == T(0) ? T(0) : tol * T(100);
    if (resid > gate || resid < -gate) return std::nullopt;

    std::vector<T> z(nv, T(0));
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < nv) z[basis[i]] = tab[i][total];
    return z;
}

} // namespace lojeig

#endif
