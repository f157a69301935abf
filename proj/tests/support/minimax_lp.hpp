#pragma once

// Test-only oracle: dense-grid minimax polynomial fitting by linear
// programming, independent of the exchange engine it is used to check.
//
//   minimize  delta
//   s.t.      sum_k c_k t_i^k + delta >= f(t_i)
//            -sum_k c_k t_i^k + delta >= -f(t_i)      for every grid point t_i
//
// solved with a two-phase dense simplex (Dantzig pricing, Bland fallback).

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace lp_oracle {

struct MinimaxFit {
    std::vector<double> coeffs;
    double level;
};

namespace detail {

// min c^T x  s.t.  A x = b, x >= 0.  Dense two-phase tableau simplex.
inline std::vector<double> simplex(std::vector<std::vector<double>> A, std::vector<double> b,
                                   std::vector<double> cost) {
    const std::size_t m = A.size();
    const std::size_t n = cost.size();
    constexpr double eps = 1e-9;

    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0.0) {
            b[i] = -b[i];
            for (auto& v : A[i]) v = -v;
        }

    // Tableau with artificial columns appended.
    const std::size_t total = n + m;
    std::vector<std::vector<double>> T(m, std::vector<double>(total + 1, 0.0));
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
        T[i][n + i] = 1.0;
        T[i][total] = b[i];
        basis[i] = n + i;
    }

    auto pivot = [&](std::size_t row, std::size_t col) {
        const double p = T[row][col];
        for (auto& v : T[row]) v /= p;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || T[i][col] == 0.0) continue;
            const double f = T[i][col];
            for (std::size_t j = 0; j <= total; ++j) T[i][j] -= f * T[row][j];
        }
        basis[row] = col;
    };

    auto run_phase = [&](const std::vector<double>& obj, std::size_t ncols) {
        std::vector<double> z(ncols + 1, 0.0);
        auto rebuild_z = [&]() {
            for (std::size_t j = 0; j <= ncols; ++j) {
                double v = j < obj.size() ? obj[j] : 0.0;
                if (j == ncols) v = 0.0;
                z[j] = v;
            }
            z[ncols] = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                const double cb = basis[i] < obj.size() ? obj[basis[i]] : 0.0;
                if (cb == 0.0) continue;
                for (std::size_t j = 0; j < ncols; ++j) z[j] -= cb * T[i][j];
                z[ncols] -= cb * T[i][total];
            }
        };
        rebuild_z();
        for (int iter = 0; iter < 50000; ++iter) {
            std::size_t col = ncols;
            double best = -eps;
            for (std::size_t j = 0; j < ncols; ++j)
                if (z[j] < best) {
                    best = z[j];
                    col = j;
                }
            if (col == ncols) return;   // optimal
            std::size_t row = m;
            double ratio = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (T[i][col] <= eps) continue;
                const double rr = T[i][total] / T[i][col];
                if (row == m || rr < ratio - 1e-12 ||
                    (std::abs(rr - ratio) <= 1e-12 && basis[i] > basis[row])) {
                    row = i;
                    ratio = rr;
                }
            }
            if (row == m) throw std::runtime_error("simplex: unbounded");
            pivot(row, col);
            rebuild_z();
        }
        throw std::runtime_error("simplex: iteration limit");
    };

    // Phase 1: drive the artificials to zero.
    std::vector<double> phase1(total, 0.0);
    for (std::size_t j = n; j < total; ++j) phase1[j] = 1.0;
    run_phase(phase1, total);
    double infeas = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] >= n) infeas += T[i][total];
    if (infeas > 1e-7) throw std::runtime_error("simplex: infeasible");
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        for (std::size_t j = 0; j < n; ++j)
            if (std::abs(T[i][j]) > eps) {
                pivot(i, j);
                break;
            }
    }

    // Phase 2 over the original columns only.
    run_phase(cost, n);

    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        if (basis[i] < n) x[basis[i]] = T[i][total];
    return x;
}

}  // namespace detail

inline MinimaxFit lp_minimax_fit(const std::function<double(double)>& f, int degree,
                                 int grid_points = 129) {
    const int n = degree;
    const int M = grid_points;
    const std::size_t nc = static_cast<std::size_t>(n) + 1;
    const std::size_t nvars = 2 * nc + 1 + 2 * static_cast<std::size_t>(M);  // cp, cm, delta, surplus
    std::vector<std::vector<double>> A(2 * static_cast<std::size_t>(M),
                                       std::vector<double>(nvars, 0.0));
    std::vector<double> b(2 * static_cast<std::size_t>(M), 0.0);
    for (int i = 0; i < M; ++i) {
        const double t = static_cast<double>(i) / (M - 1);
        const double fi = f(t);
        double pw = 1.0;
        for (std::size_t k = 0; k < nc; ++k) {
            A[static_cast<std::size_t>(i)][k] = pw;
            A[static_cast<std::size_t>(i)][nc + k] = -pw;
            A[static_cast<std::size_t>(M + i)][k] = -pw;
            A[static_cast<std::size_t>(M + i)][nc + k] = pw;
            pw *= t;
        }
        A[static_cast<std::size_t>(i)][2 * nc] = 1.0;
        A[static_cast<std::size_t>(M + i)][2 * nc] = 1.0;
        A[static_cast<std::size_t>(i)][2 * nc + 1 + static_cast<std::size_t>(i)] = -1.0;
        A[static_cast<std::size_t>(M + i)][2 * nc + 1 + static_cast<std::size_t>(M + i)] = -1.0;
        b[static_cast<std::size_t>(i)] = fi;
        b[static_cast<std::size_t>(M + i)] = -fi;
    }
    std::vector<double> cost(nvars, 0.0);
    cost[2 * nc] = 1.0;

    const std::vector<double> x = detail::simplex(std::move(A), std::move(b), std::move(cost));
    MinimaxFit fit;
    fit.coeffs.resize(nc);
    for (std::size_t k = 0; k < nc; ++k) fit.coeffs[k] = x[k] - x[nc + k];
    fit.level = x[2 * nc];
    return fit;
}

}  // namespace lp_oracle
