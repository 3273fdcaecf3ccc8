#pragma once

// Independent reference computations shared by the unit tests and the acceptance suite.

#include <holocomp/analytic.hpp>
#include <holocomp/capacity.hpp>

#include <cmath>
#include <limits>
#include <vector>

namespace holocomp::oracle {

/// Term-by-term extended-precision sum of (k+1)^{2 a1} (l+1)^{2 a2} |a_kl|^2.
inline double naive_norm(const TaylorGrid2D& f, double a1, double a2)
{
    long double s = 0;
    for (int k = 0; k <= f.K(); ++k)
        for (int l = 0; l <= f.L(); ++l)
            s += std::pow((long double)(k + 1), 2.0L * a1) * std::pow((long double)(l + 1), 2.0L * a2)
               * (long double)std::norm(f(k, l));
    return static_cast<double>(s);
}

// Dense QP oracle: enumerate active sets S of E, solve the KKT system A_S A_S^T lambda = 2 area 1,
// keep the feasible candidates with lambda >= 0 and return the smallest objective.
inline double brute_force_capacity(const TorusGrid& g, const std::vector<std::size_t>& cells)
{
    const KernelMatrix K(g);
    const std::size_t n = cells.size(), N = static_cast<std::size_t>(g.M * g.M);
    const double area = g.cell_area();
    double best = std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> S;
        for (std::size_t k = 0; k < n; ++k)
            if (mask & (1u << k)) S.push_back(cells[k]);
        const auto s = static_cast<Eigen::Index>(S.size());
        Eigen::MatrixXd A(s, static_cast<Eigen::Index>(N));
        for (Eigen::Index i = 0; i < s; ++i)
            for (std::size_t j = 0; j < N; ++j) A(i, static_cast<Eigen::Index>(j)) = K.entry(S[static_cast<std::size_t>(i)], j);
        const Eigen::VectorXd lam = (A * A.transpose()).ldlt().solve(Eigen::VectorXd::Constant(s, 2 * area));
        if (lam.minCoeff() < 0) continue;
        const Eigen::VectorXd h = A.transpose() * lam / (2 * area);
        bool feasible = true;
        for (std::size_t c : cells) {
            double kh = 0;
            for (std::size_t j = 0; j < N; ++j) kh += K.entry(c, j) * h(static_cast<Eigen::Index>(j));
            feasible = feasible && kh >= 1 - 1e-10;
        }
        if (feasible) best = std::min(best, area * h.squaredNorm());
    }
    return best;
}

// union of single grid cells
inline RectUnion cell_union(const TorusGrid& g, const std::vector<std::pair<int, int>>& idx)
{
    RectUnion u;
    const double h = g.side();
    for (auto [i, j] : idx) u.rects.push_back({g.center(i) - h / 2, g.center(j) - h / 2, g.center(i) + h / 2, g.center(j) + h / 2});
    return u;
}

} // namespace holocomp::oracle
