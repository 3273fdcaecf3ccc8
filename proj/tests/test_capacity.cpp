#include "oracles.hpp"

#include <holocomp/capacity.hpp>

#include <gtest/gtest.h>

#include <functional>
#include <random>

using namespace holocomp;
using oracle::brute_force_capacity;
using oracle::cell_union;

namespace {

Rect random_rect(std::mt19937_64& rng, double max_side)
{
    std::uniform_real_distribution<double> c(-pi, pi), L(0.4, max_side);
    const double a1 = c(rng), a2 = c(rng);
    return {a1, a2, a1 + L(rng), a2 + L(rng)};
}

} // namespace

TEST(CapacityKernel, CellIntegralsInClosedForm)
{
    const TorusGrid g{16};
    const auto c = kernel_cell_integrals(g, CapacityKernel::bessel);
    EXPECT_NEAR(c[0], 2 * 2 * std::sqrt(g.side() / 2), 1e-15);
    double total = 0;
    for (double v : c) total += v;
    EXPECT_NEAR(total, 4 * std::sqrt(pi), 1e-13);
    for (int m = 1; m < 16; ++m) EXPECT_EQ(c[static_cast<std::size_t>(m)], c[static_cast<std::size_t>(16 - m)]);
}

TEST(CapacityKernel, CellIntegralsMatchQuadrature)
{
    // each cell split where the geodesic distance is singular or folds; geometric panels toward 0
    const TorusGrid g{32};
    const Rule1D gl = gauss_legendre01(30);
    std::function<double(double, double, const std::function<double(double)>&)> integral;
    integral = [&](double lo, double hi, const std::function<double(double)>& k) {
        if (lo == 0) {
            double s = 0;
            for (int p = 0; p < 120; ++p) s += integral(std::ldexp(hi, -p - 1), std::ldexp(hi, -p), k);
            return s;
        }
        double s = 0;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) s += gl.weights[i] * (hi - lo) * k(lo + (hi - lo) * gl.nodes[i]);
        return s;
    };
    for (auto kind : {CapacityKernel::bessel, CapacityKernel::logarithmic}) {
        const std::function<double(double)> k = [&](double d) { return kind == CapacityKernel::bessel ? 1 / std::sqrt(d) : 1 + std::log(2 / d); };
        const auto c = kernel_cell_integrals(g, kind);
        const double h = g.side();
        for (int m = 0; m < g.M; ++m) {
            double lo = (m - 0.5) * h, hi = (m + 0.5) * h, ref = 0;
            if (m == 0) ref = 2 * integral(0, hi, k);
            else if (hi <= pi) ref = integral(lo, hi, k);
            else if (lo >= pi) ref = integral(2 * pi - hi, 2 * pi - lo, k);
            else ref = integral(lo, pi, k) + integral(2 * pi - hi, pi, k);
            EXPECT_NEAR(c[static_cast<std::size_t>(m)], ref, 1e-10 * std::abs(ref)) << m;
        }
    }
}

TEST(CapacityKernel, SymmetricAndRowSumsStable)
{
    const KernelMatrix K(TorusGrid{8});
    for (std::size_t i = 0; i < 64; ++i)
        for (std::size_t j = 0; j < 64; ++j) EXPECT_EQ(K.entry(i, j), K.entry(j, i));
    const double r64 = KernelMatrix(TorusGrid{64}).row_sum(), r128 = KernelMatrix(TorusGrid{128}).row_sum();
    EXPECT_LT(std::abs(r64 - r128), 0.02 * r128);
    EXPECT_NEAR(r128, 16 * pi, 1e-12);
}

TEST(CapacityKernel, ApplyMatchesEntries)
{
    const TorusGrid g{8};
    const KernelMatrix K(g);
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0, 1);
    Eigen::MatrixXd h(8, 8);
    for (int i = 0; i < 8; ++i)
        for (int j = 0; j < 8; ++j) h(i, j) = u(rng);
    const Eigen::MatrixXd kh = K.apply(h);
    for (std::size_t i = 0; i < 64; ++i) {
        double ref = 0;
        for (std::size_t j = 0; j < 64; ++j) ref += K.entry(i, j) * h(static_cast<Eigen::Index>(j / 8), static_cast<Eigen::Index>(j % 8));
        EXPECT_NEAR(kh(static_cast<Eigen::Index>(i / 8), static_cast<Eigen::Index>(i % 8)), ref, 1e-12 * ref);
    }
}

TEST(TorusGrid, RejectsInvalidResolution)
{
    EXPECT_THROW(TorusGrid{4}.validate(), DomainError);
    EXPECT_THROW(TorusGrid{48}.validate(), DomainError);
    EXPECT_NO_THROW(TorusGrid{8}.validate());
}

TEST(RectUnion, DiscretizesByCellCenters)
{
    const TorusGrid g{8};
    EXPECT_EQ(cell_union(g, {{2, 5}}).cells(g), std::vector<std::size_t>{2 * 8 + 5});
    // wraps across pi
    const RectUnion wrap{{{2.6, 0.0, 3.6, 0.5}}};
    const auto cells = wrap.cells(g);
    ASSERT_EQ(cells.size(), 2u);
    EXPECT_EQ(cells[0], 0u * 8 + 4);
    EXPECT_EQ(cells[1], 7u * 8 + 4);
    EXPECT_THROW((RectUnion{{{0, 0, 0, 1}}}.validate()), DomainError);
    EXPECT_THROW((RectUnion{{{0, 0, 7, 1}}}.validate()), DomainError);
}

TEST(Capacity, EmptySetHasZeroCapacity)
{
    const auto r = capacity(TorusGrid{8}, RectUnion{});
    EXPECT_EQ(r.value, 0.0);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.h.norm(), 0.0);
}

TEST(Capacity, UnionMissingEveryCellIsRejected)
{
    const TorusGrid g{8};
    // a sliver between two cell centers
    EXPECT_THROW(capacity(g, RectUnion{{{0.01, 0.01, 0.02, 0.02}}}), DomainError);
}

TEST(Capacity, WholeTorusInClosedForm)
{
    // constant h is optimal by translation invariance; every row of K sums to (4 sqrt pi)^2
    for (int M : {8, 32}) {
        const auto r = capacity(TorusGrid{M}, RectUnion{{{-pi, -pi, pi, pi}}});
        EXPECT_NEAR(r.value, 1.0 / 64, 1e-12);
        EXPECT_TRUE(r.converged);
    }
}

TEST(Capacity, MatchesBruteForceOracle)
{
    const TorusGrid g{8};
    const std::vector<std::vector<std::pair<int, int>>> instances = {
        {{3, 3}},
        {{0, 7}},
        {{1, 1}, {1, 2}},
        {{0, 0}, {4, 4}},
        {{2, 2}, {2, 3}, {3, 2}},
        {{0, 0}, {3, 5}, {7, 1}},
        {{5, 5}, {5, 6}, {5, 7}},
        {{1, 6}, {6, 1}, {4, 4}},
    };
    for (const auto& inst : instances) {
        const RectUnion E = cell_union(g, inst);
        const auto r = capacity(g, E);
        const double oracle = brute_force_capacity(g, E.cells(g));
        EXPECT_NEAR(r.value, oracle, 0.02 * oracle);
        EXPECT_GE(r.value, oracle * (1 - 1e-12));
        EXPECT_LE(r.lower_bound, oracle * (1 + 1e-12));
    }
}

TEST(Capacity, OptimizerIsFeasible)
{
    const TorusGrid g{32};
    const auto r = capacity(g, RectUnion{{{0.1, 0.2, 1.3, 0.9}, {-2.0, 2.5, -1.0, 3.5}}});
    EXPECT_LE(r.max_violation, 1e-9);
    EXPECT_GE(r.h.minCoeff(), 0.0);
    EXPECT_NEAR(r.value, g.cell_area() * r.h.squaredNorm(), 1e-14);
    EXPECT_TRUE(r.converged);
    EXPECT_LE(r.value - r.lower_bound, 1e-4 * r.value);
}

TEST(Capacity, MonotoneOnNestedPairs)
{
    const TorusGrid g{32};
    const KernelMatrix K(g);
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> grow(0.1, 1.0);
    for (int t = 0; t < 10; ++t) {
        const Rect small = random_rect(rng, 2.0);
        const Rect big{small.a1 - grow(rng), small.a2 - grow(rng), small.b1 + grow(rng), small.b2 + grow(rng)};
        const auto c1 = capacity(K, RectUnion{{small}}), c2 = capacity(K, RectUnion{{big}});
        EXPECT_LE(c1.value, c2.value * (1 + CapacityOptions{}.tol));
    }
}

TEST(Capacity, SubadditiveOnUnions)
{
    const TorusGrid g{32};
    const KernelMatrix K(g);
    std::mt19937_64 rng(23);
    for (int t = 0; t < 10; ++t) {
        const Rect r1 = random_rect(rng, 2.5), r2 = random_rect(rng, 2.5);
        const auto c1 = capacity(K, RectUnion{{r1}}), c2 = capacity(K, RectUnion{{r2}}), c12 = capacity(K, RectUnion{{r1, r2}});
        const double tol = CapacityOptions{}.tol;
        EXPECT_LE(c12.value, (c1.value + c2.value) * (1 + 2 * tol));
        EXPECT_GE(c12.value, std::max(c1.value, c2.value) * (1 - tol));
    }
}

TEST(Capacity, NearlyRotationInvariant)
{
    const TorusGrid g{64};
    const RectUnion E{{{0.1, 0.2, 1.0, 0.8}}};
    const double base = capacity(g, E).value;
    for (auto [t1, t2] : {std::pair{0.37, 1.11}, std::pair{-2.0, 0.05}, std::pair{3.0, -1.3}})
        EXPECT_LT(std::abs(capacity(g, E.translated(t1, t2)).value - base), 0.01 * base);
    // shifts by whole cells are exact
    EXPECT_NEAR(capacity(g, E.translated(5 * g.side(), -3 * g.side())).value, base, 1e-9 * base);
}

TEST(Capacity, RefinementTrend)
{
    const RectUnion E{{{-pi, -pi, 0, 0}}};
    const double c32 = capacity(TorusGrid{32}, E).value, c64 = capacity(TorusGrid{64}, E).value,
                 c128 = capacity(TorusGrid{128}, E).value;
    EXPECT_LT(std::abs(c64 - c32), 0.05 * c64);
    EXPECT_LT(std::abs(c128 - c64), 0.05 * c128);
    EXPECT_LT(c64, 1.0 / 64);
}

TEST(CapacityRemark, EmptyAndQuarterTorus)
{
    const auto empty = capacity_vs_box_remark(RectUnion{}, TorusGrid{32});
    EXPECT_EQ(empty.bessel.value, 0.0);
    EXPECT_EQ(empty.logarithmic.value, 0.0);
    EXPECT_TRUE(std::isnan(empty.ratio));

    const auto q = capacity_vs_box_remark(RectUnion{{{-pi, -pi, 0, 0}}}, TorusGrid{32});
    EXPECT_GT(q.bessel.value, 0.0);
    EXPECT_GT(q.logarithmic.value, 0.0);
    EXPECT_NEAR(q.ratio, q.logarithmic.value / q.bessel.value, 1e-15);
}

TEST(CapacityRemark, LogKernelWholeTorus)
{
    const TorusGrid g{16};
    const KernelMatrix K(g, CapacityKernel::logarithmic);
    // row sum (integral of 1 + log 2/|t| over the circle)^2
    const double line = 2 * ((2 + std::log(2.0)) * pi - pi * std::log(pi));
    EXPECT_NEAR(K.row_sum(), line * line, 1e-10 * line * line);
    EXPECT_NEAR(capacity(K, RectUnion{{{-pi, -pi, pi, pi}}}).value, 4 * pi * pi / (line * line * line * line), 1e-12);
}

TEST(CapacityRemark, MonotoneForBothKernels)
{
    const TorusGrid g{32};
    const RectUnion small{{{0.2, 0.1, 1.0, 0.9}}}, big{{{0.0, -0.2, 1.5, 1.2}}};
    const auto a = capacity_vs_box_remark(small, g), b = capacity_vs_box_remark(big, g);
    EXPECT_LE(a.bessel.value, b.bessel.value);
    EXPECT_LE(a.logarithmic.value, b.logarithmic.value);
}

TEST(CapacityCondition, BoxesAnchoredAtArcs)
{
    const CarlesonBox b = box_from_rect({0.2, -1.0, 0.6, 0.0});
    EXPECT_DOUBLE_EQ(b.theta1, 0.4);
    EXPECT_DOUBLE_EQ(b.theta2, -0.5);
    EXPECT_DOUBLE_EQ(b.delta1, 0.2);
    EXPECT_DOUBLE_EQ(b.delta2, 0.5);
    const auto fams = dyadic_single_box_families(3);
    ASSERT_EQ(fams.size(), 3u);
    EXPECT_DOUBLE_EQ(fams[2].rects[0].length1(), pi / 2);
}

TEST(CapacityCondition, IdentityDyadicSweepIsBounded)
{
    const PullbackMeasure m{BidiscSymbol::identity(), 0.0, 200000, 5};
    const auto rep = capacity_condition_check(m, dyadic_single_box_families(6), TorusGrid{32});
    ASSERT_EQ(rep.rows.size(), 6u);
    EXPECT_EQ(rep.verdict, Verdict::finite_evidence);
    // the full-torus family covers the bidisc: total mass over Cap(T^2)
    EXPECT_NEAR(rep.rows[0].ratio, 64.0, 1e-9);
    EXPECT_NEAR(rep.max_ratio, 64.0, 1e-9);
}

TEST(CapacityCondition, DisjointAndMergedUnions)
{
    const PullbackMeasure m{BidiscSymbol::identity(), 0.0, 100000, 8};
    const RectUnion r1{{{0.0, 0.0, 0.8, 0.8}}}, r2{{{2.0, 2.0, 2.8, 2.8}}}, r3{{{0.4, 0.4, 1.2, 1.2}}};
    const RectUnion disjoint{{r1.rects[0], r2.rects[0]}}, overlap{{r1.rects[0], r3.rects[0]}};
    const auto rep = capacity_condition_check(m, {r1, r2, r3, disjoint, overlap}, TorusGrid{32});
    const auto cap = [&](std::size_t i) { return rep.rows[i].capacity.value; };
    const double tol = CapacityOptions{}.tol;
    EXPECT_LE(cap(3), (cap(0) + cap(1)) * (1 + 2 * tol));
    EXPECT_LE(cap(4), (cap(0) + cap(2)) * (1 + 2 * tol));
    for (const auto& row : rep.rows) EXPECT_TRUE(std::isfinite(row.ratio) && row.ratio > 0);
}

TEST(CapacityCondition, RejectsEmptyInputs)
{
    const PullbackMeasure m{BidiscSymbol::identity(), 0.0, 100, 1};
    EXPECT_THROW(capacity_condition_check(m, {}, TorusGrid{8}), DomainError);
    EXPECT_THROW(capacity_condition_check(m, {RectUnion{}}, TorusGrid{8}), DomainError);
}
