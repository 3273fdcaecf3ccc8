#pragma once

// Discretized Bessel 1/2-capacity of rectangle unions on the bitorus and its comparison with
// pull-back volumes of the matching Carleson boxes.

#include <holocomp/carleson.hpp>
#include <holocomp/errors.hpp>
#include <holocomp/numeric.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace holocomp {

/// M x M cells of side 2 pi / M; cell i has center -pi + (i + 1/2) 2 pi / M in each coordinate.
struct TorusGrid {
    int M = 64;

    void validate() const
    {
        if (M < 8 || (M & (M - 1)) != 0) throw DomainError("TorusGrid: M must be a power of two, at least 8");
    }
    double side() const { return 2.0 * pi / M; }
    double cell_area() const { return side() * side(); }
    double center(int i) const { return -pi + (i + 0.5) * side(); }
};

/// [a1, b1] x [a2, b2] in angle coordinates; arcs may wrap past pi.
struct Rect {
    double a1 = 0.0, a2 = 0.0, b1 = 0.0, b2 = 0.0;

    double length1() const { return b1 - a1; }
    double length2() const { return b2 - a2; }

    void validate() const
    {
        for (double L : {length1(), length2()})
            if (!(L > 0.0 && L <= 2.0 * pi + 1e-12)) throw DomainError("Rect: side lengths must lie in (0, 2 pi]");
    }
};

/// An empty union is allowed and has capacity 0.
struct RectUnion {
    std::vector<Rect> rects;

    void validate() const
    {
        for (const auto& r : rects) r.validate();
    }

    /// Cells whose centers lie in some rectangle, as flat indices i1 * M + i2.
    std::vector<std::size_t> cells(const TorusGrid& g) const
    {
        g.validate();
        validate();
        auto inside = [](double theta, double a, double L) {
            if (L >= 2.0 * pi) return true;
            return std::remainder(theta - a - pi, 2.0 * pi) + pi < L;
        };
        std::vector<std::size_t> out;
        for (int i1 = 0; i1 < g.M; ++i1)
            for (int i2 = 0; i2 < g.M; ++i2)
                for (const auto& r : rects)
                    if (inside(g.center(i1), r.a1, r.length1()) && inside(g.center(i2), r.a2, r.length2())) {
                        out.push_back(static_cast<std::size_t>(i1) * static_cast<std::size_t>(g.M) + static_cast<std::size_t>(i2));
                        break;
                    }
        return out;
    }

    RectUnion translated(double t1, double t2) const
    {
        RectUnion u = *this;
        for (auto& r : u.rects) {
            r.a1 += t1, r.b1 += t1;
            r.a2 += t2, r.b2 += t2;
        }
        return u;
    }
};

enum class CapacityKernel { bessel, logarithmic };

inline std::string to_string(CapacityKernel k) { return k == CapacityKernel::bessel ? "bessel-1/2" : "logarithmic"; }

/// Integral of the one-variable kernel over the cell at offset m from the evaluation center,
/// using the geodesic distance d(t) = min(t, 2 pi - t) and a folded antiderivative on [0, 2 pi].
inline std::vector<double> kernel_cell_integrals(const TorusGrid& g, CapacityKernel kind, double log_constant = 1.0)
{
    g.validate();
    const double h = g.side();
    auto base = [&](double t) {
        if (kind == CapacityKernel::bessel) return 2.0 * std::sqrt(t);
        return t == 0.0 ? 0.0 : (log_constant + std::log(2.0) + 1.0) * t - t * std::log(t);
    };
    auto folded = [&](double x) { return x <= pi ? base(x) : 2.0 * base(pi) - base(2.0 * pi - x); };
    std::vector<double> c(static_cast<std::size_t>(g.M));
    c[0] = 2.0 * base(0.5 * h);
    for (int m = 1; m <= g.M / 2; ++m) {
        c[static_cast<std::size_t>(m)] = folded((m + 0.5) * h) - folded((m - 0.5) * h);
        c[static_cast<std::size_t>(g.M - m)] = c[static_cast<std::size_t>(m)];
    }
    return c;
}

/// Cell-to-cell operator (K h)_i = sum_j c(i1 - j1) c(i2 - j2) h_j with circulant factors.
class KernelMatrix {
public:
    KernelMatrix(const TorusGrid& g, CapacityKernel kind = CapacityKernel::bessel, double log_constant = 1.0)
        : grid_(g), kind_(kind), c_(kernel_cell_integrals(g, kind, log_constant)), C_(g.M, g.M)
    {
        for (int i = 0; i < g.M; ++i)
            for (int j = 0; j < g.M; ++j) C_(i, j) = c_[static_cast<std::size_t>(((j - i) % g.M + g.M) % g.M)];
    }

    const TorusGrid& grid() const { return grid_; }
    CapacityKernel kind() const { return kind_; }
    const std::vector<double>& factor() const { return c_; }

    /// Entry between flat cells i and j.
    double entry(std::size_t i, std::size_t j) const
    {
        const auto M = static_cast<std::size_t>(grid_.M);
        return C_(static_cast<Eigen::Index>(i / M), static_cast<Eigen::Index>(j / M)) *
               C_(static_cast<Eigen::Index>(i % M), static_cast<Eigen::Index>(j % M));
    }

    /// Row sum, identical for every row: (sum_m c_m)^2.
    double row_sum() const
    {
        CompensatedSum<double> s;
        for (double v : c_) s.add(v);
        return s.value() * s.value();
    }

    /// h is row-major M x M (first coordinate major).
    Eigen::MatrixXd apply(const Eigen::MatrixXd& h) const { return C_ * h * C_.transpose(); }

private:
    TorusGrid grid_;
    CapacityKernel kind_;
    std::vector<double> c_;
    Eigen::MatrixXd C_;
};

struct CapacityOptions {
    double tol = 1e-4;             // relative duality gap
    int max_iter = 50000;
    double stall_tol = 1e-8;       // relative dual objective change over stall_window iterations
    int stall_window = 50;
};

struct CapacityResult {
    double value = 0.0;            // area * sum h^2 of the polished feasible point (upper bound)
    double lower_bound = 0.0;      // dual objective
    Eigen::MatrixXd h;             // optimizer on the grid, M x M
    double max_violation = 0.0;    // max over E of 1 - (K h)_i, clipped at 0
    int iterations = 0;
    bool converged = false;        // relative duality gap below tol
    std::size_t cells = 0;
    int M = 0;
    CapacityKernel kernel = CapacityKernel::bessel;
};

/// min area * sum h_j^2 over h >= 0 with (K h)_i >= 1 on E. Solved through the dual
/// max_{lambda >= 0} sum lambda - |A^T lambda|^2 / (4 area), whose maximizer gives h = A^T lambda / (2 area),
/// by FISTA with gradient-based restart. Each iterate's h is scaled by 1 / min_E (K h) to a
/// feasible point, so `value` is always a certified upper bound and `lower_bound` a certified lower one.
inline CapacityResult capacity(const KernelMatrix& K, const RectUnion& E, const CapacityOptions& opt = {})
{
    const TorusGrid& g = K.grid();
    const int M = g.M;
    CapacityResult res;
    res.M = M;
    res.kernel = K.kind();
    res.h = Eigen::MatrixXd::Zero(M, M);
    if (E.rects.empty()) {
        res.converged = true;
        return res;
    }
    const std::vector<std::size_t> cells = E.cells(g);
    if (cells.empty()) throw DomainError("capacity: the union contains no grid cell centers; refine the grid");
    res.cells = cells.size();
    const double area = g.cell_area();

    Eigen::MatrixXd mask = Eigen::MatrixXd::Zero(M, M);
    for (std::size_t c : cells) mask(static_cast<Eigen::Index>(c / static_cast<std::size_t>(M)), static_cast<Eigen::Index>(c % static_cast<std::size_t>(M))) = 1.0;
    auto restrict_e = [&](const Eigen::MatrixXd& x) { return Eigen::MatrixXd(x.cwiseProduct(mask)); };
    // A A^T lambda for lambda supported on E
    auto gram = [&](const Eigen::MatrixXd& lam) { return restrict_e(K.apply(K.apply(lam))); };
    auto dual = [&](const Eigen::MatrixXd& lam, const Eigen::MatrixXd& h) { return lam.sum() - area * h.squaredNorm(); };

    // largest eigenvalue of A A^T by power iteration, bounded by |K|^2 = row_sum^2
    Eigen::MatrixXd v = mask / std::sqrt(static_cast<double>(cells.size()));
    double eig = 0.0;
    for (int it = 0; it < 100; ++it) {
        const Eigen::MatrixXd w = gram(v);
        const double nrm = w.norm();
        if (nrm == 0.0) break;
        eig = nrm;
        v = w / nrm;
    }
    const double L = std::min(1.1 * eig, K.row_sum() * K.row_sum()) / (2.0 * area);

    // warm start: best multiple of the indicator of E
    const Eigen::MatrixXd a1 = K.apply(mask);
    Eigen::MatrixXd lam = mask * (2.0 * area * static_cast<double>(cells.size()) / a1.squaredNorm());
    Eigen::MatrixXd lam_prev = lam, y = lam;
    double t = 1.0;
    double best_primal = std::numeric_limits<double>::infinity(), best_dual = -std::numeric_limits<double>::infinity();
    std::vector<double> history;

    auto evaluate = [&](const Eigen::MatrixXd& l) {
        const Eigen::MatrixXd h = K.apply(l) / (2.0 * area);
        const Eigen::MatrixXd kh = K.apply(h);
        double s = std::numeric_limits<double>::infinity();
        for (std::size_t c : cells)
            s = std::min(s, kh(static_cast<Eigen::Index>(c / static_cast<std::size_t>(M)), static_cast<Eigen::Index>(c % static_cast<std::size_t>(M))));
        const double d = dual(l, h);
        best_dual = std::max(best_dual, d);
        if (s > 0.0) {
            const Eigen::MatrixXd hp = h / s;
            const double p = area * hp.squaredNorm();
            if (p < best_primal) {
                best_primal = p;
                res.h = hp;
            }
        }
        return d;
    };

    int it = 0;
    for (; it < opt.max_iter; ++it) {
        const Eigen::MatrixXd grad = restrict_e(mask - gram(y) / (2.0 * area));
        Eigen::MatrixXd next = (y + grad / L).cwiseMax(0.0);
        next = restrict_e(next);
        // restart momentum when the step opposes the ascent direction
        if ((grad.cwiseProduct(next - lam)).sum() < 0.0) {
            t = 1.0;
            y = lam;
            continue;
        }
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        lam_prev = lam;
        lam = next;
        y = lam + ((t - 1.0) / t_next) * (lam - lam_prev);
        t = t_next;

        if (it % 10 == 0) {
            const double d = evaluate(lam);
            history.push_back(d);
            if (best_primal - best_dual <= opt.tol * best_primal) {
                res.converged = true;
                break;
            }
            const std::size_t w = static_cast<std::size_t>(opt.stall_window / 10);
            if (history.size() > w && std::abs(d - history[history.size() - 1 - w]) <= opt.stall_tol * std::abs(d)) break;
        }
    }
    evaluate(lam);
    res.iterations = it;
    res.value = best_primal;
    res.lower_bound = best_dual;
    res.converged = res.converged || best_primal - best_dual <= opt.tol * best_primal;

    const Eigen::MatrixXd kh = K.apply(res.h);
    for (std::size_t c : cells)
        res.max_violation = std::max(res.max_violation, 1.0 - kh(static_cast<Eigen::Index>(c / static_cast<std::size_t>(M)),
                                                                 static_cast<Eigen::Index>(c % static_cast<std::size_t>(M))));
    return res;
}

inline CapacityResult capacity(const TorusGrid& g, const RectUnion& E, const CapacityOptions& opt = {})
{
    return capacity(KernelMatrix(g), E, opt);
}

/// Box anchored at the rectangle: centered at the arc midpoints with delta_i = |arc_i| / 2.
inline CarlesonBox box_from_rect(const Rect& r)
{
    r.validate();
    return {0.5 * (r.a1 + r.b1), 0.5 * (r.a2 + r.b2), 0.5 * r.length1(), 0.5 * r.length2()};
}

inline BoxUnion boxes_from_rects(const RectUnion& u)
{
    BoxUnion b;
    for (const auto& r : u.rects) b.boxes.push_back(box_from_rect(r));
    return b;
}

/// Single squares of side 2 pi 2^{-j}, j = 0..levels-1, centered at (theta1, theta2).
inline std::vector<RectUnion> dyadic_single_box_families(int levels, double theta1 = 0.0, double theta2 = 0.0)
{
    if (levels < 1) throw DomainError("dyadic_single_box_families: need at least one level");
    std::vector<RectUnion> out;
    for (int j = 0; j < levels; ++j) {
        const double half = pi * std::ldexp(1.0, -j);
        out.push_back(RectUnion{{{theta1 - half, theta2 - half, theta1 + half, theta2 + half}}});
    }
    return out;
}

struct CapacityFamilyRow {
    RectUnion rects;
    BoxUnion boxes;
    PullbackVolume volume;
    CapacityResult capacity;
    double ratio = 0.0;
    bool resolved = false;
};

struct CapacityConditionReport {
    std::vector<CapacityFamilyRow> rows;
    std::vector<double> profile;
    double max_ratio = 0.0;
    Verdict verdict = Verdict::inconclusive;
    std::string scope = "evidence over the tested families only";
    std::string box_convention = "box centered at the arc midpoints with delta = half the arc length";
    std::vector<std::string> warnings;
};

struct CapacityConditionOptions {
    std::size_t min_hits = 10; // a family is resolved when its boxes receive at least this many samples
    CapacityOptions solver{};
};

/// V_beta(Phi^{-1}(union of boxes)) / Cap(union of rects) per family, in the given order. The
/// growth test runs on the leading run of resolved families.
inline CapacityConditionReport capacity_condition_check(const PullbackMeasure& m, const std::vector<RectUnion>& families,
                                                        const TorusGrid& grid, const CapacityConditionOptions& opt = {})
{
    if (families.empty()) throw DomainError("capacity_condition_check: no families");
    const KernelMatrix K(grid);
    const SampleCloud cloud = m.cloud();
    CapacityConditionReport rep;
    for (const auto& fam : families) {
        if (fam.rects.empty()) throw DomainError("capacity_condition_check: empty family");
        CapacityFamilyRow row;
        row.rects = fam;
        row.boxes = boxes_from_rects(fam);
        row.volume = pullback_box_volume(cloud, row.boxes);
        row.capacity = capacity(K, fam, opt.solver);
        row.ratio = row.volume.estimate.value / row.capacity.value;
        row.resolved = row.volume.estimate.hits >= opt.min_hits;
        if (!row.capacity.converged) rep.warnings.push_back("capacity solver did not reach the duality-gap tolerance");
        for (const auto& w : row.volume.warnings) rep.warnings.push_back(w);
        rep.profile.push_back(row.ratio);
        rep.max_ratio = std::max(rep.max_ratio, row.ratio);
        rep.rows.push_back(std::move(row));
    }
    std::size_t resolved = 0;
    while (resolved < rep.rows.size() && rep.rows[resolved].resolved) ++resolved;
    if (resolved < rep.rows.size()) {
        std::ostringstream msg;
        msg << "resolution: families from index " << resolved << " have fewer than " << opt.min_hits
            << " sample hits and are excluded from the verdict";
        rep.warnings.push_back(msg.str());
    }
    const std::vector<double> used(rep.profile.begin(), rep.profile.begin() + static_cast<std::ptrdiff_t>(resolved));
    rep.verdict = used.size() >= 4 ? growth_verdict(used, used.size() - 4) : Verdict::inconclusive;
    return rep;
}

struct CapacityComparison {
    CapacityResult bessel, logarithmic;
    double ratio = 0.0; // logarithmic / bessel; NaN when both vanish
};

/// Bessel 1/2-capacity against the capacity for the kernel
/// (C + log 2/|t1 - s1|)(C + log 2/|t2 - s2|).
inline CapacityComparison capacity_vs_box_remark(const RectUnion& E, const TorusGrid& grid, double log_constant = 1.0,
                                                 const CapacityOptions& opt = {})
{
    if (!(log_constant > 0.0)) throw DomainError("capacity_vs_box_remark: constant must be positive");
    CapacityComparison c;
    c.bessel = capacity(KernelMatrix(grid, CapacityKernel::bessel), E, opt);
    c.logarithmic = capacity(KernelMatrix(grid, CapacityKernel::logarithmic, log_constant), E, opt);
    c.ratio = c.bessel.value > 0.0 ? c.logarithmic.value / c.bessel.value : std::numeric_limits<double>::quiet_NaN();
    return c;
}

} // namespace holocomp
