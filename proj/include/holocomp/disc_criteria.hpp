#pragma once

// Double-integral norm equivalence, the kernel-ratio diagnostic, and the two counting-function
// identities (change of variables and the separated norm expansion).

#include <holocomp/analytic.hpp>
#include <holocomp/errors.hpp>
#include <holocomp/nevanlinna.hpp>
#include <holocomp/numeric.hpp>
#include <holocomp/quadrature.hpp>
#include <holocomp/symbols.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <span>
#include <sstream>
#include <string>
#include <vector>

namespace holocomp {

// ---------------------------------------------------------------------------------------------
// Double-integral equivalence

struct BaloochWuParams {
    double sigma = 0.0, tau = 0.0, beta = 0.0;

    /// Exponent of the one-variable space on the right: sigma + tau - 2 beta.
    double alpha() const { return sigma + tau - 2.0 * beta; }

    void validate() const
    {
        if (!(sigma > -1.0) || !(tau > -1.0))
            throw DomainError("balooch_wu: sigma and tau must exceed -1 (the endpoint -1 is not supported)");
        if (!(beta > std::max(sigma, tau) / 2.0 - 1.0 && beta <= (sigma + tau) / 2.0))
            throw DomainError("balooch_wu: need max(sigma,tau)/2 - 1 < beta <= (sigma+tau)/2");
    }
};

struct EquivalenceEntry {
    double left = 0.0;  // double integral
    double right = 0.0; // one-variable seminorm
    double ratio = 0.0; // left / right, 0 for constants
    std::vector<std::string> flags;
};

struct EquivalenceReport {
    BaloochWuParams params;
    int resolution = 0;
    std::vector<EquivalenceEntry> entries;
    double min_ratio = 0.0, max_ratio = 0.0;
};

/// sum_{k>=1} k^2 B(k, alpha+1) |a_k|^2 = int |f'|^2 (1-|z|^2)^alpha dA.
inline double dirichlet_seminorm_1d(const TaylorGrid1D& f, double alpha)
{
    CompensatedSum<double> acc;
    for (int k = 1; k <= f.degree(); ++k) {
        const double b = std::exp(std::lgamma(k) + std::lgamma(alpha + 1.0) - std::lgamma(k + alpha + 1.0));
        acc.add(double(k) * k * b * std::norm(f.coeffs[static_cast<std::size_t>(k)]));
    }
    return acc.value();
}

namespace detail {

/// (1/2pi) int |1 - rho e^{i theta}|^{-2 lambda} cos(k theta) d theta for k = 0..kmax, by the
/// trapezoid rule with enough points to resolve the peak of width ~ 1 - rho.
inline std::vector<double> kernel_angular_modes(double rho, double lambda, int kmax)
{
    const double width = std::max(1.0 - rho, 1e-12);
    int M = 64;
    while (M < 48.0 / width) M *= 2;
    std::vector<double> out(static_cast<std::size_t>(kmax + 1), 0.0);
    // even integrand: half range with endpoint weights 1/2
    const int half = M / 2;
    for (int m = 0; m <= half; ++m) {
        const double th = 2.0 * pi * m / M;
        const double c = std::cos(th);
        const double ker = std::exp(-lambda * std::log1p(rho * rho - 2.0 * rho * c));
        const double wt = (m == 0 || m == half) ? 1.0 : 2.0;
        double prev = 1.0, cur = c; // cos((k-1) theta), cos(k theta) for k >= 1
        out[0] += wt * ker;
        for (int k = 1; k <= kmax; ++k) {
            out[static_cast<std::size_t>(k)] += wt * ker * cur;
            const double next = 2.0 * c * cur - prev;
            prev = cur;
            cur = next;
        }
    }
    for (double& v : out) v /= M;
    return out;
}

} // namespace detail

/// Double integral int int |f(z)-f(w)|^2 / |1 - conj(w) z|^{2(beta+2)} dA_sigma(z) dA_tau(w) for a
/// family of polynomials, against the seminorm of D_{sigma+tau-2beta}. Radii use Gauss-Jacobi rules
/// in s = |z|^2 of order `resolution`; angles are integrated through the Fourier modes of the
/// kernel, which for polynomial f reduces the angular double sum to at most deg f + 1 modes.
inline EquivalenceReport balooch_wu_family(const std::vector<TaylorGrid1D>& fs, const BaloochWuParams& p,
                                           int resolution = 48)
{
    p.validate();
    if (resolution < 4) throw DomainError("balooch_wu: resolution must be at least 4");
    int dmax = 0;
    for (const auto& f : fs) dmax = std::max(dmax, f.degree());
    const double lambda = p.beta + 2.0;
    const Rule1D rz = detail::radial_standard(resolution, p.sigma);
    const Rule1D rw = detail::radial_standard(resolution, p.tau);
    const std::size_t nz = rz.nodes.size(), nw = rw.nodes.size();

    // modes[i * nw + j][k]
    const auto modes = parallel_map<std::vector<double>>(nz * nw, [&](std::size_t idx) {
        const double rho = std::sqrt(rz.nodes[idx / nw] * rw.nodes[idx % nw]);
        return detail::kernel_angular_modes(rho, lambda, dmax);
    });

    EquivalenceReport rep;
    rep.params = p;
    rep.resolution = resolution;
    bool any = false;
    for (const auto& f : fs) {
        EquivalenceEntry e;
        std::vector<double> a2(static_cast<std::size_t>(f.degree() + 1));
        for (std::size_t k = 0; k < a2.size(); ++k) a2[k] = std::norm(f.coeffs[k]);
        auto P = [&](double s) { // sum_k |a_k|^2 s^k
            double acc = 0.0;
            for (std::size_t k = a2.size(); k-- > 0;) acc = acc * s + a2[k];
            return acc;
        };
        CompensatedSum<double> total;
        for (std::size_t i = 0; i < nz; ++i) {
            const double si = rz.nodes[i];
            for (std::size_t j = 0; j < nw; ++j) {
                const double sj = rw.nodes[j];
                const auto& K = modes[i * nw + j];
                const double rho = std::sqrt(si * sj);
                double cross = 0.0, rk = 1.0;
                for (std::size_t k = 0; k < a2.size(); ++k) {
                    cross += a2[k] * rk * K[k];
                    rk *= rho;
                }
                total.add(rz.weights[i] * rw.weights[j] * ((P(si) + P(sj)) * K[0] - 2.0 * cross));
            }
        }
        e.left = std::max(total.value(), 0.0);
        e.right = dirichlet_seminorm_1d(f, p.alpha());
        if (2.0 * lambda >= 3.0) e.flags.push_back("near_singular_kernel");
        if (e.right == 0.0) {
            e.ratio = 0.0;
            e.flags.push_back("constant");
        } else {
            e.ratio = e.left / e.right;
            if (!any) rep.min_ratio = rep.max_ratio = e.ratio;
            rep.min_ratio = std::min(rep.min_ratio, e.ratio);
            rep.max_ratio = std::max(rep.max_ratio, e.ratio);
            any = true;
        }
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

inline EquivalenceEntry balooch_wu_ratio(const TaylorGrid1D& f, const BaloochWuParams& p, int resolution = 48)
{
    return balooch_wu_family({f}, p, resolution).entries.front();
}

// ---------------------------------------------------------------------------------------------
// Kernel ratio

/// k^phi(z1, z2) = (1 - phi(z1) conj(phi(z2))) / (1 - z1 conj(z2)); on the diagonal the closed form
/// (1 - |phi(z)|^2) / (1 - |z|^2).
inline cplx kernel_value(const DiscSymbol& phi, cplx z1, cplx z2)
{
    if (z1 == z2) return (1.0 - std::norm(phi(z1))) / (1.0 - std::norm(z1));
    return (1.0 - phi(z1) * std::conj(phi(z2))) / (1.0 - z1 * std::conj(z2));
}

/// Default point set: radii {0, 0.1, 0.25} and 1 - 2^{-j} for j = 1..12, 24 angles; the origin once.
inline RatioGrid kernel_default_grid()
{
    RatioGrid g;
    g.radii = {0.0, 0.1, 0.25};
    for (int j = 1; j <= 12; ++j) g.radii.push_back(1.0 - std::ldexp(1.0, -j));
    g.angles = 24;
    return g;
}

struct KernelRatioQuery {
    DiscSymbol phi = DiscSymbol::identity();
    double beta = 0.0;
    RatioGrid grid = kernel_default_grid();
    double eps = 1e-6; // |phi'| below this marks a critical point
    double sigma = std::numeric_limits<double>::quiet_NaN();

    /// a = 2 sigma - 2 beta when sigma is given; NaN otherwise.
    double derived_a() const { return 2.0 * sigma - 2.0 * beta; }

    void validate() const
    {
        grid.validate();
        if (!(eps > 0.0)) throw DomainError("kernel_ratio: eps must be positive");
        if (!(beta > -2.0)) throw DomainError("kernel_ratio: beta must exceed -2");
        if (!std::isnan(sigma) && !(beta > sigma - 1.0 && beta <= sigma))
            throw DomainError("kernel_ratio: need sigma - 1 < beta <= sigma");
    }
};

struct KernelRatioReport {
    std::vector<cplx> points;
    std::vector<std::size_t> point_radius; // index into radii
    std::vector<bool> critical;  // |phi'| < eps at the point
    std::vector<double> ratio;   // points x points, NaN where flagged
    double sup = 0.0;
    cplx argmax1{}, argmax2{};
    std::size_t flagged_pairs = 0;
    std::size_t critical_points = 0;
    double beta = 0.0;
    std::vector<double> radii; // distinct radii, for the radius-pair summary
    std::vector<double> radius_sup; // radii x radii, max non-flagged ratio

    std::string to_csv() const
    {
        std::ostringstream out;
        out << "r1,theta1,r2,theta2,ratio,flag\n";
        const std::size_t P = points.size();
        for (std::size_t i = 0; i < P; ++i)
            for (std::size_t j = 0; j < P; ++j) {
                const double v = ratio[i * P + j];
                out << format_number(std::abs(points[i])) << ',' << format_number(std::arg(points[i])) << ','
                    << format_number(std::abs(points[j])) << ',' << format_number(std::arg(points[j])) << ','
                    << format_number(v) << ',' << (critical[i] || critical[j] ? "critical" : "") << '\n';
            }
        return out.str();
    }
};

/// |k^phi(z1,z2)| / |phi'(z1) phi'(z2)|^{1/(beta+2)} over all pairs of grid points. A finite sup is a
/// necessary condition for boundedness; pairs touching a critical point are excluded and counted.
inline KernelRatioReport kernel_ratio_sup(const KernelRatioQuery& q)
{
    q.validate();
    KernelRatioReport rep;
    rep.beta = q.beta;
    rep.radii = q.grid.radii;
    for (std::size_t ri = 0; ri < q.grid.radii.size(); ++ri) {
        const double r = q.grid.radii[ri];
        const int na = r == 0.0 ? 1 : q.grid.angles;
        for (int m = 0; m < na; ++m) {
            rep.points.push_back(std::polar(r, q.grid.angle(m)));
            rep.point_radius.push_back(ri);
        }
    }
    const std::size_t P = rep.points.size();
    std::vector<double> dmod(P);
    rep.critical.resize(P);
    for (std::size_t i = 0; i < P; ++i) {
        dmod[i] = std::abs(q.phi.derivative(rep.points[i]));
        rep.critical[i] = dmod[i] < q.eps;
        if (rep.critical[i]) ++rep.critical_points;
    }
    const double ex = 1.0 / (q.beta + 2.0);
    const auto rows = parallel_map<std::vector<double>>(P, [&](std::size_t i) {
        std::vector<double> row(P, std::numeric_limits<double>::quiet_NaN());
        if (rep.critical[i]) return row;
        for (std::size_t j = 0; j < P; ++j) {
            if (rep.critical[j]) continue;
            row[j] = std::abs(kernel_value(q.phi, rep.points[i], rep.points[j])) / std::pow(dmod[i] * dmod[j], ex);
        }
        return row;
    });
    const std::size_t R = rep.radii.size();
    rep.radius_sup.assign(R * R, std::numeric_limits<double>::quiet_NaN());
    rep.ratio.reserve(P * P);
    bool any = false;
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j) {
            const double v = rows[i][j];
            rep.ratio.push_back(v);
            if (std::isnan(v)) {
                ++rep.flagged_pairs;
                continue;
            }
            double& cell = rep.radius_sup[rep.point_radius[i] * R + rep.point_radius[j]];
            cell = std::isnan(cell) ? v : std::max(cell, v);
            if (!any || v > rep.sup) {
                rep.sup = v;
                rep.argmax1 = rep.points[i];
                rep.argmax2 = rep.points[j];
                any = true;
            }
        }
    if (!any) rep.sup = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

/// (grid sup)^{beta+2}: the shape of the operator-norm bound, up to an unknown constant.
inline double operator_norm_bound(const KernelRatioReport& rep)
{
    if (std::isnan(rep.sup)) throw UndefinedBoundError("operator_norm_bound: every grid pair is flagged");
    return std::pow(rep.sup, rep.beta + 2.0);
}

inline double operator_norm_bound(const KernelRatioQuery& q) { return operator_norm_bound(kernel_ratio_sup(q)); }

// ---------------------------------------------------------------------------------------------
// Counting-function identities

struct IdentityReport {
    double lhs = 0.0, rhs = 0.0, gap = 0.0;
    int resolution = 0;
    std::vector<std::string> flags;
};

inline double relative_gap(double x, double y)
{
    const double s = std::max(std::abs(x), std::abs(y));
    return s == 0.0 ? 0.0 : std::abs(x - y) / s;
}

/// Named nonnegative test integrands on the bidisc.
enum class GFunction { one, distance, exponential, kernel };

inline GFunction parse_gfunction(const std::string& s)
{
    if (s == "one") return GFunction::one;
    if (s == "distance") return GFunction::distance;
    if (s == "exponential") return GFunction::exponential;
    if (s == "kernel") return GFunction::kernel;
    throw DomainError("unknown g function '" + s + "' (one, distance, exponential, kernel)");
}

inline std::string to_string(GFunction g)
{
    switch (g) {
    case GFunction::one: return "one";
    case GFunction::distance: return "distance";
    case GFunction::exponential: return "exponential";
    case GFunction::kernel: return "kernel";
    }
    return "one";
}

inline std::function<double(cplx, cplx)> make_gfunction(GFunction g)
{
    switch (g) {
    case GFunction::one: return [](cplx, cplx) { return 1.0; };
    case GFunction::distance: return [](cplx w1, cplx w2) { return std::norm(w1 - w2); };
    case GFunction::exponential: return [](cplx w1, cplx w2) { return std::exp(w1.real() - w2.imag()); };
    case GFunction::kernel: return [](cplx w1, cplx w2) { return 1.0 / std::norm(1.0 - std::conj(w2) * w1); };
    }
    return [](cplx, cplx) { return 1.0; };
}

namespace detail {

/// Disc nodes for int h(w) N_{phi,a}(w) dA(w): polar about phi(0), where N has its log
/// singularity, with Jacobi clustering at the circle where N vanishes like (1-|w|)^{1-2a}.
/// The returned weights already include N.
inline std::vector<QuadratureRule::Node> counting_nodes(const DiscSymbol& phi, double a, int resolution)
{
    auto nodes = centered_disc_nodes(phi.value(0.0), resolution, 2 * resolution, 1.0 - 2.0 * a);
    const auto nv = parallel_map<double>(nodes.size(), [&](std::size_t i) { return counting_function(phi, a, nodes[i].z); });
    for (std::size_t i = 0; i < nodes.size(); ++i) nodes[i].w *= nv[i];
    return nodes;
}

/// Log-weight rule nodes with |phi'|^2 folded into the weights and the node moved to phi(z).
inline std::vector<QuadratureRule::Node> pulled_nodes(const DiscSymbol& phi, double a, int resolution)
{
    const auto rule = build_rule(1.0 - 2.0 * a, resolution, 2 * resolution, RadialWeight::logarithmic);
    auto nodes = rule.nodes();
    for (auto& n : nodes) {
        n.w *= std::norm(phi.derivative_value(n.z));
        n.z = phi.value(n.z);
    }
    return nodes;
}

} // namespace detail

/// Both sides of
///   int g(phi1(z1), phi2(z2)) |phi1'|^2 |phi2'|^2 (log 1/|z1|)^{1-2a1} (log 1/|z2|)^{1-2a2} dA dA
///     = int g(w1, w2) N_{phi1,a1}(w1) N_{phi2,a2}(w2) dA dA.
/// The left side uses logarithmic-weight rules; the right side polar rules centred at phi_i(0).
/// `resolution` is the radial order; angular orders are twice that.
inline IdentityReport verify_change_of_variables(const DiscSymbol& phi1, const DiscSymbol& phi2, const WeightPair& a,
                                                 const std::function<double(cplx, cplx)>& g, int resolution = 32)
{
    if (resolution < 4) throw DomainError("verify_change_of_variables: resolution must be at least 4");
    IdentityReport rep;
    rep.resolution = resolution;
    const auto l1 = detail::pulled_nodes(phi1, a.a1, resolution);
    const auto l2 = detail::pulled_nodes(phi2, a.a2, resolution);
    const auto r1 = detail::counting_nodes(phi1, a.a1, resolution);
    const auto r2 = detail::counting_nodes(phi2, a.a2, resolution);
    using S = std::span<const QuadratureRule::Node>;
    rep.lhs = integrate_nodes2d(g, S(l1), S(l2)).real();
    rep.rhs = integrate_nodes2d(g, S(r1), S(r2)).real();
    rep.gap = relative_gap(rep.lhs, rep.rhs);
    return rep;
}

/// f(phi1(z1), phi2(z2)) as a Taylor grid truncated at `order` in each variable.
inline TaylorGrid2D compose_separated(const TaylorGrid2D& f, const DiscSymbol& phi1, const DiscSymbol& phi2, int order)
{
    auto powers = [order](const DiscSymbol& phi, int n) {
        const auto s = phi.power_series(order).coeffs;
        std::vector<std::vector<cplx>> p{std::vector<cplx>(static_cast<std::size_t>(order + 1), 0.0)};
        p[0][0] = 1.0;
        for (int k = 1; k <= n; ++k) p.push_back(DiscSymbol::truncated_mul(p.back(), s, order));
        return p;
    };
    const auto p1 = powers(phi1, f.K()), p2 = powers(phi2, f.L());
    TaylorGrid2D h(order, order);
    for (int k = 0; k <= f.K(); ++k)
        for (int l = 0; l <= f.L(); ++l) {
            const cplx c = f(k, l);
            if (c == cplx(0.0)) continue;
            for (int m = 0; m <= order; ++m) {
                const cplx cm = c * p1[static_cast<std::size_t>(k)][static_cast<std::size_t>(m)];
                if (cm == cplx(0.0)) continue;
                for (int n = 0; n <= order; ++n) h(m, n) += cm * p2[static_cast<std::size_t>(l)][static_cast<std::size_t>(n)];
            }
        }
    return h;
}

struct ExpansionReport {
    EnergyTerms series;   // from the composed power series
    EnergyTerms counting; // from the counting-function integrals
    double total_series = 0.0, total_counting = 0.0, gap = 0.0;
    double point_gap = 0.0, slice1_gap = 0.0, slice2_gap = 0.0, mixed_gap = 0.0;
    double tail = 0.0; // |E(order) - E(order - 8)| of the series route
    int resolution = 0, order = 0;
};

/// Two routes to the log-weighted energy of f o Phi for a separated Phi:
///   series:   coefficients of the composed series (truncated substitution);
///   counting: |f(Phi(0))|^2 + int |d1 f(w1, phi2(0))|^2 N1 + int |d2 f(phi1(0), w2)|^2 N2
///             + int int |d1 d2 f|^2 N1 N2.
/// Throws AccuracyError when the truncation tail exceeds tail_tol relative to the energy.
inline ExpansionReport verify_separated_norm_expansion(const BidiscSymbol::Separated& s, const WeightPair& a,
                                                       const TaylorGrid2D& f, int resolution = 24, int order = 48,
                                                       double tail_tol = 1e-8)
{
    if (order < 16) throw DomainError("verify_separated_norm_expansion: order must be at least 16");
    ExpansionReport rep;
    rep.resolution = resolution;
    rep.order = order;
    rep.series = dirichlet_energy_log_terms(compose_separated(f, s.phi1, s.phi2, order), a);
    rep.total_series = rep.series.total();
    const double coarse = dirichlet_energy_log(compose_separated(f, s.phi1, s.phi2, order - 8), a);
    rep.tail = std::abs(rep.total_series - coarse);
    if (rep.tail > tail_tol * std::max(rep.total_series, 1e-300))
        throw AccuracyError("verify_separated_norm_expansion: composition truncation tail too large", rep.tail);

    const cplx c1 = s.phi1.value(0.0), c2 = s.phi2.value(0.0);
    // d1 f(., c2) and d2 f(c1, .) as one-variable polynomials
    TaylorGrid1D d1, d2;
    d1.coeffs.assign(static_cast<std::size_t>(std::max(f.K(), 1)), 0.0);
    d2.coeffs.assign(static_cast<std::size_t>(std::max(f.L(), 1)), 0.0);
    for (int k = 1; k <= f.K(); ++k) {
        cplx acc{};
        for (int l = f.L(); l >= 0; --l) acc = acc * c2 + f(k, l);
        d1.coeffs[static_cast<std::size_t>(k - 1)] = static_cast<double>(k) * acc;
    }
    for (int l = 1; l <= f.L(); ++l) {
        cplx acc{};
        for (int k = f.K(); k >= 0; --k) acc = acc * c1 + f(k, l);
        d2.coeffs[static_cast<std::size_t>(l - 1)] = static_cast<double>(l) * acc;
    }
    const TaylorGrid2D dm = mixed_partial(f);
    const auto n1 = detail::counting_nodes(s.phi1, a.a1, resolution);
    const auto n2 = detail::counting_nodes(s.phi2, a.a2, resolution);
    auto one_d = [](const std::vector<QuadratureRule::Node>& nodes, const TaylorGrid1D& p) {
        CompensatedSum<double> acc;
        for (const auto& n : nodes) acc.add(n.w * std::norm(p(n.z)));
        return acc.value();
    };
    using S = std::span<const QuadratureRule::Node>;
    rep.counting.point = std::norm(f.eval(c1, c2));
    rep.counting.slice1 = one_d(n1, d1);
    rep.counting.slice2 = one_d(n2, d2);
    rep.counting.mixed = integrate_nodes2d([&](cplx w1, cplx w2) { return std::norm(dm.eval(w1, w2)); }, S(n1), S(n2)).real();
    rep.total_counting = rep.counting.total();
    rep.gap = relative_gap(rep.total_series, rep.total_counting);
    rep.point_gap = relative_gap(rep.series.point, rep.counting.point);
    rep.slice1_gap = relative_gap(rep.series.slice1, rep.counting.slice1);
    rep.slice2_gap = relative_gap(rep.series.slice2, rep.counting.slice2);
    rep.mixed_gap = relative_gap(rep.series.mixed, rep.counting.mixed);
    return rep;
}

// ---------------------------------------------------------------------------------------------
// Regression fixtures

struct CovFixture {
    std::string name;
    DiscSymbol phi1, phi2;
    WeightPair a;
    GFunction g;
};

inline std::vector<CovFixture> cov_fixtures()
{
    struct Pair {
        std::string name;
        DiscSymbol p, q;
    };
    const std::vector<Pair> pairs{
        {"moebius", DiscSymbol::moebius(0.4), DiscSymbol::moebius(cplx(-0.3, 0.2))},
        {"square", DiscSymbol::polynomial({0.0, 0.0, 1.0}), DiscSymbol::polynomial({0.0, 0.0, 1.0})},
        {"blaschke2", DiscSymbol::blaschke({0.3, -0.5}), DiscSymbol::blaschke({cplx(0.0, 0.2), 0.4}, cplx(0.0, 1.0))},
        {"mixed", DiscSymbol::moebius(0.5), DiscSymbol::polynomial({0.0, 0.0, 1.0})},
    };
    const GFunction gs[] = {GFunction::one, GFunction::distance, GFunction::exponential};
    std::vector<CovFixture> out;
    int idx = 0;
    for (const auto& p : pairs)
        for (double a : {0.25, 0.4, 0.5}) {
            const GFunction g = gs[idx++ % 3];
            out.push_back({p.name + "-a" + format_number(a) + "-" + to_string(g), p.p, p.q, WeightPair(a, a), g});
        }
    return out;
}

struct ExpansionFixture {
    std::string name;
    DiscSymbol phi1, phi2;
    WeightPair a;
    TaylorGrid2D f;
};

inline std::vector<ExpansionFixture> expansion_fixtures()
{
    const auto sq = DiscSymbol::polynomial({0.0, 0.0, 1.0});
    TaylorGrid2D sum3(1, 1);
    sum3(1, 0) = sum3(0, 1) = sum3(1, 1) = 1.0;
    TaylorGrid2D quad(2, 2);
    quad(0, 0) = 0.5;
    quad(2, 1) = cplx(0.0, 1.0);
    quad(1, 2) = -0.7;
    quad(2, 2) = 0.3;
    TaylorGrid2D lin(2, 1);
    lin(1, 0) = 1.0;
    lin(2, 1) = cplx(0.4, -0.2);
    return {
        {"identity-z1z2", DiscSymbol::identity(), DiscSymbol::identity(), {0.25, 0.25}, TaylorGrid2D::monomial(1, 1)},
        {"moebius-z1z2", DiscSymbol::moebius(0.3), DiscSymbol::moebius(-0.2), {0.25, 0.25}, TaylorGrid2D::monomial(1, 1)},
        {"square-sum", sq, sq, {0.25, 0.25}, sum3},
        {"blaschke-moebius", DiscSymbol::blaschke({0.3, -0.5}), DiscSymbol::moebius(cplx(0.0, 0.2)), {0.4, 0.3}, quad},
        {"moebius-square", DiscSymbol::moebius(0.5), sq, {0.4, 0.25}, lin},
        {"blaschke-pair", DiscSymbol::blaschke({0.2, cplx(0.0, 0.4)}), DiscSymbol::blaschke({-0.3, 0.1}), {0.5, 0.4}, sum3},
    };
}

} // namespace holocomp
