#pragma once

// Generalized Nevanlinna counting function, sup-ratio profiles and the sub-mean diagnostic.

#include <holocomp/errors.hpp>
#include <holocomp/numeric.hpp>
#include <holocomp/quadrature.hpp>
#include <holocomp/symbols.hpp>

#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace holocomp {

/// Grid points closer than this to phi(0) or a critical value are flagged.
inline constexpr double ratio_flag_radius = 1e-9;

namespace detail {
inline void require_dirichlet_a(double a, const char* who)
{
    if (!(a > 0.0 && a <= 0.5)) throw DomainError(std::string(who) + ": a must lie in (0, 1/2]");
}
} // namespace detail

/// N_{phi,a}(z) = sum over preimages w (with multiplicity) of (log 1/|w|)^{1-2a}.
/// Infinite at z = phi(0) when a < 1/2.
inline double counting_function(const DiscSymbol& phi, double a, cplx z)
{
    detail::require_dirichlet_a(a, "counting_function");
    if (!(std::abs(z) < 1.0)) throw DomainError("counting_function: point outside the open disc");
    const double g = 1.0 - 2.0 * a;
    double total = 0.0;
    for (const Preimage& p : phi.preimages(z)) {
        const double r = std::abs(p.z);
        const double term = g == 0.0 ? 1.0 : (r == 0.0 ? std::numeric_limits<double>::infinity() : std::pow(-std::log(r), g));
        total += p.multiplicity * term;
    }
    return total;
}

enum class PointFlag { none, phi_origin, critical_value, boundary_ambiguous, solver_failure };

inline std::string to_string(PointFlag f)
{
    switch (f) {
    case PointFlag::none: return "";
    case PointFlag::phi_origin: return "phi0";
    case PointFlag::critical_value: return "critical";
    case PointFlag::boundary_ambiguous: return "boundary";
    case PointFlag::solver_failure: return "solver";
    }
    return "";
}

/// Polar grid: radial levels times M equispaced angles 2 pi m / M.
struct RatioGrid {
    std::vector<double> radii;
    int angles = 256;

    /// r_j = 1 - 2^{-j}, j = 1..levels.
    static RatioGrid dyadic(int levels = 14, int angles = 256)
    {
        RatioGrid g;
        for (int j = 1; j <= levels; ++j) g.radii.push_back(1.0 - std::ldexp(1.0, -j));
        g.angles = angles;
        return g;
    }

    double angle(int m) const { return 2.0 * pi * m / angles; }

    void validate() const
    {
        if (radii.empty() || angles < 1) throw DomainError("ratio grid must be nonempty");
        for (double r : radii)
            if (!(r >= 0.0 && r < 1.0)) throw DomainError("ratio grid radii must lie in [0, 1)");
    }
};

struct RatioReport {
    RatioGrid grid;
    double a = 0.0;
    std::vector<double> ratio;    // radial-major, radii.size() x angles
    std::vector<PointFlag> flags; // same layout
    std::vector<double> profile;  // max non-flagged ratio per radial level
    double sup = 0.0;
    cplx argmax{};
    std::size_t flagged = 0;

    double at(std::size_t i, int m) const { return ratio[i * static_cast<std::size_t>(grid.angles) + static_cast<std::size_t>(m)]; }

    /// CSV with columns r, theta, ratio, flag.
    std::string to_csv() const
    {
        std::ostringstream out;
        out << "r,theta,ratio,flag\n";
        for (std::size_t i = 0; i < grid.radii.size(); ++i)
            for (int m = 0; m < grid.angles; ++m) {
                const std::size_t k = i * static_cast<std::size_t>(grid.angles) + static_cast<std::size_t>(m);
                out << format_number(grid.radii[i]) << ',' << format_number(grid.angle(m)) << ','
                    << format_number(ratio[k]) << ',' << to_string(flags[k]) << '\n';
            }
        return out.str();
    }
};

/// N_{phi,a}(z) / (1 - |z|^2)^{1-2a} over the grid. Points at phi(0), at critical values, or where
/// preimage solving fails are flagged and excluded from the sup.
inline RatioReport sup_ratio(const DiscSymbol& phi, double a, const RatioGrid& grid = RatioGrid::dyadic())
{
    detail::require_dirichlet_a(a, "sup_ratio");
    grid.validate();
    const double g = 1.0 - 2.0 * a;
    std::vector<cplx> special{phi.value(0.0)};
    const std::size_t n_origin = special.size();
    for (const cplx& c : phi.critical_points()) special.push_back(phi.value(c));

    const std::size_t M = static_cast<std::size_t>(grid.angles);
    struct Cell {
        double ratio;
        PointFlag flag;
    };
    const auto cells = parallel_map<Cell>(grid.radii.size() * M, [&](std::size_t k) -> Cell {
        const double r = grid.radii[k / M];
        const cplx z = std::polar(r, grid.angle(static_cast<int>(k % M)));
        for (std::size_t s = 0; s < special.size(); ++s)
            if (std::abs(z - special[s]) < ratio_flag_radius)
                return {std::numeric_limits<double>::quiet_NaN(), s < n_origin ? PointFlag::phi_origin : PointFlag::critical_value};
        try {
            return {counting_function(phi, a, z) / std::pow(1.0 - r * r, g), PointFlag::none};
        } catch (const BoundaryAmbiguityError&) {
            return {std::numeric_limits<double>::quiet_NaN(), PointFlag::boundary_ambiguous};
        } catch (const NumericalError&) {
            return {std::numeric_limits<double>::quiet_NaN(), PointFlag::solver_failure};
        }
    });

    RatioReport rep;
    rep.grid = grid;
    rep.a = a;
    rep.ratio.reserve(cells.size());
    rep.flags.reserve(cells.size());
    rep.profile.assign(grid.radii.size(), 0.0);
    bool any = false;
    for (std::size_t k = 0; k < cells.size(); ++k) {
        rep.ratio.push_back(cells[k].ratio);
        rep.flags.push_back(cells[k].flag);
        if (cells[k].flag != PointFlag::none) {
            ++rep.flagged;
            continue;
        }
        const std::size_t i = k / M;
        rep.profile[i] = std::max(rep.profile[i], cells[k].ratio);
        if (!any || cells[k].ratio > rep.sup) {
            rep.sup = cells[k].ratio;
            rep.argmax = std::polar(grid.radii[i], grid.angle(static_cast<int>(k % M)));
            any = true;
        }
    }
    if (!any) rep.sup = std::numeric_limits<double>::quiet_NaN();
    return rep;
}

/// Growth test of a radial profile against its mid-radius level.
inline Verdict profile_verdict(const std::vector<double>& profile)
{
    return growth_verdict(profile, profile.size() / 2);
}

struct SeparatedVerdict {
    Verdict verdict = Verdict::inconclusive;
    RatioReport report1, report2;
    Verdict verdict1 = Verdict::inconclusive, verdict2 = Verdict::inconclusive;

    double sup1() const { return report1.sup; }
    double sup2() const { return report2.sup; }
    bool bounded_evidence() const { return verdict == Verdict::finite_evidence; }
};

inline Verdict combine(Verdict x, Verdict y)
{
    if (x == Verdict::growth_detected || y == Verdict::growth_detected) return Verdict::growth_detected;
    if (x == Verdict::inconclusive || y == Verdict::inconclusive) return Verdict::inconclusive;
    return Verdict::finite_evidence;
}

inline SeparatedVerdict separated_verdict(const BidiscSymbol::Separated& s, const WeightPair& a,
                                          const RatioGrid& grid = RatioGrid::dyadic())
{
    SeparatedVerdict v;
    v.report1 = sup_ratio(s.phi1, a.a1, grid);
    v.report2 = sup_ratio(s.phi2, a.a2, grid);
    v.verdict1 = profile_verdict(v.report1.profile);
    v.verdict2 = profile_verdict(v.report2.profile);
    v.verdict = combine(v.verdict1, v.verdict2);
    return v;
}

/// Throws SymbolKindError for a polynomial-pair symbol.
inline SeparatedVerdict separated_verdict(const BidiscSymbol& s, const WeightPair& a,
                                          const RatioGrid& grid = RatioGrid::dyadic())
{
    return separated_verdict(s.as_separated(), a, grid);
}

struct AlemanReport {
    cplx omega{};
    double radius = 0.0;      // (1 - |omega|^2) / 2
    double value = 0.0;       // N(omega)
    double average = 0.0;     // mean of N over D(omega), normalized area
    double ratio = 0.0;       // value / average
    double stated_bound = 0.0; // 4 / (1 - |omega|^2) * int_{D(omega)} N dA, reported unasserted
    std::size_t nodes_used = 0;
};

/// Compares N(omega) with its mean over |z - omega| < (1 - |omega|^2)/2. The mean uses a polar
/// Gauss-Legendre rule with `order` radial nodes in s = (|z - omega| / radius)^2 and 2*order angles.
inline AlemanReport aleman_diagnostic(const DiscSymbol& phi, double a, cplx omega, int order = 24)
{
    detail::require_dirichlet_a(a, "aleman_diagnostic");
    const double m = std::abs(omega);
    if (!(m > 0.5 && m < 1.0 - 1e-3)) throw DomainError("aleman_diagnostic: need 1/2 < |omega| < 1 - 1e-3");
    if (order < 2) throw DomainError("aleman_diagnostic: order must be at least 2");

    AlemanReport rep;
    rep.omega = omega;
    rep.radius = 0.5 * (1.0 - m * m);
    rep.value = counting_function(phi, a, omega);

    const Rule1D gl = gauss_legendre01(order);
    const int M = 2 * order;
    const auto rows = parallel_map<double>(gl.nodes.size(), [&](std::size_t i) {
        CompensatedSum<double> acc;
        const double rho = rep.radius * std::sqrt(gl.nodes[i]);
        for (int k = 0; k < M; ++k)
            acc.add(counting_function(phi, a, omega + std::polar(rho, 2.0 * pi * (k + 0.5) / M)));
        return gl.weights[i] * acc.value() / M;
    });
    CompensatedSum<double> mean;
    for (double r : rows) mean.add(r);
    rep.average = mean.value();
    rep.ratio = rep.value / rep.average;
    // normalized area of D(omega) is radius^2
    rep.stated_bound = 4.0 / (1.0 - m * m) * rep.average * rep.radius * rep.radius;
    rep.nodes_used = gl.nodes.size() * static_cast<std::size_t>(M);
    return rep;
}

} // namespace holocomp
