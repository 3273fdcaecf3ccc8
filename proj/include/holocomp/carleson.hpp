#pragma once

// Carleson boxes on the bidisc, pull-back measures, the kernel-integral test and the one-box
// psi-condition sweep.

#include <holocomp/errors.hpp>
#include <holocomp/numeric.hpp>
#include <holocomp/quadrature.hpp>
#include <holocomp/symbols.hpp>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace holocomp {

/// {z in D^2 : |z_i - e^{i theta_i}| < delta_i}. Arc lengths are |I_i| = 2 delta_i.
struct CarlesonBox {
    double theta1 = 0.0, theta2 = 0.0;
    double delta1 = 1.0, delta2 = 1.0;

    void validate() const
    {
        if (!std::isfinite(theta1) || !std::isfinite(theta2)) throw DomainError("CarlesonBox: angles must be finite");
        if (!(delta1 > 0.0) || !(delta2 > 0.0) || !std::isfinite(delta1) || !std::isfinite(delta2))
            throw DomainError("CarlesonBox: radii must be positive and finite");
    }

    cplx zeta1() const { return std::polar(1.0, theta1); }
    cplx zeta2() const { return std::polar(1.0, theta2); }

    bool contains(const BidiscPoint& w) const
    {
        return std::abs(w.z1 - zeta1()) < delta1 && std::abs(w.z2 - zeta2()) < delta2;
    }

    /// |I x J| = |I| |J| = 4 delta1 delta2.
    double area() const { return 4.0 * delta1 * delta2; }
};

struct BoxUnion {
    std::vector<CarlesonBox> boxes;

    void validate() const
    {
        if (boxes.empty()) throw DomainError("BoxUnion: at least one box required");
        for (const auto& b : boxes) b.validate();
    }

    bool contains(const BidiscPoint& w) const
    {
        for (const auto& b : boxes)
            if (b.contains(w)) return true;
        return false;
    }
};

/// V_beta-measure of {z in D : |z - 1| < delta}; the full mass is 1/(beta+1).
/// With r_a = |1 - delta|, the circle of radius r meets the ball in an arc of relative length
/// arccos((1 + r^2 - delta^2)/(2r))/pi, which behaves like sqrt(r - r_a) near r_a; substituting
/// r = r_a + (1 - r_a) u^2 removes the square root. Geometric Gauss-Legendre panels toward u = 0
/// absorb the near-pole of the arc function at r = 0 when delta is close to 1, and a Gauss-Jacobi
/// panel carries (1 - u)^beta at the outer end.
inline double box_volume_1d(double delta, double beta)
{
    if (!(delta > 0.0)) throw DomainError("box_volume_1d: radius must be positive");
    if (!(beta > -1.0)) throw DomainError("box_volume_1d: beta must exceed -1");
    const double full = 1.0 / (beta + 1.0);
    if (delta >= 2.0) return full;

    const double ra = std::abs(1.0 - delta);
    const double d2 = delta * delta;
    auto fraction = [&](double r) {
        const double c = (1.0 + r * r - d2) / (2.0 * r);
        return std::acos(std::clamp(c, -1.0, 1.0)) / pi;
    };
    const double scale = std::pow(1.0 - ra, beta + 1.0);
    // integrand in u without the (1-u)^beta factor
    auto smooth = [&](double u) {
        const double r = ra + (1.0 - ra) * u * u;
        return fraction(r) * std::pow((1.0 + u) * (1.0 + r), beta) * 4.0 * r * u;
    };

    CompensatedSum<double> acc;
    const Rule1D gl = gauss_legendre01(16);
    constexpr int panels = 40;
    for (int k = panels; k >= 1; --k) {
        const double lo = std::ldexp(1.0, -k - 1), hi = std::ldexp(1.0, -k);
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double u = lo + (hi - lo) * gl.nodes[i];
            acc.add((hi - lo) * gl.weights[i] * smooth(u) * std::pow(1.0 - u, beta));
        }
    }
    // [1/2, 1] with u = (x + 3)/4: (1 - u)^beta = 4^{-beta} (1 - x)^beta, du = dx/4
    const Rule1D gj = gauss_jacobi(48, beta, 0.0);
    const double jac = std::pow(0.25, beta + 1.0);
    for (std::size_t i = 0; i < gj.nodes.size(); ++i) acc.add(jac * gj.weights[i] * smooth((gj.nodes[i] + 3.0) / 4.0));

    double inner = 0.0;
    if (delta > 1.0) inner = (1.0 - std::pow(1.0 - ra * ra, beta + 1.0)) / (beta + 1.0);
    return inner + scale * acc.value();
}

struct BoxVolume {
    double value = 0.0;       // quadrature
    McEstimate monte_carlo{}; // cross-check; value 0 and hits 0 when disabled
    std::size_t samples = 0;
};

struct BoxVolumeOptions {
    std::size_t mc_samples = 20000; // 0 disables the cross-check
    std::uint64_t seed = 1;
};

namespace detail {
/// Standard deviation used for MC agreement checks: never below the binomial value or one sample's weight.
inline double effective_sigma(const McEstimate& e, double total_mass, std::size_t n, double reference)
{
    const double nn = static_cast<double>(n);
    const double binom = std::sqrt(std::max(reference, 0.0) * total_mass / nn);
    return std::max({e.std_error, binom, total_mass / nn});
}
} // namespace detail

/// V_beta(S) as the product of one-variable volumes (the weight is a product and the measure is
/// rotation invariant), with an independent Monte Carlo cross-check.
inline BoxVolume box_volume(const CarlesonBox& box, double beta, const BoxVolumeOptions& opt = {})
{
    box.validate();
    BoxVolume out;
    out.value = box_volume_1d(box.delta1, beta) * box_volume_1d(box.delta2, beta);
    out.samples = opt.mc_samples;
    if (opt.mc_samples == 0) return out;
    const SampleCloud cloud = sample_dVbeta(beta, opt.mc_samples, opt.seed);
    out.monte_carlo = mc_integrate(cloud, [&](const BidiscPoint& z) { return box.contains(z) ? 1.0 : 0.0; });
    const double sigma = detail::effective_sigma(out.monte_carlo, cloud.total_mass, opt.mc_samples, out.value);
    if (std::abs(out.monte_carlo.value - out.value) > 4.0 * sigma) {
        std::ostringstream msg;
        msg << "box_volume: quadrature " << out.value << " and Monte Carlo " << out.monte_carlo.value
            << " disagree beyond 4 standard errors";
        throw ConsistencyError(msg.str());
    }
    return out;
}

/// V_beta o Phi^{-1}, represented by pushing a dV_beta sample cloud forward through Phi.
struct PullbackMeasure {
    BidiscSymbol phi = BidiscSymbol::identity();
    double beta = 0.0;
    std::size_t samples = 100000;
    std::uint64_t seed = 1;

    void validate() const
    {
        if (!(beta > -1.0)) throw DomainError("PullbackMeasure: beta must exceed -1");
        if (samples < 1) throw DomainError("PullbackMeasure: need at least one sample");
    }

    double total_mass() const { return 1.0 / ((beta + 1.0) * (beta + 1.0)); }

    /// Sample cloud of the pushed-forward measure: points Phi(z_j), weights unchanged.
    SampleCloud cloud() const
    {
        validate();
        SampleCloud c = sample_dVbeta(beta, samples, seed);
        c.points = parallel_map<BidiscPoint>(c.points.size(), [&](std::size_t j) { return phi.value(c.points[j]); });
        return c;
    }
};

inline constexpr std::size_t resolution_warning_samples = 10000;

struct PullbackVolume {
    McEstimate estimate;
    std::size_t samples = 0;
    std::vector<std::string> warnings;
};

inline PullbackVolume pullback_box_volume(const SampleCloud& pushed, const BoxUnion& boxes)
{
    boxes.validate();
    PullbackVolume out;
    out.samples = pushed.points.size();
    out.estimate = mc_integrate(pushed, [&](const BidiscPoint& w) { return boxes.contains(w) ? 1.0 : 0.0; });
    if (out.estimate.hits == 0 && out.samples < resolution_warning_samples)
        out.warnings.push_back("resolution: no sample landed in the boxes with fewer than 10^4 samples");
    return out;
}

inline PullbackVolume pullback_box_volume(const PullbackMeasure& m, const BoxUnion& boxes)
{
    return pullback_box_volume(m.cloud(), boxes);
}

/// Constants of the logarithmic product kernel; the test integrates the real majorant
/// (C1 + log 2/|1 - conj(w1) z1|)(C2 + log 2/|1 - conj(w2) z2|).
struct BidiscKernel {
    double c1 = 1.0, c2 = 1.0;

    void validate() const
    {
        if (!(c1 > 0.0) || !(c2 > 0.0)) throw DomainError("BidiscKernel: constants must be positive");
    }

    double surrogate(const BidiscPoint& w, const BidiscPoint& z) const
    {
        return (c1 + std::log(2.0 / std::abs(1.0 - std::conj(w.z1) * z.z1))) *
               (c2 + std::log(2.0 / std::abs(1.0 - std::conj(w.z2) * z.z2)));
    }
};

inline constexpr const char* surrogate_kernel_label = "log-product-majorant";

/// Probe points w = (p_i, p_k) over the product of a per-coordinate polar grid: the origin plus
/// `angles` points on each radius 1 - 2^{-j}, j = 1..levels.
struct ProbeGrid {
    int levels = 6;
    int angles = 8;

    void validate() const
    {
        if (levels < 0 || angles < 1) throw DomainError("ProbeGrid: need levels >= 0 and angles >= 1");
    }
    ProbeGrid refined() const { return {2 * levels, 2 * angles}; }

    std::vector<cplx> coordinate_points() const
    {
        std::vector<cplx> p{0.0};
        for (int j = 1; j <= levels; ++j)
            for (int m = 0; m < angles; ++m) p.push_back(std::polar(1.0 - std::ldexp(1.0, -j), 2.0 * pi * m / angles));
        return p;
    }
};

struct KernelIntegralReport {
    std::string kernel = surrogate_kernel_label;
    BidiscKernel constants;
    ProbeGrid grid;
    std::vector<cplx> coordinate_points;
    std::vector<double> values; // coordinate_points^2, first coordinate major
    double sup = 0.0;
    BidiscPoint argmax{};
};

/// sum_j weight_j kappa_w(z_j) for every probe w. The kernel factorizes, so the probe table is
/// A diag(weights) B^T with A_pj, B_qj the two logarithmic factors, accumulated in sample blocks.
inline KernelIntegralReport kernel_integral_test(const SampleCloud& mu, const BidiscKernel& kernel = {},
                                                 const ProbeGrid& grid = {})
{
    kernel.validate();
    grid.validate();
    if (mu.points.size() != mu.weights.size()) throw DomainError("kernel_integral_test: malformed sample cloud");
    KernelIntegralReport rep;
    rep.constants = kernel;
    rep.grid = grid;
    rep.coordinate_points = grid.coordinate_points();
    const auto P = static_cast<Eigen::Index>(rep.coordinate_points.size());
    const std::size_t n = mu.points.size();
    constexpr std::size_t block = 4096;
    const std::size_t nblocks = (n + block - 1) / block;

    const auto partial = parallel_map<Eigen::MatrixXd>(nblocks, [&](std::size_t b) {
        const std::size_t lo = b * block, hi = std::min(n, lo + block);
        const auto len = static_cast<Eigen::Index>(hi - lo);
        Eigen::MatrixXd A(P, len), B(P, len);
        for (Eigen::Index j = 0; j < len; ++j) {
            const BidiscPoint& z = mu.points[lo + static_cast<std::size_t>(j)];
            const double w = mu.weights[lo + static_cast<std::size_t>(j)];
            for (Eigen::Index p = 0; p < P; ++p) {
                const cplx q = std::conj(rep.coordinate_points[static_cast<std::size_t>(p)]);
                A(p, j) = w * (kernel.c1 + std::log(2.0 / std::abs(1.0 - q * z.z1)));
                B(p, j) = kernel.c2 + std::log(2.0 / std::abs(1.0 - q * z.z2));
            }
        }
        return Eigen::MatrixXd(A * B.transpose());
    });

    std::vector<CompensatedSum<double>> acc(static_cast<std::size_t>(P * P));
    for (const auto& m : partial)
        for (Eigen::Index p = 0; p < P; ++p)
            for (Eigen::Index q = 0; q < P; ++q) acc[static_cast<std::size_t>(p * P + q)].add(m(p, q));
    rep.values.resize(acc.size());
    bool any = false;
    for (std::size_t k = 0; k < acc.size(); ++k) {
        rep.values[k] = acc[k].value();
        if (!any || rep.values[k] > rep.sup) {
            rep.sup = rep.values[k];
            rep.argmax = {rep.coordinate_points[k / static_cast<std::size_t>(P)], rep.coordinate_points[k % static_cast<std::size_t>(P)]};
            any = true;
        }
    }
    return rep;
}

inline KernelIntegralReport kernel_integral_test(const PullbackMeasure& m, const BidiscKernel& kernel = {},
                                                 const ProbeGrid& grid = {})
{
    return kernel_integral_test(m.cloud(), kernel, grid);
}

using PsiFunction = std::function<double(double)>;

/// psi(t) = t^p, p >= 0.
inline PsiFunction psi_power(double p)
{
    if (!(p >= 0.0)) throw DomainError("psi_power: exponent must be nonnegative");
    return [p](double t) { return p == 0.0 ? 1.0 : std::pow(t, p); };
}

enum class Admissibility { admissible, inadmissible, inconclusive };

inline std::string to_string(Admissibility a)
{
    switch (a) {
    case Admissibility::admissible: return "admissible";
    case Admissibility::inadmissible: return "inadmissible";
    case Admissibility::inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

struct PsiOptions {
    int burn_in = 8;            // octaves before any verdict
    int max_octaves = 40;
    double cauchy_tol = 1e-3;   // relative increment declaring convergence
    double divergence_step = 0.10;
    int divergence_run = 5;     // consecutive octaves above divergence_step
};

struct PsiReport {
    Admissibility verdict = Admissibility::inconclusive;
    double value = std::numeric_limits<double>::infinity(); // extrapolated integral when admissible
    double last_partial = 0.0;
    int octaves = 0;
    std::vector<double> partials; // integral over [2 pi 2^{-k}, 2 pi]^2, k = 1..octaves
};

/// Integral of psi(xy)/(xy) over (0, 2 pi]^2 by dyadic refinement toward the axes: octave k adds
/// the cells J_m x J_n with max(m, n) = k - 1, where J_m = [2 pi 2^{-m-1}, 2 pi 2^{-m}], each
/// integrated with a 16 x 16 Gauss-Legendre rule. Converged partial sums are Aitken-extrapolated.
inline PsiReport psi_admissibility(const PsiFunction& psi, const PsiOptions& opt = {})
{
    constexpr double top = 4.0 * pi * pi;
    double prev = -1.0;
    for (int k = 0; k <= 160; ++k) {
        const double t = top * std::exp2(-0.5 * k);
        const double v = psi(t);
        if (!std::isfinite(v) || v < 0.0) throw DomainError("psi_admissibility: psi must be finite and nonnegative");
        if (prev >= 0.0 && v > prev * (1.0 + 1e-12) + 1e-300)
            throw DomainError("psi_admissibility: psi must be nondecreasing");
        prev = v;
    }

    const Rule1D gl = gauss_legendre01(16);
    auto interval = [](int m) { return std::pair{2.0 * pi * std::ldexp(1.0, -m - 1), 2.0 * pi * std::ldexp(1.0, -m)}; };
    auto cell = [&](int m, int n) {
        const auto [a1, b1] = interval(m);
        const auto [a2, b2] = interval(n);
        CompensatedSum<double> acc;
        for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
            const double x = a1 + (b1 - a1) * gl.nodes[i];
            for (std::size_t j = 0; j < gl.nodes.size(); ++j) {
                const double y = a2 + (b2 - a2) * gl.nodes[j];
                acc.add(gl.weights[i] * gl.weights[j] * psi(x * y) / (x * y));
            }
        }
        return (b1 - a1) * (b2 - a2) * acc.value();
    };

    PsiReport rep;
    CompensatedSum<double> total;
    int run = 0;
    for (int k = 1; k <= opt.max_octaves; ++k) {
        const int m = k - 1;
        CompensatedSum<double> add;
        add.add(cell(m, m));
        for (int n = 0; n < m; ++n) add.add(2.0 * cell(m, n));
        const double inc = add.value();
        total.add(inc);
        const double cur = total.value();
        rep.partials.push_back(cur);
        rep.octaves = k;
        rep.last_partial = cur;
        if (k <= opt.burn_in) continue;
        const double rel = cur > 0.0 ? inc / cur : 0.0;
        run = rel > opt.divergence_step ? run + 1 : 0;
        if (run >= opt.divergence_run) {
            rep.verdict = Admissibility::inadmissible;
            rep.value = std::numeric_limits<double>::infinity();
            return rep;
        }
        if (rel <= opt.cauchy_tol) {
            rep.verdict = Admissibility::admissible;
            const std::size_t s = rep.partials.size();
            const double d1 = rep.partials[s - 1] - rep.partials[s - 2];
            const double d0 = rep.partials[s - 2] - rep.partials[s - 3];
            const double denom = d1 - d0;
            const double aitken = denom != 0.0 ? cur - d1 * d1 / denom : cur;
            // only accept an extrapolation that moves forward by at most the geometric tail bound
            rep.value = (std::isfinite(aitken) && aitken >= cur && aitken - cur <= 100.0 * d1) ? aitken : cur;
            return rep;
        }
    }
    rep.verdict = Admissibility::inconclusive;
    return rep;
}

struct OneBoxOptions {
    int centers = 8;   // angles per coordinate
    int max_level = 10; // delta = 2^{-j}, j = 0..max_level
    std::size_t min_hits = 10; // a level is resolved when some box has at least this many hits
};

struct OneBoxRow {
    int level = 0;
    double theta1 = 0.0, theta2 = 0.0;
    double volume = 0.0, ratio = 0.0, std_error = 0.0;
    std::size_t hits = 0;
};

struct OneBoxReport {
    double beta = 0.0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    OneBoxOptions options;
    Admissibility psi_verdict = Admissibility::inconclusive;
    double psi_integral = 0.0;
    std::vector<OneBoxRow> rows;           // level-major, then theta1, then theta2
    std::vector<double> profile;           // max ratio per level
    std::vector<double> proof_profile;     // max of volume / psi(min(64 delta^2, 4 pi^2)) per level
    std::vector<bool> resolved;
    double sup = 0.0;
    double full_box_ratio = 0.0;           // total mass / psi(4 pi^2)
    Verdict verdict = Verdict::inconclusive;
    std::vector<std::string> warnings;

    /// CSV with columns j, theta1, theta2, volume, ratio, stderr.
    std::string to_csv() const
    {
        std::ostringstream out;
        out << "j,theta1,theta2,volume,ratio,stderr\n";
        for (const auto& r : rows)
            out << r.level << ',' << format_number(r.theta1) << ',' << format_number(r.theta2) << ','
                << format_number(r.volume) << ',' << format_number(r.ratio) << ',' << format_number(r.std_error) << '\n';
        return out.str();
    }
};

/// Sweeps boxes with delta1 = delta2 = 2^{-j} centred on a centers x centers angular grid and
/// records mu(S)/psi(|I x J|). The growth test uses the resolved levels only; a trailing run of
/// unresolved levels is reported as a warning.
inline OneBoxReport one_box_sufficient_check(const PullbackMeasure& m, const PsiFunction& psi, const OneBoxOptions& opt = {})
{
    if (opt.centers < 1 || opt.max_level < 0) throw DomainError("one_box_sufficient_check: invalid sweep");
    const PsiReport adm = psi_admissibility(psi);
    if (adm.verdict == Admissibility::inadmissible) throw DomainError("one_box_sufficient_check: psi is not admissible");

    OneBoxReport rep;
    rep.beta = m.beta;
    rep.samples = m.samples;
    rep.seed = m.seed;
    rep.options = opt;
    rep.psi_verdict = adm.verdict;
    rep.psi_integral = adm.value;
    if (adm.verdict == Admissibility::inconclusive) rep.warnings.push_back("psi admissibility inconclusive");

    const SampleCloud cloud = m.cloud();
    const std::size_t n = cloud.points.size();
    const std::size_t nb = std::min(mc_batches, n);
    const auto C = static_cast<std::size_t>(opt.centers);
    const auto L = static_cast<std::size_t>(opt.max_level) + 1;
    auto angle = [&](std::size_t c) { return 2.0 * pi * static_cast<double>(c) / static_cast<double>(C); };

    std::vector<double> batch_w(nb, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
        CompensatedSum<double> acc;
        for (std::size_t j = b * n / nb; j < (b + 1) * n / nb; ++j) acc.add(cloud.weights[j]);
        batch_w[b] = acc.value();
    }

    // deepest level containing the sample: largest j <= max_level with d < 2^{-j}, or -1
    auto level_of = [&](double d) {
        int j = -1;
        while (j < opt.max_level && d < std::ldexp(1.0, -(j + 1))) ++j;
        return j;
    };

    struct CenterResult {
        std::vector<double> volume, stderr_;
        std::vector<std::size_t> hits;
    };
    const auto results = parallel_map<CenterResult>(C * C, [&](std::size_t idx) {
        const cplx z1 = std::polar(1.0, angle(idx / C)), z2 = std::polar(1.0, angle(idx % C));
        // per-batch weight landing at exactly each level, then cumulated toward coarse levels
        std::vector<std::vector<CompensatedSum<double>>> sums(nb, std::vector<CompensatedSum<double>>(L));
        std::vector<std::size_t> count(L, 0);
        for (std::size_t b = 0; b < nb; ++b)
            for (std::size_t j = b * n / nb; j < (b + 1) * n / nb; ++j) {
                const BidiscPoint& w = cloud.points[j];
                const int lev = level_of(std::max(std::abs(w.z1 - z1), std::abs(w.z2 - z2)));
                if (lev < 0) continue;
                sums[b][static_cast<std::size_t>(lev)].add(cloud.weights[j]);
                ++count[static_cast<std::size_t>(lev)];
            }
        CenterResult r{std::vector<double>(L), std::vector<double>(L), std::vector<std::size_t>(L)};
        std::vector<double> cum(nb, 0.0);
        std::size_t cum_hits = 0;
        for (std::size_t lev = L; lev-- > 0;) {
            CompensatedSum<double> tot;
            for (std::size_t b = 0; b < nb; ++b) {
                cum[b] += sums[b][lev].value();
                tot.add(cum[b]);
            }
            cum_hits += count[lev];
            r.volume[lev] = tot.value();
            r.stderr_[lev] = batch_means_error(cum, batch_w, cloud.total_mass);
            r.hits[lev] = cum_hits;
        }
        return r;
    });

    rep.profile.assign(L, 0.0);
    rep.proof_profile.assign(L, 0.0);
    rep.resolved.assign(L, false);
    for (std::size_t lev = 0; lev < L; ++lev) {
        const double delta = std::ldexp(1.0, -static_cast<int>(lev));
        const double area = 4.0 * delta * delta;
        const double psi_area = psi(area);
        const double psi_proof = psi(std::min(64.0 * delta * delta, 4.0 * pi * pi));
        if (!(psi_area > 0.0)) throw DomainError("one_box_sufficient_check: psi vanishes at a box size");
        for (std::size_t idx = 0; idx < C * C; ++idx) {
            const auto& r = results[idx];
            OneBoxRow row{static_cast<int>(lev), angle(idx / C), angle(idx % C), r.volume[lev], r.volume[lev] / psi_area,
                          r.stderr_[lev] / psi_area, r.hits[lev]};
            rep.profile[lev] = std::max(rep.profile[lev], row.ratio);
            rep.proof_profile[lev] = std::max(rep.proof_profile[lev], r.volume[lev] / psi_proof);
            if (r.hits[lev] >= opt.min_hits) rep.resolved[lev] = true;
            rep.rows.push_back(row);
        }
        rep.sup = std::max(rep.sup, rep.profile[lev]);
    }
    rep.full_box_ratio = m.total_mass() / psi(4.0 * pi * pi);

    std::size_t resolved_levels = 0;
    while (resolved_levels < L && rep.resolved[resolved_levels]) ++resolved_levels;
    if (resolved_levels < L) {
        std::ostringstream msg;
        msg << "resolution: levels j >= " << resolved_levels << " have fewer than " << opt.min_hits
            << " hits in every box and are excluded from the verdict";
        rep.warnings.push_back(msg.str());
    }
    const std::vector<double> used(rep.profile.begin(), rep.profile.begin() + static_cast<std::ptrdiff_t>(resolved_levels));
    rep.verdict = used.size() >= 4 ? growth_verdict(used, used.size() - 4) : Verdict::inconclusive;
    if (rep.psi_verdict == Admissibility::inconclusive && rep.verdict == Verdict::finite_evidence) rep.verdict = Verdict::inconclusive;
    return rep;
}

} // namespace holocomp
