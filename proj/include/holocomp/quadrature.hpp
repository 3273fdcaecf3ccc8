#pragma once

// Weighted quadrature on the disc and bidisc, plus seeded sampling of dV_beta.
//
// Area measure is normalized: dA = (1/pi) dx dy, so the unit disc has mass 1.
// Radial integrals are carried out in s = |z|^2, where
//     int_D F (1-|z|^2)^g dA = (1/2pi) int_0^{2pi} int_0^1 F (1-s)^g ds dtheta.

#include <holocomp/errors.hpp>
#include <holocomp/numeric.hpp>

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace holocomp {

/// Nodes and weights of a one-dimensional rule.
struct Rule1D {
    std::vector<double> nodes;
    std::vector<double> weights;
};

namespace detail {

/// Gauss rule from a symmetric tridiagonal Jacobi matrix (Golub-Welsch).
inline Rule1D golub_welsch(const std::vector<double>& diag, const std::vector<double>& offdiag, double mass)
{
    const auto n = static_cast<Eigen::Index>(diag.size());
    Eigen::VectorXd d = Eigen::Map<const Eigen::VectorXd>(diag.data(), n);
    Eigen::VectorXd e(n > 1 ? n - 1 : 0);
    for (Eigen::Index i = 0; i + 1 < n; ++i) e[i] = offdiag[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    Rule1D r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        r.nodes[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
        const double v0 = es.eigenvectors()(0, i);
        r.weights[static_cast<std::size_t>(i)] = mass * v0 * v0;
    }
    return r;
}

} // namespace detail

/// Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^alpha (1+x)^beta.
/// Initial guesses from the Jacobi matrix, then Newton on the recurrence-evaluated
/// polynomial; weights from the closed-form Christoffel numbers.
inline Rule1D gauss_jacobi(int n, double alpha, double beta)
{
    if (n < 1) throw DomainError("gauss_jacobi: order must be positive");
    if (!(alpha > -1.0) || !(beta > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");

    const double ab = alpha + beta;
    std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
    diag[0] = (beta - alpha) / (ab + 2.0);
    for (int k = 1; k < n; ++k) {
        const double t = 2.0 * k + ab;
        diag[static_cast<std::size_t>(k)] = (beta * beta - alpha * alpha) / (t * (t + 2.0));
        double b;
        if (k == 1)
            b = 4.0 * (1.0 + alpha) * (1.0 + beta) / ((ab + 2.0) * (ab + 2.0) * (ab + 3.0));
        else
            b = 4.0 * k * (k + alpha) * (k + beta) * (k + ab) / (t * t * (t + 1.0) * (t - 1.0));
        off[static_cast<std::size_t>(k - 1)] = std::sqrt(b);
    }
    Rule1D guess = detail::golub_welsch(diag, off, 1.0);

    Rule1D r;
    r.nodes.resize(static_cast<std::size_t>(n));
    r.weights.resize(static_cast<std::size_t>(n));
    const double log_scale = std::lgamma(alpha + n + 1.0) + std::lgamma(beta + n + 1.0) - std::lgamma(n + 1.0)
                           - std::lgamma(n + ab + 1.0);
    for (int i = 0; i < n; ++i) {
        double z = guess.nodes[static_cast<std::size_t>(i)];
        double pp = 1.0, p2 = 1.0;
        for (int it = 0; it < 100; ++it) {
            double temp = 2.0 + ab;
            double p1 = (alpha - beta + temp * z) / 2.0;
            p2 = 1.0;
            for (int j = 2; j <= n; ++j) {
                const double p3 = p2;
                p2 = p1;
                temp = 2.0 * j + ab;
                const double a = 2.0 * j * (j + ab) * (temp - 2.0);
                const double b = (temp - 1.0) * (alpha * alpha - beta * beta + temp * (temp - 2.0) * z);
                const double c = 2.0 * (j - 1 + alpha) * (j - 1 + beta) * temp;
                p1 = (b * p2 - c * p3) / a;
            }
            pp = (n * (alpha - beta - temp * z) * p1 + 2.0 * (n + alpha) * (n + beta) * p2) / (temp * (1.0 - z * z));
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        // Christoffel number in the P'_n * P_{n-1} form, which avoids the (1-x^2) cancellation
        const double temp = 2.0 * n + ab;
        const double w = std::exp(log_scale - std::log(n + alpha) - std::log(n + beta)) * temp * std::pow(2.0, ab)
                       / (pp * p2);
        r.nodes[static_cast<std::size_t>(i)] = z;
        r.weights[static_cast<std::size_t>(i)] = w;
    }
    // the lgamma scale drifts by ~1e-14 at moderate n; pin the total to the exact mass
    const double mass = ab + 2.0 < 170.0
        ? std::pow(2.0, ab + 1.0) * std::tgamma(alpha + 1.0) * std::tgamma(beta + 1.0) / std::tgamma(ab + 2.0)
        : std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    CompensatedSum<double> total;
    for (double w : r.weights) total.add(w);
    const double fix = mass / total.value();
    for (double& w : r.weights) w *= fix;
    return r;
}

/// Gauss-Legendre rule on [0, 1].
inline Rule1D gauss_legendre01(int n)
{
    Rule1D gj = gauss_jacobi(n, 0.0, 0.0);
    for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
        gj.nodes[i] = 0.5 * (gj.nodes[i] + 1.0);
        gj.weights[i] *= 0.5;
    }
    return gj;
}

/// Radial weight family.
///   standard:    (1 - |z|^2)^gamma        (weights dA_a, dA_beta)
///   logarithmic: (log 1/|z|)^gamma        (the weight of the counting-function change of variables)
enum class RadialWeight { standard, logarithmic };

namespace detail {

/// Rule on s in [0,1] for the weight (1-s)^gamma.
inline Rule1D radial_standard(int n, double gamma)
{
    Rule1D gj = gauss_jacobi(n, gamma, 0.0);
    const double scale = std::pow(2.0, -gamma - 1.0);
    for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
        gj.nodes[i] = 0.5 * (gj.nodes[i] + 1.0);
        gj.weights[i] *= scale;
    }
    return gj;
}

/// Rule on s in [0,1] for the weight (-log(s)/2)^gamma, by the discretized Stieltjes
/// procedure on a composite Gauss-Legendre discretization graded toward both ends.
inline Rule1D radial_logarithmic(int n, double gamma)
{
    const Rule1D gl = gauss_legendre01(24);
    std::vector<double> breaks{0.0};
    for (int j = 60; j >= 2; --j) breaks.push_back(std::ldexp(1.0, -j));
    breaks.push_back(0.5);
    for (int j = 2; j <= 52; ++j) breaks.push_back(1.0 - std::ldexp(1.0, -j));
    breaks.push_back(1.0);

    std::vector<double> xs, ws;
    for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
        const double a = breaks[p], b = breaks[p + 1];
        for (std::size_t k = 0; k < gl.nodes.size(); ++k) {
            const double s = a + (b - a) * gl.nodes[k];
            const double w = (b - a) * gl.weights[k] * std::pow(-0.5 * std::log(s), gamma);
            xs.push_back(s);
            ws.push_back(w);
        }
    }

    const std::size_t m = xs.size();
    double mass = 0.0;
    for (double w : ws) mass += w;
    std::vector<double> q_prev(m, 0.0), q(m, 1.0 / std::sqrt(mass)), q_next(m);
    std::vector<double> diag(static_cast<std::size_t>(n)), off(static_cast<std::size_t>(n > 1 ? n - 1 : 0));
    double b_prev = 0.0;
    for (int j = 0; j < n; ++j) {
        double a = 0.0;
        for (std::size_t k = 0; k < m; ++k) a += ws[k] * xs[k] * q[k] * q[k];
        diag[static_cast<std::size_t>(j)] = a;
        if (j + 1 == n) break;
        double norm2 = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            q_next[k] = (xs[k] - a) * q[k] - b_prev * q_prev[k];
            norm2 += ws[k] * q_next[k] * q_next[k];
        }
        // one reorthogonalization pass keeps the recurrence clean for larger n
        double c0 = 0.0, c1 = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            c0 += ws[k] * q_next[k] * q[k];
            c1 += ws[k] * q_next[k] * q_prev[k];
        }
        norm2 = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            q_next[k] -= c0 * q[k] + c1 * q_prev[k];
            norm2 += ws[k] * q_next[k] * q_next[k];
        }
        const double b = std::sqrt(norm2);
        off[static_cast<std::size_t>(j)] = b;
        for (std::size_t k = 0; k < m; ++k) {
            q_prev[k] = q[k];
            q[k] = q_next[k] / b;
        }
        b_prev = b;
    }
    return golub_welsch(diag, off, mass);
}

} // namespace detail

/// Tensor rule on the disc: Gauss radial nodes in s = |z|^2 against the radial weight,
/// uniform angles theta_m = 2 pi m / M.
class QuadratureRule {
public:
    QuadratureRule() = default;

    RadialWeight weight() const { return weight_; }
    double gamma() const { return gamma_; }
    int radial_order() const { return static_cast<int>(radial_.nodes.size()); }
    int angular_order() const { return angular_; }
    std::size_t size() const { return radial_.nodes.size() * static_cast<std::size_t>(angular_); }

    /// int_D (weight) dA: 1/(gamma+1) for standard, Gamma(gamma+1)/2^gamma for logarithmic.
    double total_mass() const
    {
        if (weight_ == RadialWeight::standard) return 1.0 / (gamma_ + 1.0);
        return std::tgamma(gamma_ + 1.0) / std::pow(2.0, gamma_);
    }

    const Rule1D& radial() const { return radial_; }

    /// Flattened nodes (radial-major) with weights summing to total_mass().
    struct Node {
        cplx z;
        double w;
    };
    std::vector<Node> nodes() const
    {
        std::vector<Node> out;
        out.reserve(size());
        for (std::size_t i = 0; i < radial_.nodes.size(); ++i) {
            const double r = std::sqrt(radial_.nodes[i]);
            for (int m = 0; m < angular_; ++m) {
                const double th = 2.0 * pi * m / angular_;
                out.push_back({std::polar(r, th), radial_.weights[i] / angular_});
            }
        }
        return out;
    }

    /// Same family at half resolution; used as the error sentinel.
    QuadratureRule coarsened() const;

    friend QuadratureRule build_rule(double gamma, int radial_order, int angular_order, RadialWeight weight);

private:
    RadialWeight weight_ = RadialWeight::standard;
    double gamma_ = 0.0;
    Rule1D radial_;
    int angular_ = 0;
};

/// Builds a disc rule exact for radial polynomials in |z|^2 of degree <= 2n-1 against the
/// weight, and for angular harmonics of degree < M.
inline QuadratureRule build_rule(double gamma, int radial_order, int angular_order,
                                 RadialWeight weight = RadialWeight::standard)
{
    if (!(gamma > -1.0) || !std::isfinite(gamma)) throw DomainError("build_rule: gamma must exceed -1");
    if (radial_order < 4) throw DomainError("build_rule: radial order must be >= 4");
    if (angular_order < 8) throw DomainError("build_rule: angular order must be >= 8");
    QuadratureRule q;
    q.weight_ = weight;
    q.gamma_ = gamma;
    q.angular_ = angular_order;
    if (weight == RadialWeight::standard || gamma == 0.0)
        q.radial_ = detail::radial_standard(radial_order, gamma);
    else
        q.radial_ = detail::radial_logarithmic(radial_order, gamma);
    return q;
}

inline QuadratureRule QuadratureRule::coarsened() const
{
    // below the public minimum on purpose, so a minimal rule still gets a non-trivial sentinel
    QuadratureRule q = *this;
    const int n = std::max(2, radial_order() / 2);
    q.angular_ = std::max(4, angular_ / 2);
    if (weight_ == RadialWeight::standard || gamma_ == 0.0)
        q.radial_ = detail::radial_standard(n, gamma_);
    else
        q.radial_ = detail::radial_logarithmic(n, gamma_);
    return q;
}

/// Quadrature value with the half-resolution sentinel difference.
struct IntegrationResult {
    cplx value{};
    double error_estimate = 0.0;
    std::size_t nodes_used = 0;

    double real() const { return value.real(); }
};

/// Rule for plain dA on the disc in polar coordinates centred at an interior point p,
/// w = p + rho e^{i theta}, rho in [0, R(theta)]. Moves a point singularity of the integrand
/// at p onto the radial endpoint. With outer_gamma > 0 the radial nodes follow the Jacobi
/// weight (1-t)^outer_gamma at the circle and the weights are divided back, which suits
/// integrands that vanish like (1-|w|)^outer_gamma.
inline std::vector<QuadratureRule::Node> centered_disc_nodes(cplx p, int radial_order, int angular_order,
                                                              double outer_gamma = 0.0)
{
    if (std::abs(p) >= 1.0) throw DomainError("centered_disc_nodes: centre must lie in the open disc");
    if (radial_order < 4 || angular_order < 8) throw DomainError("centered_disc_nodes: resolution too small");
    const Rule1D gj = gauss_jacobi(radial_order, outer_gamma, 1.0);
    std::vector<QuadratureRule::Node> out;
    out.reserve(static_cast<std::size_t>(radial_order) * static_cast<std::size_t>(angular_order));
    const double one_minus = 1.0 - std::norm(p);
    for (int m = 0; m < angular_order; ++m) {
        const double th = 2.0 * pi * (m + 0.5) / angular_order;
        const cplx e = std::polar(1.0, th);
        const double proj = (std::conj(p) * e).real();
        const double radius = -proj + std::sqrt(proj * proj + one_minus);
        for (std::size_t i = 0; i < gj.nodes.size(); ++i) {
            const double t = 0.5 * (gj.nodes[i] + 1.0);
            // int_0^1 F t dt = 2^{-(a+2)} int F (1-x)^a (1+x) dx / (1-t)^a  with (1-x) = 2(1-t)
            double w = gj.weights[i] * std::pow(0.5, outer_gamma + 2.0) / std::pow(1.0 - t, outer_gamma);
            w *= (2.0 / angular_order) * radius * radius;
            out.push_back({p + t * radius * e, w});
        }
    }
    return out;
}

/// int_D g dA-weighted by the rule. g: cplx -> cplx (or double).
template <class G>
IntegrationResult integrate_disc(G&& g, const QuadratureRule& rule)
{
    auto run = [&](const QuadratureRule& q) {
        CompensatedSum<cplx> acc;
        const auto nodes = q.nodes();
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const cplx v = cplx(g(nodes[i].z));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteError("integrate_disc: non-finite integrand", i, 0);
            acc.add(nodes[i].w * v);
        }
        return acc.value();
    };
    IntegrationResult res;
    res.value = run(rule);
    const QuadratureRule coarse = rule.coarsened();
    res.error_estimate = std::abs(res.value - run(coarse));
    res.nodes_used = rule.size() + coarse.size();
    return res;
}

/// Tensor quadrature over explicit node sets; parallel over the outer index, reduced in order.
template <class G>
cplx integrate_nodes2d(G&& g, std::span<const QuadratureRule::Node> n1, std::span<const QuadratureRule::Node> n2)
{
    const auto rows = parallel_map<cplx>(n1.size(), [&](std::size_t i) {
        CompensatedSum<cplx> acc;
        for (std::size_t j = 0; j < n2.size(); ++j) {
            const cplx v = cplx(g(n1[i].z, n2[j].z));
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw NonFiniteError("integrate2d: non-finite integrand", i, j);
            acc.add(n2[j].w * v);
        }
        return cplx(n1[i].w) * acc.value();
    });
    CompensatedSum<cplx> total;
    for (const cplx& r : rows) total.add(r);
    return total.value();
}

/// int_{D^2} g(z1, z2) by the tensor product of two disc rules, with sentinel error.
template <class G>
IntegrationResult integrate2d(G&& g, const QuadratureRule& rule1, const QuadratureRule& rule2)
{
    IntegrationResult res;
    const auto a1 = rule1.nodes(), a2 = rule2.nodes();
    res.value = integrate_nodes2d(g, std::span<const QuadratureRule::Node>(a1), std::span<const QuadratureRule::Node>(a2));
    const auto c1 = rule1.coarsened().nodes(), c2 = rule2.coarsened().nodes();
    const cplx coarse = integrate_nodes2d(g, std::span<const QuadratureRule::Node>(c1), std::span<const QuadratureRule::Node>(c2));
    res.error_estimate = std::abs(res.value - coarse);
    res.nodes_used = a1.size() * a2.size() + c1.size() * c2.size();
    return res;
}

// ---------------------------------------------------------------------------------------------
// Sampling

struct BidiscPoint {
    cplx z1;
    cplx z2;
};

/// Weighted sample of a measure on the bidisc.
struct SampleCloud {
    std::uint64_t seed = 0;
    double beta = 0.0;
    double total_mass = 0.0;
    std::vector<BidiscPoint> points;
    std::vector<double> weights;
};

/// Draws N points from dV_beta normalized to a probability, with radius by exact inverse CDF
/// in s = r^2 and uniform angle; every weight is (1/(beta+1)^2)/N.
inline SampleCloud sample_dVbeta(double beta, std::size_t n, std::uint64_t seed)
{
    if (!(beta > -1.0)) throw DomainError("sample_dVbeta: beta must exceed -1");
    if (n < 1) throw DomainError("sample_dVbeta: need at least one sample");
    SampleCloud c;
    c.seed = seed;
    c.beta = beta;
    c.total_mass = 1.0 / ((beta + 1.0) * (beta + 1.0));
    c.points.resize(n);
    c.weights.assign(n, c.total_mass / static_cast<double>(n));
    const CounterRng rng(seed, 0x5eed);
    const double inv = 1.0 / (beta + 1.0);
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t base = 4 * static_cast<std::uint64_t>(i);
        const double s1 = 1.0 - std::pow(rng.uniform(base), inv);
        const double s2 = 1.0 - std::pow(rng.uniform(base + 1), inv);
        const double t1 = 2.0 * pi * rng.uniform(base + 2);
        const double t2 = 2.0 * pi * rng.uniform(base + 3);
        c.points[i] = {std::polar(std::sqrt(s1), t1), std::polar(std::sqrt(s2), t2)};
    }
    return c;
}

/// Monte Carlo estimate of sum_j w_j h(z_j) with batch-means standard error.
struct McEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::size_t hits = 0;
};

inline constexpr std::size_t mc_batches = 32;

/// Standard error of the total from per-batch sums: each batch, rescaled to the full mass, is an
/// independent estimate of the total.
inline double batch_means_error(const std::vector<double>& batch, const std::vector<double>& batch_w, double total_mass)
{
    const std::size_t nb = batch.size();
    if (nb < 2) return 0.0;
    std::vector<double> scaled(nb);
    double mean = 0.0;
    for (std::size_t b = 0; b < nb; ++b) {
        scaled[b] = batch_w[b] > 0 ? batch[b] * total_mass / batch_w[b] : 0.0;
        mean += scaled[b];
    }
    mean /= static_cast<double>(nb);
    double var = 0.0;
    for (double v : scaled) var += (v - mean) * (v - mean);
    var /= static_cast<double>(nb - 1);
    return std::sqrt(var / static_cast<double>(nb));
}

template <class H>
McEstimate mc_integrate(const SampleCloud& cloud, H&& h)
{
    const std::size_t n = cloud.points.size();
    const std::size_t nb = std::min(mc_batches, n);
    std::vector<double> batch(nb, 0.0);
    std::vector<double> batch_w(nb, 0.0);
    McEstimate est;
    CompensatedSum<double> total;
    for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t lo = b * n / nb, hi = (b + 1) * n / nb;
        CompensatedSum<double> acc, wacc;
        for (std::size_t j = lo; j < hi; ++j) {
            const double v = h(cloud.points[j]);
            if (v != 0.0) ++est.hits;
            acc.add(cloud.weights[j] * v);
            wacc.add(cloud.weights[j]);
        }
        batch[b] = acc.value();
        batch_w[b] = wacc.value();
        total.add(batch[b]);
    }
    est.value = total.value();
    est.std_error = batch_means_error(batch, batch_w, cloud.total_mass);
    return est;
}

} // namespace holocomp
