#pragma once

// Truncated power series on the disc and bidisc and their Dirichlet-type and Bergman norms.

#include <holocomp/errors.hpp>
#include <holocomp/numeric.hpp>
#include <holocomp/quadrature.hpp>

#include <cmath>
#include <complex>
#include <vector>

namespace holocomp {

/// Anisotropic Dirichlet exponents, 0 < a_i <= 1/2.
struct WeightPair {
    double a1;
    double a2;

    WeightPair(double first, double second) : a1(first), a2(second)
    {
        if (!(a1 > 0.0 && a1 <= 0.5) || !(a2 > 0.0 && a2 <= 0.5))
            throw DomainError("WeightPair: exponents must lie in (0, 1/2]");
    }
    /// Radial exponents 1 - 2 a_i of the weights dA_{a_i}.
    double gamma1() const { return 1.0 - 2.0 * a1; }
    double gamma2() const { return 1.0 - 2.0 * a2; }
};

/// Bergman exponent beta > -1 for dA_beta = (1-|z|^2)^beta dA (unnormalized).
struct BergmanWeight {
    double beta;

    explicit BergmanWeight(double b) : beta(b)
    {
        if (!(beta > -1.0) || !std::isfinite(beta)) throw DomainError("BergmanWeight: beta must exceed -1");
    }
};

/// f(z) = sum_k c_k z^k.
struct TaylorGrid1D {
    std::vector<cplx> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }

    cplx operator()(cplx z) const
    {
        cplx acc{};
        for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
        return acc;
    }

    TaylorGrid1D derivative() const
    {
        TaylorGrid1D d;
        for (std::size_t k = 1; k < coeffs.size(); ++k) d.coeffs.push_back(static_cast<double>(k) * coeffs[k]);
        if (d.coeffs.empty()) d.coeffs.push_back(0.0);
        return d;
    }
};

/// f(z1, z2) = sum_{k<=K, l<=L} a_{k,l} z1^k z2^l, stored row-major in k.
class TaylorGrid2D {
public:
    TaylorGrid2D() : TaylorGrid2D(0, 0) {}
    TaylorGrid2D(int K, int L) : K_(K), L_(L), a_(static_cast<std::size_t>((K + 1) * (L + 1)))
    {
        if (K < 0 || L < 0) throw DomainError("TaylorGrid2D: negative degree");
    }

    static TaylorGrid2D constant(cplx c)
    {
        TaylorGrid2D g(0, 0);
        g(0, 0) = c;
        return g;
    }
    static TaylorGrid2D monomial(int k, int l, cplx c = 1.0)
    {
        TaylorGrid2D g(k, l);
        g(k, l) = c;
        return g;
    }

    int K() const { return K_; }
    int L() const { return L_; }

    cplx& operator()(int k, int l) { return a_[index(k, l)]; }
    const cplx& operator()(int k, int l) const { return a_[index(k, l)]; }

    /// Coefficient with zero outside the stored rectangle.
    cplx coeff(int k, int l) const
    {
        if (k < 0 || l < 0 || k > K_ || l > L_) return 0.0;
        return a_[index(k, l)];
    }

    cplx eval(cplx z1, cplx z2) const
    {
        cplx outer{};
        for (int k = K_; k >= 0; --k) {
            cplx inner{};
            for (int l = L_; l >= 0; --l) inner = inner * z2 + a_[index(k, l)];
            outer = outer * z1 + inner;
        }
        return outer;
    }

    /// f(z1, 0) as a one-variable series.
    TaylorGrid1D slice1() const
    {
        TaylorGrid1D s;
        for (int k = 0; k <= K_; ++k) s.coeffs.push_back(a_[index(k, 0)]);
        return s;
    }
    /// f(0, z2) as a one-variable series.
    TaylorGrid1D slice2() const
    {
        TaylorGrid1D s;
        for (int l = 0; l <= L_; ++l) s.coeffs.push_back(a_[index(0, l)]);
        return s;
    }

    TaylorGrid2D operator*(cplx c) const
    {
        TaylorGrid2D g = *this;
        for (auto& x : g.a_) x *= c;
        return g;
    }
    TaylorGrid2D operator+(const TaylorGrid2D& o) const
    {
        TaylorGrid2D g(std::max(K_, o.K_), std::max(L_, o.L_));
        for (int k = 0; k <= g.K_; ++k)
            for (int l = 0; l <= g.L_; ++l) g(k, l) = coeff(k, l) + o.coeff(k, l);
        return g;
    }

    bool operator==(const TaylorGrid2D&) const = default;

private:
    std::size_t index(int k, int l) const
    {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(L_ + 1) + static_cast<std::size_t>(l);
    }
    int K_;
    int L_;
    std::vector<cplx> a_;
};

/// Exact finite sum by nested Horner accumulation.
inline cplx eval2d(const TaylorGrid2D& f, cplx z1, cplx z2)
{
    if (!(std::abs(z1) < 1.0) || !(std::abs(z2) < 1.0)) throw DomainError("eval2d: point outside the open bidisc");
    return f.eval(z1, z2);
}

/// d/dz2 d/dz1 f: coefficient (k,l) -> k l a_{k,l} at (k-1, l-1). Zero grid when K or L is 0.
inline TaylorGrid2D mixed_partial(const TaylorGrid2D& f)
{
    if (f.K() == 0 || f.L() == 0) return TaylorGrid2D(0, 0);
    TaylorGrid2D d(f.K() - 1, f.L() - 1);
    for (int k = 1; k <= f.K(); ++k)
        for (int l = 1; l <= f.L(); ++l) d(k - 1, l - 1) = static_cast<double>(k * l) * f(k, l);
    return d;
}

/// Antiderivative in both variables vanishing on the coordinate axes.
inline TaylorGrid2D mixed_antiderivative(const TaylorGrid2D& f)
{
    TaylorGrid2D g(f.K() + 1, f.L() + 1);
    for (int k = 0; k <= f.K(); ++k)
        for (int l = 0; l <= f.L(); ++l) g(k + 1, l + 1) = f(k, l) / static_cast<double>((k + 1) * (l + 1));
    return g;
}

/// sum_{k,l} (k+1)^{2 a1} (l+1)^{2 a2} |a_{k,l}|^2, row-major compensated summation.
inline double dirichlet_norm_coeff(const TaylorGrid2D& f, const WeightPair& a)
{
    CompensatedSum<double> acc;
    for (int k = 0; k <= f.K(); ++k) {
        const double wk = std::pow(k + 1.0, 2.0 * a.a1);
        for (int l = 0; l <= f.L(); ++l) acc.add(wk * std::pow(l + 1.0, 2.0 * a.a2) * std::norm(f(k, l)));
    }
    return acc.value();
}

/// Real-valued quadrature outcome.
struct Estimate {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t nodes_used = 0;
};

namespace detail {

inline void require_rule(const QuadratureRule& rule, double gamma, RadialWeight kind, const char* who)
{
    if (rule.weight() != kind || std::abs(rule.gamma() - gamma) > 1e-12)
        throw DomainError(std::string(who) + ": rule weight does not match the requested exponent");
}

inline double slice_energy(const TaylorGrid1D& slice, const QuadratureRule& rule, Estimate& est)
{
    const TaylorGrid1D d = slice.derivative();
    const auto r = integrate_disc([&](cplx z) { return std::norm(d(z)); }, rule);
    est.error_estimate += r.error_estimate;
    est.nodes_used += r.nodes_used;
    return r.real();
}

} // namespace detail

/// |f(0,0)|^2 + D_a(f) with the integral representation: both slice energies against dA_{a_i}
/// and the mixed energy against dA_{a1} x dA_{a2}. rule_i must carry gamma = 1 - 2 a_i.
/// Throws AccuracyError when the sentinel error exceeds rel_tol times the value.
inline Estimate dirichlet_energy_integral(const TaylorGrid2D& f, const WeightPair& a, const QuadratureRule& rule1,
                                          const QuadratureRule& rule2, double rel_tol = 1e-6)
{
    detail::require_rule(rule1, a.gamma1(), RadialWeight::standard, "dirichlet_energy_integral");
    detail::require_rule(rule2, a.gamma2(), RadialWeight::standard, "dirichlet_energy_integral");
    Estimate est;
    CompensatedSum<double> total;
    total.add(std::norm(f(0, 0)));
    total.add(detail::slice_energy(f.slice1(), rule1, est));
    total.add(detail::slice_energy(f.slice2(), rule2, est));
    const TaylorGrid2D d = mixed_partial(f);
    const auto mixed = integrate2d([&](cplx z1, cplx z2) { return std::norm(d.eval(z1, z2)); }, rule1, rule2);
    total.add(mixed.real());
    est.error_estimate += mixed.error_estimate;
    est.nodes_used += mixed.nodes_used;
    est.value = total.value();
    if (est.error_estimate > rel_tol * std::max(est.value, 1e-300))
        throw AccuracyError("dirichlet_energy_integral: quadrature resolution insufficient", est.error_estimate);
    return est;
}

/// Convenience overload building both rules at the given resolution.
inline Estimate dirichlet_energy_integral(const TaylorGrid2D& f, const WeightPair& a, int radial_order = 24,
                                          int angular_order = 64, double rel_tol = 1e-6)
{
    return dirichlet_energy_integral(f, a, build_rule(a.gamma1(), radial_order, angular_order),
                                     build_rule(a.gamma2(), radial_order, angular_order), rel_tol);
}

/// int_D |z|^{2j} (log 1/|z|)^gamma dA = Gamma(gamma+1) / (2^gamma (j+1)^{gamma+1}).
inline double log_weight_moment(int j, double gamma)
{
    return std::tgamma(gamma + 1.0) / (std::pow(2.0, gamma) * std::pow(j + 1.0, gamma + 1.0));
}

/// The four pieces of the energy: point value, the two slice energies and the mixed energy.
struct EnergyTerms {
    double point = 0.0, slice1 = 0.0, slice2 = 0.0, mixed = 0.0;

    double total() const
    {
        CompensatedSum<double> acc;
        for (double v : {point, slice1, slice2, mixed}) acc.add(v);
        return acc.value();
    }
};

/// Energy terms with the logarithmic weights (log 1/|z_i|)^{1-2a_i}, evaluated exactly from the
/// coefficients (monomials are orthogonal for radial weights). This is the energy for which the
/// counting-function change of variables is an identity.
inline EnergyTerms dirichlet_energy_log_terms(const TaylorGrid2D& f, const WeightPair& a)
{
    const double g1 = a.gamma1(), g2 = a.gamma2();
    EnergyTerms t;
    t.point = std::norm(f(0, 0));
    CompensatedSum<double> s1, s2, mx;
    for (int k = 1; k <= f.K(); ++k) s1.add(double(k) * k * std::norm(f(k, 0)) * log_weight_moment(k - 1, g1));
    for (int l = 1; l <= f.L(); ++l) s2.add(double(l) * l * std::norm(f(0, l)) * log_weight_moment(l - 1, g2));
    for (int k = 1; k <= f.K(); ++k) {
        const double mk = double(k) * k * log_weight_moment(k - 1, g1);
        for (int l = 1; l <= f.L(); ++l)
            mx.add(mk * double(l) * l * log_weight_moment(l - 1, g2) * std::norm(f(k, l)));
    }
    t.slice1 = s1.value();
    t.slice2 = s2.value();
    t.mixed = mx.value();
    return t;
}

inline double dirichlet_energy_log(const TaylorGrid2D& f, const WeightPair& a)
{
    return dirichlet_energy_log_terms(f, a).total();
}

/// int_{D^2} |f|^2 dV_beta with dV_beta = dA_beta x dA_beta. rule must carry gamma = beta.
inline Estimate bergman_norm(const TaylorGrid2D& f, const BergmanWeight& w, const QuadratureRule& rule,
                             double rel_tol = 1e-6)
{
    detail::require_rule(rule, w.beta, RadialWeight::standard, "bergman_norm");
    const auto r = integrate2d([&](cplx z1, cplx z2) { return std::norm(f.eval(z1, z2)); }, rule, rule);
    Estimate est{r.real(), r.error_estimate, r.nodes_used};
    if (est.error_estimate > rel_tol * std::max(est.value, 1e-300))
        throw AccuracyError("bergman_norm: quadrature resolution insufficient", est.error_estimate);
    return est;
}

inline Estimate bergman_norm(const TaylorGrid2D& f, const BergmanWeight& w, int radial_order = 24,
                             int angular_order = 64, double rel_tol = 1e-6)
{
    return bergman_norm(f, w, build_rule(w.beta, radial_order, angular_order), rel_tol);
}

/// Coefficients of int_0^z (1 - conj(w) t)^{-p} dt up to z^K.
inline TaylorGrid1D kernel_antiderivative(cplx w, double p, int K)
{
    TaylorGrid1D F;
    F.coeffs.assign(static_cast<std::size_t>(K + 1), 0.0);
    double binom = 1.0; // (p)_n / n!
    cplx wpow = 1.0;
    for (int n = 0; n + 1 <= K; ++n) {
        F.coeffs[static_cast<std::size_t>(n + 1)] = binom * wpow / static_cast<double>(n + 1);
        binom *= (p + n) / (n + 1.0);
        wpow *= std::conj(w);
    }
    return F;
}

/// Order-K truncation of the normalized test function
///   c1 F1(z1) + c2 F2(z2) + c1 c2 F1(z1) F2(z2),
/// c_i = (1-|w_i|^2)^{(3-2a_i)/2}, F_i(z) = int_0^z (1 - conj(w_i) t)^{-(3-2a_i)} dt.
inline TaylorGrid2D test_function(cplx w1, cplx w2, const WeightPair& a, int K = 24)
{
    if (!(std::abs(w1) < 1.0) || !(std::abs(w2) < 1.0)) throw DomainError("test_function: omega outside the bidisc");
    if (K < 1) throw DomainError("test_function: truncation order must be >= 1");
    const double p1 = 3.0 - 2.0 * a.a1, p2 = 3.0 - 2.0 * a.a2;
    const double c1 = std::pow(1.0 - std::norm(w1), p1 / 2.0);
    const double c2 = std::pow(1.0 - std::norm(w2), p2 / 2.0);
    const TaylorGrid1D F1 = kernel_antiderivative(w1, p1, K);
    const TaylorGrid1D F2 = kernel_antiderivative(w2, p2, K);
    TaylorGrid2D f(K, K);
    for (int k = 1; k <= K; ++k) {
        f(k, 0) += c1 * F1.coeffs[static_cast<std::size_t>(k)];
        f(0, k) += c2 * F2.coeffs[static_cast<std::size_t>(k)];
        for (int l = 1; l <= K; ++l)
            f(k, l) += c1 * c2 * F1.coeffs[static_cast<std::size_t>(k)] * F2.coeffs[static_cast<std::size_t>(l)];
    }
    return f;
}

} // namespace holocomp
