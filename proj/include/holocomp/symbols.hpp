#pragma once

// Holomorphic self-maps of the disc and bidisc.

#include <holocomp/analytic.hpp>
#include <holocomp/errors.hpp>
#include <holocomp/numeric.hpp>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <complex>
#include <string>
#include <variant>
#include <vector>

namespace holocomp {

/// Radius and resolution of the boundary-adjacent self-map validation grid.
inline constexpr double validation_radius = 1.0 - 1e-6;
inline constexpr int validation_points = 720;
inline constexpr double validation_slack = 1e-9;

/// Preimage solver thresholds.
inline constexpr double preimage_residual_tol = 1e-8;
inline constexpr double preimage_boundary_band = 1e-9;
inline constexpr double preimage_cluster_radius = 1e-7;

struct Preimage {
    cplx z;
    int multiplicity = 1;
};

/// Holomorphic self-map of the unit disc: polynomial, Moebius involution
/// phi_alpha(z) = (alpha - z)/(1 - conj(alpha) z), or finite Blaschke product.
class DiscSymbol {
public:
    struct Polynomial {
        std::vector<cplx> coeffs;
    };
    struct Moebius {
        cplx alpha;
    };
    struct Blaschke {
        std::vector<cplx> zeros;
        cplx factor;
    };
    using Variant = std::variant<Polynomial, Moebius, Blaschke>;

    static DiscSymbol polynomial(std::vector<cplx> coeffs)
    {
        while (coeffs.size() > 1 && coeffs.back() == cplx(0.0)) coeffs.pop_back();
        if (coeffs.empty()) coeffs.push_back(0.0);
        return DiscSymbol(Polynomial{std::move(coeffs)});
    }
    static DiscSymbol identity() { return polynomial({0.0, 1.0}); }
    static DiscSymbol moebius(cplx alpha)
    {
        if (!(std::abs(alpha) < 1.0)) throw DomainError("moebius: parameter must lie in the open disc");
        return DiscSymbol(Moebius{alpha});
    }
    static DiscSymbol blaschke(std::vector<cplx> zeros, cplx factor = 1.0)
    {
        if (zeros.empty()) throw DomainError("blaschke: at least one zero required");
        for (const cplx& a : zeros)
            if (!(std::abs(a) < 1.0)) throw DomainError("blaschke: zeros must lie in the open disc");
        if (std::abs(std::abs(factor) - 1.0) > 1e-12) throw DomainError("blaschke: factor must be unimodular");
        return DiscSymbol(Blaschke{std::move(zeros), factor});
    }

    const Variant& variant() const { return v_; }

    std::string kind() const
    {
        switch (v_.index()) {
        case 0: return "poly";
        case 1: return "moebius";
        default: return "blaschke";
        }
    }

    /// phi(z) without the domain check; valid on a neighbourhood of the closed disc.
    cplx value(cplx z) const
    {
        return std::visit(
            [&](const auto& s) -> cplx {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Polynomial>) {
                    return horner(s.coeffs, z);
                } else if constexpr (std::is_same_v<T, Moebius>) {
                    return (s.alpha - z) / (1.0 - std::conj(s.alpha) * z);
                } else {
                    cplx p = s.factor;
                    for (const cplx& a : s.zeros) p *= (z - a) / (1.0 - std::conj(a) * z);
                    return p;
                }
            },
            v_);
    }

    cplx operator()(cplx z) const
    {
        if (!(std::abs(z) < 1.0)) throw DomainError("eval_symbol: point outside the open disc");
        return value(z);
    }

    cplx derivative(cplx z) const
    {
        if (!(std::abs(z) < 1.0)) throw DomainError("derivative: point outside the open disc");
        return derivative_value(z);
    }

    cplx derivative_value(cplx z) const
    {
        return std::visit(
            [&](const auto& s) -> cplx {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Polynomial>) {
                    cplx acc{};
                    for (std::size_t k = s.coeffs.size(); k-- > 1;) acc = acc * z + static_cast<double>(k) * s.coeffs[k];
                    return acc;
                } else if constexpr (std::is_same_v<T, Moebius>) {
                    const cplx d = 1.0 - std::conj(s.alpha) * z;
                    return (std::norm(s.alpha) - 1.0) / (d * d);
                } else {
                    // product rule over the factors b_j = (z - a_j)/(1 - conj(a_j) z)
                    const std::size_t d = s.zeros.size();
                    std::vector<cplx> b(d), db(d);
                    for (std::size_t j = 0; j < d; ++j) {
                        const cplx den = 1.0 - std::conj(s.zeros[j]) * z;
                        b[j] = (z - s.zeros[j]) / den;
                        db[j] = (1.0 - std::norm(s.zeros[j])) / (den * den);
                    }
                    cplx sum{};
                    for (std::size_t j = 0; j < d; ++j) {
                        cplx term = db[j];
                        for (std::size_t k = 0; k < d; ++k)
                            if (k != j) term *= b[k];
                        sum += term;
                    }
                    return s.factor * sum;
                }
            },
            v_);
    }

    /// Number of preimages (with multiplicity) of a generic point, when finite and known:
    /// polynomial degree, 1 for Moebius, d for a degree-d Blaschke product.
    int degree() const
    {
        return std::visit(
            [](const auto& s) -> int {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Polynomial>) return static_cast<int>(s.coeffs.size()) - 1;
                else if constexpr (std::is_same_v<T, Moebius>) return 1;
                else return static_cast<int>(s.zeros.size());
            },
            v_);
    }

    /// All solutions of phi(z) = w in the open disc, clustered with multiplicity.
    std::vector<Preimage> preimages(cplx w) const
    {
        if (!(std::abs(w) < 1.0)) throw DomainError("preimages: target outside the open disc");
        if (const auto* m = std::get_if<Moebius>(&v_)) return {{value_moebius(m->alpha, w), 1}};

        std::vector<cplx> poly;
        if (const auto* p = std::get_if<Polynomial>(&v_)) {
            poly = p->coeffs;
            poly[0] -= w;
        } else {
            const auto& b = std::get<Blaschke>(v_);
            // u prod (z - a_j) - w prod (1 - conj(a_j) z) = 0
            std::vector<cplx> num{b.factor}, den{1.0};
            for (const cplx& a : b.zeros) {
                num = poly_mul(num, {-a, 1.0});
                den = poly_mul(den, {1.0, -std::conj(a)});
            }
            poly.resize(num.size());
            for (std::size_t k = 0; k < num.size(); ++k) poly[k] = num[k] - w * den[k];
        }
        while (poly.size() > 1 && poly.back() == cplx(0.0)) poly.pop_back();
        if (poly.size() == 1) {
            if (poly[0] == cplx(0.0)) throw NumericalError("preimages: constant symbol attains the target everywhere");
            return {};
        }

        std::vector<cplx> roots = polynomial_roots(poly);
        for (cplx& r : roots) {
            const cplx d = derivative_value(r);
            if (std::abs(d) > 1e-12) r -= (value(r) - w) / d;
        }

        std::vector<Preimage> out;
        std::vector<int> counts;
        std::vector<cplx> sums;
        for (const cplx& r : roots) {
            const double mod = std::abs(r);
            if (std::abs(mod - 1.0) < preimage_boundary_band)
                throw BoundaryAmbiguityError("preimages: root on the unit circle within tolerance");
            if (mod > 1.0) continue;
            bool merged = false;
            for (std::size_t c = 0; c < sums.size(); ++c) {
                if (std::abs(sums[c] / double(counts[c]) - r) < preimage_cluster_radius) {
                    sums[c] += r;
                    ++counts[c];
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                sums.push_back(r);
                counts.push_back(1);
            }
        }
        for (std::size_t c = 0; c < sums.size(); ++c) {
            const cplx z = sums[c] / double(counts[c]);
            if (std::abs(value(z) - w) > preimage_residual_tol)
                throw NumericalError("preimages: root residual above tolerance");
            out.push_back({z, counts[c]});
        }
        if (std::holds_alternative<Blaschke>(v_)) {
            int total = 0;
            for (const auto& p : out) total += p.multiplicity;
            if (total != degree()) throw NumericalError("preimages: Blaschke product lost its d-to-1 property");
        }
        return out;
    }

    /// Zeros of phi' inside the open disc (Moebius maps have none).
    std::vector<cplx> critical_points() const
    {
        std::vector<cplx> d;
        if (const auto* p = std::get_if<Polynomial>(&v_)) {
            for (std::size_t k = 1; k < p->coeffs.size(); ++k) d.push_back(static_cast<double>(k) * p->coeffs[k]);
        } else if (const auto* b = std::get_if<Blaschke>(&v_)) {
            // numerator of (P/Q)' is P'Q - PQ'
            std::vector<cplx> P{1.0}, Q{1.0};
            for (const cplx& a : b->zeros) {
                P = poly_mul(P, {-a, 1.0});
                Q = poly_mul(Q, {1.0, -std::conj(a)});
            }
            const auto dP = poly_derivative(P), dQ = poly_derivative(Q);
            const auto l = poly_mul(dP, Q), r = poly_mul(P, dQ);
            d.assign(std::max(l.size(), r.size()), 0.0);
            for (std::size_t k = 0; k < l.size(); ++k) d[k] += l[k];
            for (std::size_t k = 0; k < r.size(); ++k) d[k] -= r[k];
        }
        // drop coefficients that are round-off relative to the largest
        double scale = 0.0;
        for (const cplx& c : d) scale = std::max(scale, std::abs(c));
        while (!d.empty() && std::abs(d.back()) <= 1e-14 * scale) d.pop_back();
        if (d.size() < 2) return {};
        std::vector<cplx> out;
        for (const cplx& r : polynomial_roots(d))
            if (std::abs(r) < 1.0) out.push_back(r);
        return out;
    }

    /// Taylor coefficients at 0 up to z^N.
    TaylorGrid1D power_series(int N) const
    {
        TaylorGrid1D s;
        s.coeffs.assign(static_cast<std::size_t>(N + 1), 0.0);
        std::visit(
            [&](const auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Polynomial>) {
                    for (std::size_t k = 0; k < v.coeffs.size() && k <= static_cast<std::size_t>(N); ++k)
                        s.coeffs[k] = v.coeffs[k];
                } else if constexpr (std::is_same_v<T, Moebius>) {
                    s.coeffs = moebius_series(v.alpha, N);
                } else {
                    std::vector<cplx> acc(static_cast<std::size_t>(N + 1), 0.0);
                    acc[0] = v.factor;
                    for (const cplx& a : v.zeros) {
                        // (z - a)/(1 - conj(a) z) = -phi_a(z)
                        std::vector<cplx> f = moebius_series(a, N);
                        for (auto& c : f) c = -c;
                        acc = truncated_mul(acc, f, N);
                    }
                    s.coeffs = acc;
                }
            },
            v_);
        return s;
    }

    /// Geometric decay rate of the Taylor coefficients (0 for polynomials).
    double series_decay() const
    {
        return std::visit(
            [](const auto& s) -> double {
                using T = std::decay_t<decltype(s)>;
                if constexpr (std::is_same_v<T, Polynomial>) return 0.0;
                else if constexpr (std::is_same_v<T, Moebius>) return std::abs(s.alpha);
                else {
                    double r = 0.0;
                    for (const cplx& a : s.zeros) r = std::max(r, std::abs(a));
                    return r;
                }
            },
            v_);
    }

    static std::vector<cplx> truncated_mul(const std::vector<cplx>& a, const std::vector<cplx>& b, int N)
    {
        std::vector<cplx> out(static_cast<std::size_t>(N + 1), 0.0);
        for (std::size_t i = 0; i < a.size() && i <= static_cast<std::size_t>(N); ++i) {
            if (a[i] == cplx(0.0)) continue;
            for (std::size_t j = 0; j < b.size() && i + j <= static_cast<std::size_t>(N); ++j) out[i + j] += a[i] * b[j];
        }
        return out;
    }

private:
    explicit DiscSymbol(Variant v) : v_(std::move(v)) { validate(); }

    void validate() const
    {
        double mx = 0.0;
        for (int m = 0; m < validation_points; ++m) {
            const cplx z = std::polar(validation_radius, 2.0 * pi * m / validation_points);
            mx = std::max(mx, std::abs(value(z)));
        }
        if (!(mx <= 1.0 + validation_slack))
            throw DomainError("DiscSymbol: map leaves the disc on the validation grid (max |phi| = " + std::to_string(mx) + ")");
    }

    static cplx horner(const std::vector<cplx>& c, cplx z)
    {
        cplx acc{};
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
        return acc;
    }
    static cplx value_moebius(cplx alpha, cplx z) { return (alpha - z) / (1.0 - std::conj(alpha) * z); }

    static std::vector<cplx> moebius_series(cplx alpha, int N)
    {
        std::vector<cplx> c(static_cast<std::size_t>(N + 1), 0.0);
        c[0] = alpha;
        cplx p = 1.0;
        for (int k = 1; k <= N; ++k) {
            c[static_cast<std::size_t>(k)] = (std::norm(alpha) - 1.0) * p;
            p *= std::conj(alpha);
        }
        return c;
    }

    static std::vector<cplx> poly_mul(const std::vector<cplx>& a, const std::vector<cplx>& b)
    {
        std::vector<cplx> out(a.size() + b.size() - 1, 0.0);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return out;
    }

    static std::vector<cplx> poly_derivative(const std::vector<cplx>& c)
    {
        if (c.size() < 2) return {0.0};
        std::vector<cplx> d(c.size() - 1);
        for (std::size_t k = 1; k < c.size(); ++k) d[k - 1] = static_cast<double>(k) * c[k];
        return d;
    }

    /// Roots by eigenvalues of the companion matrix.
    static std::vector<cplx> polynomial_roots(const std::vector<cplx>& c)
    {
        const int d = static_cast<int>(c.size()) - 1;
        if (d == 1) return {-c[0] / c[1]};
        Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(d, d);
        for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)] / c[static_cast<std::size_t>(d)];
        Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
        if (es.info() != Eigen::Success) throw NumericalError("preimages: companion eigenvalue solver failed");
        std::vector<cplx> roots(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) roots[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
        return roots;
    }

    Variant v_;
};

/// Self-map of the bidisc: a separated pair (phi1(z1), phi2(z2)) or a pair of 2-variable polynomials.
class BidiscSymbol {
public:
    struct Separated {
        DiscSymbol phi1;
        DiscSymbol phi2;
    };
    struct PolyPair {
        TaylorGrid2D p1;
        TaylorGrid2D p2;
    };

    static BidiscSymbol separated(DiscSymbol phi1, DiscSymbol phi2)
    {
        return BidiscSymbol(Separated{std::move(phi1), std::move(phi2)});
    }
    static BidiscSymbol identity() { return separated(DiscSymbol::identity(), DiscSymbol::identity()); }
    static BidiscSymbol poly_pair(TaylorGrid2D p1, TaylorGrid2D p2)
    {
        BidiscSymbol s(PolyPair{std::move(p1), std::move(p2)});
        s.validate();
        return s;
    }

    bool is_separated() const { return std::holds_alternative<Separated>(v_); }
    const Separated& as_separated() const
    {
        if (const auto* s = std::get_if<Separated>(&v_)) return *s;
        throw SymbolKindError("bidisc symbol is not separated");
    }
    const std::variant<Separated, PolyPair>& variant() const { return v_; }

    BidiscPoint value(const BidiscPoint& z) const
    {
        if (const auto* s = std::get_if<Separated>(&v_)) return {s->phi1.value(z.z1), s->phi2.value(z.z2)};
        const auto& p = std::get<PolyPair>(v_);
        return {p.p1.eval(z.z1, z.z2), p.p2.eval(z.z1, z.z2)};
    }

    BidiscPoint operator()(cplx z1, cplx z2) const
    {
        if (!(std::abs(z1) < 1.0) || !(std::abs(z2) < 1.0)) throw DomainError("BidiscSymbol: point outside the bidisc");
        return value({z1, z2});
    }

private:
    explicit BidiscSymbol(std::variant<Separated, PolyPair> v) : v_(std::move(v)) {}

    void validate() const
    {
        const auto& p = std::get<PolyPair>(v_);
        double mx = 0.0;
        std::vector<cplx> ring(validation_points);
        for (int m = 0; m < validation_points; ++m) ring[static_cast<std::size_t>(m)] = std::polar(validation_radius, 2.0 * pi * m / validation_points);
        for (const cplx& z1 : ring)
            for (const cplx& z2 : ring) mx = std::max({mx, std::abs(p.p1.eval(z1, z2)), std::abs(p.p2.eval(z1, z2))});
        if (!(mx <= 1.0 + validation_slack))
            throw DomainError("BidiscSymbol: polynomial pair leaves the bidisc on the validation grid");
    }

    std::variant<Separated, PolyPair> v_;
};

} // namespace holocomp
