#include <holocomp/disc_criteria.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace holocomp;

namespace {

const DiscSymbol square = DiscSymbol::polynomial({0.0, 0.0, 1.0});

TaylorGrid1D poly1(std::initializer_list<cplx> c)
{
    TaylorGrid1D f;
    f.coeffs = c;
    return f;
}

// sup over the disc of the Moebius kernel ratio, attained as z1 = z2 -> alpha/|alpha|
double moebius_kernel_sup(double alpha, double beta)
{
    return std::pow((1 + alpha) / (1 - alpha), beta / (beta + 2));
}

} // namespace

TEST(BaloochWu, ConstantHasZeroRatio)
{
    const auto e = balooch_wu_ratio(poly1({2.0}), {0.0, 0.0, 0.0});
    EXPECT_EQ(e.left, 0.0);
    EXPECT_EQ(e.right, 0.0);
    EXPECT_EQ(e.ratio, 0.0);
    EXPECT_NE(std::find(e.flags.begin(), e.flags.end(), "constant"), e.flags.end());
}

TEST(BaloochWu, IdentityFunctionConvergesToClosedForm)
{
    // For f = z and sigma = tau = beta = 0 the double integral sums to sum 1/((k+1)(k+2)) = 1.
    double prev_err = 1.0;
    for (int n : {16, 32, 64}) {
        const auto e = balooch_wu_ratio(poly1({0.0, 1.0}), {0.0, 0.0, 0.0}, n);
        EXPECT_NEAR(e.right, 1.0, 1e-15);
        const double err = std::abs(e.left - 1.0);
        EXPECT_LT(err, prev_err / 2);
        prev_err = err;
    }
    EXPECT_LT(prev_err, 1e-3);
}

TEST(BaloochWu, MatchesBruteForceTensorQuadrature)
{
    // The mode reduction must agree with a direct tensor sum when the angular grid resolves the kernel.
    const auto f = poly1({0.3, cplx(0.5, -0.2), 0.0, cplx(0.1, 0.4)});
    const BaloochWuParams p{0.5, 1.0, 0.25};
    const int n = 6;
    const auto rz = detail::radial_standard(n, p.sigma), rw = detail::radial_standard(n, p.tau);
    const int M = 4096;
    double direct = 0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double acc = 0;
            const double r = std::sqrt(rz.nodes[i]), q = std::sqrt(rw.nodes[j]);
            for (int d = 0; d < M; ++d) {
                const cplx w = std::polar(q, 0.0), z = std::polar(r, 2 * pi * d / M);
                // average over the common rotation is exact for the kernel; rotate f instead
                double inner = 0;
                for (int m = 0; m < 8; ++m) {
                    const cplx rot = std::polar(1.0, 2 * pi * m / 8.0);
                    inner += std::norm(f(z * rot) - f(w * rot));
                }
                acc += inner / 8 / std::pow(std::norm(1.0 - std::conj(w) * z), p.beta + 2);
            }
            direct += rz.weights[i] * rw.weights[j] * acc / M;
        }
    EXPECT_NEAR(balooch_wu_ratio(f, p, n).left / direct, 1.0, 1e-10);
}

TEST(BaloochWu, ScaleInvariant)
{
    const auto f = poly1({0.1, 0.7, cplx(0.0, 0.3)});
    const BaloochWuParams p{0.0, 0.0, -0.2};
    const double r = balooch_wu_ratio(f, p, 24).ratio;
    TaylorGrid1D g = f;
    for (auto& c : g.coeffs) c *= cplx(-3.0, 2.0);
    EXPECT_NEAR(balooch_wu_ratio(g, p, 24).ratio, r, 1e-13 * r);
}

TEST(BaloochWu, FamilyBandIsNarrowAndStable)
{
    std::mt19937_64 rng(21);
    std::normal_distribution<double> n01;
    std::vector<TaylorGrid1D> fs;
    for (int t = 0; t < 30; ++t) {
        TaylorGrid1D f;
        for (int k = 0; k <= 1 + t % 6; ++k) f.coeffs.push_back(cplx(n01(rng), n01(rng)));
        fs.push_back(f);
    }
    const BaloochWuParams p{0.5, 0.5, 0.0};
    const auto lo = balooch_wu_family(fs, p, 32), hi = balooch_wu_family(fs, p, 64);
    EXPECT_LT(hi.max_ratio / hi.min_ratio, 50.0);
    EXPECT_NEAR(hi.min_ratio / lo.min_ratio, 1.0, 0.1);
    EXPECT_NEAR(hi.max_ratio / lo.max_ratio, 1.0, 0.1);
}

TEST(BaloochWu, ParameterWindow)
{
    const auto f = poly1({0.0, 1.0});
    EXPECT_THROW(balooch_wu_ratio(f, {0.0, 0.0, 0.5}), DomainError);
    EXPECT_THROW(balooch_wu_ratio(f, {2.0, 0.0, -0.1}), DomainError);
    EXPECT_THROW(balooch_wu_ratio(f, {-1.0, 0.0, -0.6}), DomainError);
    EXPECT_NO_THROW(balooch_wu_ratio(f, {2.0, 0.0, 0.5}, 8));
    const auto e = balooch_wu_ratio(f, {0.0, 0.0, -0.6}, 8);
    EXPECT_TRUE(e.flags.empty());
    EXPECT_EQ(balooch_wu_ratio(f, {0.0, 0.0, 0.0}, 8).flags.front(), "near_singular_kernel");
}

TEST(KernelRatio, IdentityIsExactlyOne)
{
    for (double beta : {0.0, 1.0, -0.5}) {
        KernelRatioQuery q;
        q.beta = beta;
        const auto rep = kernel_ratio_sup(q);
        EXPECT_EQ(rep.sup, 1.0);
        for (double v : rep.ratio) EXPECT_NEAR(v, 1.0, 1e-14);
        EXPECT_EQ(operator_norm_bound(rep), 1.0);
    }
}

TEST(KernelRatio, MoebiusMatchesClosedFormSup)
{
    for (double beta : {0.0, 1.0, 2.0}) {
        KernelRatioQuery q;
        q.phi = DiscSymbol::moebius(0.5);
        q.beta = beta;
        const auto rep = kernel_ratio_sup(q);
        EXPECT_NEAR(rep.sup / moebius_kernel_sup(0.5, beta), 1.0, 0.01) << beta;
        EXPECT_NEAR(operator_norm_bound(rep), std::pow(rep.sup, beta + 2), 1e-12 * operator_norm_bound(rep));
    }
}

TEST(KernelRatio, SquareFlagsCriticalPoint)
{
    KernelRatioQuery q;
    q.phi = square;
    const auto rep = kernel_ratio_sup(q);
    EXPECT_EQ(rep.critical_points, 1u);
    EXPECT_EQ(rep.flagged_pairs, 2 * rep.points.size() - 1);
    EXPECT_TRUE(std::isfinite(rep.sup));
}

TEST(KernelRatio, HermitianSymmetry)
{
    const auto b = DiscSymbol::blaschke({0.3, cplx(-0.2, 0.6)});
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-0.7, 0.7);
    for (int t = 0; t < 200; ++t) {
        const cplx z1(u(rng), u(rng)), z2(u(rng), u(rng));
        EXPECT_LT(std::abs(kernel_value(b, z1, z2) - std::conj(kernel_value(b, z2, z1))), 1e-14);
    }
}

TEST(KernelRatio, DiagonalLimitIsContinuous)
{
    const auto m = DiscSymbol::moebius(cplx(0.2, 0.3));
    const cplx z(0.4, -0.5);
    EXPECT_NEAR(std::abs(kernel_value(m, z, z) - kernel_value(m, z, z + 1e-7)), 0.0, 1e-6);
}

TEST(KernelRatio, AllFlaggedHasNoBound)
{
    KernelRatioQuery q;
    q.phi = DiscSymbol::polynomial({0.3});
    q.grid.radii = {0.5};
    q.grid.angles = 4;
    EXPECT_THROW(operator_norm_bound(q), UndefinedBoundError);
}

TEST(KernelRatio, DerivedParameterTie)
{
    KernelRatioQuery q;
    q.beta = 0.1;
    q.sigma = 0.3;
    EXPECT_NEAR(q.derived_a(), 0.4, 1e-15);
    q.beta = 0.5;
    EXPECT_THROW(kernel_ratio_sup(q), DomainError);
}

TEST(ChangeOfVariables, IdentitySymbolsAgree)
{
    for (auto g : {GFunction::one, GFunction::distance, GFunction::exponential}) {
        const auto r = verify_change_of_variables(DiscSymbol::identity(), DiscSymbol::identity(), {0.3, 0.45}, make_gfunction(g));
        EXPECT_LT(r.gap, 1e-6) << to_string(g);
    }
    // boundary-singular integrand: same integral, slower convergence
    const auto k = verify_change_of_variables(DiscSymbol::identity(), DiscSymbol::identity(), {0.3, 0.45},
                                              make_gfunction(GFunction::kernel));
    EXPECT_LT(k.gap, 1e-2);
}

TEST(ChangeOfVariables, MoebiusConstantIntegrand)
{
    const auto m = DiscSymbol::moebius(0.4);
    const auto r = verify_change_of_variables(m, m, {0.3, 0.3}, make_gfunction(GFunction::one));
    EXPECT_LT(r.gap, 1e-3);
}

TEST(ChangeOfVariables, HarderKernelIntegrand)
{
    const auto r = verify_change_of_variables(square, square, {0.3, 0.3}, make_gfunction(GFunction::kernel));
    EXPECT_LT(r.gap, 1e-2);
}

TEST(ChangeOfVariables, FixturesHoldAndConverge)
{
    const auto fx = cov_fixtures();
    ASSERT_EQ(fx.size(), 12u);
    for (const auto& f : fx) {
        const auto g = make_gfunction(f.g);
        const auto lo = verify_change_of_variables(f.phi1, f.phi2, f.a, g, 16);
        const auto hi = verify_change_of_variables(f.phi1, f.phi2, f.a, g, 32);
        EXPECT_LT(hi.gap, 1e-3) << f.name;
        if (lo.gap > 1e-10) EXPECT_LT(hi.gap, 0.5 * lo.gap) << f.name;
    }
}

TEST(NormExpansion, FixturesAgree)
{
    const auto fx = expansion_fixtures();
    ASSERT_EQ(fx.size(), 6u);
    for (const auto& f : fx) {
        const auto r = verify_separated_norm_expansion({f.phi1, f.phi2}, f.a, f.f);
        EXPECT_LT(r.gap, 1e-3) << f.name;
        EXPECT_LT(r.mixed_gap, 1e-3) << f.name;
    }
}

TEST(NormExpansion, IdentityPairIsPlainEnergy)
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> n01;
    TaylorGrid2D f(3, 2);
    for (int k = 0; k <= 3; ++k)
        for (int l = 0; l <= 2; ++l) f(k, l) = cplx(n01(rng), n01(rng));
    const WeightPair a(0.35, 0.2);
    const auto r = verify_separated_norm_expansion({DiscSymbol::identity(), DiscSymbol::identity()}, a, f);
    EXPECT_NEAR(r.total_series, dirichlet_energy_log(f, a), 1e-12 * r.total_series);
    EXPECT_LT(r.gap, 1e-4);
}

TEST(NormExpansion, ComposeMatchesPointwiseEvaluation)
{
    TaylorGrid2D f(2, 2);
    f(1, 1) = 1.0;
    f(2, 0) = cplx(0.0, 1.0);
    f(0, 2) = 0.5;
    const auto p = DiscSymbol::moebius(0.3), q = DiscSymbol::blaschke({0.2, -0.4});
    const auto h = compose_separated(f, p, q, 48);
    for (cplx z1 : {cplx(0.1, 0.2), cplx(-0.4, 0.1)})
        for (cplx z2 : {cplx(0.3, -0.1), cplx(0.0, 0.45)})
            EXPECT_LT(std::abs(h.eval(z1, z2) - f.eval(p(z1), q(z2))), 1e-12);
}

TEST(NormExpansion, TruncationTailTooLarge)
{
    // slowly decaying composition: Blaschke zero near the circle
    const auto b = DiscSymbol::blaschke({0.97});
    EXPECT_THROW(verify_separated_norm_expansion({b, b}, {0.25, 0.25}, TaylorGrid2D::monomial(1, 1)), AccuracyError);
}

TEST(GFunction, NamesRoundTrip)
{
    for (auto g : {GFunction::one, GFunction::distance, GFunction::exponential, GFunction::kernel})
        EXPECT_EQ(parse_gfunction(to_string(g)), g);
    EXPECT_THROW(parse_gfunction("cosine"), DomainError);
}
