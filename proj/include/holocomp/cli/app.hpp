#pragma once

// Command-line front end: one JSON job per invocation, reports written into an output directory.

#include <holocomp/analytic.hpp>
#include <holocomp/capacity.hpp>
#include <holocomp/carleson.hpp>
#include <holocomp/disc_criteria.hpp>
#include <holocomp/errors.hpp>
#include <holocomp/io.hpp>
#include <holocomp/nevanlinna.hpp>
#include <holocomp/svg.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace holocomp::cli {

using io::ConfigNode;
using io::json;

inline constexpr const char* schema_version = "holocomp/1";

enum ExitCode : int { exit_pass = 0, exit_error = 1, exit_fail = 2 };

/// Finite evidence passes; growth and inconclusive sweeps both report a non-pass.
inline int exit_for(Verdict v) { return v == Verdict::finite_evidence ? exit_pass : exit_fail; }

/// One running job: its config, command-line overrides, and what it produces.
struct Job {
    ConfigNode& cfg;
    std::optional<std::uint64_t> seed_override;
    std::optional<long long> resolution_override;

    json effective = json::object(); // knobs actually used, after defaults and overrides
    json results = json::object();
    std::string verdict;
    int exit_code = exit_pass;
    std::optional<std::string> csv;
    std::optional<GridField> field;

    std::uint64_t seed(const std::string& key = "seed", std::uint64_t fallback = 1)
    {
        const std::uint64_t from_config = cfg.seed_or(key, fallback);
        const std::uint64_t s = seed_override.value_or(from_config);
        effective[key] = s;
        return s;
    }

    /// Integer knob that --resolution overrides.
    long long resolution(const std::string& key, long long fallback, long long lo)
    {
        long long v = cfg.integer_or(key, fallback, lo);
        if (resolution_override) {
            if (*resolution_override < lo) throw SchemaError("--resolution: must be at least " + std::to_string(lo) + " for " + key);
            v = *resolution_override;
        }
        effective[key] = v;
        return v;
    }

    long long integer(const std::string& key, long long fallback, long long lo)
    {
        const long long v = cfg.integer_or(key, fallback, lo);
        effective[key] = v;
        return v;
    }

    double number(const std::string& key, double fallback)
    {
        const double v = cfg.number_or(key, fallback);
        effective[key] = v;
        return v;
    }
};

namespace detail {

inline std::size_t argmax_unflagged(const std::vector<double>& v, const std::vector<bool>& flagged)
{
    std::size_t best = v.size();
    for (std::size_t k = 0; k < v.size(); ++k)
        if (!flagged[k] && std::isfinite(v[k]) && (best == v.size() || v[k] > v[best])) best = k;
    return best;
}

inline void set_marker(GridField& f)
{
    const std::size_t k = argmax_unflagged(f.values, f.flagged);
    if (k < f.values.size()) f.marker = std::make_pair(k % f.x.size(), k / f.x.size());
}

inline DiscSymbol disc_symbol(ConfigNode& n, const std::string& key) { return io::parse_disc_symbol(n.child(key)); }

inline BidiscSymbol::Separated separated_pair(ConfigNode& n)
{
    return {disc_symbol(n, "phi1"), disc_symbol(n, "phi2")};
}

inline BidiscSymbol bidisc_symbol(ConfigNode& n)
{
    if (!n.has("symbol")) return BidiscSymbol::identity();
    ConfigNode s = n.child("symbol");
    BidiscSymbol out = io::parse_bidisc_symbol(s);
    s.finish();
    return out;
}

inline double beta_of(Job& job, double fallback = 0.0)
{
    const double b = job.number("beta", fallback);
    if (!(b > -1.0)) job.cfg.fail("beta", "must exceed -1");
    return b;
}

inline PullbackMeasure pullback_measure(Job& job, std::size_t default_samples)
{
    PullbackMeasure m;
    m.phi = bidisc_symbol(job.cfg);
    m.beta = beta_of(job);
    m.samples = static_cast<std::size_t>(job.resolution("samples", static_cast<long long>(default_samples), 1));
    m.seed = job.seed();
    return m;
}

inline json to_json(const ExpansionReport& r)
{
    return json{{"series", io::to_json(r.series)}, {"counting", io::to_json(r.counting)},
                {"total_series", r.total_series}, {"total_counting", r.total_counting},
                {"gap", r.gap}, {"point_gap", r.point_gap}, {"slice1_gap", r.slice1_gap},
                {"slice2_gap", r.slice2_gap}, {"mixed_gap", r.mixed_gap}, {"tail", r.tail}};
}

inline json to_json(const IdentityReport& r)
{
    return json{{"lhs", r.lhs}, {"rhs", r.rhs}, {"gap", r.gap}, {"flags", r.flags}};
}

inline json to_json(const RatioReport& r)
{
    return json{{"a", r.a}, {"radii", r.grid.radii}, {"angles", r.grid.angles}, {"profile", r.profile},
                {"sup", r.sup}, {"argmax", io::to_json(r.argmax)}, {"flagged", r.flagged}};
}

/// Shared driver for commands that either check one configured case or every shipped fixture.
template <class Fixture, class FromConfig, class Check>
void fixture_or_single(Job& job, const std::vector<Fixture>& all, FromConfig from_config, Check check, double threshold)
{
    json entries = json::array();
    bool pass = true;
    auto record = [&](const std::string& name, json r) {
        const double gap = r.at("gap").template get<double>();
        const bool ok = gap < threshold;
        pass = pass && ok;
        r["name"] = name;
        r["pass"] = ok;
        entries.push_back(std::move(r));
    };
    if (job.cfg.has("fixtures")) {
        if (job.cfg.string("fixtures") != "all") job.cfg.fail("fixtures", "only \"all\" is supported");
        job.cfg.finish();
        for (const auto& f : all) record(f.name, check(f));
    } else {
        const Fixture f = from_config();
        job.cfg.finish();
        record("config", check(f));
    }
    job.results["threshold"] = threshold;
    job.results["entries"] = std::move(entries);
    job.verdict = pass ? "pass" : "fail";
    job.exit_code = pass ? exit_pass : exit_fail;
}

} // namespace detail

// ---------------------------------------------------------------------------------------------
// Commands

inline void cmd_norm(Job& job)
{
    auto& c = job.cfg;
    const TaylorGrid2D f = io::parse_grid2d(c, "f");
    const WeightPair a = io::parse_weight_pair(c, "a");
    const int radial = static_cast<int>(job.resolution("radial_order", 24, 2));
    const int angular = static_cast<int>(job.integer("angular_order", 64, 4));
    std::optional<BergmanWeight> w;
    if (c.has("beta")) w.emplace(detail::beta_of(job));
    c.finish();
    job.results["dirichlet_norm_coeff"] = dirichlet_norm_coeff(f, a);
    const Estimate e = dirichlet_energy_integral(f, a, radial, angular);
    job.results["dirichlet_energy_integral"] = json{{"value", e.value}, {"error_estimate", e.error_estimate}, {"nodes", e.nodes_used}};
    job.results["dirichlet_energy_log"] = io::to_json(dirichlet_energy_log_terms(f, a));
    if (w) {
        const Estimate b = bergman_norm(f, *w, radial, angular);
        job.results["bergman_norm"] = json{{"value", b.value}, {"error_estimate", b.error_estimate}, {"nodes", b.nodes_used}};
    }
}

inline void cmd_energy(Job& job)
{
    auto& c = job.cfg;
    const int resolution = static_cast<int>(job.resolution("resolution", 24, 4));
    const int order = static_cast<int>(job.integer("order", 48, 16));
    const double threshold = job.number("threshold", 1e-3);
    detail::fixture_or_single(
        job, expansion_fixtures(),
        [&] {
            auto s = detail::separated_pair(c);
            return ExpansionFixture{"config", s.phi1, s.phi2, io::parse_weight_pair(c, "a"), io::parse_grid2d(c, "f")};
        },
        [&](const ExpansionFixture& fx) {
            return detail::to_json(verify_separated_norm_expansion({fx.phi1, fx.phi2}, fx.a, fx.f, resolution, order));
        },
        threshold);
}

inline void cmd_cov_verify(Job& job)
{
    auto& c = job.cfg;
    const int resolution = static_cast<int>(job.resolution("resolution", 32, 4));
    const double threshold = job.number("threshold", 1e-3);
    detail::fixture_or_single(
        job, cov_fixtures(),
        [&] {
            auto s = detail::separated_pair(c);
            const WeightPair a = io::parse_weight_pair(c, "a");
            GFunction g = GFunction::one;
            try {
                g = parse_gfunction(c.string_or("g", "one"));
            } catch (const DomainError& e) {
                c.fail("g", e.what());
            }
            return CovFixture{"config", s.phi1, s.phi2, a, g};
        },
        [&](const CovFixture& fx) {
            json r = detail::to_json(verify_change_of_variables(fx.phi1, fx.phi2, fx.a, make_gfunction(fx.g), resolution));
            r["g"] = to_string(fx.g);
            return r;
        },
        threshold);
}

inline void cmd_separated_verdict(Job& job)
{
    auto& c = job.cfg;
    const auto s = detail::separated_pair(c);
    const WeightPair a = io::parse_weight_pair(c, "a");
    const int levels = static_cast<int>(job.resolution("levels", 14, 4));
    const int angles = static_cast<int>(job.integer("angles", 256, 1));
    c.finish();
    const SeparatedVerdict v = separated_verdict(s, a, RatioGrid::dyadic(levels, angles));
    job.results["phi1"] = detail::to_json(v.report1);
    job.results["phi2"] = detail::to_json(v.report2);
    job.results["verdict1"] = to_string(v.verdict1);
    job.results["verdict2"] = to_string(v.verdict2);
    job.verdict = to_string(v.verdict);
    job.exit_code = exit_for(v.verdict);

    std::ostringstream csv;
    csv << "component,r,theta,ratio,flag\n";
    int comp = 1;
    for (const RatioReport* r : {&v.report1, &v.report2}) {
        for (std::size_t i = 0; i < r->grid.radii.size(); ++i)
            for (int m = 0; m < r->grid.angles; ++m) {
                const std::size_t k = i * static_cast<std::size_t>(r->grid.angles) + static_cast<std::size_t>(m);
                csv << comp << ',' << format_number(r->grid.radii[i]) << ',' << format_number(r->grid.angle(m)) << ','
                    << format_number(r->ratio[k]) << ',' << to_string(r->flags[k]) << '\n';
            }
        ++comp;
    }
    job.csv = csv.str();

    GridField f;
    f.title = "N / (1 - r^2)^(1 - 2a), first coordinate";
    f.x_label = "theta";
    f.y_label = "r";
    for (int m = 0; m < v.report1.grid.angles; ++m) f.x.push_back(v.report1.grid.angle(m));
    f.y = v.report1.grid.radii;
    f.values = v.report1.ratio;
    for (PointFlag p : v.report1.flags) f.flagged.push_back(p != PointFlag::none);
    detail::set_marker(f);
    job.field = std::move(f);
}

inline void cmd_kernel_ratio(Job& job)
{
    auto& c = job.cfg;
    KernelRatioQuery q;
    q.phi = detail::disc_symbol(c, "phi");
    q.beta = job.number("beta", 0.0);
    if (c.has("sigma")) q.sigma = job.number("sigma", 0.0);
    q.eps = job.number("eps", 1e-6);
    if (c.has("radii")) q.grid.radii = c.numbers("radii");
    q.grid.angles = static_cast<int>(job.resolution("angles", q.grid.angles, 1));
    job.effective["radii"] = q.grid.radii;
    try {
        q.validate();
    } catch (const DomainError& e) {
        c.fail_here(e.what());
    }
    c.finish();
    const KernelRatioReport r = kernel_ratio_sup(q);
    job.results["sup"] = r.sup;
    job.results["argmax"] = json::array({io::to_json(r.argmax1), io::to_json(r.argmax2)});
    job.results["flagged_pairs"] = r.flagged_pairs;
    job.results["critical_points"] = r.critical_points;
    job.results["points"] = r.points.size();
    job.results["radii"] = r.radii;
    job.results["radius_sup"] = r.radius_sup;
    if (!std::isnan(q.sigma)) job.results["derived_a"] = q.derived_a();
    const bool finite = std::isfinite(r.sup);
    job.results["operator_norm_bound"] = finite ? json(operator_norm_bound(r)) : json(nullptr);
    job.verdict = finite ? "finite-evidence" : "inconclusive";
    job.exit_code = finite ? exit_pass : exit_fail;
    job.csv = r.to_csv();

    GridField f;
    f.title = "max kernel ratio per radius pair";
    f.x_label = "r (second point)";
    f.y_label = "r (first point)";
    f.x = f.y = r.radii;
    f.values = r.radius_sup;
    f.flagged.assign(f.values.size(), false);
    detail::set_marker(f);
    job.field = std::move(f);
}

inline void cmd_balooch_wu(Job& job)
{
    auto& c = job.cfg;
    BaloochWuParams p;
    p.sigma = job.number("sigma", 0.0);
    p.tau = job.number("tau", 0.0);
    p.beta = job.number("beta", 0.0);
    try {
        p.validate();
    } catch (const DomainError& e) {
        c.fail_here(e.what());
    }
    const json& fs = c.raw("functions");
    if (!fs.is_array() || fs.empty()) c.fail("functions", "expected a nonempty array of coefficient lists");
    std::vector<TaylorGrid1D> family;
    for (const auto& coeffs : fs) {
        json wrapper{{"f", coeffs}};
        ConfigNode n(wrapper, nullptr);
        try {
            family.push_back(io::parse_grid1d(n, "f"));
        } catch (const SchemaError&) {
            c.fail("functions", "each function is a nonempty list of coefficients (numbers or [re, im])");
        }
    }
    const int resolution = static_cast<int>(job.resolution("resolution", 48, 4));
    c.finish();
    const EquivalenceReport r = balooch_wu_family(family, p, resolution);
    json entries = json::array();
    for (const auto& e : r.entries)
        entries.push_back(json{{"left", e.left}, {"right", e.right}, {"ratio", e.ratio}, {"flags", e.flags}});
    job.results["alpha"] = p.sigma + p.tau - 2.0 * p.beta;
    job.results["entries"] = std::move(entries);
    job.results["min_ratio"] = r.min_ratio;
    job.results["max_ratio"] = r.max_ratio;
}

inline void cmd_box_volume(Job& job)
{
    auto& c = job.cfg;
    const BoxUnion boxes = io::parse_boxes(c, "boxes");
    const double beta = detail::beta_of(job);
    BoxVolumeOptions opt;
    opt.mc_samples = static_cast<std::size_t>(job.resolution("mc_samples", static_cast<long long>(opt.mc_samples), 1));
    opt.seed = job.seed();
    c.finish();
    json out = json::array();
    for (const auto& b : boxes.boxes) {
        const BoxVolume v = box_volume(b, beta, opt);
        out.push_back(json{{"box", io::to_json(b)}, {"value", v.value}, {"monte_carlo", io::to_json(v.monte_carlo)}});
    }
    job.results["boxes"] = std::move(out);
    job.results["convention"] = "|I x J| = 4 delta1 delta2";
}

inline void cmd_pullback_volume(Job& job)
{
    auto& c = job.cfg;
    const PullbackMeasure m = detail::pullback_measure(job, 100000);
    const BoxUnion boxes = io::parse_boxes(c, "boxes");
    c.finish();
    const PullbackVolume v = pullback_box_volume(m, boxes);
    job.results["boxes"] = io::to_json(boxes);
    job.results["estimate"] = io::to_json(v.estimate);
    job.results["total_mass"] = m.total_mass();
    job.results["warnings"] = v.warnings;
}

inline void cmd_psi_check(Job& job)
{
    auto [psi, desc] = io::parse_psi(job.cfg.child("psi"));
    job.cfg.finish();
    const PsiReport r = psi_admissibility(psi);
    job.results["psi"] = desc;
    job.results["admissibility"] = to_string(r.verdict);
    job.results["value"] = r.value;
    job.results["last_partial"] = r.last_partial;
    job.results["octaves"] = r.octaves;
    job.results["partials"] = r.partials;
    job.verdict = to_string(r.verdict);
    job.exit_code = r.verdict == Admissibility::admissible ? exit_pass : exit_fail;
}

inline void cmd_one_box_check(Job& job)
{
    auto& c = job.cfg;
    const PullbackMeasure m = detail::pullback_measure(job, 100000);
    auto [psi, desc] = c.has("psi") ? io::parse_psi(c.child("psi")) : std::make_pair(psi_power(1.0), json{{"type", "power"}, {"p", 1.0}});
    OneBoxOptions opt;
    opt.centers = static_cast<int>(job.integer("centers", opt.centers, 1));
    opt.max_level = static_cast<int>(job.integer("max_level", opt.max_level, 0));
    c.finish();
    const OneBoxReport r = one_box_sufficient_check(m, psi, opt);
    job.results["psi"] = desc;
    job.results["psi_admissibility"] = to_string(r.psi_verdict);
    job.results["psi_integral"] = r.psi_integral;
    job.results["profile"] = r.profile;
    job.results["proof_profile"] = r.proof_profile;
    job.results["resolved"] = r.resolved;
    job.results["sup"] = r.sup;
    job.results["full_box_ratio"] = r.full_box_ratio;
    job.results["warnings"] = r.warnings;
    job.results["convention"] = "|I x J| = 4 delta1 delta2";
    job.verdict = to_string(r.verdict);
    job.exit_code = exit_for(r.verdict);
    job.csv = r.to_csv();

    GridField f;
    f.title = "mu(S) / psi(|I x J|) per box";
    f.x_label = "box index (theta1 major)";
    f.y_label = "j (delta = 2^-j)";
    const std::size_t per = static_cast<std::size_t>(opt.centers) * static_cast<std::size_t>(opt.centers);
    for (std::size_t i = 0; i < per; ++i) f.x.push_back(static_cast<double>(i));
    for (int j = 0; j <= opt.max_level; ++j) f.y.push_back(j);
    for (const auto& row : r.rows) {
        f.values.push_back(row.ratio);
        f.flagged.push_back(row.hits < opt.min_hits);
    }
    detail::set_marker(f);
    job.field = std::move(f);
}

inline void cmd_kernel_integral(Job& job)
{
    auto& c = job.cfg;
    const PullbackMeasure m = detail::pullback_measure(job, 100000);
    BidiscKernel k;
    if (c.has("C")) {
        const json& v = c.raw("C");
        if (v.is_number()) k.c1 = k.c2 = v.get<double>();
        else if (v.is_array() && v.size() == 2 && v[0].is_number() && v[1].is_number()) {
            k.c1 = v[0].get<double>();
            k.c2 = v[1].get<double>();
        } else c.fail("C", "expected a number or [C1, C2]");
        if (!(k.c1 > 0.0 && k.c2 > 0.0)) c.fail("C", "constants must be positive");
    }
    ProbeGrid grid;
    if (c.has("probe")) {
        ConfigNode p = c.child("probe");
        grid.levels = static_cast<int>(p.integer_or("levels", grid.levels, 0));
        grid.angles = static_cast<int>(p.integer_or("angles", grid.angles, 1));
        p.finish();
    }
    job.effective["C"] = {k.c1, k.c2};
    job.effective["probe"] = {{"levels", grid.levels}, {"angles", grid.angles}};
    c.finish();
    const KernelIntegralReport r = kernel_integral_test(m, k, grid);
    job.results["kernel"] = r.kernel;
    job.results["sup"] = r.sup;
    job.results["argmax"] = io::to_json(r.argmax);
    job.results["probes"] = r.values.size();

    const std::size_t P = r.coordinate_points.size();
    std::ostringstream csv;
    csv << "r1,theta1,r2,theta2,value\n";
    for (std::size_t i = 0; i < P; ++i)
        for (std::size_t j = 0; j < P; ++j)
            csv << format_number(std::abs(r.coordinate_points[i])) << ',' << format_number(std::arg(r.coordinate_points[i]))
                << ',' << format_number(std::abs(r.coordinate_points[j])) << ','
                << format_number(std::arg(r.coordinate_points[j])) << ',' << format_number(r.values[i * P + j]) << '\n';
    job.csv = csv.str();

    GridField f;
    f.title = "kernel integral per probe point";
    f.x_label = "probe index, second coordinate";
    f.y_label = "probe index, first coordinate";
    for (std::size_t i = 0; i < P; ++i) f.x.push_back(static_cast<double>(i));
    f.y = f.x;
    f.values = r.values;
    f.flagged.assign(f.values.size(), false);
    detail::set_marker(f);
    job.field = std::move(f);
}

inline CapacityOptions solver_options(Job& job)
{
    CapacityOptions opt;
    opt.tol = job.number("tol", opt.tol);
    if (!(opt.tol > 0.0)) job.cfg.fail("tol", "must be positive");
    opt.max_iter = static_cast<int>(job.integer("max_iter", opt.max_iter, 1));
    return opt;
}

inline TorusGrid torus_grid(Job& job, long long fallback)
{
    TorusGrid g;
    g.M = static_cast<int>(job.resolution("M", fallback, 8));
    try {
        g.validate();
    } catch (const DomainError& e) {
        if (job.resolution_override) throw SchemaError(std::string("--resolution: ") + e.what());
        job.cfg.fail("M", e.what());
    }
    return g;
}

inline void cmd_capacity(Job& job)
{
    auto& c = job.cfg;
    const RectUnion E = io::parse_rects(c, "E");
    const TorusGrid g = torus_grid(job, 64);
    const std::string kind = c.string_or("kernel", "bessel");
    job.effective["kernel"] = kind;
    const CapacityOptions opt = solver_options(job);
    const double C = job.number("log_constant", 1.0);
    if (!(C > 0.0)) c.fail("log_constant", "must be positive");

    if (kind != "both" && kind != "bessel" && kind != "logarithmic") c.fail("kernel", "expected \"bessel\", \"logarithmic\" or \"both\"");
    c.finish();
    CapacityResult shown;
    if (kind == "both") {
        const CapacityComparison cmp = capacity_vs_box_remark(E, g, C, opt);
        job.results["bessel"] = io::to_json(cmp.bessel);
        job.results["logarithmic"] = io::to_json(cmp.logarithmic);
        job.results["ratio"] = cmp.ratio;
        shown = cmp.bessel;
    } else {
        const auto k = kind == "bessel" ? CapacityKernel::bessel : CapacityKernel::logarithmic;
        shown = capacity(KernelMatrix(g, k, C), E, opt);
        job.results = io::to_json(shown);
    }
    job.results["E"] = io::to_json(E);

    std::ostringstream csv;
    csv << "theta1,theta2,h\n";
    GridField f;
    f.title = "capacity optimizer h";
    f.x_label = "theta1";
    f.y_label = "theta2";
    for (int i = 0; i < g.M; ++i) f.x.push_back(g.center(i));
    f.y = f.x;
    for (int i2 = 0; i2 < g.M; ++i2)
        for (int i1 = 0; i1 < g.M; ++i1) f.values.push_back(shown.h(i1, i2));
    for (int i1 = 0; i1 < g.M; ++i1)
        for (int i2 = 0; i2 < g.M; ++i2)
            csv << format_number(g.center(i1)) << ',' << format_number(g.center(i2)) << ',' << format_number(shown.h(i1, i2)) << '\n';
    f.flagged.assign(f.values.size(), false);
    detail::set_marker(f);
    job.csv = csv.str();
    job.field = std::move(f);
}

inline void cmd_capacity_condition(Job& job)
{
    auto& c = job.cfg;
    const PullbackMeasure m = detail::pullback_measure(job, 200000);
    const TorusGrid g = torus_grid(job, 32);
    CapacityConditionOptions opt;
    opt.solver = solver_options(job);
    std::vector<RectUnion> families;
    if (c.has("families")) {
        if (c.has("dyadic")) c.fail("families", "give either families or dyadic, not both");
        const json& v = c.raw("families");
        if (!v.is_array() || v.empty()) c.fail("families", "expected a nonempty array of rectangle lists");
        for (std::size_t i = 0; i < v.size(); ++i) {
            json wrapper{{"E", v[i]}};
            ConfigNode n(wrapper, nullptr);
            try {
                families.push_back(io::parse_rects(n, "E"));
            } catch (const SchemaError& e) {
                c.fail("families", "family " + std::to_string(i) + ": " + e.what());
            }
            if (families.back().rects.empty()) c.fail("families", "family " + std::to_string(i) + " is empty");
        }
    } else {
        int levels = 6;
        double t1 = 0.0, t2 = 0.0;
        if (c.has("dyadic")) {
            ConfigNode d = c.child("dyadic");
            levels = static_cast<int>(d.integer_or("levels", levels, 1));
            if (d.has("center")) {
                const auto ctr = d.numbers("center", 2);
                t1 = ctr[0];
                t2 = ctr[1];
            }
            d.finish();
        }
        job.effective["dyadic"] = {{"levels", levels}, {"center", {t1, t2}}};
        families = dyadic_single_box_families(levels, t1, t2);
    }
    c.finish();
    const CapacityConditionReport r = capacity_condition_check(m, families, g, opt);
    json rows = json::array();
    std::ostringstream csv;
    csv << "family,volume,stderr,hits,capacity,ratio,resolved\n";
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
        const auto& row = r.rows[i];
        rows.push_back(json{{"rects", io::to_json(row.rects)},
                            {"boxes", io::to_json(row.boxes)},
                            {"volume", io::to_json(row.volume.estimate)},
                            {"capacity", io::to_json(row.capacity)},
                            {"ratio", row.ratio},
                            {"resolved", row.resolved}});
        csv << i << ',' << format_number(row.volume.estimate.value) << ',' << format_number(row.volume.estimate.std_error)
            << ',' << row.volume.estimate.hits << ',' << format_number(row.capacity.value) << ','
            << format_number(row.ratio) << ',' << (row.resolved ? "true" : "false") << '\n';
    }
    job.results["families"] = std::move(rows);
    job.results["profile"] = r.profile;
    job.results["max_ratio"] = r.max_ratio;
    job.results["scope"] = r.scope;
    job.results["box_convention"] = r.box_convention;
    job.results["warnings"] = r.warnings;
    job.verdict = to_string(r.verdict);
    job.exit_code = exit_for(r.verdict);
    job.csv = csv.str();
}

inline void cmd_aleman(Job& job)
{
    auto& c = job.cfg;
    const DiscSymbol phi = detail::disc_symbol(c, "phi");
    const double a = job.number("a", 0.5);
    const cplx omega = c.complex("omega");
    const int order = static_cast<int>(job.resolution("order", 24, 2));
    c.finish();
    const AlemanReport r = aleman_diagnostic(phi, a, omega, order);
    job.results = json{{"omega", io::to_json(r.omega)}, {"radius", r.radius},   {"value", r.value},
                       {"average", r.average},          {"ratio", r.ratio},     {"stated_bound", r.stated_bound},
                       {"nodes", r.nodes_used}};
}

// ---------------------------------------------------------------------------------------------
// Dispatch

struct Command {
    const char* name;
    const char* summary;
    const char* resolution_knob;
    void (*run)(Job&);
};

inline const std::vector<Command>& commands()
{
    static const std::vector<Command> list{
        {"norm", "Dirichlet-type and Bergman norms of a bidisc polynomial", "radial_order", cmd_norm},
        {"energy", "two-route check of the separated norm expansion of C_Phi f", "resolution", cmd_energy},
        {"cov-verify", "change-of-variables identity against counting-function integrals", "resolution", cmd_cov_verify},
        {"separated-verdict", "counting-function ratio sweep for a separated symbol", "levels", cmd_separated_verdict},
        {"kernel-ratio", "sup of the reproducing-kernel ratio over a polar grid", "angles", cmd_kernel_ratio},
        {"balooch-wu", "double-integral versus Dirichlet seminorm on a function family", "resolution", cmd_balooch_wu},
        {"box-volume", "weighted volume of Carleson boxes (quadrature and Monte Carlo)", "mc_samples", cmd_box_volume},
        {"pullback-volume", "pull-back measure of a union of boxes", "samples", cmd_pullback_volume},
        {"psi-check", "admissibility of a gauge function psi", "", cmd_psi_check},
        {"one-box-check", "one-box sufficient condition sweep over dyadic boxes", "samples", cmd_one_box_check},
        {"kernel-integral", "logarithmic kernel integral test on a probe grid", "samples", cmd_kernel_integral},
        {"capacity", "Bessel 1/2-capacity of a rectangle union on the torus", "M", cmd_capacity},
        {"capacity-condition", "pull-back volume over capacity across box families", "samples", cmd_capacity_condition},
        {"aleman", "counting function against its mean over a hyperbolic disc", "order", cmd_aleman},
    };
    return list;
}

inline std::size_t edit_distance(const std::string& a, const std::string& b)
{
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            const std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

/// A command containing the input wins; otherwise the smallest edit distance.
inline std::string nearest_command(const std::string& name)
{
    std::string best;
    std::size_t dist = std::string::npos;
    for (const auto& c : commands())
        if (const std::size_t d = std::string(c.name).find(name) != std::string::npos && !name.empty() ? 0 : edit_distance(name, c.name) + 1; d < dist) {
            dist = d;
            best = c.name;
        }
    return best;
}

inline std::string help_text()
{
    std::ostringstream s;
    s << "usage: holocomp <command> --config <path> [--out <dir>] [--seed <u64>] [--resolution <n>]\n\n"
      << "commands:\n";
    for (const auto& c : commands()) {
        s << "  " << c.name << std::string(20 - std::string(c.name).size(), ' ') << c.summary;
        if (*c.resolution_knob) s << " (--resolution sets " << c.resolution_knob << ")";
        s << '\n';
    }
    s << "\noptions:\n"
      << "  --config <path>      JSON job configuration\n"
      << "  --out <dir>          output directory for report.json, grid.csv, heatmap.svg (default holocomp-out)\n"
      << "  --seed <u64>         overrides the seed of sampling commands\n"
      << "  --resolution <n>     overrides the main resolution knob of the command\n"
      << "\nexit status: 0 pass or finite evidence, 2 fail, growth or inconclusive, 1 error\n"
      << "HOLOCOMP_THREADS caps the number of worker threads.\n";
    return s.str();
}

inline void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write " + tmp.string());
        f << content;
        f.flush();
        if (!f) throw Error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::string read_file(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot read config " + path);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

struct Invocation {
    std::string command;
    std::string config_path;
    std::string out_dir = "holocomp-out";
    std::optional<std::uint64_t> seed;
    std::optional<long long> resolution;
};

/// Runs a job from config text and writes its reports into out_dir. Returns the exit code.
inline int execute(const Invocation& inv, const std::string& config_text, std::ostream& out)
{
    const auto it = std::find_if(commands().begin(), commands().end(), [&](const Command& c) { return inv.command == c.name; });
    if (it == commands().end()) throw SchemaError("unknown command \"" + inv.command + "\"");

    const auto src = std::make_shared<const std::string>(config_text);
    const json config = io::parse_config_text(*src);
    ConfigNode root(config, src);
    if (root.has("command") && root.string("command") != inv.command)
        root.fail("command", "config is for \"" + config["command"].get<std::string>() + "\", not \"" + inv.command + "\"");

    Job job{root, inv.seed, inv.resolution};
    it->run(job);
    root.finish();

    json report{{"schema", schema_version}, {"command", inv.command}, {"config", config},
                {"effective", job.effective}, {"results", job.results}, {"exit_code", job.exit_code}};
    if (!job.verdict.empty()) report["verdict"] = job.verdict;

    namespace fs = std::filesystem;
    const fs::path dir(inv.out_dir);
    fs::create_directories(dir);
    std::optional<std::string> svg;
    if (job.field) svg = render_heatmap(*job.field);
    write_atomic(dir / "report.json", report.dump(2) + "\n");
    if (job.csv) write_atomic(dir / "grid.csv", *job.csv);
    if (svg) write_atomic(dir / "heatmap.svg", *svg);

    out << inv.command << ": " << (job.verdict.empty() ? "done" : job.verdict) << " (" << (dir / "report.json").string() << ")\n";
    return job.exit_code;
}

/// Entry point; args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    if (args.empty()) {
        out << help_text();
        return exit_pass;
    }

    Invocation inv;
    CLI::App app{"holocomp"};
    app.set_help_flag();
    bool help = false;
    app.add_flag("-h,--help", help);
    app.add_option("command", inv.command);
    app.add_option("--config", inv.config_path);
    app.add_option("--out", inv.out_dir);
    std::uint64_t seed = 0;
    long long resolution = 0;
    auto* seed_opt = app.add_option("--seed", seed);
    auto* res_opt = app.add_option("--resolution", resolution);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        err << "holocomp: " << e.what() << "\n";
        return exit_error;
    }
    if (help) {
        out << help_text();
        return exit_pass;
    }
    if (inv.command.empty()) {
        err << "holocomp: missing command\n" << help_text();
        return exit_error;
    }
    if (std::none_of(commands().begin(), commands().end(), [&](const Command& c) { return inv.command == c.name; })) {
        err << "holocomp: unknown command \"" << inv.command << "\"; did you mean \"" << nearest_command(inv.command) << "\"?\n";
        return exit_error;
    }
    if (inv.config_path.empty()) {
        err << "holocomp: " << inv.command << " requires --config <path>\n";
        return exit_error;
    }
    if (*seed_opt) inv.seed = seed;
    if (*res_opt) inv.resolution = resolution;

    try {
        return execute(inv, read_file(inv.config_path), out);
    } catch (const std::exception& e) {
        err << "holocomp: " << e.what() << "\n";
        return exit_error;
    }
}

} // namespace holocomp::cli
