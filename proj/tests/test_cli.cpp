#include <holocomp/cli/app.hpp>

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

using namespace holocomp;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir{HOLOCOMP_SOURCE_DIR};

struct RunResult {
    int code;
    std::string out, err;
};

RunResult run_cli(const std::vector<std::string>& args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::path(testing::TempDir()) / ("holocomp-cli-" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

fs::path write_config(const fs::path& dir, const std::string& text)
{
    const fs::path p = dir / "job.json";
    std::ofstream(p) << text;
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

RunResult run_job(const std::string& command, const std::string& config, const fs::path& dir,
                  std::vector<std::string> extra = {})
{
    std::vector<std::string> args{command, "--config", write_config(dir, config).string(), "--out", (dir / "out").string()};
    args.insert(args.end(), extra.begin(), extra.end());
    return run_cli(args);
}

io::json report(const fs::path& dir) { return io::json::parse(slurp(dir / "out" / "report.json")); }

/// Fill colors of heatmap cells, excluding the color bar.
std::vector<std::string> cell_fills(const std::string& svg, bool include_flagged)
{
    std::vector<std::string> out;
    const std::regex rect(R"re(<rect x="[^"]*" y="[^"]*" width="([^"]*)" height="[^"]*" fill="([^"]*)"( class="flagged")?/>)re");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), rect); it != std::sregex_iterator(); ++it) {
        if ((*it)[1] == "16") continue;
        if ((*it)[3].matched && !include_flagged) continue;
        out.push_back((*it)[2]);
    }
    return out;
}

} // namespace

TEST(Cli, NoArgumentsPrintsHelpListingEveryCommand)
{
    const RunResult r = run_cli({});
    EXPECT_EQ(r.code, 0);
    for (const char* name : {"norm", "energy", "cov-verify", "separated-verdict", "kernel-ratio", "balooch-wu", "box-volume",
                             "pullback-volume", "psi-check", "one-box-check", "kernel-integral", "capacity",
                             "capacity-condition", "aleman"})
        EXPECT_NE(r.out.find(std::string("  ") + name + " "), std::string::npos) << name;
    EXPECT_EQ(cli::commands().size(), 14u);
    EXPECT_EQ(run_cli({"--help"}).code, 0);
}

TEST(Cli, UnknownCommandSuggestsNearestMatch)
{
    const RunResult r = run_cli({"separated-verdic", "--config", "missing.json"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("did you mean \"separated-verdict\""), std::string::npos) << r.err;
    EXPECT_EQ(cli::nearest_command("capacty"), "capacity");
    EXPECT_EQ(cli::nearest_command("psi"), "psi-check");
}

TEST(Cli, UsageErrorsExitOne)
{
    EXPECT_EQ(run_cli({"capacity"}).code, 1);
    EXPECT_EQ(run_cli({"capacity", "--config", "/nonexistent/job.json"}).code, 1);
    EXPECT_EQ(run_cli({"capacity", "--config", "x.json", "--bogus"}).code, 1);
    EXPECT_EQ(run_cli({"capacity", "--config", "x.json", "--seed", "minus"}).code, 1);
}

TEST(Cli, MalformedJsonExitsOneWithLine)
{
    const auto dir = scratch("malformed");
    const RunResult r = run_job("capacity", "{\n  \"E\": [\n    {\"a\": [0, 0] \"b\": [1, 1]}\n  ]\n}\n", dir);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("config:3: malformed JSON"), std::string::npos) << r.err;
    EXPECT_FALSE(fs::exists(dir / "out" / "report.json"));
}

TEST(Cli, UnknownKeyRejectedWithLine)
{
    const auto dir = scratch("unknown-key");
    const RunResult r = run_job("capacity", "{\n  \"E\": [],\n  \"M\": 32,\n  \"tolerance\": 1e-3\n}\n", dir);
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("config:4: unknown key \"tolerance\""), std::string::npos) << r.err;

    const RunResult nested = run_job(
        "separated-verdict",
        "{\n  \"phi1\": {\"type\": \"identity\"},\n  \"phi2\": {\"type\": \"moebius\", \"alpha\": 0.5,\n    \"alfa\": 0.5},\n  \"a\": [0.25, 0.25]\n}\n",
        dir);
    EXPECT_EQ(nested.code, 1);
    EXPECT_NE(nested.err.find("config:4: unknown key \"phi2.alfa\""), std::string::npos) << nested.err;
}

TEST(Cli, SchemaViolationsExitOne)
{
    const auto dir = scratch("schema");
    EXPECT_EQ(run_job("capacity", R"({"E": [], "M": 30})", dir).code, 1);
    EXPECT_EQ(run_job("capacity", R"({"E": [], "M": "large"})", dir).code, 1);
    EXPECT_EQ(run_job("capacity", R"({"E": [], "kernel": "riesz"})", dir).code, 1);
    EXPECT_EQ(run_job("capacity", R"({"command": "norm", "E": []})", dir).code, 1);
    EXPECT_EQ(run_job("norm", R"({"f": [[0, 1]], "a": [0.25, 0.75]})", dir).code, 1);
    EXPECT_EQ(run_job("kernel-ratio", R"({"phi": {"type": "moebius", "alpha": [1.5, 0]}})", dir).code, 1);
    EXPECT_EQ(run_job("psi-check", R"({"psi": {"type": "log"}})", dir).code, 1);
    EXPECT_EQ(run_job("capacity", R"([1, 2])", dir).code, 1);
}

TEST(Cli, SeparatedVerdictExample)
{
    const auto dir = scratch("separated");
    const RunResult r = run_job("separated-verdict",
                                R"({"command":"separated-verdict","phi1":{"type":"moebius","alpha":[0.5,0]},)"
                                R"("phi2":{"type":"poly","coeffs":[[0,0],[0,0],[1,0]]},"a":[0.25,0.25]})",
                                dir);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = report(dir);
    EXPECT_EQ(rep["schema"], "holocomp/1");
    EXPECT_EQ(rep["verdict"], "finite-evidence");
    EXPECT_EQ(rep["results"]["phi1"]["profile"].size(), 14u);
    EXPECT_EQ(rep["results"]["phi2"]["profile"].size(), 14u);
    EXPECT_TRUE(fs::exists(dir / "out" / "grid.csv"));
    EXPECT_TRUE(fs::exists(dir / "out" / "heatmap.svg"));
}

TEST(Cli, CapacityExample)
{
    const auto dir = scratch("capacity");
    const RunResult r = run_job("capacity", R"({"command":"capacity","E":[{"a":[0,0],"b":[1.5708,1.5708]}],"M":32})", dir);
    ASSERT_EQ(r.code, 0) << r.err;
    const auto rep = report(dir);
    const auto& res = rep["results"];
    for (const char* key : {"value", "converged", "max_violation", "M"}) EXPECT_TRUE(res.contains(key)) << key;
    EXPECT_EQ(res["M"], 32);
    EXPECT_TRUE(res["converged"].get<bool>());
    EXPECT_GT(res["value"].get<double>(), 0.0);
    EXPECT_LT(res["value"].get<double>(), 1.0 / 64.0);
}

TEST(Cli, FailingVerdictExitsTwo)
{
    const auto dir = scratch("fail");
    const RunResult r = run_job("psi-check", R"({"psi": {"type": "power", "p": 0}})", dir);
    EXPECT_EQ(r.code, 2);
    EXPECT_EQ(report(dir)["verdict"], "inadmissible");
}

TEST(Cli, EveryCommandHasAFixtureThatPasses)
{
    for (const auto& c : cli::commands()) {
        const fs::path cfg = source_dir / "docs" / "fixtures" / (std::string(c.name) + ".json");
        ASSERT_TRUE(fs::exists(cfg)) << cfg;
        const auto dir = scratch(std::string("fixture-") + c.name);
        const RunResult r = run_cli({c.name, "--config", cfg.string(), "--out", (dir / "out").string()});
        EXPECT_EQ(r.code, 0) << c.name << ": " << r.err;
        const auto rep = report(dir);
        EXPECT_EQ(rep["schema"], "holocomp/1");
        EXPECT_EQ(rep["command"], c.name);
        EXPECT_EQ(rep["exit_code"], r.code);
        for (const auto& e : fs::directory_iterator(dir / "out"))
            EXPECT_NE(e.path().extension(), ".tmp") << e.path();
    }
}

TEST(Cli, ReportsAreByteIdenticalAcrossRuns)
{
    for (const char* name : {"pullback-volume", "one-box-check", "capacity", "kernel-ratio"}) {
        const fs::path cfg = source_dir / "docs" / "fixtures" / (std::string(name) + ".json");
        const auto a = scratch(std::string("det-a-") + name), b = scratch(std::string("det-b-") + name);
        ASSERT_EQ(run_cli({name, "--config", cfg.string(), "--out", (a / "out").string()}).code, 0);
        ASSERT_EQ(run_cli({name, "--config", cfg.string(), "--out", (b / "out").string()}).code, 0);
        for (const char* file : {"report.json", "grid.csv", "heatmap.svg"}) {
            if (!fs::exists(a / "out" / file)) continue;
            EXPECT_EQ(slurp(a / "out" / file), slurp(b / "out" / file)) << name << " " << file;
        }
    }
}

TEST(Cli, SeedOverrideIsRecordedAndChangesSamples)
{
    const std::string cfg = R"({"boxes": [{"zeta": [0, 0], "delta": [0.5, 0.5]}], "samples": 20000, "seed": 3})";
    const auto a = scratch("seed-a"), b = scratch("seed-b");
    ASSERT_EQ(run_job("pullback-volume", cfg, a).code, 0);
    ASSERT_EQ(run_job("pullback-volume", cfg, b, {"--seed", "4"}).code, 0);
    const auto ra = report(a), rb = report(b);
    EXPECT_EQ(ra["effective"]["seed"], 3);
    EXPECT_EQ(rb["effective"]["seed"], 4);
    EXPECT_NE(ra["results"]["estimate"]["value"], rb["results"]["estimate"]["value"]);
}

TEST(Cli, ResolutionOverrideMapsToCommandKnob)
{
    const auto dir = scratch("resolution");
    ASSERT_EQ(run_job("capacity", R"({"E": [{"a": [0, 0], "b": [1.5708, 1.5708]}], "M": 64})", dir, {"--resolution", "16"}).code, 0);
    EXPECT_EQ(report(dir)["results"]["M"], 16);
    EXPECT_EQ(run_job("capacity", R"({"E": []})", dir, {"--resolution", "12"}).code, 1);
}

TEST(Heatmap, IdentityRatioFieldIsConstantColor)
{
    // with a = 1/2 the identity ratio is identically 1
    const auto dir = scratch("heat-identity");
    ASSERT_EQ(run_job("separated-verdict",
                      R"({"phi1": {"type": "identity"}, "phi2": {"type": "identity"}, "a": [0.5, 0.5], "angles": 16})", dir)
                  .code,
              0);
    const std::string svg = slurp(dir / "out" / "heatmap.svg");
    const auto fills = cell_fills(svg, false);
    ASSERT_FALSE(fills.empty());
    EXPECT_EQ(std::set<std::string>(fills.begin(), fills.end()).size(), 1u);
    EXPECT_NE(svg.find(">r</text>"), std::string::npos);
    EXPECT_NE(svg.find(">theta</text>"), std::string::npos);
}

TEST(Heatmap, MoebiusRatioMatchesGoldenFile)
{
    const RatioReport r = sup_ratio(DiscSymbol::moebius(0.5), 0.25, RatioGrid::dyadic(6, 16));
    GridField f;
    f.title = "moebius 0.5, a = 1/4";
    f.x_label = "theta";
    f.y_label = "r";
    for (int m = 0; m < r.grid.angles; ++m) f.x.push_back(r.grid.angle(m));
    f.y = r.grid.radii;
    f.values = r.ratio;
    for (PointFlag p : r.flags) f.flagged.push_back(p != PointFlag::none);
    cli::detail::set_marker(f);
    const std::string svg = render_heatmap(f);

    EXPECT_NE(svg.find("class=\"argmax\""), std::string::npos);
    const auto fills = cell_fills(svg, false);
    EXPECT_GT(std::set<std::string>(fills.begin(), fills.end()).size(), 10u);
    const fs::path golden = source_dir / "tests" / "golden" / "moebius_ratio_heatmap.svg";
    if (std::getenv("HOLOCOMP_UPDATE_GOLDEN")) std::ofstream(golden, std::ios::binary) << svg;
    ASSERT_TRUE(fs::exists(golden));
    EXPECT_EQ(svg, slurp(golden));
}

TEST(Heatmap, FlaggedCellsAreGray)
{
    GridField f;
    f.x = {0, 1};
    f.y = {0, 1};
    f.values = {1, 2, std::nan(""), 4};
    f.flagged = {false, true, false, false};
    const std::string svg = render_heatmap(f);
    const auto all = cell_fills(svg, true), unflagged = cell_fills(svg, false);
    EXPECT_EQ(all.size(), 4u);
    EXPECT_EQ(unflagged.size(), 2u);
    EXPECT_EQ(std::count(all.begin(), all.end(), "#9e9e9e"), 2);
}

TEST(Heatmap, EmptyOrNonGridFieldIsUnsupported)
{
    EXPECT_THROW(render_heatmap(GridField{}), UnsupportedError);
    GridField f;
    f.x = {0, 1};
    f.y = {0};
    f.values = {1, 2, 3};
    EXPECT_THROW(render_heatmap(f), UnsupportedError);
}
