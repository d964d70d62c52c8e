#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "zeno/cli/commands.hpp"
#include "zeno/errors.hpp"
#include "zeno/exact_propagators.hpp"

using namespace zeno;
using namespace zeno::cli;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const char* dir = std::getenv("ZENO_TEST_TMP");
    return std::filesystem::path(dir ? dir : std::filesystem::temp_directory_path().string()) / name;
}

int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "zeno");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return run_cli(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::stringstream ss(text);
    for (std::string l; std::getline(ss, l);) out.push_back(l);
    return out;
}

double cell_real(const Table& t, std::size_t row, std::size_t col) { return std::get<double>(t.rows.at(row).at(col)); }

std::string cell_text(const Table& t, std::size_t row, std::size_t col) {
    return std::get<std::string>(t.rows.at(row).at(col));
}

RunConfig small_recursion(Subcommand s) {
    RunConfig cfg;
    cfg.subcommand = s;
    cfg.n_max = 4;
    cfg.spacing_factor = 4e-3;
    cfg.samples_per_interval = 6;
    return cfg;
}

}  // namespace

TEST_CASE("fv table") {
    RunConfig cfg;
    const Table t = cmd_fv(cfg);
    CHECK(t.columns == std::vector<std::string>{"t", "f_v"});
    REQUIRE(t.rows.size() == 2100);
    CHECK(cell_real(t, 0, 0) == doctest::Approx(0.01));
    CHECK(cell_real(t, 2099, 0) == doctest::Approx(21.0));
    CHECK(cell_real(t, 0, 1) == doctest::Approx(0.99337).epsilon(1e-5));
    for (std::size_t i = 1; i < t.rows.size(); ++i) CHECK(cell_real(t, i, 1) < cell_real(t, i - 1, 1));

    std::ostringstream os;
    write_csv(t, os);
    const auto ls = lines(os.str());
    CHECK(ls.size() == 2101);
    CHECK(ls[0] == "t,f_v");
    CHECK(os.str().find('\r') == std::string::npos);
}

TEST_CASE("fp table: limit rows and layout") {
    const auto cfg = small_recursion(Subcommand::fp);
    const Table t = cmd_fp(cfg);
    CHECK(t.columns == std::vector<std::string>{"t", "side", "f_p_model", "f_p_numeric", "f_v", "s"});
    CHECK(t.rows.size() == (cfg.n_max + 1) * (cfg.samples_per_interval + 2));
    std::size_t peaks = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double s = cell_real(t, i, 0);
        if (cell_text(t, i, 1) != "minus") continue;
        const double k = std::round(s) - 1.0;
        CHECK(cell_real(t, i, 3) == doctest::Approx(1.0 / (k + 1.0)).epsilon(2e-3));
        REQUIRE(cell_text(t, i + 1, 1) == "plus");
        CHECK(cell_real(t, i + 1, 3) == doctest::Approx(0.5 * cell_real(t, i, 3)).epsilon(2e-3));
        CHECK(cell_real(t, i, 2) == doctest::Approx(1.0 / (k + 1.0)).epsilon(1e-12));
        ++peaks;
    }
    CHECK(peaks == cfg.n_max + 1);
}

TEST_CASE("compare table carries both curves and their means") {
    auto cfg = small_recursion(Subcommand::compare);
    cfg.n_max = 7;
    const Table t = cmd_compare(cfg);
    CHECK(t.columns.size() == 7);
    for (std::size_t i = 0; i < t.rows.size(); ++i)
        CHECK(cell_real(t, i, 4) == doctest::Approx(cell_real(t, i, 3) - cell_real(t, i, 2)));
    bool has_mean = false;
    for (const auto& [k, v] : t.parameters) has_mean |= k == "s_numeric_mean_from_5eps";
    CHECK(has_mean);
}

TEST_CASE("exact table errors are small") {
    RunConfig cfg;
    cfg.subcommand = Subcommand::exact;
    const Table t = cmd_exact(cfg);
    CHECK(t.rows.size() > 6);
    for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(cell_real(t, i, 4) < 1e-4);
}

TEST_CASE("lattice table") {
    RunConfig cfg;
    cfg.subcommand = Subcommand::lattice;
    cfg.levels = 3;
    const Table t = cmd_lattice(cfg);
    REQUIRE(t.rows.size() == 1 + 3 + 1);
    CHECK(cell_text(t, 0, 0) == "two_step");
    CHECK(cell_real(t, 0, 5) == 0.25);
    CHECK(cell_text(t, 4, 0) == "extrapolated");
    CHECK(std::holds_alternative<std::monostate>(t.rows[4][1]));
    for (std::size_t i = 2; i <= 3; ++i)
        CHECK(std::abs(1.0 - cell_real(t, i, 6)) < std::abs(1.0 - cell_real(t, i - 1, 6)));
}

TEST_CASE("pdx table columns") {
    RunConfig cfg;
    cfg.subcommand = Subcommand::pdx;
    cfg.scan_points = 3;
    cfg.e_eps_min = 0.1;
    cfg.e_eps_max = 1.0;
    const Table t = cmd_pdx(cfg);
    CHECK(t.columns == std::vector<std::string>{"eps", "E_eps", "predictor", "delta_norm"});
    REQUIRE(t.rows.size() == 3);
    CHECK(cell_real(t, 2, 1) == doctest::Approx(1.0));
    CHECK(cell_real(t, 2, 3) > cell_real(t, 0, 3));
}

TEST_CASE("settings parsing") {
    RunConfig cfg;
    apply_settings(cfg, {{"eps", "0.5"}, {"n-max", "7"}, {"format", "json"}, {"convention", "inclusive"}});
    CHECK(cfg.eps == 0.5);
    CHECK(cfg.n_max == 7);
    CHECK(cfg.format == OutputFormat::json);
    CHECK(cfg.convention == SiteConvention::inclusive);
    CHECK(cfg.v0_value() == doctest::Approx(8.0 / 3.0));
    CHECK_THROWS_AS(apply_settings(cfg, {{"bogus", "1"}}), UsageError);
    CHECK_THROWS_AS(apply_settings(cfg, {{"eps", "abc"}}), UsageError);
    CHECK_THROWS_AS(apply_settings(cfg, {{"n-max", "-3"}}), UsageError);
    CHECK_THROWS_AS(apply_settings(cfg, {{"format", "xml"}}), UsageError);
    cfg.eps = -1.0;
    CHECK_THROWS_AS(cfg.validate(), UsageError);
}

TEST_CASE("precedence: flags over environment over config file") {
    const auto conf = scratch("precedence.json");
    {
        std::ofstream f(conf);
        f << R"({"eps": 2, "n-max": 3, "v0": 1.5})";
    }
    const auto out = scratch("precedence.json.out");
    ::setenv("ZENO_N_MAX", "5", 1);
    ::setenv("ZENO_V0", "2.5", 1);
    const int code = invoke({"fv", "--config", conf.string(), "--v0", "3", "--format", "json", "--out", out.string()});
    ::unsetenv("ZENO_N_MAX");
    ::unsetenv("ZENO_V0");
    REQUIRE(code == kExitOk);
    const auto doc = nlohmann::json::parse(slurp(out));
    CHECK(doc["parameters"]["eps"].get<double>() == 2.0);
    CHECK(doc["parameters"]["n_max"].get<int>() == 5);
    CHECK(doc["parameters"]["v0"].get<double>() == 3.0);
    CHECK(doc["rows"].size() == 600);
}

TEST_CASE("output is deterministic and matches across formats") {
    const auto a = scratch("det_a.csv");
    const auto b = scratch("det_b.csv");
    const auto j = scratch("det.json");
    const std::vector<std::string> common{"lattice", "--levels", "3"};
    auto with = [&](std::vector<std::string> extra) {
        auto v = common;
        v.insert(v.end(), extra.begin(), extra.end());
        return v;
    };
    REQUIRE(invoke(with({"--out", a.string()})) == kExitOk);
    REQUIRE(invoke(with({"--out", b.string()})) == kExitOk);
    CHECK(slurp(a) == slurp(b));
    REQUIRE(invoke(with({"--out", j.string(), "--format", "json"})) == kExitOk);
    const auto doc = nlohmann::json::parse(slurp(j));
    const auto csv = lines(slurp(a));
    REQUIRE(doc["rows"].size() + 1 == csv.size());
    CHECK(csv[1].find(format_real(doc["rows"][0][6].get<double>())) != std::string::npos);
}

TEST_CASE("real formatting") {
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(1.0) == "1");
    CHECK_THROWS_AS(format_real(std::nan("")), NumericalError);
}

TEST_CASE("exit codes") {
    CHECK(invoke({}) == kExitUsage);
    CHECK(invoke({"nonsense"}) == kExitUsage);
    CHECK(invoke({"fv", "--eps", "-1"}) == kExitUsage);
    CHECK(invoke({"fv", "--format", "yaml"}) == kExitUsage);
    CHECK(invoke({"fv", "--out", "/nonexistent-dir/x.csv"}) == kExitUsage);
    CHECK(invoke({"fv", "--config", "/nonexistent-dir/c.json"}) == kExitUsage);
    CHECK(invoke({"fp", "--v0", "1e14", "--n-max", "1", "--grid-points", "400", "--out", scratch("x.csv").string()}) ==
          kExitNumerical);
    CHECK(invoke({"fv", "--m", "2", "--n-max", "1", "--out", scratch("ok.csv").string()}) == kExitOk);
}
