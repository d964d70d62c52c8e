#include "zeno/cli/run_config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>

#include "json.hpp"

#include "zeno/errors.hpp"

namespace zeno::cli {

namespace {

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        throw UsageError("--" + key + ": expected a number, got '" + v + "'");
    return out;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
    std::size_t out = 0;
    const auto* end = v.data() + v.size();
    const auto [ptr, ec] = std::from_chars(v.data(), end, out);
    if (ec != std::errc() || ptr != end) throw UsageError("--" + key + ": expected a count, got '" + v + "'");
    return out;
}

}  // namespace

const std::vector<std::string>& setting_keys() {
    static const std::vector<std::string> keys = {
        "m",     "eps",   "v0",    "n-max",  "grid-points", "spacing-factor", "samples-per-interval",
        "out",   "format", "source", "projections", "base-r", "levels", "convention",
        "q",     "p",     "sigma", "tau",    "points-per-scale", "e-eps-min", "e-eps-max", "scan-points"};
    return keys;
}

void apply_settings(RunConfig& cfg, const Settings& settings) {
    for (const auto& [key, v] : settings) {
        if (key == "m") cfg.m = parse_double(key, v);
        else if (key == "eps") cfg.eps = parse_double(key, v);
        else if (key == "v0") cfg.v0 = parse_double(key, v);
        else if (key == "n-max") cfg.n_max = parse_count(key, v);
        else if (key == "grid-points") cfg.grid_points = parse_count(key, v);
        else if (key == "spacing-factor") cfg.spacing_factor = parse_double(key, v);
        else if (key == "samples-per-interval") cfg.samples_per_interval = parse_count(key, v);
        else if (key == "out") cfg.out = v;
        else if (key == "format") {
            if (v == "csv") cfg.format = OutputFormat::csv;
            else if (v == "json") cfg.format = OutputFormat::json;
            else throw UsageError("--format: expected csv or json, got '" + v + "'");
        } else if (key == "source") {
            if (v == "model") cfg.source = FpSource::model;
            else if (v == "numeric") cfg.source = FpSource::numeric;
            else throw UsageError("--source: expected model or numeric, got '" + v + "'");
        } else if (key == "projections") cfg.projections = parse_count(key, v);
        else if (key == "base-r") cfg.base_r = parse_count(key, v);
        else if (key == "levels") cfg.levels = parse_count(key, v);
        else if (key == "convention") {
            if (v == "strict") cfg.convention = SiteConvention::strict;
            else if (v == "inclusive") cfg.convention = SiteConvention::inclusive;
            else throw UsageError("--convention: expected strict or inclusive, got '" + v + "'");
        } else if (key == "q") cfg.q = parse_double(key, v);
        else if (key == "p") cfg.p = parse_double(key, v);
        else if (key == "sigma") cfg.sigma = parse_double(key, v);
        else if (key == "tau") cfg.tau = parse_double(key, v);
        else if (key == "points-per-scale") cfg.points_per_scale = parse_count(key, v);
        else if (key == "e-eps-min") cfg.e_eps_min = parse_double(key, v);
        else if (key == "e-eps-max") cfg.e_eps_max = parse_double(key, v);
        else if (key == "scan-points") cfg.scan_points = parse_count(key, v);
        else throw UsageError("unknown setting '" + key + "'");
    }
}

Settings read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw UsageError("config file '" + path + "': " + e.what());
    }
    if (!doc.is_object()) throw UsageError("config file '" + path + "' must hold a JSON object");
    Settings out;
    for (const auto& [key, value] : doc.items()) {
        if (value.is_string()) out[key] = value.get<std::string>();
        else if (value.is_number() || value.is_boolean()) out[key] = value.dump();
        else throw UsageError("config file '" + path + "': value of '" + key + "' must be a scalar");
    }
    return out;
}

Settings read_environment() {
    Settings out;
    for (const auto& key : setting_keys()) {
        std::string var = "ZENO_";
        for (char c : key) var += c == '-' ? '_' : static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
        if (const char* v = std::getenv(var.c_str())) out[key] = v;
    }
    return out;
}

void RunConfig::validate() const {
    if (!(m > 0.0)) throw UsageError("--m must be positive");
    if (!(eps > 0.0)) throw UsageError("--eps must be positive");
    if (v0 && !(*v0 > 0.0)) throw UsageError("--v0 must be positive");
    if (n_max < 1 || n_max > 100) throw UsageError("--n-max must lie in [1, 100]");
    if (grid_points && *grid_points < 2) throw UsageError("--grid-points must be >= 2");
    if (!(spacing_factor > 0.0)) throw UsageError("--spacing-factor must be positive");
    if (samples_per_interval < 2) throw UsageError("--samples-per-interval must be >= 2");
    if (levels < 2) throw UsageError("--levels must be >= 2");
    if (base_r < 1) throw UsageError("--base-r must be >= 1");
    if (!(sigma > 0.0)) throw UsageError("--sigma must be positive");
    if (!(tau > 0.0)) throw UsageError("--tau must be positive");
    if (points_per_scale < 16) throw UsageError("--points-per-scale must be >= 16");
    if (!(e_eps_min > 0.0) || !(e_eps_max > e_eps_min)) throw UsageError("need 0 < --e-eps-min < --e-eps-max");
    if (scan_points < 2) throw UsageError("--scan-points must be >= 2");
}

std::string to_string(Subcommand s) {
    switch (s) {
        case Subcommand::fv: return "fv";
        case Subcommand::fp: return "fp";
        case Subcommand::exact: return "exact";
        case Subcommand::lattice: return "lattice";
        case Subcommand::pdx: return "pdx";
        case Subcommand::compare: return "compare";
    }
    return "?";
}

std::string to_string(OutputFormat f) { return f == OutputFormat::csv ? "csv" : "json"; }

}  // namespace zeno::cli
