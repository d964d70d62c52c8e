#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "zeno/lattice_walks.hpp"

namespace zeno::cli {

enum class Subcommand { fv, fp, exact, lattice, pdx, compare };
enum class OutputFormat { csv, json };
enum class FpSource { model, numeric };

struct RunConfig {
    Subcommand subcommand = Subcommand::fv;
    double m = 1.0;
    double eps = 1.0;
    std::optional<double> v0;  ///< defaults to 4 / (3 eps)
    std::size_t n_max = 20;
    std::optional<std::size_t> grid_points;  ///< overrides spacing_factor when set
    double spacing_factor = 1e-3;
    std::size_t samples_per_interval = 20;
    std::string out = "-";  ///< "-" writes to stdout
    OutputFormat format = OutputFormat::csv;

    FpSource source = FpSource::numeric;

    std::size_t projections = 4;
    std::size_t base_r = 32;
    std::size_t levels = 4;
    SiteConvention convention = SiteConvention::strict;

    double q = 10.0;
    double p = -10.0;
    double sigma = 1.0;
    double tau = 2.5;
    std::size_t points_per_scale = 32;
    double e_eps_min = 0.05;
    double e_eps_max = 1.25;
    std::size_t scan_points = 15;

    double v0_value() const { return v0 ? *v0 : 4.0 / (3.0 * eps); }
    void validate() const;
};

/// String-keyed settings, as read from a JSON config file, the environment or
/// the command line. Keys use the long flag names without dashes
/// ("n-max", "grid-points", ...).
using Settings = std::map<std::string, std::string>;

/// Applies settings on top of cfg; unknown keys and malformed values raise UsageError.
void apply_settings(RunConfig& cfg, const Settings& settings);

/// Reads a flat JSON object of settings.
Settings read_config_file(const std::string& path);

/// ZENO_<KEY> variables, KEY upper-cased with '-' mapped to '_'.
Settings read_environment();

/// Keys accepted by apply_settings.
const std::vector<std::string>& setting_keys();

std::string to_string(Subcommand s);
std::string to_string(OutputFormat f);

}  // namespace zeno::cli
