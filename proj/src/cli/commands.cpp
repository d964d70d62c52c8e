#include "zeno/cli/commands.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <iostream>
#include <map>

#include "zeno/exact_propagators.hpp"
#include "zeno/lattice_walks.hpp"
#include "zeno/pdx_wavepacket.hpp"
#include "zeno/projection_recursion.hpp"
#include "zeno/sawtooth_model.hpp"

namespace zeno::cli {

namespace {

RecursionConfig recursion_config(const RunConfig& cfg, std::size_t n_max) {
    if (cfg.grid_points)
        return RecursionConfig::with_grid_points(cfg.m, cfg.eps, n_max, *cfg.grid_points, cfg.samples_per_interval);
    return RecursionConfig::make(cfg.m, cfg.eps, n_max, cfg.spacing_factor, cfg.samples_per_interval);
}

std::string side_name(Side s) {
    switch (s) {
        case Side::minus: return "minus";
        case Side::plus: return "plus";
        case Side::none: break;
    }
    return "none";
}

Table base_table(const RunConfig& cfg, std::vector<std::string> columns) {
    Table t;
    t.command = to_string(cfg.subcommand);
    t.columns = std::move(columns);
    t.parameters = {{"m", cfg.m},
                    {"eps", cfg.eps},
                    {"v0", cfg.v0_value()},
                    {"n_max", static_cast<std::int64_t>(cfg.n_max)}};
    return t;
}

double checked_fv(double v0, double t) {
    const double fv = fv_envelope(v0, t);
    if (fv < 1e-12) throw NumericalError(fmt::format("f_V below 1e-12 at t = {}", t));
    return fv;
}

// Model with one projection per unit of s up to and including s = n_max + 1.
ProjectionSchedule model_schedule(const RunConfig& cfg) {
    return ProjectionSchedule::uniform(cfg.eps, cfg.n_max + 1);
}

}  // namespace

Table cmd_fv(const RunConfig& cfg) {
    Table t = base_table(cfg, {"t", "f_v"});
    const std::size_t n = 100 * (cfg.n_max + 1);
    const double v0 = cfg.v0_value();
    for (std::size_t k = 1; k <= n; ++k) {
        const double time = 0.01 * static_cast<double>(k) * cfg.eps;
        t.add_row({time, fv_envelope(v0, time)});
    }
    return t;
}

Table cmd_fp(const RunConfig& cfg) {
    Table t = base_table(cfg, {"t", "side", "f_p_model", "f_p_numeric", "f_v", "s"});
    t.parameters.emplace_back("source", cfg.source == FpSource::numeric ? "numeric" : "model");
    const auto rec = run_recursion(recursion_config(cfg, cfg.n_max));
    const auto schedule = model_schedule(cfg);
    const double v0 = cfg.v0_value();
    for (const auto& p : rec.envelope.points()) {
        const double model = fp_model(schedule, p.t, p.side);
        const double fv = checked_fv(v0, p.t);
        const double fp = cfg.source == FpSource::numeric ? p.value : model;
        t.add_row({p.t, side_name(p.side), model, p.value, fv, fp / fv - 1.0});
    }
    return t;
}

Table cmd_compare(const RunConfig& cfg) {
    Table t = base_table(cfg, {"t", "side", "f_p_model", "f_p_numeric", "f_p_diff", "s_model", "s_numeric"});
    const auto rec = run_recursion(recursion_config(cfg, cfg.n_max));
    const auto schedule = model_schedule(cfg);
    const PotentialParams params(cfg.m, cfg.v0_value());
    const auto s_num = numeric_s_curve(rec.envelope, params);
    std::vector<CurvePoint> s_model_pts;
    for (std::size_t i = 0; i < rec.envelope.size(); ++i) {
        const auto& p = rec.envelope[i];
        const double model = fp_model(schedule, p.t, p.side);
        const double fv = checked_fv(params.v0, p.t);
        s_model_pts.push_back({p.t, p.side, model / fv - 1.0});
        t.add_row({p.t, side_name(p.side), model, p.value, p.value - model, model / fv - 1.0, s_num[i].value});
    }
    const BoundaryCurve s_model(std::move(s_model_pts));
    const double a = 5.0 * cfg.eps;
    const double b = std::min(20.0, static_cast<double>(cfg.n_max + 1)) * cfg.eps;
    if (b > a) {
        t.parameters.emplace_back("s_model_mean_from_5eps", s_model.time_average(a, b));
        t.parameters.emplace_back("s_numeric_mean_from_5eps", s_num.time_average(a, b));
        t.parameters.emplace_back("mean_window_end", b);
    }
    return t;
}

Table cmd_exact(const RunConfig& cfg) {
    Table t = base_table(cfg, {"quantity", "argument", "exact", "computed", "abs_error"});
    const double e = cfg.eps;
    auto row = [&t](const std::string& name, double arg, double exact, double computed) {
        t.add_row({name, arg, exact, computed, std::abs(exact - computed)});
    };
    row("t_plus_plus_equal", e, 1.0 / (3.0 * std::sqrt(3.0 * e)), t_plus_plus({e, e, e}));
    row("t_plus_minus_equal", e, 1.0 / (6.0 * std::sqrt(3.0 * e)), t_plus_minus({e, e, e}));
    row("t_plus_plus_plus_equal", e, 1.0 / (4.0 * std::sqrt(4.0 * e)), t_plus_plus_plus_equal(e));
    row("t_plus_zero_marginal", e, t_plus_zero({e, 2.0 * e, 3.0 * e}),
        t_plus_plus({e, 2.0 * e, 3.0 * e}) + t_plus_minus({e, 2.0 * e, 3.0 * e}));
    row("time_averaged_n1", 1.0, 0.5, time_averaged_factor(1));
    row("time_averaged_n2", 2.0, 1.0 / 3.0, time_averaged_factor(2));

    const auto rec = run_recursion(recursion_config(cfg, 3));
    for (const auto& p : rec.envelope.points()) {
        const double s = p.t / e;
        int n = -1;
        if (p.side == Side::none) n = static_cast<int>(std::floor(s));
        if (n >= 0 && n <= 2) row(fmt::format("f_p_n{}", n), p.t, gp_exact_envelope(e, p.t, n), p.value);
        if (p.side == Side::minus && std::abs(s - 4.0) < 1e-12) row("f_p_n3", p.t, gp_exact_envelope(e, 4.0 * e, 3), p.value);
    }
    return t;
}

Table cmd_lattice(const RunConfig& cfg) {
    Table t = base_table(cfg, {"level", "steps_per_projection", "n_steps", "eta", "dtau", "u_p", "ratio"});
    t.parameters.emplace_back("projections", static_cast<std::int64_t>(cfg.projections));
    t.parameters.emplace_back("convention", cfg.convention == SiteConvention::strict ? "strict" : "inclusive");

    LatticeConfig two;
    two.n_steps = 2;
    two.convention = cfg.convention;
    t.add_row({std::string("two_step"), std::int64_t{1}, std::int64_t{2}, 1.0, 1.0, enumerate_constrained_walks(two),
               continuum_ratio(two)});

    const auto sweep =
        continuum_peak_estimate(cfg.projections, cfg.base_r, cfg.levels, cfg.convention, cfg.m, cfg.tau);
    for (std::size_t k = 0; k < sweep.levels.size(); ++k) {
        const auto& lv = sweep.levels[k];
        t.add_row({fmt::format("{}", k), static_cast<std::int64_t>(lv.steps_per_projection),
                   static_cast<std::int64_t>(lv.n_steps), lv.eta, lv.dtau, lv.u, lv.ratio});
    }
    t.add_row({std::string("extrapolated"), Cell{}, Cell{}, Cell{}, Cell{}, Cell{}, sweep.extrapolated});
    return t;
}

Table cmd_pdx(const RunConfig& cfg) {
    Table t = base_table(cfg, {"eps", "E_eps", "predictor", "delta_norm"});
    const WavePacket wp{cfg.q, cfg.p, cfg.sigma, cfg.m};
    wp.validate();
    PdxConfig pc;
    pc.tau = cfg.tau;
    pc.points_per_scale = cfg.points_per_scale;
    t.parameters.emplace_back("q", cfg.q);
    t.parameters.emplace_back("p", cfg.p);
    t.parameters.emplace_back("sigma", cfg.sigma);
    t.parameters.emplace_back("tau", cfg.tau);

    std::vector<double> xs(cfg.scan_points);
    const double ratio = std::log(cfg.e_eps_max / cfg.e_eps_min) / static_cast<double>(cfg.scan_points - 1);
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = cfg.e_eps_min * std::exp(ratio * static_cast<double>(i));
    xs.back() = cfg.e_eps_max;
    for (const auto& p : epsilon_scan(wp, xs, pc)) t.add_row({p.eps, p.e_eps, p.predictor, p.delta_norm});
    return t;
}

Table run_command(const RunConfig& cfg) {
    cfg.validate();
    switch (cfg.subcommand) {
        case Subcommand::fv: return cmd_fv(cfg);
        case Subcommand::fp: return cmd_fp(cfg);
        case Subcommand::exact: return cmd_exact(cfg);
        case Subcommand::lattice: return cmd_lattice(cfg);
        case Subcommand::pdx: return cmd_pdx(cfg);
        case Subcommand::compare: return cmd_compare(cfg);
    }
    throw UsageError("unknown subcommand");
}

void emit(const Table& table, const RunConfig& cfg) {
    auto write = [&](std::ostream& os) {
        if (cfg.format == OutputFormat::csv) write_csv(table, os);
        else write_json(table, os);
    };
    if (cfg.out == "-") {
        write(std::cout);
        std::cout.flush();
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary | std::ios::trunc);
    if (!file) throw UsageError("cannot write output file '" + cfg.out + "'");
    write(file);
    file.close();
    if (!file) throw UsageError("failed writing output file '" + cfg.out + "'");
}

int run_cli(int argc, char** argv) {
    CLI::App app{"Projected versus complex-potential boundary propagators"};
    app.require_subcommand(1);
    app.fallthrough();

    const std::map<std::string, std::string> help = {
        {"m", "particle mass (default 1)"},
        {"eps", "projection interval (default 1)"},
        {"v0", "absorption rate (default 4/(3 eps))"},
        {"n-max", "number of projections (default 20)"},
        {"grid-points", "recursion grid nodes; overrides --spacing-factor"},
        {"spacing-factor", "recursion grid spacing in units of sqrt(eps/m) (default 1e-3)"},
        {"samples-per-interval", "interior samples per eps (default 20)"},
        {"out", "output path, - for stdout (default -)"},
        {"format", "csv or json (default csv)"},
        {"source", "f_P used for S in fp: numeric or model (default numeric)"},
        {"projections", "lattice: projections inside tau (default 4)"},
        {"base-r", "lattice: coarsest steps per projection (default 32)"},
        {"levels", "lattice: refinement levels (default 4)"},
        {"convention", "lattice: strict or inclusive positivity (default strict)"},
        {"q", "pdx: initial packet centre (default 10)"},
        {"p", "pdx: packet momentum, negative toward the origin (default -10)"},
        {"sigma", "pdx: packet width (default 1)"},
        {"tau", "final time for pdx and lattice (default 2.5)"},
        {"points-per-scale", "pdx: samples per eps and per 2 pi/E, >= 16 (default 32)"},
        {"e-eps-min", "pdx: smallest E eps in the scan (default 0.05)"},
        {"e-eps-max", "pdx: largest E eps in the scan (default 1.25)"},
        {"scan-points", "pdx: geometric scan points (default 15)"}};
    Settings flags;
    for (const auto& key : setting_keys()) {
        const auto it = help.find(key);
        app.add_option("--" + key, flags[key], it == help.end() ? std::string{} : it->second);
    }
    std::string config_path;
    app.add_option("--config", config_path, "JSON file of settings (flags and ZENO_* variables take precedence)");

    const std::vector<std::pair<Subcommand, std::string>> subs = {
        {Subcommand::fv, "complex-potential envelope f_V(t)"},
        {Subcommand::fp, "saw-tooth model and numeric f_P(t) with S(t)"},
        {Subcommand::exact, "closed forms against their numerical counterparts"},
        {Subcommand::lattice, "constrained random-walk refinement sweep"},
        {Subcommand::pdx, "eps scan of the wave-function perturbation"},
        {Subcommand::compare, "model against numeric envelope and oscillation ratio"}};
    std::vector<std::pair<Subcommand, CLI::App*>> handles;
    for (const auto& [s, desc] : subs) handles.emplace_back(s, app.add_subcommand(to_string(s), desc));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        RunConfig cfg;
        for (const auto& [s, h] : handles)
            if (h->parsed()) cfg.subcommand = s;
        if (!config_path.empty()) apply_settings(cfg, read_config_file(config_path));
        apply_settings(cfg, read_environment());
        Settings given;
        for (const auto& key : setting_keys())
            if (app.count("--" + key) > 0) given[key] = flags[key];
        apply_settings(cfg, given);
        emit(run_command(cfg), cfg);
        return kExitOk;
    } catch (const UsageError& e) {
        std::cerr << "zeno: usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "zeno: numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const NumericalError& e) {
        std::cerr << "zeno: numerical error: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "zeno: " << e.what() << "\n";
        return kExitFailure;
    }
}

}  // namespace zeno::cli
