#include "zeno/lattice_walks.hpp"

#include <cmath>

#include "zeno/core_numerics.hpp"
#include "zeno/exact_propagators.hpp"

namespace zeno {

std::size_t LatticeConfig::effective_site_limit() const {
    if (site_limit > 0) return site_limit;
    const auto auto_limit = static_cast<std::size_t>(std::ceil(9.0 * std::sqrt(static_cast<double>(n_steps))));
    return std::min(n_steps, auto_limit);
}

bool LatticeConfig::constrained(std::size_t step) const {
    return step > 0 && step < n_steps && step % steps_per_projection == 0;
}

void LatticeConfig::validate() const {
    if (n_steps < 1) throw UsageError("LatticeConfig: n_steps must be >= 1");
    if (steps_per_projection < 1) throw UsageError("LatticeConfig: steps_per_projection must be >= 1");
    if (!(eta > 0.0) || !(dtau > 0.0)) throw UsageError("LatticeConfig: eta and dtau must be positive");
}

WalkTable::WalkTable(std::size_t site_limit, std::vector<std::vector<double>> rows)
    : limit_(site_limit), rows_(std::move(rows)) {
    if (rows_.empty()) throw UsageError("WalkTable: no rows");
    for (const auto& r : rows_)
        if (r.size() != 2 * limit_ + 1) throw UsageError("WalkTable: row width mismatch");
}

double WalkTable::probability(std::size_t step, long site) const {
    const long lim = static_cast<long>(limit_);
    if (site < -lim || site > lim) return 0.0;
    return rows_.at(step)[static_cast<std::size_t>(site + lim)];
}

namespace {

// Advances one step in place; walkers leaving [-L, L] are dropped.
void step_row(const std::vector<double>& in, std::vector<double>& out) {
    const std::size_t w = in.size();
    for (std::size_t i = 0; i < w; ++i) {
        const double left = i > 0 ? in[i - 1] : 0.0;
        const double right = i + 1 < w ? in[i + 1] : 0.0;
        out[i] = 0.5 * (left + right);
    }
}

void apply_constraint(std::vector<double>& row, std::size_t limit, SiteConvention convention) {
    const std::size_t first_allowed = convention == SiteConvention::strict ? limit + 1 : limit;
    for (std::size_t i = 0; i < first_allowed; ++i) row[i] = 0.0;
}

template <class Visit>
void run_walk(const LatticeConfig& cfg, Visit&& visit) {
    cfg.validate();
    const std::size_t lim = cfg.effective_site_limit();
    std::vector<double> cur(2 * lim + 1, 0.0), next(2 * lim + 1, 0.0);
    cur[lim] = 1.0;
    visit(std::size_t{0}, cur);
    for (std::size_t s = 1; s <= cfg.n_steps; ++s) {
        step_row(cur, next);
        if (cfg.constrained(s)) apply_constraint(next, lim, cfg.convention);
        cur.swap(next);
        visit(s, cur);
    }
}

}  // namespace

WalkTable walk_table(const LatticeConfig& cfg) {
    std::vector<std::vector<double>> rows;
    run_walk(cfg, [&](std::size_t, const std::vector<double>& row) { rows.push_back(row); });
    return WalkTable(cfg.effective_site_limit(), std::move(rows));
}

double enumerate_constrained_walks(const LatticeConfig& cfg) {
    double u = 0.0;
    const std::size_t lim = cfg.effective_site_limit();
    run_walk(cfg, [&](std::size_t s, const std::vector<double>& row) {
        if (s == cfg.n_steps) u = row[lim];
    });
    return u;
}

double continuum_target(const LatticeConfig& cfg) {
    cfg.validate();
    const double tau = cfg.tau();
    return std::sqrt(cfg.mass() / (2.0 * kPi * tau)) * (cfg.projection_gap() / tau);
}

double continuum_ratio(const LatticeConfig& cfg) {
    return enumerate_constrained_walks(cfg) / (2.0 * cfg.eta) / continuum_target(cfg);
}

double image_method_return(const LatticeConfig& cfg) {
    cfg.validate();
    if (cfg.n_steps < 3) throw UsageError("image_method_return: need at least three steps");
    const double inner = static_cast<double>(cfg.n_steps - 2) * cfg.dtau;
    return 0.25 * 2.0 * cfg.eta * restricted_heat_kernel(cfg.mass(), inner, cfg.eta, cfg.eta);
}

LatticeSweep continuum_peak_estimate(std::size_t projections, std::size_t base_r, std::size_t levels,
                                     SiteConvention convention, double m, double tau) {
    if (levels < 2) throw UsageError("continuum_peak_estimate: need at least two levels");
    if (base_r < 1) throw UsageError("continuum_peak_estimate: base_r must be >= 1");
    if (!(m > 0.0) || !(tau > 0.0)) throw UsageError("continuum_peak_estimate: m and tau must be positive");
    LatticeSweep out;
    for (std::size_t k = 0; k < levels; ++k) {
        LatticeConfig cfg;
        cfg.steps_per_projection = base_r << k;
        cfg.n_steps = (projections + 1) * cfg.steps_per_projection;
        cfg.dtau = tau / static_cast<double>(cfg.n_steps);
        cfg.eta = std::sqrt(cfg.dtau / m);
        cfg.convention = convention;
        const double u = enumerate_constrained_walks(cfg);
        out.levels.push_back({cfg.steps_per_projection, cfg.n_steps, cfg.eta, cfg.dtau, u,
                              u / (2.0 * cfg.eta) / continuum_target(cfg)});
    }
    // Neville interpolation in h = r^{-1/2}, evaluated at h = 0.
    std::vector<double> h, p;
    for (const auto& lv : out.levels) {
        h.push_back(1.0 / std::sqrt(static_cast<double>(lv.steps_per_projection)));
        p.push_back(lv.ratio);
    }
    for (std::size_t j = 1; j < p.size(); ++j)
        for (std::size_t i = p.size() - 1; i >= j; --i)
            p[i] = (h[i - j] * p[i] - h[i] * p[i - 1]) / (h[i - j] - h[i]);
    out.extrapolated = p.back();
    return out;
}

}  // namespace zeno
