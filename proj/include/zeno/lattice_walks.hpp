#pragma once

// Random walks on a space-time lattice (spacing eta, time step dtau) that
// must sit on the positive axis at every steps_per_projection-th step. The
// walker moves +-eta with probability 1/2 each, so the continuum mass is
// m = dtau / eta^2 and (1/2 eta) u_P tends to the Euclidean boundary
// propagator (the factor 2 accounts for the parity sublattice).

#include <cstddef>
#include <vector>

namespace zeno {

enum class SiteConvention {
    strict,     ///< allowed sites at a constrained step: index > 0
    inclusive,  ///< index >= 0
};

struct LatticeConfig {
    std::size_t n_steps = 2;
    std::size_t steps_per_projection = 1;
    double eta = 1.0;
    double dtau = 1.0;
    SiteConvention convention = SiteConvention::strict;
    /// Sites kept on each side of the origin; 0 picks min(n_steps, ceil(9 sqrt(n_steps))),
    /// beyond which occupancy is below 1e-15.
    std::size_t site_limit = 0;

    double mass() const { return dtau / (eta * eta); }
    double tau() const { return static_cast<double>(n_steps) * dtau; }
    double projection_gap() const { return static_cast<double>(steps_per_projection) * dtau; }
    std::size_t effective_site_limit() const;
    /// Constraint applies at steps r, 2r, ... strictly before the final step.
    bool constrained(std::size_t step) const;
    void validate() const;
};

/// Probabilities for each step 0..n_steps over sites -L..L.
class WalkTable {
public:
    WalkTable(std::size_t site_limit, std::vector<std::vector<double>> rows);

    std::size_t n_steps() const { return rows_.size() - 1; }
    std::size_t site_limit() const { return limit_; }
    /// Zero outside the stored site range.
    double probability(std::size_t step, long site) const;
    const std::vector<double>& row(std::size_t step) const { return rows_.at(step); }

private:
    std::size_t limit_;
    std::vector<std::vector<double>> rows_;
};

WalkTable walk_table(const LatticeConfig& cfg);

/// u_P(0, tau | 0, 0): probability of returning to the origin at the final
/// step while honoring every intermediate constraint.
double enumerate_constrained_walks(const LatticeConfig& cfg);

/// (m / 2 pi tau)^{1/2} (eps / tau) in lattice units.
double continuum_target(const LatticeConfig& cfg);

/// [(1/2 eta) u_P] / continuum_target.
double continuum_ratio(const LatticeConfig& cfg);

/// Image-method estimate for constraints at every step: the walk must leave
/// and re-enter through site 1, so u ~ (1/4) 2 eta K_r(eta, eta; tau - 2 dtau).
double image_method_return(const LatticeConfig& cfg);

struct LatticeLevel {
    std::size_t steps_per_projection;
    std::size_t n_steps;
    double eta;
    double dtau;
    double u;
    double ratio;
};

struct LatticeSweep {
    std::vector<LatticeLevel> levels;
    double extrapolated = 0.0;  ///< cubic in r^{-1/2} through all levels, evaluated at r -> infinity
};

/// Refines the lattice at fixed tau and fixed projection gap eps = tau / (projections + 1):
/// steps_per_projection = base_r * 2^k for k = 0 .. levels-1, m fixed.
LatticeSweep continuum_peak_estimate(std::size_t projections = 4, std::size_t base_r = 32, std::size_t levels = 4,
                                     SiteConvention convention = SiteConvention::strict, double m = 1.0,
                                     double tau = 1.0);

}  // namespace zeno
