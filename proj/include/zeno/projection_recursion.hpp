#pragma once

// Numerical g_P(0,t|0,0) through the Wick-rotated slice recursion
//
//   F_n(s, x) = (m / 2pi (s-n) eps)^{1/2} int_0^inf dy exp(-m (x-y)^2 / 2 (s-n) eps) F_{n-1}(n, y)
//
// with rescaled time t = s eps, projections at s = 1, 2, ... and
// F_0(s, x) = heat_kernel(m, s eps, x, 0). The y integral is a midpoint
// rule on the cells of a uniform grid over [0, y_max]; slice values live on
// the cell midpoints and the boundary amplitude F(s, 0) is carried
// separately. The envelope is f_P(t) = F(s, 0) / heat_kernel(m, t, 0, 0).

#include <cstddef>
#include <vector>

#include "zeno/core_numerics.hpp"
#include "zeno/exact_propagators.hpp"
#include "zeno/sawtooth_model.hpp"

namespace zeno {

struct RecursionConfig {
    double m = 1.0;
    double eps = 1.0;
    std::size_t n_max = 20;                ///< projections; the run covers s in (0, n_max + 1]
    Grid1D grid{0.0, 1.0, 2};              ///< y grid, x_min = 0
    std::size_t samples_per_interval = 20; ///< interior samples per unit of s

    /// Grid spacing spacing_factor * sqrt(eps/m) on [0, q_trunc sqrt((n_max+1) eps / m)].
    static RecursionConfig make(double m, double eps, std::size_t n_max, double spacing_factor = 1e-3,
                                std::size_t samples_per_interval = 20, double q_trunc = 10.0);

    /// Same extent, explicit number of grid nodes.
    static RecursionConfig with_grid_points(double m, double eps, std::size_t n_max, std::size_t grid_points,
                                            std::size_t samples_per_interval = 20, double q_trunc = 10.0);

    void validate() const;
};

/// F(s, y) on the grid midpoints plus the boundary value F(s, 0).
struct EuclideanSlice {
    double s = 0.0;
    std::vector<double> values;
    double origin = 0.0;

    double mass(const Grid1D& grid) const;
};

/// F_0(s, .) for 0 < s <= 1 (s = 1 is the slice arriving at the first projection).
EuclideanSlice initial_slice(const RecursionConfig& cfg, double s);

/// Applies the projection at integer s = prev.s and propagates to s_next in (n, n+1].
EuclideanSlice advance_slice(const EuclideanSlice& prev, const RecursionConfig& cfg, double s_next);

/// Boundary amplitude only, F_n(s, 0) for s in (n, n+1], from the slice at s = n.
double advance_origin(const EuclideanSlice& prev, const RecursionConfig& cfg, double s_next);

double envelope_from_origin(const RecursionConfig& cfg, double s, double origin);

struct RecursionResult {
    BoundaryCurve envelope;              ///< f_P over t in (0, (n_max+1) eps]
    std::vector<double> arriving_mass;   ///< int_0^inf F_{n-1}(n, y) dy for n = 1 .. n_max+1
    std::vector<double> peak;            ///< left limit at s = n, n = 1 .. n_max+1
    std::vector<double> trough;          ///< right limit at s = n
    std::vector<double> trough_probe;    ///< right limit probed at s = n + 1e-4 (n = 1 .. n_max)
};

/// Interior samples at s = n + (j + 1/2)/samples_per_interval for every
/// interval n = 0 .. n_max, plus minus/plus rows at each s = 1 .. n_max+1.
/// Left limits come from the preceding slice; right limits use the
/// half-value limit, and a direct probe at s - n = 1e-4 is recorded alongside.
RecursionResult run_recursion(const RecursionConfig& cfg);

/// S(t) = f_P / f_V - 1 on the samples of fp_numeric. Throws NumericalError
/// where f_V < 1e-12.
BoundaryCurve numeric_s_curve(const BoundaryCurve& fp_numeric, const PotentialParams& params);

/// Ratio of the boundary amplitude with a final projection to the amplitude
/// without it, a time eps_n after the projection instant, given
/// `earlier_projections` projections before it (eps0 = eps).
double half_value_ratio(const RecursionConfig& cfg, std::size_t earlier_projections, double eps_n);

struct HalfValueSweep {
    std::vector<double> eps_n;
    std::vector<double> ratio;
    double extrapolated = 0.0;  ///< fit a + b sqrt(eps_n) + c eps_n on the three finest levels
};

/// eps_n = eps / 2^k for k = 1 .. levels.
HalfValueSweep half_value_sweep(const RecursionConfig& cfg, std::size_t earlier_projections,
                                std::size_t levels = 8);

}  // namespace zeno
