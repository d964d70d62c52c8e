#pragma once

// Gaussian packets and the path decomposition across x = 0.
//
// For a packet that starts on x > 0, any propagator g whose boundary
// amplitude is g(0, t2 | 0, t1) = (m / 2 pi i (t2 - t1))^{1/2} f(t2 - t1) gives
//
//   psi(x1, tau) = [psi_f(x1, tau) - psi_f(-x1, tau)]
//                  - (1/m^2) int_0^tau dt2 d_y g_f(x1, tau | y, t2)|_{y=0} B(t2)
//   B(t2) = int_0^t2 dt1 g(0, t2 | 0, t1) d_x psi_f(0, t1)
//
// where the two factors of 2 from differentiating the restricted propagator
// at the boundary are already folded into the prefactor. Replacing g by a
// difference of boundary propagators delta g gives delta psi. The t2 integral
// is done in frequency space: with Bhat(w) = int_0^tau e^{i w t} B(t) dt,
//
//   delta psi(x1, tau) = -(1/m^2)(m/pi) int_0^inf dw sin(sqrt(2 m w) x1) e^{-i w tau} Bhat(w)
//   ||delta psi||^2_{x>0} = (1/m^4)(m/2pi) int_0^inf dw sqrt(2 m w) |Bhat(w)|^2

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "zeno/core_numerics.hpp"
#include "zeno/exact_propagators.hpp"
#include "zeno/sawtooth_model.hpp"

namespace zeno {

struct WavePacket {
    double q = 10.0;
    double p = -10.0;
    double sigma = 1.0;
    double m = 1.0;

    void validate() const;
    double energy() const { return p * p / (2.0 * m); }
    /// m sigma / |p|.
    double zeno_time() const;
    /// Time at which the center reaches the origin, m q / |p| (requires motion toward it).
    double crossing_time() const;
};

/// N exp(-(x - q - p t/m)^2 / 4 sigma^2 + i p x - i E t). With `spreading`
/// the width parameter becomes sigma^2 (1 + i t / 2 m sigma^2), giving the
/// exact free evolution.
ComplexAmplitude free_packet(const WavePacket& wp, double t, double x, bool spreading = false);

/// d psi / dx at x = 0.
ComplexAmplitude boundary_derivative(const WavePacket& wp, double t, bool spreading = false);

/// Boundary envelope f(delta t), delta t > 0.
using Envelope = std::function<double(double)>;

enum class BoundarySource { model, numeric, complex_potential };

struct PdxConfig {
    double tau = 2.5;
    std::size_t points_per_scale = 32;  ///< samples per eps and per 2 pi / E; at least 16
    BoundarySource source = BoundarySource::model;
    bool spreading = false;
    std::size_t padding_factor = 8;  ///< frequency-grid zero padding

    void validate() const;
};

/// Emission B(t) on t_i = i dt and its transform on w_l = 2 pi l / (M dt), l <= M/2.
struct BoundaryTransform {
    double m = 1.0;
    double dt = 0.0;
    double tau = 0.0;  ///< N dt
    std::vector<Complex> emission;
    std::vector<double> omega;
    std::vector<Complex> spectrum;
};

/// Product integration in t1 (exact for the (t2 - t1)^{-1/2} factor, linear
/// for the smooth remainder) and trapezoid in t2. tau is rounded up to a
/// whole number of steps.
BoundaryTransform boundary_transform(const WavePacket& wp, const Envelope& envelope, double tau, double dt,
                                     bool spreading = false, std::size_t padding_factor = 8);

ComplexAmplitude pdx_delta_psi(const BoundaryTransform& bt, double x1);
double delta_psi_norm(const BoundaryTransform& bt);

/// Same-side reconstruction of the packet on x1 > 0 at bt.tau from the image
/// term and the boundary term of bt.
std::vector<Complex> pdx_reconstruct(const WavePacket& wp, const BoundaryTransform& bt, std::span<const double> x1,
                                     bool spreading = false);

/// f_P - f_V for the saw-tooth model with projections every eps and V0 = 4/(3 eps).
Envelope model_delta_envelope(double eps);

/// f_P - f_V with f_P read from a curve sampled at unit eps (scale free in
/// t / eps); the model is used beyond the sampled range.
Envelope curve_delta_envelope(const BoundaryCurve& fp_unit_eps, double eps);

Envelope complex_potential_envelope(double v0);

/// Time step honoring cfg.points_per_scale per eps and per 2 pi / E, chosen
/// so that eps is a whole number of steps.
double pdx_time_step(const WavePacket& wp, const PdxConfig& cfg, double eps);

/// ||delta psi|| at cfg.tau for projections every eps, with the source
/// selected in cfg (numeric needs the unit-eps curve). The complex_potential
/// source returns the norm of the full g_V boundary term instead.
double perturbation_norm(const WavePacket& wp, double eps, const PdxConfig& cfg,
                         const BoundaryCurve* fp_unit_eps = nullptr);

/// exp(-(t_Z^2 / eps^2)(E eps - 1)^2).
double timescale_estimate(const WavePacket& wp, double eps);

/// The exponent -(t_Z^2 / eps^2)(E eps - 1)^2 itself; ranks like the
/// estimate but does not underflow.
double timescale_exponent(const WavePacket& wp, double eps);

struct ScanPoint {
    double eps;
    double e_eps;
    double predictor;
    double delta_norm;
};

/// One row per E eps value.
std::vector<ScanPoint> epsilon_scan(const WavePacket& wp, std::span<const double> e_eps, const PdxConfig& cfg,
                                    const BoundaryCurve* fp_unit_eps = nullptr);

/// (2 / (m^{3/2} V0^{1/2})) |d psi_f / dx (0, tau)|^2.
double crossing_density(const WavePacket& wp, double v0, double tau, bool spreading = false);

/// |d psi_f / dx (0, tau)|^2 / (m |p|).
double normalized_crossing(const WavePacket& wp, double tau, bool spreading = false);

/// Midpoint quadrature of normalized_crossing over [t0, t1].
double integrated_normalized_crossing(const WavePacket& wp, double t0, double t1, std::size_t panels,
                                      bool spreading = false);

}  // namespace zeno
