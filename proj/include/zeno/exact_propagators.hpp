#pragma once

// Closed-form propagators along and near the x = 0 boundary, and the exact
// few-projection results.
//
// The T functions are Euclidean Gaussian integrals over the intermediate
// positions y_1..y_n, with intervals e_1..e_{n+1}:
//
//   T_C = int_C dy / (pi^{n/2} sqrt(e_1 ... e_{n+1}))
//         exp(-y_1^2/e_1 - sum (y_k - y_{k+1})^2/e_{k+1} - y_n^2/e_{n+1})
//
// where C fixes the sign of each y_k (+: y > 0, -: y < 0, 0: unrestricted).
// The Euclidean boundary amplitude is (m/2pi)^{1/2} T_C, so the real-time
// envelope f(t) multiplying (m/2pi i t)^{1/2} is T_C * sqrt(t).

#include <cstddef>

#include "zeno/core_numerics.hpp"

namespace zeno {

/// Mass and absorption rate V0 of the complex step potential -i V0 theta(-x).
struct PotentialParams {
    double m = 1.0;
    double v0 = 4.0 / 3.0;

    PotentialParams() = default;
    PotentialParams(double mass, double absorption);
};

struct IntervalTriple {
    double e1;
    double e2;
    double e3;
};

/// Method-of-images propagator for paths confined to x > 0. Zero whenever
/// either endpoint is at or left of the boundary.
ComplexAmplitude restricted_propagator(double m, double t, double x1, double x0);

/// Euclidean counterpart: heat kernel with an absorbing wall at x = 0.
double restricted_heat_kernel(double m, double t, double x1, double x0);

/// f_V(t) = (1 - exp(-V0 t)) / (V0 t), evaluated stably for small V0 t.
double fv_envelope(double v0, double t);

/// g_V(0,t|0,0) = (m / 2 pi i t)^{1/2} f_V(t).
ComplexAmplitude gv_boundary(const PotentialParams& params, double t);

double t_plus_plus(const IntervalTriple& iv);
double t_plus_minus(const IntervalTriple& iv);
/// Middle constraint removed: 1 / (2 sqrt(e1 + e2 + e3)).
double t_plus_zero(const IntervalTriple& iv);

/// T_{+++} for four equal intervals eps, assembled from
/// 2 T_{+++} = T_{+0+} + T_{++0} - T_{0+-}.
double t_plus_plus_plus_equal(double eps);

/// Envelope f of g_P(0,t|0,0) for eps0 = eps and n_proj projections at
/// eps, 2 eps, ...:
///   n_proj = 0 on 0 < t < eps, 1 on [eps, 2 eps), 2 on [2 eps, 3 eps),
///   3 only at t = 4 eps.
/// Other combinations throw UsageError.
double gp_exact_envelope(double eps, double t, int n_proj);
ComplexAmplitude gp_exact(double m, double eps, double t, int n_proj);

/// Ratio of the envelope just after a projection to just before it, from
/// the closed forms. Available for 0 or 1 earlier projections.
double exact_jump_ratio(int earlier_projections);

/// Projection-time average of the boundary amplitude with n projections
/// placed anywhere in [0, tau] (time ordered), Wick rotated and computed by
/// nested midpoint quadrature:
///   (n! / tau^n) int_{t_1 < ... < t_n} <0| e^{-iH tau} P(t_n)...P(t_1) |0>
/// Returned as the dimensionless factor multiplying (m / 2 pi i tau)^{1/2}.
double time_averaged_factor(int n, std::size_t panels = 2000);
ComplexAmplitude time_averaged_product(double m, double tau, int n, std::size_t panels = 2000);

/// (n! / tau^n) int_{ordered} (t_k - k eps) with tau = (n+1) eps, in units of
/// eps. Vanishes when the first-order fluctuation term averages out.
double ordered_time_shift(int n, int k, std::size_t panels = 2000);

}  // namespace zeno
