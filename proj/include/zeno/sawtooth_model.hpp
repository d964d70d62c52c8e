#pragma once

// Saw-tooth approximation f_P(t) of the projected boundary envelope.
//
// Projection instants are indexed from zero: t_k = eps0 + k eps for
// k = 0 .. n-1. Just before t_k there have been k projections and the
// envelope peaks at 1/(k+1); just after, it has dropped to 1/(2(k+1)).
// Between instants the model is linear:
//
//   f_P(t) = (t - t_{k-1}) / ((k+1) eps) + (t_k - t) / (2 k eps),  t in [t_{k-1}, t_k)
//
// and f_P = 1 before the first projection. At t_k itself the right limit
// (the trough) is returned.

#include <cstddef>
#include <span>
#include <vector>

#include "zeno/exact_propagators.hpp"

namespace zeno {

class ProjectionSchedule {
public:
    /// n projections, first gap eps0, interior gap eps, final gap eps_n.
    ProjectionSchedule(double eps0, double eps, double eps_n, std::size_t n);

    /// eps0 = eps = eps_n.
    static ProjectionSchedule uniform(double eps, std::size_t n);

    double eps0() const { return eps0_; }
    double eps() const { return eps_; }
    double eps_n() const { return eps_n_; }
    std::size_t n() const { return n_; }

    /// Total duration (n-1) eps + eps0 + eps_n; just eps0 + eps_n when n = 0.
    double tau() const;

    /// Zero-based projection instant t_k = eps0 + k eps.
    double projection_time(std::size_t k) const;

private:
    double eps0_;
    double eps_;
    double eps_n_;
    std::size_t n_;
};

enum class Side { none, minus, plus };

struct CurvePoint {
    double t;
    Side side;
    double value;
};

/// Sampled real curve. Points are ordered by (t, side) with minus before
/// plus; a time may repeat only as a minus/plus pair at a discontinuity.
class BoundaryCurve {
public:
    BoundaryCurve() = default;
    explicit BoundaryCurve(std::vector<CurvePoint> points);

    const std::vector<CurvePoint>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }
    const CurvePoint& operator[](std::size_t i) const { return points_[i]; }

    std::vector<double> times() const;
    std::vector<double> values() const;

    /// Trapezoid integral of the piecewise-linear interpolant over [a, b],
    /// respecting one-sided limits at discontinuities.
    double integral(double a, double b) const;
    double time_average(double a, double b) const { return integral(a, b) / (b - a); }

    /// Piecewise-linear interpolant; right limit at a discontinuity.
    double value_at(double t) const;

private:
    std::vector<CurvePoint> points_;
};

double peak_value(std::size_t k);
double trough_value(std::size_t k);

/// Model envelope at t >= 0 (right limit at projection instants).
double fp_model(const ProjectionSchedule& schedule, double t);

/// One-sided model value at t (Side::none behaves like Side::plus).
double fp_model(const ProjectionSchedule& schedule, double t, Side side);

/// S = f_P / f_V - 1.
double s_of_t(double fp, double fv);

/// V0 = 4 / (3 eps): f_V then sits roughly midway between peaks and troughs.
double calibrate_v0(double eps);

struct ModelCurves {
    BoundaryCurve fp;
    BoundaryCurve fv;
    BoundaryCurve s;
};

/// Samples f_P, f_V and S on t_grid (times in [0, tau]). Each projection
/// instant on the grid contributes a minus and a plus point.
ModelCurves sample_model_curve(const ProjectionSchedule& schedule, const PotentialParams& params,
                               std::span<const double> t_grid);

}  // namespace zeno
