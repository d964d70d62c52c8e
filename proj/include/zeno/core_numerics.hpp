#pragma once

// Shared numerical substrate: kernels, grids and quadrature.
//
// Units: hbar = 1 everywhere; every kernel takes the mass explicitly.
// Branch convention for the real-time prefactor (m / 2 pi i t)^{1/2}:
// (1/i)^{1/2} = exp(-i pi/4) for t > 0, and the complex conjugate for t < 0,
// so that free_propagator(m, -t, x, y) == conj(free_propagator(m, t, x, y)).

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "zeno/errors.hpp"

namespace zeno {

using Complex = std::complex<double>;
using ComplexAmplitude = Complex;

inline constexpr double kPi = std::numbers::pi;

/// Uniform grid of n_points nodes on [x_min, x_max].
class Grid1D {
public:
    Grid1D(double x_min, double x_max, std::size_t n_points);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n_points() const { return n_points_; }
    std::size_t n_cells() const { return n_points_ - 1; }
    double spacing() const { return spacing_; }

    double node(std::size_t i) const { return x_min_ + spacing_ * static_cast<double>(i); }
    double midpoint(std::size_t i) const { return x_min_ + spacing_ * (static_cast<double>(i) + 0.5); }

    std::vector<double> nodes() const;
    std::vector<double> midpoints() const;

private:
    double x_min_;
    double x_max_;
    std::size_t n_points_;
    double spacing_;
};

enum class QuadratureKind { midpoint, trapezoid };

struct QuadratureRule {
    QuadratureKind kind = QuadratureKind::midpoint;
    std::size_t n_panels = 1;
};

/// Euclidean (heat) kernel (m / 2 pi t)^{1/2} exp(-m (x-y)^2 / 2t), t > 0.
double heat_kernel(double m, double t, double x, double y);

/// (m / 2 pi i t)^{1/2} with the branch documented above; t != 0.
Complex free_prefactor(double m, double t);

/// Real-time free-particle propagator <x| exp(-i H t) |y>, t != 0.
ComplexAmplitude free_propagator(double m, double t, double x, double y);

/// Abscissae at which `integrate` expects samples: cell midpoints for the
/// midpoint rule (n_points - 1 values), nodes for the trapezoid rule.
std::vector<double> abscissae(const Grid1D& grid, QuadratureKind kind);

/// Quadrature of samples laid out as returned by `abscissae`.
double integrate(std::span<const double> samples, const Grid1D& grid, QuadratureKind kind);

/// Quadrature of a callable over [a, b] with rule.n_panels panels.
template <class F>
double integrate(F&& f, double a, double b, QuadratureRule rule) {
    if (rule.n_panels < 1) throw UsageError("integrate: n_panels must be >= 1");
    const Grid1D grid(a, b, rule.n_panels + 1);
    const auto xs = abscissae(grid, rule.kind);
    std::vector<double> ys(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) ys[i] = f(xs[i]);
    return integrate(ys, grid, rule.kind);
}

/// Pairwise (cascade) summation; fixed association order for a given length.
double pairwise_sum(std::span<const double> values);
Complex pairwise_sum(std::span<const Complex> values);

/// Upper limit q_trunc * sqrt(tau_total / m) for Euclidean half-line integrals.
double euclidean_cutoff(double m, double tau_total, double q_trunc = 10.0);

}  // namespace zeno
