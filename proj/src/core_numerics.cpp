#include "zeno/core_numerics.hpp"

#include <cmath>
#include <string>

namespace zeno {

Grid1D::Grid1D(double x_min, double x_max, std::size_t n_points)
    : x_min_(x_min), x_max_(x_max), n_points_(n_points), spacing_(0.0) {
    if (n_points < 2) throw UsageError("Grid1D: n_points must be >= 2");
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
        throw UsageError("Grid1D: need finite x_min < x_max");
    spacing_ = (x_max - x_min) / static_cast<double>(n_points - 1);
}

std::vector<double> Grid1D::nodes() const {
    std::vector<double> out(n_points_);
    for (std::size_t i = 0; i < n_points_; ++i) out[i] = node(i);
    return out;
}

std::vector<double> Grid1D::midpoints() const {
    std::vector<double> out(n_cells());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = midpoint(i);
    return out;
}

double heat_kernel(double m, double t, double x, double y) {
    if (!(t > 0.0)) throw DomainError("heat_kernel: euclidean time must be positive");
    const double d = x - y;
    return std::sqrt(m / (2.0 * kPi * t)) * std::exp(-m * d * d / (2.0 * t));
}

Complex free_prefactor(double m, double t) {
    if (t == 0.0) throw DomainError("free_prefactor: t = 0 is distributional");
    const double modulus = std::sqrt(m / (2.0 * kPi * std::abs(t)));
    const double phase = t > 0.0 ? -kPi / 4.0 : kPi / 4.0;
    return std::polar(modulus, phase);
}

ComplexAmplitude free_propagator(double m, double t, double x, double y) {
    const double d = x - y;
    return free_prefactor(m, t) * std::polar(1.0, m * d * d / (2.0 * t));
}

std::vector<double> abscissae(const Grid1D& grid, QuadratureKind kind) {
    return kind == QuadratureKind::midpoint ? grid.midpoints() : grid.nodes();
}

double integrate(std::span<const double> samples, const Grid1D& grid, QuadratureKind kind) {
    const std::size_t expected = kind == QuadratureKind::midpoint ? grid.n_cells() : grid.n_points();
    if (samples.size() != expected)
        throw UsageError("integrate: expected " + std::to_string(expected) + " samples, got " +
                         std::to_string(samples.size()));
    const double h = grid.spacing();
    if (kind == QuadratureKind::midpoint) return h * pairwise_sum(samples);
    const double ends = 0.5 * (samples.front() + samples.back());
    return h * (pairwise_sum(samples.subspan(1, samples.size() - 2)) + ends);
}

namespace {

template <class T>
T pairwise_sum_impl(std::span<const T> v) {
    constexpr std::size_t kLeaf = 64;
    if (v.size() <= kLeaf) {
        T acc{};
        for (const T& x : v) acc += x;
        return acc;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum_impl(v.first(half)) + pairwise_sum_impl(v.subspan(half));
}

}  // namespace

double pairwise_sum(std::span<const double> values) { return pairwise_sum_impl(values); }
Complex pairwise_sum(std::span<const Complex> values) { return pairwise_sum_impl(values); }

double euclidean_cutoff(double m, double tau_total, double q_trunc) {
    if (!(m > 0.0) || !(tau_total > 0.0) || !(q_trunc > 0.0))
        throw UsageError("euclidean_cutoff: arguments must be positive");
    return q_trunc * std::sqrt(tau_total / m);
}

}  // namespace zeno
