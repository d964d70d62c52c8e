#include "zeno/projection_recursion.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "zeno/parallel.hpp"

namespace zeno {

namespace {

// exp(-40) ~ 4e-18 relative to the kernel peak: below double resolution.
constexpr double kKernelExponentCut = 40.0;
constexpr double kUnderflowFlush = 1e-300;

std::size_t kernel_half_width(double m, double dt, double h, std::size_t n) {
    const double reach = std::sqrt(2.0 * kKernelExponentCut * dt / m);
    const double cells = std::ceil(reach / h);
    return std::min<std::size_t>(n, static_cast<std::size_t>(cells));
}

// h * K(dt, d h) for d = -W .. W, stored at index W + d.
std::vector<double> toeplitz_kernel(double m, double dt, double h, std::size_t w) {
    std::vector<double> k(2 * w + 1);
    for (std::size_t d = 0; d <= w; ++d) {
        const double v = h * heat_kernel(m, dt, static_cast<double>(d) * h, 0.0);
        k[w + d] = v;
        k[w - d] = v;
    }
    return k;
}

std::size_t active_length(const std::vector<double>& v) {
    std::size_t n = v.size();
    while (n > 0 && v[n - 1] == 0.0) --n;
    return n;
}

std::size_t slice_index(const EuclideanSlice& slice) {
    const double n = std::round(slice.s);
    if (!(n >= 1.0) || std::abs(slice.s - n) > 1e-9)
        throw UsageError("advance_slice: previous slice must sit at a projection instant s = 1, 2, ...");
    return static_cast<std::size_t>(n);
}

double step_length(const EuclideanSlice& prev, const RecursionConfig& cfg, double s_next) {
    const double n = static_cast<double>(slice_index(prev));
    if (!(s_next > n) || s_next > n + 1.0 + 1e-12)
        throw UsageError("advance_slice: s_next must lie in (n, n+1], got " + std::to_string(s_next));
    return (s_next - n) * cfg.eps;
}

void check_slice(const EuclideanSlice& slice, const RecursionConfig& cfg) {
    if (slice.values.size() != cfg.grid.n_cells())
        throw UsageError("advance_slice: slice does not match the configured grid");
}

}  // namespace

RecursionConfig RecursionConfig::make(double m, double eps, std::size_t n_max, double spacing_factor,
                                      std::size_t samples_per_interval, double q_trunc) {
    if (!(m > 0.0) || !(eps > 0.0)) throw UsageError("RecursionConfig: m and eps must be positive");
    if (!(spacing_factor > 0.0)) throw UsageError("RecursionConfig: spacing factor must be positive");
    const double y_max = euclidean_cutoff(m, static_cast<double>(n_max + 1) * eps, q_trunc);
    const double h = spacing_factor * std::sqrt(eps / m);
    const auto cells = static_cast<std::size_t>(std::ceil(y_max / h));
    RecursionConfig cfg{m, eps, n_max, Grid1D(0.0, static_cast<double>(cells) * h, cells + 1),
                        samples_per_interval};
    cfg.validate();
    return cfg;
}

RecursionConfig RecursionConfig::with_grid_points(double m, double eps, std::size_t n_max,
                                                  std::size_t grid_points, std::size_t samples_per_interval,
                                                  double q_trunc) {
    if (!(m > 0.0) || !(eps > 0.0)) throw UsageError("RecursionConfig: m and eps must be positive");
    const double y_max = euclidean_cutoff(m, static_cast<double>(n_max + 1) * eps, q_trunc);
    RecursionConfig cfg{m, eps, n_max, Grid1D(0.0, y_max, grid_points), samples_per_interval};
    cfg.validate();
    return cfg;
}

void RecursionConfig::validate() const {
    if (!(m > 0.0)) throw UsageError("RecursionConfig: m must be positive");
    if (!(eps > 0.0)) throw UsageError("RecursionConfig: eps must be positive");
    if (n_max < 1) throw UsageError("RecursionConfig: n_max must be >= 1");
    if (samples_per_interval < 2) throw UsageError("RecursionConfig: samples_per_interval must be >= 2");
    if (grid.x_min() != 0.0) throw UsageError("RecursionConfig: grid must start at x = 0");
}

double EuclideanSlice::mass(const Grid1D& grid) const { return grid.spacing() * pairwise_sum(values); }

EuclideanSlice initial_slice(const RecursionConfig& cfg, double s) {
    if (!(s > 0.0) || s > 1.0) throw UsageError("initial_slice: s must lie in (0, 1]");
    const double t = s * cfg.eps;
    EuclideanSlice out;
    out.s = s;
    out.values.resize(cfg.grid.n_cells());
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const double v = heat_kernel(cfg.m, t, cfg.grid.midpoint(i), 0.0);
        out.values[i] = v < kUnderflowFlush ? 0.0 : v;
    }
    out.origin = heat_kernel(cfg.m, t, 0.0, 0.0);
    return out;
}

double advance_origin(const EuclideanSlice& prev, const RecursionConfig& cfg, double s_next) {
    check_slice(prev, cfg);
    const double dt = step_length(prev, cfg, s_next);
    const double h = cfg.grid.spacing();
    const std::size_t n = std::min(active_length(prev.values),
                                   kernel_half_width(cfg.m, dt, h, prev.values.size()) + 1);
    std::vector<double> terms(n);
    for (std::size_t j = 0; j < n; ++j)
        terms[j] = h * heat_kernel(cfg.m, dt, cfg.grid.midpoint(j), 0.0) * prev.values[j];
    return pairwise_sum(terms);
}

EuclideanSlice advance_slice(const EuclideanSlice& prev, const RecursionConfig& cfg, double s_next) {
    check_slice(prev, cfg);
    const double dt = step_length(prev, cfg, s_next);
    const double h = cfg.grid.spacing();
    const std::size_t n = prev.values.size();
    const std::size_t w = kernel_half_width(cfg.m, dt, h, n);
    const std::vector<double> kern = toeplitz_kernel(cfg.m, dt, h, w);
    const std::size_t n_in = active_length(prev.values);
    const std::size_t n_out = std::min(n, n_in + w);

    EuclideanSlice out;
    out.s = s_next;
    out.values.assign(n, 0.0);
    const double* src = prev.values.data();
    double* dst = out.values.data();

    // Scatter form: for each source cell, one contiguous axpy over the
    // outputs of this block. Each output accumulates sources in ascending j
    // whatever the block partition.
    parallel_for_blocks(n_out, [&](std::size_t lo, std::size_t hi) {
        const std::size_t j_lo = lo > w ? lo - w : 0;
        const std::size_t j_hi = std::min(n_in, hi + w);
        for (std::size_t j = j_lo; j < j_hi; ++j) {
            const double pj = src[j];
            if (pj == 0.0) continue;
            const std::size_t i_lo = std::max(lo, j > w ? j - w : 0);
            const std::size_t i_hi = std::min(hi, j + w + 1);
            const double* k = kern.data() + w - j;
            double* __restrict o = dst;
            for (std::size_t i = i_lo; i < i_hi; ++i) o[i] += k[i] * pj;
        }
        for (std::size_t i = lo; i < hi; ++i)
            if (dst[i] < kUnderflowFlush) dst[i] = 0.0;
    }, 1024);

    out.origin = advance_origin(prev, cfg, s_next);
    return out;
}

double envelope_from_origin(const RecursionConfig& cfg, double s, double origin) {
    return origin / heat_kernel(cfg.m, s * cfg.eps, 0.0, 0.0);
}

namespace {

constexpr double kProbe = 1e-4;

// Right limit of the envelope at s = n from probes at n + d and n + d/4,
// eliminating the leading sqrt(d) correction.
double right_limit(const EuclideanSlice& at_n, const RecursionConfig& cfg, double* raw_probe) {
    const double n = at_n.s;
    const double coarse = envelope_from_origin(cfg, n + kProbe, advance_origin(at_n, cfg, n + kProbe));
    const double fine_s = n + 0.25 * kProbe;
    const double fine = envelope_from_origin(cfg, fine_s, advance_origin(at_n, cfg, fine_s));
    if (raw_probe) *raw_probe = coarse;
    return 2.0 * fine - coarse;
}

}  // namespace

RecursionResult run_recursion(const RecursionConfig& cfg) {
    cfg.validate();
    const std::size_t spi = cfg.samples_per_interval;
    RecursionResult res;
    std::vector<CurvePoint> pts;
    pts.reserve((cfg.n_max + 1) * (spi + 2));

    // Before the first projection the envelope is identically one.
    for (std::size_t j = 0; j < spi; ++j) {
        const double s = (static_cast<double>(j) + 0.5) / static_cast<double>(spi);
        pts.push_back({s * cfg.eps, Side::none, 1.0});
    }
    EuclideanSlice slice = initial_slice(cfg, 1.0);

    for (std::size_t n = 1;; ++n) {
        const double s_n = static_cast<double>(n);
        const double t_n = s_n * cfg.eps;
        const double peak = envelope_from_origin(cfg, s_n, slice.origin);
        double probe = 0.0;
        const double trough = right_limit(slice, cfg, &probe);
        res.arriving_mass.push_back(slice.mass(cfg.grid));
        res.peak.push_back(peak);
        res.trough.push_back(trough);
        res.trough_probe.push_back(probe);
        pts.push_back({t_n, Side::minus, peak});
        pts.push_back({t_n, Side::plus, trough});
        if (n == cfg.n_max + 1) break;

        for (std::size_t j = 0; j < spi; ++j) {
            const double s = s_n + (static_cast<double>(j) + 0.5) / static_cast<double>(spi);
            const double f = envelope_from_origin(cfg, s, advance_origin(slice, cfg, s));
            pts.push_back({s * cfg.eps, Side::none, f});
        }
        slice = advance_slice(slice, cfg, s_n + 1.0);
    }
    res.envelope = BoundaryCurve(std::move(pts));
    return res;
}

BoundaryCurve numeric_s_curve(const BoundaryCurve& fp_numeric, const PotentialParams& params) {
    std::vector<CurvePoint> out;
    out.reserve(fp_numeric.size());
    for (const auto& p : fp_numeric.points()) {
        const double fv = fv_envelope(params.v0, p.t);
        if (fv < 1e-12)
            throw NumericalError("numeric_s_curve: f_V below 1e-12 at t = " + std::to_string(p.t));
        out.push_back({p.t, p.side, p.value / fv - 1.0});
    }
    return BoundaryCurve(std::move(out));
}

double half_value_ratio(const RecursionConfig& cfg, std::size_t earlier_projections, double eps_n) {
    cfg.validate();
    if (!(eps_n > 0.0)) throw UsageError("half_value_ratio: eps_n must be positive");
    const double h = cfg.grid.spacing();
    const std::size_t n = cfg.grid.n_cells();

    // Slice arriving at the final projection, on both half-lines.
    std::vector<double> pos(n), neg(n);
    if (earlier_projections == 0) {
        for (std::size_t i = 0; i < n; ++i) pos[i] = neg[i] = heat_kernel(cfg.m, cfg.eps, cfg.grid.midpoint(i), 0.0);
    } else {
        EuclideanSlice slice = initial_slice(cfg, 1.0);
        for (std::size_t k = 1; k < earlier_projections; ++k) slice = advance_slice(slice, cfg, slice.s + 1.0);
        pos = advance_slice(slice, cfg, slice.s + 1.0).values;
        // F(-x) = h sum_j K(x + y_j) F_j, with x + y_j = (i + j + 1) h.
        const std::size_t w = kernel_half_width(cfg.m, cfg.eps, h, n);
        std::vector<double> kern(w + 1);
        for (std::size_t d = 0; d <= w; ++d) kern[d] = h * heat_kernel(cfg.m, cfg.eps, static_cast<double>(d) * h, 0.0);
        parallel_for_blocks(n, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                double acc = 0.0;
                for (std::size_t j = 0; i + j + 1 <= w && j < n; ++j) acc += kern[i + j + 1] * slice.values[j];
                neg[i] = acc;
            }
        }, 1024);
    }

    std::vector<double> with(n), without(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = heat_kernel(cfg.m, eps_n, cfg.grid.midpoint(i), 0.0);
        with[i] = k * pos[i];
        without[i] = k * (pos[i] + neg[i]);
    }
    const double denom = pairwise_sum(without);
    if (!(denom > 0.0)) throw NumericalError("half_value_ratio: vanishing boundary amplitude");
    return pairwise_sum(with) / denom;
}

HalfValueSweep half_value_sweep(const RecursionConfig& cfg, std::size_t earlier_projections, std::size_t levels) {
    if (levels < 3) throw UsageError("half_value_sweep: need at least three levels");
    HalfValueSweep out;
    for (std::size_t k = 1; k <= levels; ++k) {
        const double e = cfg.eps / std::ldexp(1.0, static_cast<int>(k));
        out.eps_n.push_back(e);
        out.ratio.push_back(half_value_ratio(cfg, earlier_projections, e));
    }
    // Exact fit of a + b sqrt(e) + c e through the three finest levels.
    std::array<std::array<double, 4>, 3> a{};
    for (std::size_t r = 0; r < 3; ++r) {
        const std::size_t idx = levels - 3 + r;
        const double e = out.eps_n[idx];
        a[r] = {1.0, std::sqrt(e), e, out.ratio[idx]};
    }
    for (std::size_t c = 0; c < 3; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < 3; ++r)
            if (std::abs(a[r][c]) > std::abs(a[piv][c])) piv = r;
        std::swap(a[c], a[piv]);
        for (std::size_t r = 0; r < 3; ++r) {
            if (r == c) continue;
            const double f = a[r][c] / a[c][c];
            for (std::size_t k = c; k < 4; ++k) a[r][k] -= f * a[c][k];
        }
    }
    out.extrapolated = a[0][3] / a[0][0];
    return out;
}

}  // namespace zeno
