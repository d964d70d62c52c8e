#include "zeno/pdx_wavepacket.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

namespace zeno {

void WavePacket::validate() const {
    if (!(sigma > 0.0)) throw UsageError("WavePacket: sigma must be positive");
    if (!(m > 0.0)) throw UsageError("WavePacket: m must be positive");
    if (!std::isfinite(q) || !std::isfinite(p)) throw UsageError("WavePacket: q and p must be finite");
}

double WavePacket::zeno_time() const {
    validate();
    if (p == 0.0) throw UsageError("WavePacket: zeno time needs p != 0");
    return m * sigma / std::abs(p);
}

double WavePacket::crossing_time() const {
    validate();
    if (!(q * p < 0.0)) throw UsageError("WavePacket: packet must move toward the origin");
    return m * std::abs(q) / std::abs(p);
}

namespace {

// Width parameter a = 1 + i t / (2 m sigma^2) (or 1 without spreading),
// center c = q + p t / m.
struct PacketState {
    Complex a;
    double c;
};

PacketState packet_state(const WavePacket& wp, double t, bool spreading) {
    const Complex a = spreading ? Complex(1.0, t / (2.0 * wp.m * wp.sigma * wp.sigma)) : Complex(1.0, 0.0);
    return {a, wp.q + wp.p * t / wp.m};
}

}  // namespace

ComplexAmplitude free_packet(const WavePacket& wp, double t, double x, bool spreading) {
    wp.validate();
    const auto [a, c] = packet_state(wp, t, spreading);
    const double norm = std::pow(2.0 * kPi * wp.sigma * wp.sigma, -0.25);
    const double d = x - c;
    const Complex expo = -d * d / (4.0 * wp.sigma * wp.sigma * a) + Complex(0.0, wp.p * x - wp.energy() * t);
    return norm / std::sqrt(a) * std::exp(expo);
}

ComplexAmplitude boundary_derivative(const WavePacket& wp, double t, bool spreading) {
    const auto [a, c] = packet_state(wp, t, spreading);
    const Complex log_slope = c / (2.0 * wp.sigma * wp.sigma * a) + Complex(0.0, wp.p);
    return free_packet(wp, t, 0.0, spreading) * log_slope;
}

void PdxConfig::validate() const {
    if (!(tau > 0.0)) throw UsageError("PdxConfig: tau must be positive");
    if (points_per_scale < 16)
        throw UsageError("PdxConfig: need at least 16 points per eps and per 2 pi / E, got " +
                         std::to_string(points_per_scale));
    if (padding_factor < 2) throw UsageError("PdxConfig: padding_factor must be >= 2");
}

namespace {

std::mutex& planner_mutex() {
    static std::mutex mu;
    return mu;
}

// In-place FFT; sign follows FFTW (FORWARD: e^{-i}, BACKWARD: e^{+i}).
void fft_inplace(std::vector<Complex>& data, int sign) {
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, sign, FFTW_ESTIMATE);
    }
    if (!plan) throw NumericalError("fft: plan creation failed");
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

std::size_t next_pow2(std::size_t n) {
    std::size_t p = 1;
    while (p < n) p <<= 1;
    return p;
}

constexpr double pdx_prefactor(double m) { return -1.0 / (m * m); }

}  // namespace

BoundaryTransform boundary_transform(const WavePacket& wp, const Envelope& envelope, double tau, double dt,
                                     bool spreading, std::size_t padding_factor) {
    wp.validate();
    if (!(tau > 0.0) || !(dt > 0.0)) throw UsageError("boundary_transform: tau and dt must be positive");
    if (padding_factor < 2) throw UsageError("boundary_transform: padding_factor must be >= 2");
    const auto n = static_cast<std::size_t>(std::ceil(tau / dt - 1e-9));
    if (n < 2) throw UsageError("boundary_transform: fewer than two time steps");

    BoundaryTransform bt;
    bt.m = wp.m;
    bt.dt = dt;
    bt.tau = static_cast<double>(n) * dt;

    // Cell [t_i - (k+1) dt, t_i - k dt] of the t1 integral: the smooth factor
    // f(delta) dpsi(t1) is interpolated linearly between the cell ends and
    // integrated exactly against delta^{-1/2}. Envelope values are one-sided
    // so that jumps sitting on cell ends are respected. The result is a
    // Toeplitz sum B_i = sum_k c_k D_{i-k}, done by FFT.
    const std::size_t len = next_pow2(2 * (n + 1));
    std::vector<Complex> c(len), d(len), lo_part(n + 1);
    const Complex unit_prefactor = free_prefactor(wp.m, 1.0);
    constexpr double kSide = 1e-9;
    for (std::size_t k = 0; k < n; ++k) {
        const double lo = static_cast<double>(k) * dt;
        const double hi = lo + dt;
        const double a = std::sqrt(lo);
        const double b = std::sqrt(hi);
        const double ba = dt / (a + b);
        const double w_lo = (2.0 / 3.0) * ba * ba * (2.0 * b + a) / dt;
        const double w_hi = (2.0 / 3.0) * ba * ba * (b + 2.0 * a) / dt;
        const double f_lo = envelope(k == 0 ? kSide * dt : lo * (1.0 + kSide));
        const double f_hi = envelope(hi * (1.0 - kSide));
        lo_part[k] = unit_prefactor * (w_lo * f_lo);
        c[k] += lo_part[k];
        c[k + 1] += unit_prefactor * (w_hi * f_hi);
    }
    for (std::size_t j = 0; j <= n; ++j) d[j] = boundary_derivative(wp, static_cast<double>(j) * dt, spreading);
    const Complex d0 = d[0];
    fft_inplace(c, FFTW_FORWARD);
    fft_inplace(d, FFTW_FORWARD);
    for (std::size_t k = 0; k < len; ++k) c[k] *= d[k];
    fft_inplace(c, FFTW_BACKWARD);
    // The full convolution also pairs D_0 with the lower end of a cell i that
    // would start before t = 0; remove it.
    bt.emission.assign(n + 1, Complex{});
    for (std::size_t i = 1; i <= n; ++i)
        bt.emission[i] = c[i] / static_cast<double>(len) - (i < n ? lo_part[i] * d0 : Complex{});

    const std::size_t big = next_pow2(padding_factor * (n + 1));
    std::vector<Complex> buf(big);
    for (std::size_t i = 0; i <= n; ++i) buf[i] = bt.emission[i] * dt * ((i == 0 || i == n) ? 0.5 : 1.0);
    fft_inplace(buf, FFTW_BACKWARD);
    const std::size_t half = big / 2;
    bt.omega.resize(half + 1);
    bt.spectrum.assign(buf.begin(), buf.begin() + static_cast<std::ptrdiff_t>(half + 1));
    for (std::size_t l = 0; l <= half; ++l)
        bt.omega[l] = 2.0 * kPi * static_cast<double>(l) / (static_cast<double>(big) * dt);
    return bt;
}

namespace {

double trapezoid_weight(std::size_t l, std::size_t last) { return (l == 0 || l == last) ? 0.5 : 1.0; }

}  // namespace

ComplexAmplitude pdx_delta_psi(const BoundaryTransform& bt, double x1) {
    if (bt.spectrum.size() < 2) throw UsageError("pdx_delta_psi: empty transform");
    const std::size_t last = bt.spectrum.size() - 1;
    const double dw = bt.omega[1];
    std::vector<Complex> terms(last + 1);
    for (std::size_t l = 0; l <= last; ++l) {
        const double w = bt.omega[l];
        terms[l] = trapezoid_weight(l, last) * std::sin(std::sqrt(2.0 * bt.m * w) * x1) *
                   std::polar(1.0, -w * bt.tau) * bt.spectrum[l];
    }
    return pdx_prefactor(bt.m) * (bt.m / kPi) * dw * pairwise_sum(terms);
}

double delta_psi_norm(const BoundaryTransform& bt) {
    if (bt.spectrum.size() < 2) throw UsageError("delta_psi_norm: empty transform");
    const std::size_t last = bt.spectrum.size() - 1;
    const double dw = bt.omega[1];
    std::vector<double> terms(last + 1);
    for (std::size_t l = 0; l <= last; ++l)
        terms[l] = trapezoid_weight(l, last) * std::sqrt(2.0 * bt.m * bt.omega[l]) * std::norm(bt.spectrum[l]);
    const double c = pdx_prefactor(bt.m);
    return std::sqrt(c * c * (bt.m / (2.0 * kPi)) * dw * pairwise_sum(terms));
}

std::vector<Complex> pdx_reconstruct(const WavePacket& wp, const BoundaryTransform& bt, std::span<const double> x1,
                                     bool spreading) {
    std::vector<Complex> out(x1.size());
    for (std::size_t i = 0; i < x1.size(); ++i) {
        const double x = x1[i];
        if (!(x > 0.0)) throw UsageError("pdx_reconstruct: evaluation points must satisfy x > 0");
        out[i] = free_packet(wp, bt.tau, x, spreading) - free_packet(wp, bt.tau, -x, spreading) +
                 pdx_delta_psi(bt, x);
    }
    return out;
}

namespace {

double model_fp(double eps, double dt) {
    const auto n = static_cast<std::size_t>(dt / eps) + 2;
    return fp_model(ProjectionSchedule::uniform(eps, n), dt);
}

}  // namespace

Envelope model_delta_envelope(double eps) {
    if (!(eps > 0.0)) throw UsageError("model_delta_envelope: eps must be positive");
    const double v0 = calibrate_v0(eps);
    return [eps, v0](double dt) { return model_fp(eps, dt) - fv_envelope(v0, dt); };
}

Envelope curve_delta_envelope(const BoundaryCurve& fp_unit_eps, double eps) {
    if (!(eps > 0.0)) throw UsageError("curve_delta_envelope: eps must be positive");
    if (fp_unit_eps.empty()) throw UsageError("curve_delta_envelope: empty curve");
    const double v0 = calibrate_v0(eps);
    return [curve = fp_unit_eps, eps, v0](double dt) {
        const double s = dt / eps;
        double fp;
        if (s < curve[0].t) fp = 1.0;
        else if (s <= curve[curve.size() - 1].t) fp = curve.value_at(s);
        else fp = model_fp(eps, dt);
        return fp - fv_envelope(v0, dt);
    };
}

Envelope complex_potential_envelope(double v0) {
    if (!(v0 > 0.0)) throw UsageError("complex_potential_envelope: v0 must be positive");
    return [v0](double dt) { return fv_envelope(v0, dt); };
}

double pdx_time_step(const WavePacket& wp, const PdxConfig& cfg, double eps) {
    cfg.validate();
    if (!(eps > 0.0)) throw UsageError("pdx_time_step: eps must be positive");
    const double e = wp.energy();
    const double scale = e > 0.0 ? std::min(eps, 2.0 * kPi / e) : eps;
    const double steps_per_eps = std::ceil(eps / (scale / static_cast<double>(cfg.points_per_scale)));
    return eps / steps_per_eps;
}

double perturbation_norm(const WavePacket& wp, double eps, const PdxConfig& cfg, const BoundaryCurve* fp_unit_eps) {
    const double dt = pdx_time_step(wp, cfg, eps);
    Envelope env;
    switch (cfg.source) {
        case BoundarySource::model:
            env = model_delta_envelope(eps);
            break;
        case BoundarySource::numeric:
            if (!fp_unit_eps) throw UsageError("perturbation_norm: numeric source needs a recursion curve");
            env = curve_delta_envelope(*fp_unit_eps, eps);
            break;
        case BoundarySource::complex_potential:
            env = complex_potential_envelope(calibrate_v0(eps));
            break;
    }
    return delta_psi_norm(boundary_transform(wp, env, cfg.tau, dt, cfg.spreading, cfg.padding_factor));
}

double timescale_exponent(const WavePacket& wp, double eps) {
    if (!(eps > 0.0)) throw UsageError("timescale_estimate: eps must be positive");
    const double tz = wp.zeno_time();
    const double x = wp.energy() * eps - 1.0;
    return -(tz * tz) / (eps * eps) * x * x;
}

double timescale_estimate(const WavePacket& wp, double eps) { return std::exp(timescale_exponent(wp, eps)); }

std::vector<ScanPoint> epsilon_scan(const WavePacket& wp, std::span<const double> e_eps, const PdxConfig& cfg,
                                    const BoundaryCurve* fp_unit_eps) {
    const double e = wp.energy();
    if (!(e > 0.0)) throw UsageError("epsilon_scan: packet energy must be positive");
    std::vector<ScanPoint> out;
    out.reserve(e_eps.size());
    for (double x : e_eps) {
        if (!(x > 0.0)) throw UsageError("epsilon_scan: E eps values must be positive");
        const double eps = x / e;
        out.push_back({eps, x, timescale_estimate(wp, eps), perturbation_norm(wp, eps, cfg, fp_unit_eps)});
    }
    return out;
}

double crossing_density(const WavePacket& wp, double v0, double tau, bool spreading) {
    if (!(v0 > 0.0)) throw UsageError("crossing_density: v0 must be positive");
    const double m = wp.m;
    return 2.0 / (std::pow(m, 1.5) * std::sqrt(v0)) * std::norm(boundary_derivative(wp, tau, spreading));
}

double normalized_crossing(const WavePacket& wp, double tau, bool spreading) {
    wp.validate();
    if (wp.p == 0.0) throw UsageError("normalized_crossing: needs p != 0");
    return std::norm(boundary_derivative(wp, tau, spreading)) / (wp.m * std::abs(wp.p));
}

double integrated_normalized_crossing(const WavePacket& wp, double t0, double t1, std::size_t panels,
                                      bool spreading) {
    if (!(t1 > t0)) throw UsageError("integrated_normalized_crossing: need t1 > t0");
    return integrate([&](double t) { return normalized_crossing(wp, t, spreading); }, t0, t1,
                     {QuadratureKind::midpoint, panels});
}

}  // namespace zeno
