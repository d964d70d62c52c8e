#include "zeno/sawtooth_model.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <string>

namespace zeno {

ProjectionSchedule::ProjectionSchedule(double eps0, double eps, double eps_n, std::size_t n)
    : eps0_(eps0), eps_(eps), eps_n_(eps_n), n_(n) {
    if (!(eps0 > 0.0) || !(eps > 0.0) || !(eps_n > 0.0))
        throw UsageError("ProjectionSchedule: all gaps must be positive");
}

ProjectionSchedule ProjectionSchedule::uniform(double eps, std::size_t n) {
    return ProjectionSchedule(eps, eps, eps, n);
}

double ProjectionSchedule::tau() const {
    if (n_ == 0) return eps0_ + eps_n_;
    return static_cast<double>(n_ - 1) * eps_ + eps0_ + eps_n_;
}

double ProjectionSchedule::projection_time(std::size_t k) const {
    if (k >= n_) throw UsageError("ProjectionSchedule: projection index out of range");
    return eps0_ + static_cast<double>(k) * eps_;
}

BoundaryCurve::BoundaryCurve(std::vector<CurvePoint> points) : points_(std::move(points)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (!std::isfinite(points_[i].t) || !std::isfinite(points_[i].value))
            throw UsageError("BoundaryCurve: non-finite entry at index " + std::to_string(i));
        if (i == 0) continue;
        const auto& a = points_[i - 1];
        const auto& b = points_[i];
        const bool jump_pair = a.t == b.t && a.side == Side::minus && b.side == Side::plus;
        if (!(a.t < b.t) && !jump_pair)
            throw UsageError("BoundaryCurve: times must increase (index " + std::to_string(i) + ")");
    }
}

std::vector<double> BoundaryCurve::times() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.t);
    return out;
}

std::vector<double> BoundaryCurve::values() const {
    std::vector<double> out;
    out.reserve(points_.size());
    for (const auto& p : points_) out.push_back(p.value);
    return out;
}

double BoundaryCurve::integral(double a, double b) const {
    if (points_.size() < 2) throw UsageError("BoundaryCurve::integral: need at least two points");
    if (!(a < b) || a < points_.front().t || b > points_.back().t)
        throw UsageError("BoundaryCurve::integral: [a, b] outside the sampled range");
    std::vector<double> pieces;
    for (std::size_t i = 0; i + 1 < points_.size(); ++i) {
        const auto& p = points_[i];
        const auto& q = points_[i + 1];
        if (!(p.t < q.t)) continue;
        const double lo = std::max(a, p.t);
        const double hi = std::min(b, q.t);
        if (!(lo < hi)) continue;
        const double slope = (q.value - p.value) / (q.t - p.t);
        const double v_lo = p.value + slope * (lo - p.t);
        const double v_hi = p.value + slope * (hi - p.t);
        pieces.push_back(0.5 * (v_lo + v_hi) * (hi - lo));
    }
    return pairwise_sum(pieces);
}

double BoundaryCurve::value_at(double t) const {
    if (points_.empty() || t < points_.front().t || t > points_.back().t)
        throw UsageError("BoundaryCurve::value_at: t outside the sampled range");
    const auto hi = std::upper_bound(points_.begin(), points_.end(), t,
                                     [](double v, const CurvePoint& p) { return v < p.t; });
    if (hi == points_.end()) return points_.back().value;
    const auto lo = std::prev(hi);
    const double w = (t - lo->t) / (hi->t - lo->t);
    return lo->value + w * (hi->value - lo->value);
}

double peak_value(std::size_t k) { return 1.0 / static_cast<double>(k + 1); }
double trough_value(std::size_t k) { return 0.5 / static_cast<double>(k + 1); }

double fp_model(const ProjectionSchedule& schedule, double t, Side side) {
    if (!(t >= 0.0)) throw UsageError("fp_model: t must be non-negative");
    const std::size_t n = schedule.n();
    const double eps = schedule.eps();
    const double eps0 = schedule.eps0();
    if (n == 0 || t < eps0) return 1.0;

    // c = number of projections already applied at (t, side).
    const double pos = (t - eps0) / eps;
    const double nearest = std::round(pos);
    std::size_t c;
    if (std::abs(pos - nearest) <= 1e-12 * std::max(1.0, std::abs(pos)) && nearest < static_cast<double>(n)) {
        const auto j = static_cast<std::size_t>(nearest);
        c = side == Side::minus ? j : j + 1;
    } else {
        c = std::min<std::size_t>(static_cast<std::size_t>(std::floor(pos)) + 1, n);
    }
    if (c == 0) return 1.0;

    const double kk = static_cast<double>(c);
    const double t_prev = eps0 + (kk - 1.0) * eps;
    const double t_next = eps0 + kk * eps;
    return (t - t_prev) / ((kk + 1.0) * eps) + (t_next - t) / (2.0 * kk * eps);
}

double fp_model(const ProjectionSchedule& schedule, double t) { return fp_model(schedule, t, Side::plus); }

double s_of_t(double fp, double fv) {
    if (!(fv > 0.0)) throw DomainError("s_of_t: f_V must be positive");
    return fp / fv - 1.0;
}

double calibrate_v0(double eps) {
    if (!(eps > 0.0)) throw UsageError("calibrate_v0: eps must be positive");
    return 4.0 / (3.0 * eps);
}

namespace {

bool is_projection_instant(const ProjectionSchedule& schedule, double t) {
    if (schedule.n() == 0 || t < schedule.eps0()) return false;
    const double pos = (t - schedule.eps0()) / schedule.eps();
    const double nearest = std::round(pos);
    return std::abs(pos - nearest) <= 1e-12 * std::max(1.0, std::abs(pos)) &&
           nearest < static_cast<double>(schedule.n());
}

}  // namespace

ModelCurves sample_model_curve(const ProjectionSchedule& schedule, const PotentialParams& params,
                               std::span<const double> t_grid) {
    std::vector<CurvePoint> fp, fv, s;
    const double tau = schedule.tau();
    for (double t : t_grid) {
        if (t < 0.0 || t > tau * (1.0 + 1e-12))
            throw UsageError("sample_model_curve: grid time outside [0, tau]");
        const double v = t > 0.0 ? fv_envelope(params.v0, t) : 1.0;
        auto emit = [&](Side side) {
            const double f = fp_model(schedule, t, side);
            fp.push_back({t, side, f});
            fv.push_back({t, side, v});
            s.push_back({t, side, s_of_t(f, v)});
        };
        if (is_projection_instant(schedule, t)) {
            emit(Side::minus);
            emit(Side::plus);
        } else {
            emit(Side::none);
        }
    }
    return {BoundaryCurve(std::move(fp)), BoundaryCurve(std::move(fv)), BoundaryCurve(std::move(s))};
}

}  // namespace zeno
