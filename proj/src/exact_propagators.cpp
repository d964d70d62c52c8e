#include "zeno/exact_propagators.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace zeno {

PotentialParams::PotentialParams(double mass, double absorption) : m(mass), v0(absorption) {
    if (!(mass > 0.0)) throw UsageError("PotentialParams: mass must be positive");
    if (!(absorption > 0.0)) throw UsageError("PotentialParams: v0 must be positive");
}

ComplexAmplitude restricted_propagator(double m, double t, double x1, double x0) {
    if (!(t > 0.0)) throw DomainError("restricted_propagator: t must be positive");
    if (x1 <= 0.0 || x0 <= 0.0) return {0.0, 0.0};
    const double direct = m * (x1 - x0) * (x1 - x0) / (2.0 * t);
    const double image = m * (x1 + x0) * (x1 + x0) / (2.0 * t);
    return free_prefactor(m, t) * (std::polar(1.0, direct) - std::polar(1.0, image));
}

double restricted_heat_kernel(double m, double t, double x1, double x0) {
    if (!(t > 0.0)) throw DomainError("restricted_heat_kernel: t must be positive");
    if (x1 <= 0.0 || x0 <= 0.0) return 0.0;
    // K(x1 - x0) - K(x1 + x0) = K(x1 - x0) (1 - exp(-2 m x1 x0 / t))
    return -heat_kernel(m, t, x1, x0) * std::expm1(-2.0 * m * x1 * x0 / t);
}

double fv_envelope(double v0, double t) {
    if (!(t > 0.0)) throw DomainError("fv_envelope: t must be positive");
    if (!(v0 > 0.0)) throw DomainError("fv_envelope: v0 must be positive");
    const double a = v0 * t;
    return -std::expm1(-a) / a;
}

ComplexAmplitude gv_boundary(const PotentialParams& params, double t) {
    if (!(t > 0.0)) throw DomainError("gv_boundary: t must be positive");
    return free_prefactor(params.m, t) * fv_envelope(params.v0, t);
}

namespace {

void require_positive(const IntervalTriple& iv, const char* who) {
    if (!(iv.e1 > 0.0) || !(iv.e2 > 0.0) || !(iv.e3 > 0.0))
        throw DomainError(std::string(who) + ": intervals must be positive");
}

double arctan_term(const IntervalTriple& iv) {
    const double total = iv.e1 + iv.e2 + iv.e3;
    return std::atan(std::sqrt(iv.e1 * iv.e3 / (iv.e2 * total)));
}

}  // namespace

double t_plus_plus(const IntervalTriple& iv) {
    require_positive(iv, "t_plus_plus");
    const double total = iv.e1 + iv.e2 + iv.e3;
    return (kPi + 2.0 * arctan_term(iv)) / (4.0 * kPi * std::sqrt(total));
}

double t_plus_minus(const IntervalTriple& iv) {
    require_positive(iv, "t_plus_minus");
    const double total = iv.e1 + iv.e2 + iv.e3;
    return (kPi - 2.0 * arctan_term(iv)) / (4.0 * kPi * std::sqrt(total));
}

double t_plus_zero(const IntervalTriple& iv) {
    require_positive(iv, "t_plus_zero");
    return 0.5 / std::sqrt(iv.e1 + iv.e2 + iv.e3);
}

double t_plus_plus_plus_equal(double eps) {
    if (!(eps > 0.0)) throw DomainError("t_plus_plus_plus_equal: eps must be positive");
    // Integrating out an unrestricted coordinate merges its two neighbouring intervals.
    const double t_p0p = t_plus_plus({eps, 2.0 * eps, eps});
    const double t_pp0 = t_plus_plus({eps, eps, 2.0 * eps});
    const double t_0pm = t_plus_minus({2.0 * eps, eps, eps});
    return 0.5 * (t_p0p + t_pp0 - t_0pm);
}

double gp_exact_envelope(double eps, double t, int n_proj) {
    if (!(eps > 0.0)) throw UsageError("gp_exact_envelope: eps must be positive");
    switch (n_proj) {
        case 0:
            if (t >= 0.0 && t < eps) return 1.0;
            break;
        case 1:
            if (t >= eps && t < 2.0 * eps) return 0.5;
            break;
        case 2:
            if (t >= 2.0 * eps && t < 3.0 * eps)
                return 0.25 * (1.0 + (2.0 / kPi) * std::atan(std::sqrt((t - 2.0 * eps) / t)));
            break;
        case 3:
            if (std::abs(t - 4.0 * eps) <= 1e-12 * eps) return t_plus_plus_plus_equal(eps) * std::sqrt(t);
            break;
        default:
            break;
    }
    throw UsageError("gp_exact_envelope: unsupported (n_proj, t) combination");
}

ComplexAmplitude gp_exact(double m, double eps, double t, int n_proj) {
    const double f = gp_exact_envelope(eps, t, n_proj);
    return free_prefactor(m, t) * f;
}

double exact_jump_ratio(int earlier_projections) {
    const double eps = 1.0;
    switch (earlier_projections) {
        case 0:
            return gp_exact_envelope(eps, eps, 1) / gp_exact_envelope(eps, std::nextafter(eps, 0.0), 0);
        case 1: {
            const double before = gp_exact_envelope(eps, std::nextafter(2.0 * eps, 0.0), 1);
            return gp_exact_envelope(eps, 2.0 * eps, 2) / before;
        }
        default:
            throw UsageError("exact_jump_ratio: closed forms cover 0 or 1 earlier projections");
    }
}

namespace {

// Integrates g(t_1, ..., t_n) over the ordered simplex 0 < t_1 < ... < t_n < 1
// (normalized by its volume 1/n!) for n in {1, 2}. For n = 2 the simplex is
// mapped to the unit square by t_1 = u t_2.
template <class G>
double simplex_average(int n, std::size_t panels, G&& g) {
    if (panels < 1) throw UsageError("simplex_average: panels must be >= 1");
    const double h = 1.0 / static_cast<double>(panels);
    std::vector<double> row(panels);
    if (n == 1) {
        for (std::size_t i = 0; i < panels; ++i) row[i] = g((static_cast<double>(i) + 0.5) * h, 0.0);
        return h * pairwise_sum(row);
    }
    std::vector<double> outer(panels);
    for (std::size_t j = 0; j < panels; ++j) {
        const double t2 = (static_cast<double>(j) + 0.5) * h;
        for (std::size_t i = 0; i < panels; ++i) {
            const double u = (static_cast<double>(i) + 0.5) * h;
            row[i] = g(u * t2, t2);
        }
        outer[j] = t2 * h * pairwise_sum(row);
    }
    return 2.0 * h * pairwise_sum(outer);
}

}  // namespace

double time_averaged_factor(int n, std::size_t panels) {
    // tau = 1 without loss of generality: the factor is scale free.
    if (n == 1) {
        return simplex_average(1, panels, [](double t1, double) {
            // T_+(t1, 1 - t1) = 1 / (2 sqrt(t1 + (1 - t1))) for every placement.
            return 0.5 / std::sqrt(t1 + (1.0 - t1));
        });
    }
    if (n == 2) {
        return simplex_average(2, panels, [](double t1, double t2) {
            return t_plus_plus({t1, t2 - t1, 1.0 - t2});
        });
    }
    throw UsageError("time_averaged_factor: n must be 1 or 2");
}

ComplexAmplitude time_averaged_product(double m, double tau, int n, std::size_t panels) {
    if (!(m > 0.0) || !(tau > 0.0)) throw UsageError("time_averaged_product: m and tau must be positive");
    return free_prefactor(m, tau) * time_averaged_factor(n, panels);
}

double ordered_time_shift(int n, int k, std::size_t panels) {
    if (n < 1 || n > 2) throw UsageError("ordered_time_shift: n must be 1 or 2");
    if (k < 1 || k > n) throw UsageError("ordered_time_shift: need 1 <= k <= n");
    // tau = 1, eps = 1/(n+1); result in units of eps.
    const double eps = 1.0 / static_cast<double>(n + 1);
    const double mean = simplex_average(n, panels, [k](double t1, double t2) { return k == 1 ? t1 : t2; });
    return (mean - static_cast<double>(k) * eps) / eps;
}

}  // namespace zeno
