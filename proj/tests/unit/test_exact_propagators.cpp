#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "zeno/exact_propagators.hpp"

using namespace zeno;
using zeno::testing::tc_midpoint;
using zeno::testing::tc_oracle;

namespace {

constexpr double pi = std::numbers::pi;

double tpp_oracle(double e1, double e2, double e3, std::size_t panels = 2048) {
    const std::array<int, 2> s{+1, +1};
    const std::array<double, 3> e{e1, e2, e3};
    return tc_oracle(s, e, panels);
}

double tpm_oracle(double e1, double e2, double e3, std::size_t panels = 2048) {
    const std::array<int, 2> s{+1, -1};
    const std::array<double, 3> e{e1, e2, e3};
    return tc_oracle(s, e, panels);
}

}  // namespace

TEST_CASE("restricted propagator vanishes on the boundary") {
    CHECK(restricted_propagator(1.0, 1.0, 0.0, 2.0) == Complex(0.0));
    CHECK(restricted_propagator(1.0, 1.0, 2.0, 0.0) == Complex(0.0));
    CHECK(restricted_propagator(1.0, 1.0, -1.0, 2.0) == Complex(0.0));
    CHECK_THROWS_AS(restricted_propagator(1.0, 0.0, 1.0, 1.0), DomainError);
}

TEST_CASE("restricted propagator direct substitution") {
    const Complex expected = std::polar(1.0 / std::sqrt(2 * pi), -pi / 4) * (1.0 - std::polar(1.0, 2.0));
    CHECK(std::abs(restricted_propagator(1.0, 1.0, 1.0, 1.0) - expected) < 1e-15);
}

TEST_CASE("restricted propagator solves the free equation") {
    const double m = 1.4, t = 0.8, x0 = 0.6;
    const double h = 1e-3;
    for (double x : {0.3, 0.9, 1.7}) {
        const Complex dt = (restricted_propagator(m, t + h, x, x0) - restricted_propagator(m, t - h, x, x0)) / (2 * h);
        const Complex dxx = (restricted_propagator(m, t, x + h, x0) - 2.0 * restricted_propagator(m, t, x, x0) +
                             restricted_propagator(m, t, x - h, x0)) /
                            (h * h);
        const Complex residual = Complex(0, 1) * dt + dxx / (2 * m);
        CHECK(std::abs(residual) < 1e-5 * std::abs(dxx));
    }
}

TEST_CASE("restricted heat kernel is the Euclidean image pair") {
    CHECK(restricted_heat_kernel(1.0, 1.0, 0.0, 1.0) == 0.0);
    CHECK(restricted_heat_kernel(2.0, 0.5, 1.0, 0.4) ==
          doctest::Approx(heat_kernel(2.0, 0.5, 1.0, 0.4) - heat_kernel(2.0, 0.5, 1.0, -0.4)));
}

TEST_CASE("complex potential envelope") {
    CHECK(fv_envelope(1.0, 1e-12) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fv_envelope(std::log(2.0), 1.0) == doctest::Approx(1.0 / (2 * std::log(2.0))).epsilon(1e-15));
    CHECK(fv_envelope(1.0, 50.0) == doctest::Approx(1.0 / 50.0).epsilon(1e-15));
    // 30-digit evaluation of (1 - exp(-V0 t)) / (V0 t)
    CHECK(std::abs(fv_envelope(4.0 / 3.0, 0.01) - 0.993362864460321186117) < 1e-15);
    double prev = 1.0;
    for (int k = 1; k <= 400; ++k) {
        const double v = fv_envelope(4.0 / 3.0, 0.05 * k);
        CHECK(v > 0.0);
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(fv_envelope(1.0, 0.0), DomainError);
}

TEST_CASE("boundary propagator of the complex potential") {
    const PotentialParams p(1.0, 4.0 / 3.0);
    CHECK(std::abs(std::abs(gv_boundary(p, 1.0)) - 0.220336677760689923532) < 1e-15);
    CHECK(std::abs(gv_boundary(PotentialParams(1.0, 1e12), 1.0)) < 1e-12);
    CHECK(std::abs(gv_boundary(PotentialParams(1.0, 1e-12), 1.0) - free_propagator(1.0, 1.0, 0.0, 0.0)) < 1e-12);
    double prev = std::abs(gv_boundary(p, 0.01));
    for (int k = 2; k <= 200; ++k) {
        const double v = std::abs(gv_boundary(p, 0.01 * k));
        CHECK(v < prev);
        prev = v;
    }
    CHECK_THROWS_AS(gv_boundary(p, 0.0), DomainError);
    CHECK_THROWS_AS(PotentialParams(0.0, 1.0), UsageError);
    CHECK_THROWS_AS(PotentialParams(1.0, 0.0), UsageError);
}

TEST_CASE("two-constraint closed forms at equal intervals") {
    for (double eps : {0.1, 1.0, 2.5}) {
        CHECK(std::abs(t_plus_plus({eps, eps, eps}) - 1.0 / (3 * std::sqrt(3 * eps))) < 1e-14);
        CHECK(std::abs(t_plus_minus({eps, eps, eps}) - 1.0 / (6 * std::sqrt(3 * eps))) < 1e-14);
    }
}

TEST_CASE("two-constraint fixtures") {
    // 30-digit evaluations of the arctan closed forms
    CHECK(std::abs(t_plus_plus({1, 1, 1}) - 0.192450089729875254836) < 1e-15);
    CHECK(std::abs(t_plus_plus({2, 1, 2}) - 0.163742680134785584935) < 1e-15);
    CHECK(std::abs(t_plus_minus({2, 1, 2}) - 0.0598641176151933847063) < 1e-15);
    CHECK(std::abs(t_plus_plus({1, 2, 1}) - 0.152043361992348182457) < 1e-15);
    CHECK(std::abs(t_plus_plus({1, 2, 3}) - 0.132187452419096646087) < 1e-15);
}

TEST_CASE("two-constraint closed forms against the quadrature oracle") {
    for (auto iv : {IntervalTriple{1, 1, 1}, IntervalTriple{2, 1, 2}, IntervalTriple{1, 2, 1}, IntervalTriple{1, 2, 3},
                    IntervalTriple{0.3, 0.7, 0.2}}) {
        CHECK(std::abs(t_plus_plus(iv) - tpp_oracle(iv.e1, iv.e2, iv.e3)) < 1e-6);
        CHECK(std::abs(t_plus_minus(iv) - tpm_oracle(iv.e1, iv.e2, iv.e3)) < 1e-6);
    }
}

TEST_CASE("marginalization and symmetry") {
    for (auto iv : {IntervalTriple{1, 2, 3}, IntervalTriple{0.1, 5, 0.4}, IntervalTriple{3, 0.01, 3}}) {
        const double sum = t_plus_plus(iv) + t_plus_minus(iv);
        CHECK(std::abs(sum - t_plus_zero(iv)) < 1e-10);
        CHECK(std::abs(sum - 0.5 / std::sqrt(iv.e1 + iv.e2 + iv.e3)) < 1e-10);
        CHECK(std::abs(t_plus_plus(iv) - t_plus_plus({iv.e3, iv.e2, iv.e1})) < 1e-15);
    }
    CHECK(std::abs(t_plus_plus({1, 2, 3}) + t_plus_minus({1, 2, 3}) - 1.0 / (2 * std::sqrt(6.0))) < 1e-15);
    CHECK_THROWS_AS(t_plus_plus({1, 0, 1}), DomainError);
}

TEST_CASE("long middle interval decouples") {
    for (double e2 : {1e4, 1e8}) {
        const double v = t_plus_plus({1, e2, 1});
        CHECK(v * 4 * std::sqrt(e2) == doctest::Approx(1.0).epsilon(2.0 / std::sqrt(e2)));
    }
    CHECK(std::abs(t_plus_plus({1, 100, 1}) - tpp_oracle(1, 100, 1, 8192)) < 1e-6);
}

TEST_CASE("three-constraint identity at equal intervals") {
    for (double eps : {0.5, 1.0, 2.0}) {
        CHECK(std::abs(t_plus_plus_plus_equal(eps) - 1.0 / (4 * std::sqrt(4 * eps))) < 1e-10);
        const std::array<int, 3> s{+1, +1, +1};
        const std::array<double, 4> e{eps, eps, eps, eps};
        CHECK(std::abs(t_plus_plus_plus_equal(eps) - tc_oracle(s, e, 256)) < 1e-6);
    }
}

TEST_CASE("oracle: reflection and time reversal for all short strings") {
    const std::vector<double> intervals{0.7, 1.3, 0.4, 2.1};
    for (std::size_t n = 1; n <= 3; ++n) {
        const std::span<const double> e(intervals.data(), n + 1);
        std::vector<double> e_rev(e.rbegin(), e.rend());
        const int total = n == 1 ? 3 : (n == 2 ? 9 : 27);
        for (int code = 0; code < total; ++code) {
            std::vector<int> c(n);
            int r = code;
            for (auto& s : c) {
                s = r % 3 - 1;
                r /= 3;
            }
            std::vector<int> neg(c), rev(c.rbegin(), c.rend());
            for (auto& s : neg) s = -s;
            const std::size_t panels = n == 3 ? 128 : 512;
            const double base = tc_midpoint(c, e, panels);
            CHECK(std::abs(base - tc_midpoint(neg, e, panels)) < 1e-12);
            CHECK(std::abs(base - tc_midpoint(rev, e_rev, panels)) < 1e-12);
        }
    }
}

TEST_CASE("oracle: unequal three-constraint marginalization") {
    const std::array<double, 4> e{0.5, 1.0, 1.5, 0.8};
    const std::array<int, 3> ppp{+1, +1, +1}, ppm{+1, +1, -1};
    const double lhs = tc_oracle(ppp, e, 256) + tc_oracle(ppm, e, 256);
    CHECK(std::abs(lhs - t_plus_plus({e[0], e[1], e[2] + e[3]})) < 1e-6);
}

TEST_CASE("exact few-projection envelopes") {
    const double eps = 0.7;
    CHECK(gp_exact_envelope(eps, 0.3 * eps, 0) == 1.0);
    CHECK(gp_exact_envelope(eps, 1.0 * eps, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gp_exact_envelope(eps, 1.9 * eps, 1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(gp_exact_envelope(eps, 2.0 * eps, 2) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(gp_exact_envelope(eps, 3.0 * eps * (1 - 1e-15), 2) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    const double t = 2.5 * eps;
    const double arctan_form = 0.25 * (1 + (2 / pi) * std::atan(std::sqrt(eps * (t - 2 * eps) / (eps * t))));
    CHECK(gp_exact_envelope(eps, t, 2) == doctest::Approx(arctan_form).epsilon(1e-13));
    CHECK(gp_exact_envelope(eps, 4.0 * eps, 3) == doctest::Approx(0.25).epsilon(1e-12));
    const Complex g = gp_exact(2.0, eps, 4.0 * eps, 3);
    CHECK(std::abs(g - 0.25 * free_prefactor(2.0, 4.0 * eps)) < 1e-12);
    CHECK_THROWS_AS(gp_exact_envelope(eps, 0.5 * eps, 1), UsageError);
    CHECK_THROWS_AS(gp_exact_envelope(eps, 3.5 * eps, 3), UsageError);
    CHECK_THROWS_AS(gp_exact_envelope(eps, 1.5 * eps, 4), UsageError);
}

TEST_CASE("jump ratios from the closed forms") {
    CHECK(exact_jump_ratio(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(exact_jump_ratio(1) == doctest::Approx(0.5).epsilon(1e-12));
    // 1/3 before the third projection, 1/6 after it
    CHECK(t_plus_plus({1, 1, 1}) * std::sqrt(3.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    CHECK(t_plus_minus({1, 1, 1}) * std::sqrt(3.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
    CHECK_THROWS_AS(exact_jump_ratio(2), UsageError);
}

TEST_CASE("time-averaged identities") {
    CHECK(std::abs(time_averaged_factor(1) - 0.5) < 1e-14);
    CHECK(std::abs(time_averaged_factor(2) - 1.0 / 3.0) < 1e-4);
    const Complex g = time_averaged_product(1.5, 2.0, 2);
    CHECK(std::abs(g - free_prefactor(1.5, 2.0) / 3.0) < 1e-4);
    CHECK(time_averaged_factor(2, 400) == time_averaged_factor(2, 400));
    CHECK_THROWS_AS(time_averaged_factor(3), UsageError);
}

TEST_CASE("first-order fluctuation term averages out") {
    CHECK(std::abs(ordered_time_shift(1, 1)) < 1e-12);
    CHECK(std::abs(ordered_time_shift(2, 1)) < 1e-6);
    CHECK(std::abs(ordered_time_shift(2, 2)) < 1e-6);
    CHECK(std::abs(ordered_time_shift(2, 1) + ordered_time_shift(2, 2)) < 1e-6);
    CHECK_THROWS_AS(ordered_time_shift(2, 3), UsageError);
}
