#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "rds/cocycle.hpp"
#include "rds/lyapunov.hpp"
#include "rds/oracle.hpp"

using rds::Family;
using rds::NoiseAtom;
using rds::NoisePath;

TEST_CASE("exponents at the fixed point are exact")
{
    for (std::int64_t n : {1, 10, 1000}) {
        for (std::uint64_t s = 0; s < 100; ++s) {
            const NoisePath path(rds::sample_seed(1, s));
            const auto g = rds::finite_time_lyapunov(Family::G, path, 0.0, n);
            const auto f = rds::finite_time_lyapunov(Family::F, path, 0.0, n);
            REQUIRE(g.value() == -std::numbers::ln2);
            REQUIRE(f.value() == std::numbers::ln2);
            REQUIRE(g.value() + f.value() == 0.0);
            REQUIRE(g.log2_sum == -n);
        }
    }
}

TEST_CASE("three outer-branch steps from 1 with xi = 1/4")
{
    // 1 -> 2.25 -> 7.25 -> 27.25, slope 4 at every step.
    const std::vector<std::int64_t> ks{2, 2, 2};
    const NoisePath path = NoisePath::scripted(0, 1, ks);
    const auto est = rds::finite_time_lyapunov(Family::G, path, 1.0, 3);
    CHECK(est.log2_sum == 6);
    CHECK(est.value() == doctest::Approx(std::log(4.0)).epsilon(1e-15));
    const auto orbit = rds::forward_orbit(Family::G, path, 1.0, 3);
    CHECK(orbit.states[1].to_double() == 2.25);
    CHECK(orbit.states[2].to_double() == 7.25);
    CHECK(orbit.states[3].to_double() == 27.25);
}

TEST_CASE("escape before the horizon is an error")
{
    const NoisePath path(3);
    try {
        (void)rds::finite_time_lyapunov(Family::G, path, 0.3, 1000);
        FAIL("expected EscapedOrbit");
    } catch (const rds::EscapedOrbit& e) {
        CHECK(e.step() >= 1);
        CHECK(e.step() < 1000);
        CHECK(e.sign() == 1);
    }
    CHECK_THROWS_AS(rds::finite_time_lyapunov(Family::G, path, 0.0, 0), std::invalid_argument);
}

TEST_CASE("ensemble summary at the fixed point has zero spread")
{
    const auto s = rds::lyapunov_ensemble(Family::G, 0.0, 1000, 100, 7);
    CHECK(s.samples.size() == 100);
    CHECK(s.mean == -std::numbers::ln2);
    CHECK(s.min == s.max);
    CHECK(s.std_error == 0.0);
    const auto t = rds::lyapunov_ensemble(Family::F, 0.0, 1000, 100, 7, 3);
    CHECK(t.mean == std::numbers::ln2);
}

TEST_CASE("sign flip under inversion for arbitrary atom sequences")
{
    for (std::uint64_t s = 0; s < 50; ++s) {
        const NoisePath path(s);
        const auto g = rds::finite_time_lyapunov(Family::G, path, 0.0, 77);
        const auto f = rds::finite_time_lyapunov(Family::F, path, 0.0, 77);
        CHECK(g.log2_sum == -f.log2_sum);
    }
}

TEST_CASE("integrability report layout and analytic values")
{
    const auto two = rds::integrability_diagnostic(Family::G, 10, 2, 1);
    CHECK(two.analytic_truncated == doctest::Approx(std::numbers::ln2));
    CHECK(two.checkpoints.size() == 1);
    CHECK(two.final().samples == 10);
    CHECK(two.fixed_point_log_moment == 0.0);

    const auto r = rds::integrability_diagnostic(Family::G, 200000, 20, 1);
    REQUIRE(r.checkpoints.size() == 4);
    CHECK(r.checkpoints[0].samples == 1000);
    CHECK(r.checkpoints[1].samples == 10000);
    CHECK(r.checkpoints[2].samples == 100000);
    CHECK(r.checkpoints[3].samples == 200000);
    CHECK(r.analytic_truncated == doctest::Approx(2.45910574070985).epsilon(1e-13));
    const auto& last = r.final();
    CHECK(std::fabs(last.truncated_mean - r.analytic_truncated) <= 3 * last.truncated_std_error);
    CHECK(last.running_mean >= last.truncated_mean);

    const auto f = rds::integrability_diagnostic(Family::F, 1000, 20, 1);
    CHECK(f.fixed_point_log_moment == doctest::Approx(std::numbers::ln2));
    CHECK(f.final().running_mean == doctest::Approx(std::numbers::ln2));
    CHECK(f.analytic_truncated == doctest::Approx(std::numbers::ln2 * 19.0 / 20.0));

    CHECK_THROWS_AS(rds::integrability_diagnostic(Family::G, 0, 20, 1), std::invalid_argument);
    CHECK_THROWS_AS(rds::integrability_diagnostic(Family::G, 10, 1, 1), std::invalid_argument);
}

TEST_CASE("running means equal ln 2 times the mean exponent")
{
    const NoisePath path(5);
    const auto r = rds::integrability_diagnostic(Family::G, 1000, 20, 5);
    double sum = 0.0;
    for (std::int64_t i = 1; i <= 1000; ++i) sum += static_cast<double>(path.at(i).exponent);
    CHECK(r.final().running_mean == doctest::Approx(std::numbers::ln2 * sum / 1000).epsilon(1e-12));
}

TEST_CASE("worker count does not change the report")
{
    const auto a = rds::integrability_diagnostic(Family::G, 50000, 20, 9, 1);
    const auto b = rds::integrability_diagnostic(Family::G, 50000, 20, 9, 4);
    REQUIRE(a.checkpoints.size() == b.checkpoints.size());
    for (std::size_t i = 0; i < a.checkpoints.size(); ++i) {
        CHECK(a.checkpoints[i].running_mean == b.checkpoints[i].running_mean);
        CHECK(a.checkpoints[i].truncated_mean == b.checkpoints[i].truncated_mean);
    }
}

TEST_CASE("log sup derivative per atom")
{
    CHECK(rds::log_sup_derivative(Family::G, NoiseAtom(2)) == doctest::Approx(std::log(4.0)));
    CHECK(rds::log_sup_derivative(Family::G, NoiseAtom(40)) == doctest::Approx(40 * std::numbers::ln2));
    CHECK(rds::log_sup_derivative(Family::F, NoiseAtom(40)) == doctest::Approx(std::numbers::ln2));
}
