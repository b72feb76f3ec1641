#include "rds/selftest.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "rds/attractor.hpp"
#include "rds/cocycle.hpp"
#include "rds/lyapunov.hpp"
#include "rds/maps.hpp"
#include "rds/noise.hpp"
#include "rds/oracle.hpp"

namespace rds {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Statistical checks here use a wide band so the sweep is seed-robust.
constexpr double kSelfTestSigmas = 5.0;

struct Inputs {
    std::mt19937_64 rng;

    double magnitude(double lo_log10, double hi_log10)
    {
        std::uniform_real_distribution<double> e(lo_log10, hi_log10);
        return std::pow(10.0, e(rng));
    }
    double signed_magnitude(double lo_log10, double hi_log10)
    {
        const double m = magnitude(lo_log10, hi_log10);
        return (rng() & 1U) ? m : -m;
    }
    NoiseAtom atom(std::int64_t max_k)
    {
        std::uniform_int_distribution<std::int64_t> k(2, max_k);
        return NoiseAtom(k(rng));
    }
};

SelfTestResult check_round_trip(Inputs& in)
{
    SelfTestResult r{"map round trip f(g(z)) = z and g(f(z)) = z", true, ""};
    for (int i = 0; i < 10000; ++i) {
        const double z = in.signed_magnitude(-8.0, 6.0);
        const NoiseAtom xi = in.atom(60);
        const double tol = 1e-9 * std::max(1.0, std::fabs(z));
        const double fg = f_eval(g_eval(ExtReal::finite(z), xi, kInf), xi).to_double();
        const double gf = g_eval(f_eval(ExtReal::finite(z), xi), xi, kInf).to_double();
        if (std::fabs(fg - z) > tol || std::fabs(gf - z) > tol) {
            std::ostringstream os;
            os << "z=" << z << " k=" << xi.exponent << " f(g)=" << fg << " g(f)=" << gf;
            r.passed = false;
            r.detail = os.str();
            return r;
        }
    }
    return r;
}

SelfTestResult check_monotone_odd(Inputs& in)
{
    SelfTestResult r{"strict monotonicity and oddness of g and f", true, ""};
    auto fail = [&](const char* what, double a, double b, NoiseAtom xi) {
        std::ostringstream os;
        os << what << ": a=" << a << " b=" << b << " k=" << xi.exponent;
        r.passed = false;
        r.detail = os.str();
    };
    for (int i = 0; i < 10000; ++i) {
        const NoiseAtom xi = in.atom(40);
        // Every third pair straddles the g kink 2 xi, every third the f kink xi.
        const double kink = std::ldexp(1.0, static_cast<int>((i % 3 == 1 ? 1 : 0) - xi.exponent));
        double a = in.signed_magnitude(-14.0, 3.0);
        double b = in.signed_magnitude(-14.0, 3.0);
        if (i % 3 != 0) {
            a = kink * (1.0 - 1e-3 * in.magnitude(-3.0, 0.0));
            b = kink * (1.0 + 1e-3 * in.magnitude(-3.0, 0.0));
        }
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        const ExtReal za = ExtReal::finite(a);
        const ExtReal zb = ExtReal::finite(b);
        if (!(g_eval(za, xi, kInf) < g_eval(zb, xi, kInf))) {
            fail("g not increasing", a, b, xi);
            return r;
        }
        // The outer f branch rounds y + 2 - xi, so inputs closer than a few
        // ulps of |y| + 2 may share an image.
        const double top = std::max(std::fabs(a), std::fabs(b)) + 2.0;
        const double resolution = 4.0 * (std::nextafter(top, kInf) - top);
        const ExtReal fa = f_eval(za, xi);
        const ExtReal fb = f_eval(zb, xi);
        if (fb < fa || (b - a > resolution && !(fa < fb))) {
            fail("f not increasing", a, b, xi);
            return r;
        }
        if (g_eval(-za, xi) != -g_eval(za, xi) || f_eval(-za, xi) != -f_eval(za, xi)) {
            fail("oddness", a, b, xi);
            return r;
        }
    }
    return r;
}

SelfTestResult check_lemmas(std::uint64_t seed)
{
    SelfTestResult r{"doubling and pre-escape lemmas along G orbits", true, ""};
    std::int64_t steps = 0;
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const NoisePath path(sample_seed(seed, i));
        const auto audit = divergence_audit(forward_orbit(Family::G, path, 0.1, 100), path);
        steps += audit.steps_checked;
        if (audit.violations != 0) {
            r.passed = false;
            r.detail = "violation on sample " + std::to_string(i) + " at step " +
                       std::to_string(*audit.first_violation);
            return r;
        }
    }
    r.detail = std::to_string(steps) + " steps checked";
    return r;
}

SelfTestResult check_cocycle(Inputs& in, std::uint64_t seed)
{
    SelfTestResult r{"cocycle law and F/G duality", true, ""};
    std::uniform_int_distribution<std::int64_t> len(0, 40);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const NoisePath path(sample_seed(seed ^ 0xc0c0ULL, i));
        const double z0 = in.signed_magnitude(-6.0, 1.0);
        const std::int64_t s = len(in.rng);
        const std::int64_t t = len(in.rng);
        for (Family fam : {Family::G, Family::F}) {
            if (!cocycle_check(fam, path, z0, s, t)) {
                r.passed = false;
                r.detail = "cocycle failed for family " + std::string(to_string(fam));
                return r;
            }
        }
        // Each F-pullback step is undone by one backward step on the same atom.
        // Whole-orbit recovery is ill-conditioned where F contracts, so the
        // check is per step.
        const std::int64_t n = len(in.rng);
        const double x = in.signed_magnitude(-3.0, 1.0);
        const auto orbit = forward_orbit(Family::F, path.shift(-n), x, n);
        if (pullback_state(Family::F, path, x, n) != orbit.states.back()) {
            r.passed = false;
            r.detail = "pullback differs from shifted forward orbit";
            return r;
        }
        for (std::int64_t j = 1; j <= n; ++j) {
            const auto& before = orbit.states[static_cast<std::size_t>(j - 1)];
            const auto& after = orbit.states[static_cast<std::size_t>(j)];
            const ExtReal back = backward_orbit(Family::F, path.shift(j - n), after, 1).back();
            const double tol = 1e-9 * std::max(1.0, std::fabs(before.to_double()));
            if (std::fabs(subtract(back, before).to_double()) > tol) {
                r.passed = false;
                r.detail = "duality failed at step " + std::to_string(j) + " of " + std::to_string(n);
                return r;
            }
        }
    }
    return r;
}

SelfTestResult check_fixed_point_exponents(std::uint64_t seed)
{
    SelfTestResult r{"exact Lyapunov exponents at the fixed point", true, ""};
    for (std::int64_t n : {1, 10, 1000}) {
        for (Family fam : {Family::G, Family::F}) {
            const auto summary = lyapunov_ensemble(fam, 0.0, n, 20, seed);
            if (summary.min != exact_exponent(fam) || summary.max != exact_exponent(fam) ||
                summary.mean != exact_exponent(fam)) {
                r.passed = false;
                r.detail = "family " + std::string(to_string(fam)) + " n=" + std::to_string(n);
                return r;
            }
        }
    }
    return r;
}

SelfTestResult check_sampler(std::uint64_t seed)
{
    SelfTestResult r{"dyadic sampler tail P(k >= j) = 1/(j-1)", true, ""};
    constexpr std::int64_t kSamples = 100000;
    std::array<std::int64_t, 11> at_least{};
    for (std::int64_t i = 0; i < kSamples; ++i) {
        const auto k = noise_at(seed, i).exponent;
        for (std::int64_t j = 2; j <= 10; ++j) {
            at_least[static_cast<std::size_t>(j)] += k >= j ? 1 : 0;
        }
    }
    for (std::int64_t j = 2; j <= 10; ++j) {
        const double p = tail_probability(j).value();
        const double phat = static_cast<double>(at_least[static_cast<std::size_t>(j)]) / kSamples;
        const double sigma = std::sqrt(p * (1 - p) / kSamples);
        if (std::fabs(phat - p) > kSelfTestSigmas * sigma + 1e-15) {
            r.passed = false;
            r.detail = "j=" + std::to_string(j) + " phat=" + std::to_string(phat);
            return r;
        }
    }
    return r;
}

SelfTestResult check_survival(std::uint64_t seed)
{
    SelfTestResult r{"survival bound P(|Z_n| < 1) <= k/(k+n)", true, ""};
    const std::array<std::int64_t, 3> checkpoints{10, 100, 1000};
    const auto curve = survival_curve(4, 0.125, checkpoints, 20000, seed);
    for (const auto& row : curve.rows) {
        if (row.p_below_one.value > row.bound.value() + kSelfTestSigmas * row.p_below_one.std_error) {
            r.passed = false;
            r.detail = "n=" + std::to_string(row.n) + " phat=" + std::to_string(row.p_below_one.value);
            return r;
        }
    }
    return r;
}

}  // namespace

std::vector<SelfTestResult> run_selftest(std::uint64_t seed)
{
    Inputs in{std::mt19937_64(seed)};
    std::vector<SelfTestResult> out;
    out.push_back(check_round_trip(in));
    out.push_back(check_monotone_odd(in));
    out.push_back(check_lemmas(seed));
    out.push_back(check_cocycle(in, seed));
    out.push_back(check_fixed_point_exponents(seed));
    out.push_back(check_sampler(seed));
    out.push_back(check_survival(seed));
    return out;
}

}  // namespace rds
