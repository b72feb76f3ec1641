#include "rds/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "rds/cocycle.hpp"
#include "rds/ensemble.hpp"
#include "rds/oracle.hpp"

namespace rds {

EscapedOrbit::EscapedOrbit(std::int64_t step, int sign)
    : std::runtime_error("orbit escaped to " + std::string(sign < 0 ? "-" : "+") +
                         "infinity at step " + std::to_string(step)),
      step_(step),
      sign_(sign)
{
}

double LyapunovEstimate::value() const noexcept
{
    // Ratio first: at the fixed point log2_sum == -+steps, so this is exact.
    return (static_cast<double>(log2_sum) / static_cast<double>(steps)) * std::numbers::ln2;
}

LyapunovEstimate finite_time_lyapunov(Family family, const NoisePath& path, double z0, std::int64_t n)
{
    if (n < 1) {
        throw std::invalid_argument("finite_time_lyapunov: n must be >= 1");
    }
    ExtReal z = ExtReal::finite(z0);
    LyapunovEstimate est;
    est.steps = n;
    for (std::int64_t m = 1; m <= n; ++m) {
        if (z.is_escaped()) {
            throw EscapedOrbit(m - 1, z.sign());
        }
        const NoiseAtom xi = path.at(m);
        if (__builtin_add_overflow(est.log2_sum, derivative(family, z, xi).log2, &est.log2_sum)) {
            throw std::overflow_error("finite_time_lyapunov: exponent sum overflowed int64");
        }
        z = apply(family, z, xi);
    }
    return est;
}

LyapunovSummary lyapunov_ensemble(Family family, double z0, std::int64_t steps,
                                  std::int64_t paths, std::uint64_t seed, int workers)
{
    if (paths < 1) {
        throw std::invalid_argument("lyapunov_ensemble: need at least one path");
    }
    LyapunovSummary out;
    out.samples = parallel_ensemble(paths, workers, [&](std::int64_t i) {
        return finite_time_lyapunov(family, NoisePath(sample_seed(seed, static_cast<std::uint64_t>(i))), z0, steps);
    });

    // Mean from the integer exponent total, spread from the per-path values.
    std::int64_t total = 0;
    for (const auto& s : out.samples) {
        if (__builtin_add_overflow(total, s.log2_sum, &total)) {
            throw std::overflow_error("lyapunov_ensemble: exponent total overflowed int64");
        }
    }
    out.mean = (static_cast<double>(total) / (static_cast<double>(steps) * static_cast<double>(paths))) *
               std::numbers::ln2;
    out.min = out.max = out.samples.front().value();
    double sq = 0.0;
    for (const auto& s : out.samples) {
        const double v = s.value();
        out.min = std::min(out.min, v);
        out.max = std::max(out.max, v);
        sq += (v - out.mean) * (v - out.mean);
    }
    if (paths > 1) {
        out.std_error = std::sqrt(sq / static_cast<double>(paths - 1) / static_cast<double>(paths));
    }
    return out;
}

double log_sup_derivative(Family family, NoiseAtom xi) noexcept
{
    // On [-1, 1] the outer branch is always reached (2 xi <= 1/2), so the
    // sup slope is 2^k for G and the inner slope 2 for F.
    if (family == Family::G) {
        return c1_seminorms(xi).sup_deriv_log;
    }
    return std::numbers::ln2;
}

IntegrabilityReport integrability_diagnostic(Family family, std::int64_t samples, std::int64_t truncation,
                                             std::uint64_t seed, int workers)
{
    if (samples < 1) {
        throw std::invalid_argument("integrability_diagnostic: N must be >= 1");
    }
    if (truncation < 2) {
        throw std::invalid_argument("integrability_diagnostic: K0 must be >= 2");
    }
    IntegrabilityReport report;
    report.family = family;
    report.samples = samples;
    report.truncation = truncation;
    report.fixed_point_log_moment = family == Family::G ? 0.0 : std::numbers::ln2;
    if (family == Family::G) {
        report.analytic_truncated = truncated_log_moment(truncation);
    } else {
        report.analytic_truncated = std::numbers::ln2 * (1.0 - tail_probability(truncation + 1).value());
    }

    const NoisePath path(seed);
    const auto exponents = parallel_ensemble(samples, workers, [&](std::int64_t i) {
        return path.at(i + 1).exponent;
    });

    std::vector<std::int64_t> marks;
    for (std::int64_t c = 1000; c < samples; c *= 10) {
        if (c <= 100000) marks.push_back(c);
    }
    marks.push_back(samples);

    double sum = 0.0;
    double trunc_sum = 0.0;
    double trunc_sq = 0.0;
    std::size_t next = 0;
    for (std::int64_t i = 0; i < samples; ++i) {
        NoiseAtom xi;
        xi.exponent = exponents[static_cast<std::size_t>(i)];
        const double x = log_sup_derivative(family, xi);
        sum += x;
        if (xi.exponent <= truncation) {
            trunc_sum += x;
            trunc_sq += x * x;
        }
        if (i + 1 == marks[next]) {
            const auto n = static_cast<double>(i + 1);
            IntegrabilityCheckpoint cp;
            cp.samples = i + 1;
            cp.running_mean = sum / n;
            cp.truncated_mean = trunc_sum / n;
            if (i > 0) {
                const double var = std::max(0.0, (trunc_sq - n * cp.truncated_mean * cp.truncated_mean) / (n - 1.0));
                cp.truncated_std_error = std::sqrt(var / n);
            }
            report.checkpoints.push_back(cp);
            ++next;
        }
    }
    return report;
}

}  // namespace rds
