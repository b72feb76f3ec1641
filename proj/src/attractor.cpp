#include "rds/attractor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rds/ensemble.hpp"

namespace rds {

namespace {

void require_checkpoints(std::span<const std::int64_t> checkpoints, const char* what)
{
    if (checkpoints.empty()) {
        throw std::invalid_argument(std::string(what) + ": no checkpoints given");
    }
    for (std::size_t i = 0; i < checkpoints.size(); ++i) {
        if (checkpoints[i] < 0 || (i > 0 && checkpoints[i] <= checkpoints[i - 1])) {
            throw std::invalid_argument(std::string(what) + ": checkpoints must be >= 0 and strictly increasing");
        }
    }
}

void require_samples(std::int64_t samples, const char* what)
{
    if (samples < 1) {
        throw std::invalid_argument(std::string(what) + ": sample count must be >= 1");
    }
}

void require_beta(double beta, const char* what)
{
    if (!(beta > 0.0 && beta < 1.0)) {
        throw std::invalid_argument(std::string(what) + ": beta must lie in (0, 1)");
    }
}

NoisePath sample_path(std::uint64_t seed, std::int64_t i)
{
    return NoisePath(sample_seed(seed, static_cast<std::uint64_t>(i)));
}

// Counts, per checkpoint, how many per-sample flag rows are set.
std::vector<std::int64_t> count_flags(const std::vector<std::vector<std::uint8_t>>& flags, std::size_t width)
{
    std::vector<std::int64_t> counts(width, 0);
    for (const auto& row : flags) {
        for (std::size_t c = 0; c < width; ++c) {
            counts[c] += row[c];
        }
    }
    return counts;
}

}  // namespace

Estimate Estimate::binomial(std::int64_t successes, std::int64_t trials)
{
    if (trials < 1 || successes < 0 || successes > trials) {
        throw std::invalid_argument("Estimate::binomial: need 0 <= successes <= trials, trials >= 1");
    }
    Estimate e;
    e.samples = trials;
    e.value = static_cast<double>(successes) / static_cast<double>(trials);
    e.std_error = std::sqrt(e.value * (1.0 - e.value) / static_cast<double>(trials));
    return e;
}

SurvivalCurve survival_curve(std::int64_t k, double z0, std::span<const std::int64_t> checkpoints,
                             std::int64_t samples, std::uint64_t seed, int workers)
{
    if (k < 2) {
        throw std::invalid_argument("survival_curve: k must be >= 2");
    }
    if (!std::isfinite(z0) || ExtReal::finite(z0).compare_abs_pow2(-k) != std::strong_ordering::greater) {
        throw std::invalid_argument("survival_curve: requires |z0| > 2^-k");
    }
    require_checkpoints(checkpoints, "survival_curve");
    require_samples(samples, "survival_curve");

    const std::size_t width = checkpoints.size();
    const auto flags = parallel_ensemble(samples, workers, [&](std::int64_t i) {
        const NoisePath path = sample_path(seed, i);
        std::vector<std::uint8_t> below(width, 0);
        ExtReal z = ExtReal::finite(z0);
        std::int64_t m = 0;
        for (std::size_t c = 0; c < width; ++c) {
            for (; m < checkpoints[c] && !z.is_escaped(); ++m) {
                z = g_eval(z, path.at(m + 1));
            }
            if (z.is_escaped()) {
                break;
            }
            below[c] = z.compare_abs_pow2(0) == std::strong_ordering::less ? 1 : 0;
        }
        return below;
    });

    SurvivalCurve curve;
    curve.k = k;
    curve.z0 = z0;
    const auto counts = count_flags(flags, width);
    for (std::size_t c = 0; c < width; ++c) {
        curve.rows.push_back({checkpoints[c], Estimate::binomial(counts[c], samples), survival_bound(k, checkpoints[c])});
    }
    return curve;
}

DivergenceAudit divergence_audit(const Orbit& orbit, const NoisePath& path)
{
    if (orbit.family != Family::G) {
        throw std::invalid_argument("divergence_audit: the lemmas concern family G orbits");
    }
    DivergenceAudit audit;
    const auto& zs = orbit.states;
    auto record = [&](std::int64_t m, Lemma which) {
        ++audit.violations;
        if (!audit.first_violation) {
            audit.first_violation = m;
            audit.first_violation_lemma = which;
        }
    };
    if (!zs.empty() && zs[0].compare_abs_pow2(0) != std::strong_ordering::less) {
        audit.first_at_least_one = 0;
    }
    for (std::size_t m = 1; m < zs.size(); ++m) {
        const ExtReal& prev = zs[m - 1];
        const ExtReal& cur = zs[m];
        if (prev.is_escaped()) {
            break;
        }
        ++audit.steps_checked;
        const auto step = static_cast<std::int64_t>(m);
        if (!audit.first_at_least_one && cur.compare_abs_pow2(0) != std::strong_ordering::less) {
            audit.first_at_least_one = step;
        }
        if (prev.compare_abs_pow2(0) != std::strong_ordering::less && !cur.is_escaped()) {
            const double lower = 4.0 * std::fabs(prev.to_double()) - 2.0;
            const double guarded = std::nextafter(lower, -std::numeric_limits<double>::infinity());
            if (std::fabs(cur.to_double()) < guarded) {
                record(step, Lemma::Doubling);
            }
        }
        if (cur.compare_abs_pow2(0) == std::strong_ordering::less) {
            const NoiseAtom xi = path.at(step);
            if (prev.compare_abs_pow2(2 - xi.exponent) == std::strong_ordering::greater) {
                record(step, Lemma::PreEscape);
            }
        }
    }
    return audit;
}

ExtReal pullback_diameter(const NoisePath& path, double radius, std::int64_t n)
{
    const ExtReal top = pullback_state(Family::F, path, radius, n);
    // f is odd in floating point too, so the lower endpoint is exactly -top.
    return subtract(top, -top);
}

PullbackDiameterCurve pullback_diameter_curve(double radius, double epsilon,
                                              std::span<const std::int64_t> checkpoints,
                                              std::int64_t samples, std::uint64_t seed, int workers)
{
    if (!(radius > 0.0) || !std::isfinite(radius) || !(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("pullback_diameter_curve: R and eps must be positive and finite");
    }
    require_checkpoints(checkpoints, "pullback_diameter_curve");
    require_samples(samples, "pullback_diameter_curve");

    const std::size_t width = checkpoints.size();
    const auto diameters = parallel_ensemble(samples, workers, [&](std::int64_t i) {
        const NoisePath path = sample_path(seed, i);
        std::vector<ExtReal> row;
        row.reserve(width);
        for (auto n : checkpoints) {
            row.push_back(pullback_diameter(path, radius, n));
        }
        return row;
    });

    PullbackDiameterCurve curve;
    curve.radius = radius;
    curve.epsilon = epsilon;
    const ExtReal eps = ExtReal::finite(epsilon);
    std::vector<ExtReal> column(static_cast<std::size_t>(samples));
    for (std::size_t c = 0; c < width; ++c) {
        std::int64_t exceed = 0;
        for (std::size_t i = 0; i < column.size(); ++i) {
            column[i] = diameters[i][c];
            exceed += column[i] > eps ? 1 : 0;
        }
        std::sort(column.begin(), column.end());
        const std::size_t mid = column.size() / 2;
        const double median = column.size() % 2 == 1
                                  ? column[mid].to_double()
                                  : 0.5 * (column[mid - 1].to_double() + column[mid].to_double());
        curve.rows.push_back({checkpoints[c], Estimate::binomial(exceed, samples), median});
    }
    return curve;
}

std::vector<Estimate> dual_forward_curve(double radius, double epsilon,
                                         std::span<const std::int64_t> checkpoints,
                                         std::int64_t samples, std::uint64_t seed, int workers)
{
    if (!(radius > 0.0) || !std::isfinite(radius) || !(epsilon > 0.0) || !std::isfinite(epsilon)) {
        throw std::invalid_argument("dual_forward_curve: R and eps must be positive and finite");
    }
    require_checkpoints(checkpoints, "dual_forward_curve");
    require_samples(samples, "dual_forward_curve");

    const std::size_t width = checkpoints.size();
    const ExtReal start = ExtReal::finite(epsilon / 2.0);
    const ExtReal level = ExtReal::finite(radius);
    const auto flags = parallel_ensemble(samples, workers, [&](std::int64_t i) {
        const NoisePath path = sample_path(seed, i);
        std::vector<std::uint8_t> below(width, 0);
        ExtReal z = start;
        std::int64_t m = 0;
        for (std::size_t c = 0; c < width; ++c) {
            for (; m < checkpoints[c] && !z.is_escaped(); ++m) {
                z = g_eval(z, path.at(m + 1));
            }
            below[c] = z < level ? 1 : 0;
        }
        return below;
    });
    const auto counts = count_flags(flags, width);
    std::vector<Estimate> out;
    for (std::size_t c = 0; c < width; ++c) {
        out.push_back(Estimate::binomial(counts[c], samples));
    }
    return out;
}

ProbeResult stable_set_probe(Family family, const NoisePath& path, double x, double y,
                             double mu, double beta, std::int64_t n)
{
    if (!(mu < 0.0)) {
        throw std::invalid_argument("stable_set_probe: mu must be negative");
    }
    require_beta(beta, "stable_set_probe");
    if (n < 1) {
        throw std::invalid_argument("stable_set_probe: n must be >= 1");
    }
    const double log_beta = std::log(beta);
    ProbeResult result;
    result.steps = n;
    ExtReal zx = ExtReal::finite(x);
    ExtReal zy = ExtReal::finite(y);
    for (std::int64_t m = 0; m <= n; ++m) {
        if (zx == zy) {
            // Coincident orbits stay coincident.
            return result;
        }
        if (log_abs_difference(zy, zx) > log_beta + mu * static_cast<double>(m)) {
            result.holds = false;
            result.failed_at = m;
            return result;
        }
        if (m < n) {
            const NoiseAtom xi = path.at(m + 1);
            zx = apply(family, zx, xi);
            zy = apply(family, zy, xi);
        }
    }
    return result;
}

UnstableProbeReport unstable_set_probe(Family family, const NoisePath& path, double x0,
                                       double mu, double beta, std::int64_t n)
{
    if (!(mu > 0.0)) {
        throw std::invalid_argument("unstable_set_probe: mu must be positive");
    }
    require_beta(beta, "unstable_set_probe");
    if (n < 1) {
        throw std::invalid_argument("unstable_set_probe: n must be >= 1");
    }
    const double log_beta = std::log(beta);
    const Family backward = inverse(family);
    UnstableProbeReport report;
    report.steps = n;
    ExtReal x = ExtReal::finite(x0);
    for (std::int64_t m = 0; m <= n; ++m) {
        if (x.is_zero()) {
            // The fixed point's backward orbit is identically 0.
            return report;
        }
        if (x.log_abs() > log_beta - mu * static_cast<double>(m)) {
            report.exited = true;
            report.exit_step = m;
            return report;
        }
        if (m < n) {
            x = apply(backward, x, path.at(-m));
        }
    }
    return report;
}

}  // namespace rds
