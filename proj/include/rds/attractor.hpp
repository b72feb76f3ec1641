#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "rds/cocycle.hpp"
#include "rds/ext_real.hpp"
#include "rds/maps.hpp"
#include "rds/noise.hpp"
#include "rds/oracle.hpp"

namespace rds {

/// Width of reported confidence intervals, in standard errors.
inline constexpr double kConfidenceSigmas = 3.0;

/// Monte Carlo scalar: point value with its standard error.
struct Estimate {
    std::int64_t samples = 0;
    double value = 0.0;
    double std_error = 0.0;

    [[nodiscard]] double half_width() const noexcept { return kConfidenceSigmas * std_error; }

    /// Binomial proportion successes/trials with sqrt(p(1-p)/N) error.
    static Estimate binomial(std::int64_t successes, std::int64_t trials);
};

struct SurvivalRow {
    std::int64_t n = 0;
    Estimate p_below_one;
    Rational bound;
};

/// Empirical P(|Z_n| < 1) for G orbits from z0, next to the bound k/(k+n).
struct SurvivalCurve {
    std::int64_t k = 0;
    double z0 = 0.0;
    std::vector<SurvivalRow> rows;
};

/// Checkpoints must be strictly increasing and >= 0; requires k >= 2,
/// |z0| > 2^-k and N >= 1 (std::invalid_argument otherwise). Sample i
/// follows NoisePath(sample_seed(seed, i)).
SurvivalCurve survival_curve(std::int64_t k, double z0, std::span<const std::int64_t> checkpoints,
                             std::int64_t samples, std::uint64_t seed, int workers = 1);

enum class Lemma : std::uint8_t {
    Doubling,   ///< |Z_{m-1}| >= 1  =>  |Z_m| >= 4|Z_{m-1}| - 2
    PreEscape,  ///< |Z_m| < 1       =>  |Z_{m-1}| <= 4 xi_m
};

struct DivergenceAudit {
    std::int64_t steps_checked = 0;
    std::int64_t violations = 0;
    std::optional<std::int64_t> first_violation;
    std::optional<Lemma> first_violation_lemma;
    std::optional<std::int64_t> first_at_least_one;
};

/// Checks both pathwise G lemmas at every step of `orbit`, which must have
/// been produced from `path`. Throws std::invalid_argument for F orbits.
DivergenceAudit divergence_audit(const Orbit& orbit, const NoisePath& path);

/// phi_n(theta_{-n} omega, R) - phi_n(theta_{-n} omega, -R) for family F;
/// two endpoints suffice because the maps are increasing.
ExtReal pullback_diameter(const NoisePath& path, double radius, std::int64_t n);

struct PullbackRow {
    std::int64_t n = 0;
    Estimate p_exceed;
    double median_diameter = 0.0;
};

struct PullbackDiameterCurve {
    double radius = 0.0;
    double epsilon = 0.0;
    std::vector<PullbackRow> rows;
};

/// Empirical P(diameter of the F-pullback image of [-R, R] > eps).
PullbackDiameterCurve pullback_diameter_curve(double radius, double epsilon,
                                              std::span<const std::int64_t> checkpoints,
                                              std::int64_t samples, std::uint64_t seed, int workers = 1);

/// Forward-G counterpart of the pullback curve: P(g-orbit from eps/2 is
/// still below R at step n). Equal in law to the pullback exceedance
/// P(diameter > eps), since the F-pullback is inverted by a forward
/// g-composition on exchangeable atoms.
std::vector<Estimate> dual_forward_curve(double radius, double epsilon,
                                         std::span<const std::int64_t> checkpoints,
                                         std::int64_t samples, std::uint64_t seed, int workers = 1);

struct ProbeResult {
    bool holds = true;
    /// First step at which the inequality failed.
    std::optional<std::int64_t> failed_at;
    std::int64_t steps = 0;
};

/// Does |phi_m(omega, y) - phi_m(omega, x)| <= beta e^{mu m} hold for every
/// m in 0..n? Requires mu < 0, beta in (0, 1), n >= 1.
ProbeResult stable_set_probe(Family family, const NoisePath& path, double x, double y,
                             double mu, double beta, std::int64_t n);

struct UnstableProbeReport {
    /// True once some |x_m| > beta e^{-mu m}, certifying x0 is outside U.
    bool exited = false;
    std::optional<std::int64_t> exit_step;
    std::int64_t steps = 0;
};

/// Walks the backward orbit of x0 towards the fixed point A = 0.
/// Requires mu > 0, beta in (0, 1), n >= 1.
UnstableProbeReport unstable_set_probe(Family family, const NoisePath& path, double x0,
                                       double mu, double beta, std::int64_t n);

}  // namespace rds
