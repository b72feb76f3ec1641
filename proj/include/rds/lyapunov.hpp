#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rds/maps.hpp"
#include "rds/noise.hpp"

namespace rds {

/// The orbit left every bounded region before the requested horizon.
class EscapedOrbit : public std::runtime_error {
public:
    EscapedOrbit(std::int64_t step, int sign);
    [[nodiscard]] std::int64_t step() const noexcept { return step_; }
    [[nodiscard]] int sign() const noexcept { return sign_; }

private:
    std::int64_t step_;
    int sign_;
};

/// (1/n) sum_{m=1}^{n} ln|D map(Z_{m-1}, xi_m)|, natural-log units per step.
/// Every slope is a power of two, so the sum is an exact integer times ln 2.
struct LyapunovEstimate {
    std::int64_t steps = 0;
    std::int64_t log2_sum = 0;

    [[nodiscard]] double value() const noexcept;
};

/// Throws std::invalid_argument if n < 1 and EscapedOrbit if the orbit
/// escapes before step n.
LyapunovEstimate finite_time_lyapunov(Family family, const NoisePath& path, double z0, std::int64_t n);

/// Finite-time exponents over independent sample paths.
struct LyapunovSummary {
    std::vector<LyapunovEstimate> samples;
    double mean = 0.0;
    double std_error = 0.0;
    double min = 0.0;
    double max = 0.0;
};

/// Sample i uses NoisePath(sample_seed(seed, i)).
LyapunovSummary lyapunov_ensemble(Family family, double z0, std::int64_t steps,
                                  std::int64_t paths, std::uint64_t seed, int workers = 1);

struct IntegrabilityCheckpoint {
    std::int64_t samples = 0;
    double running_mean = 0.0;
    double truncated_mean = 0.0;
    double truncated_std_error = 0.0;
};

/// Heavy-tail diagnostic for ln^+ sup_{[-1,1]} |D map(., xi)|.
///
/// Sample i (1-based) reads the atom at index i of NoisePath(seed). The
/// truncated mean is (1/N) sum X_i 1{k_i <= K0}, whose expectation is
/// `analytic_truncated`. `fixed_point_log_moment` is ln^+|D map(0, .)|,
/// constant across atoms.
struct IntegrabilityReport {
    Family family = Family::G;
    std::int64_t samples = 0;
    std::int64_t truncation = 0;
    std::vector<IntegrabilityCheckpoint> checkpoints;
    double analytic_truncated = 0.0;
    double fixed_point_log_moment = 0.0;

    [[nodiscard]] const IntegrabilityCheckpoint& final() const { return checkpoints.back(); }
};

/// Checkpoints are 10^3, 10^4, 10^5 (those below N) and N itself.
/// Throws std::invalid_argument if N < 1 or K0 < 2.
IntegrabilityReport integrability_diagnostic(Family family, std::int64_t samples, std::int64_t truncation,
                                             std::uint64_t seed, int workers = 1);

/// ln^+ of the sup of |D map| on [-1, 1] for one atom.
double log_sup_derivative(Family family, NoiseAtom xi) noexcept;

}  // namespace rds
