#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rds/ext_real.hpp"
#include "rds/maps.hpp"
#include "rds/noise.hpp"

namespace rds {

/// Trajectory Z_0, ..., Z_n of one family along a noise path.
///
/// Step m applies the map with the atom at path index m. The log-derivative
/// sum is kept as an exact base-2 exponent; it covers every step whose
/// input state was finite and stops once the orbit escapes.
struct Orbit {
    Family family = Family::G;
    double initial = 0.0;
    std::vector<ExtReal> states;
    std::int64_t log2_deriv_sum = 0;
    std::optional<std::int64_t> escaped_at;

    [[nodiscard]] std::int64_t steps() const noexcept
    {
        return static_cast<std::int64_t>(states.size()) - 1;
    }
    /// Sum of ln|D| along the orbit.
    [[nodiscard]] double log_deriv_sum() const noexcept;
};

/// One step of the cocycle: the map with atom `xi` applied to `z`.
inline ExtReal step(Family family, const ExtReal& z, NoiseAtom xi) { return apply(family, z, xi); }

/// phi_n(omega, z0), recording every state. Throws std::invalid_argument if n < 0.
Orbit forward_orbit(Family family, const NoisePath& path, double z0, std::int64_t n);

/// Final state of `forward_orbit` without storing the trajectory.
ExtReal forward_state(Family family, const NoisePath& path, const ExtReal& z0, std::int64_t n);

/// phi_n(theta_{-n} omega, z0): atoms at indices -n+1, ..., 0 in increasing order.
ExtReal pullback_state(Family family, const NoisePath& path, const ExtReal& z0, std::int64_t n);
ExtReal pullback_state(Family family, const NoisePath& path, double z0, std::int64_t n);

/// Checks phi_{s+t}(omega, x) == phi_t(theta_s omega, phi_s(omega, x)) to 1e-9
/// relative tolerance.
bool cocycle_check(Family family, const NoisePath& path, double z0, std::int64_t s, std::int64_t t);

/// Skew product Theta_1: (theta_1 omega, phi_1(omega, z)).
std::pair<NoisePath, ExtReal> skew_step(Family family, const NoisePath& path, const ExtReal& z);

/// The unique backward orbit x_0 = x0, x_m = phi_1(theta_{-m} omega, .)^{-1}(x_{m-1}),
/// i.e. the inverse family with atoms at indices 0, -1, ..., 1-n.
std::vector<ExtReal> backward_orbit(Family family, const NoisePath& path, const ExtReal& x0, std::int64_t n);
std::vector<ExtReal> backward_orbit(Family family, const NoisePath& path, double x0, std::int64_t n);

}  // namespace rds
