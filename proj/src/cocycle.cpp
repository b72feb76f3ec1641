#include "rds/cocycle.hpp"

#include <numbers>
#include <string>
#include <stdexcept>

namespace rds {

namespace {

void require_steps(std::int64_t n, const char* what)
{
    if (n < 0) {
        throw std::invalid_argument(std::string(what) + ": step count must be >= 0");
    }
}

std::int64_t checked_add(std::int64_t a, std::int64_t b)
{
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) {
        throw std::overflow_error("log-derivative exponent sum overflowed int64");
    }
    return out;
}

}  // namespace

double Orbit::log_deriv_sum() const noexcept
{
    return static_cast<double>(log2_deriv_sum) * std::numbers::ln2;
}

Orbit forward_orbit(Family family, const NoisePath& path, double z0, std::int64_t n)
{
    require_steps(n, "forward_orbit");
    Orbit orbit;
    orbit.family = family;
    orbit.initial = z0;
    orbit.states.reserve(static_cast<std::size_t>(n) + 1);
    orbit.states.push_back(ExtReal::finite(z0));
    for (std::int64_t m = 1; m <= n; ++m) {
        const ExtReal& prev = orbit.states.back();
        if (prev.is_escaped()) {
            orbit.states.push_back(prev);
            continue;
        }
        const NoiseAtom xi = path.at(m);
        orbit.log2_deriv_sum = checked_add(orbit.log2_deriv_sum, derivative(family, prev, xi).log2);
        ExtReal next = apply(family, prev, xi);
        if (next.is_escaped()) {
            orbit.escaped_at = m;
        }
        orbit.states.push_back(next);
    }
    return orbit;
}

ExtReal forward_state(Family family, const NoisePath& path, const ExtReal& z0, std::int64_t n)
{
    require_steps(n, "forward_state");
    ExtReal z = z0;
    for (std::int64_t m = 1; m <= n && !z.is_escaped() && !z.is_zero(); ++m) {
        z = apply(family, z, path.at(m));
    }
    return z;
}

ExtReal pullback_state(Family family, const NoisePath& path, const ExtReal& z0, std::int64_t n)
{
    require_steps(n, "pullback_state");
    return forward_state(family, path.shift(-n), z0, n);
}

ExtReal pullback_state(Family family, const NoisePath& path, double z0, std::int64_t n)
{
    return pullback_state(family, path, ExtReal::finite(z0), n);
}

bool cocycle_check(Family family, const NoisePath& path, double z0, std::int64_t s, std::int64_t t)
{
    if (s < 0 || t < 0) {
        throw std::invalid_argument("cocycle_check: s and t must be >= 0");
    }
    const ExtReal x = ExtReal::finite(z0);
    const ExtReal direct = forward_state(family, path, x, s + t);
    const ExtReal staged = forward_state(family, path.shift(s), forward_state(family, path, x, s), t);
    return nearly_equal(direct, staged, 1e-9);
}

std::pair<NoisePath, ExtReal> skew_step(Family family, const NoisePath& path, const ExtReal& z)
{
    return {path.shift(1), apply(family, z, path.at(1))};
}

std::vector<ExtReal> backward_orbit(Family family, const NoisePath& path, double x0, std::int64_t n)
{
    return backward_orbit(family, path, ExtReal::finite(x0), n);
}

std::vector<ExtReal> backward_orbit(Family family, const NoisePath& path, const ExtReal& x0, std::int64_t n)
{
    require_steps(n, "backward_orbit");
    const Family inv = inverse(family);
    std::vector<ExtReal> xs;
    xs.reserve(static_cast<std::size_t>(n) + 1);
    xs.push_back(x0);
    for (std::int64_t m = 1; m <= n; ++m) {
        xs.push_back(apply(inv, xs.back(), path.at(1 - m)));
    }
    return xs;
}

}  // namespace rds
