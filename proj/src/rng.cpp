#include "uqd/rng.hpp"

#include <cmath>
#include <numbers>

namespace uqd {

std::pair<double, double> CounterRng::gaussian_pair() noexcept {
    // u1 in (0, 1] so the log is finite.
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    return {radius * std::cos(angle), radius * std::sin(angle)};
}

} // namespace uqd
