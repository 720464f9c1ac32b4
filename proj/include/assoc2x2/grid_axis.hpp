#ifndef ASSOC2X2_GRID_AXIS_HPP
#define ASSOC2X2_GRID_AXIS_HPP

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace assoc2x2 {

/// Number of steps across [-half_width, half_width]; 2 * half_width / step
/// must be an integer (to 1e-9 relative) so that both endpoints lie on the grid.
inline std::size_t grid_intervals(double half_width, double step) {
    if (!std::isfinite(half_width) || !(half_width > 0.0)) {
        throw std::invalid_argument("grid half-width must be finite and positive");
    }
    if (!std::isfinite(step) || !(step > 0.0)) {
        throw std::invalid_argument("grid step must be finite and positive");
    }
    if (step > 2.0 * half_width) {
        throw std::invalid_argument("grid step exceeds the grid extent");
    }
    const double ratio = 2.0 * half_width / step;
    const double rounded = std::round(ratio);
    if (std::fabs(ratio - rounded) > 1e-9 * rounded) {
        throw std::invalid_argument("2 * half-width must be an integer multiple of the step");
    }
    return static_cast<std::size_t>(rounded);
}

/// Grid points (2i - n) * step / 2, i = 0..n. Exactly symmetric about zero.
inline std::vector<double> grid_axis(double half_width, double step) {
    const std::size_t n = grid_intervals(half_width, step);
    std::vector<double> axis(n + 1);
    const double half_step = 0.5 * step;
    for (std::size_t i = 0; i <= n; ++i) {
        axis[i] = (2.0 * static_cast<double>(i) - static_cast<double>(n)) * half_step;
    }
    return axis;
}

} // namespace assoc2x2

#endif // ASSOC2X2_GRID_AXIS_HPP
