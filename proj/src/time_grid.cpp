#include "kzent/time_grid.hpp"

#include "kzent/errors.hpp"

#include <cmath>

namespace kzent {

void TimeGrid::validate() const
{
    if (points < 1) throw ConfigError("grid needs at least one point");
    if (!std::isfinite(start) || !std::isfinite(stop)) throw ConfigError("grid bounds must be finite");
    if (start < 0.0) throw ConfigError("grid start must be >= 0 (elapsed time)");
    if (points > 1 && !(stop > start)) throw ConfigError("grid stop must exceed start");
}

std::vector<double> TimeGrid::values() const
{
    validate();
    std::vector<double> out(static_cast<std::size_t>(points));
    if (points == 1) {
        out[0] = start;
        return out;
    }
    const double step = (stop - start) / (points - 1);
    for (int i = 0; i < points; ++i) out[static_cast<std::size_t>(i)] = start + i * step;
    out.back() = stop;
    return out;
}

}  // namespace kzent
