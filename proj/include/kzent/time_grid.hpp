#pragma once

#include <vector>

namespace kzent {

/// Inclusive grid of `points` equally spaced instants from start to stop.
struct TimeGrid {
    double start = 0.0;
    double stop = 1.0;
    int points = 201;

    /// Throws ConfigError unless points >= 1, stop > start when points > 1,
    /// and start >= 0.
    void validate() const;
    /// Endpoints are reproduced exactly.
    [[nodiscard]] std::vector<double> values() const;
};

}  // namespace kzent
