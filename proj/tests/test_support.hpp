#pragma once

#include "kzent/dia_dynamics.hpp"
#include "kzent/domain_sampler.hpp"

#include <cstdint>

namespace kzent::testing {

/// Frozen-domain configuration on the Ising defaults, starting `offset` after
/// the freeze-out, with the ensemble drawn at the given targets.
inline DiaConfig make_dia(int n, double g, double h0, double v, double offset, double m0z, double mdz,
                          std::uint64_t seed = 1)
{
    DiaConfig d;
    d.N = n;
    d.g = g;
    d.schedule.h0 = h0;
    d.schedule.v = v;
    d.t0 = freeze_out_time(d.schedule) + offset;
    d.partition = domain_partition(n, d.schedule);
    d.ensemble = sample_initial_directions(d.partition.n_d, m0z, mdz, seed);
    return d;
}

}  // namespace kzent::testing
