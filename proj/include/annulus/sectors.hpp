#pragma once
#include "annulus/directions.hpp"
#include "annulus/field.hpp"
#include "annulus/profiles.hpp"

namespace annulus {

// Angular sector cutoff Q^{theta,j}: symbol zeta(2^j (xi/|xi| - theta)).
Field sector_cutoff(const Field& f, const DirectionSet& set, int theta_index);

// Radial block Q^{theta,j}_n: zeta-normalized-square partition weight times
// phi_partition(2^j |xi| - n).
Field sector_radial_block(const Field& f, const DirectionSet& set,
                          int theta_index, int n);

// Plate block P^{theta,j}_l: zeta_wide(2^j (xi/|xi| - theta)) *
// phi_partition(2^{2j} |xi| - l).
Field sector_plate_block(const Field& f, const DirectionSet& set,
                         int theta_index, int l);

// Symbol of Q^{theta,j} evaluated directly (shared with tests).
double sector_symbol(const DirectionSet& set, int theta_index,
                     const std::array<double, 3>& xi);

// Partition weight zeta(..theta..) / sum_theta' zeta(..theta'..)^2 at xi.
double sector_partition_weight(const DirectionSet& set, int theta_index,
                               const std::array<double, 3>& xi);

}  // namespace annulus
