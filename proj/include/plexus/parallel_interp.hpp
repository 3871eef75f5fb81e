// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_PARALLEL_INTERP_HPP
#define PLEXUS_PARALLEL_INTERP_HPP

#include <utility>

#include "plexus/comm.hpp"
#include "plexus/mesh.hpp"

namespace plexus
{

// Owner of every local point according to the SF: the root for leaves, (rank, p) otherwise.
std::vector<RemotePoint> PointOwners(const Plex &plex, const StarForest &sf, int rank);

// Collective. Interpolates each rank's cells + vertices plex independently and extends the
// point SF to the new edges and faces. A new point whose vertices are all shared is a
// candidate; candidates are matched across ranks by the set of their vertices' owners at
// the rank owning the smallest such vertex, and a facet present on several ranks is given
// to the lowest of them. `dim` is the cell dimension (needed by ranks without cells).
std::pair<Plex, StarForest> InterpolateParallel(const Plex &plex, const StarForest &point_sf,
                                                int dim, Communicator &comm);

// Collective. Makes the cones of shared edges and faces agree with their owner's copy:
// for every SF leaf p -> root q, cone slot i of p maps to cone slot i of q. Non-owners
// rotate or flip their cones (matching the first two slots) and compensate the
// orientations stored in the supports. Requires the SF to cover edges and faces already.
Plex SynchronizeConeOrientations(const Plex &plex, const StarForest &point_sf,
                                 Communicator &comm);

// InterpolateParallel followed by SynchronizeConeOrientations on a distributed mesh.
void InterpolateMesh(DistributedMesh &mesh, Communicator &comm);

}  // namespace plexus

#endif  // PLEXUS_PARALLEL_INTERP_HPP
