// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_CONSTRUCT_HPP
#define PLEXUS_CONSTRUCT_HPP

#include <span>

#include "plexus/comm.hpp"
#include "plexus/mesh.hpp"

namespace plexus
{

// Collective. Builds the rank's cells + vertices plex from its raw chunk: the referenced
// global vertices are sorted into the local vertex numbering, coordinates are broadcast
// from the vertex layout owners, and the point SF is formed by giving every shared vertex
// to the highest sharing rank.
DistributedMesh BuildDistributedPlex(const RawMesh &raw, Communicator &comm);

// As above for an arbitrary set of cells with explicit global ids (rows of `topology`);
// `geometry` is this rank's chunk of `vertex_layout`.
DistributedMesh BuildDistributedPlex(PolytopeType cell_type, int dim,
                                     std::span<const GlobalIndex> topology,
                                     std::span<const GlobalIndex> cell_gids,
                                     GlobalIndex num_global_cells, const Layout &vertex_layout,
                                     std::span<const double> geometry, Communicator &comm);

}  // namespace plexus

#endif  // PLEXUS_CONSTRUCT_HPP
