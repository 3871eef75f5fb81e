// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_GLUE_HPP
#define PLEXUS_GLUE_HPP

#include <optional>
#include <vector>

#include "plexus/comm.hpp"
#include "plexus/mesh.hpp"

namespace plexus
{

// A whole mesh in one serial plex with a canonical numbering: cells by global cell id,
// then vertices by global vertex id, then each interpolated stratum in creation order with
// its points ordered by (owner rank, owner point).
struct GlobalMesh
{
  PolytopeType cell_type = PolytopeType::unknown;
  int dim = 0;
  Plex plex;
  std::vector<double> coords;
  GlobalIndex num_cells = 0;
  GlobalIndex num_vertices = 0;
};

// Collective. Global number of every local point under the numbering above.
std::vector<GlobalIndex> GlobalPointNumbers(const DistributedMesh &mesh, Communicator &comm);

// Collective. Assembles the glued mesh on `root` (std::nullopt elsewhere). Requires every
// global vertex to be referenced by some cell.
std::optional<GlobalMesh> GatherGlobalMesh(const DistributedMesh &mesh, Communicator &comm,
                                           int root = 0);

}  // namespace plexus

#endif  // PLEXUS_GLUE_HPP
