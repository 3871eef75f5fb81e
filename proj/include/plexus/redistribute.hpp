// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_REDISTRIBUTE_HPP
#define PLEXUS_REDISTRIBUTE_HPP

#include <string>
#include <vector>

#include "plexus/comm.hpp"
#include "plexus/mesh.hpp"

namespace plexus
{

// Target rank for each local cell.
struct PartitionAssignment
{
  std::vector<int> target;
};

enum class PartitionMethod
{
  block,
  rcb,
  external
};

// Collective.
//  block: contiguous ranges of global cell ids, lengths differing by at most one.
//  rcb:   recursive coordinate bisection of cell centroids; each cut is across the longest
//         extent of the current box (lowest axis on ties), at the weighted median with
//         ties broken by global cell id.
//  external: `external_targets[gid]` for every global cell id.
PartitionAssignment Partition(const DistributedMesh &mesh, int num_parts, PartitionMethod method,
                              Communicator &comm,
                              const std::vector<int> &external_targets = {});

// Reads one target rank per line, line i belonging to global cell i.
std::vector<int> ReadAssignmentFile(const std::string &path);
void WriteAssignmentFile(const std::string &path, const std::vector<int> &targets);

// Collective. Number of interior facets whose two cells have different targets (counted
// once). Needs an interpolated mesh.
GlobalIndex CountInterfaceFacets(const DistributedMesh &mesh, const PartitionAssignment &parts,
                                 Communicator &comm);

// Collective. Moves every cell with its vertices to its target rank and rebuilds the
// distributed plex there (ownership of shared vertices by the highest rank). An
// interpolated input is re-interpolated after the move.
DistributedMesh Migrate(const DistributedMesh &mesh, const PartitionAssignment &parts,
                        Communicator &comm);

}  // namespace plexus

#endif  // PLEXUS_REDISTRIBUTE_HPP
