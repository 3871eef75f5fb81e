// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/construct.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "plexus/error.hpp"

namespace plexus
{

GlobalIndex RawMesh::NumLocalCells() const
{
  const int c = VerticesPerCell();
  return static_cast<GlobalIndex>(topology.size()) / c;
}

GlobalIndex RawMesh::NumLocalVertices() const
{
  return dim > 0 ? static_cast<GlobalIndex>(geometry.size()) / dim : 0;
}

DistributedMesh BuildDistributedPlex(const RawMesh &raw, Communicator &comm)
{
  Require(raw.cell_layout.NumRanks() == comm.Size(), "cell layout has {} ranks, communicator {}",
          raw.cell_layout.NumRanks(), comm.Size());
  const GlobalIndex start = raw.cell_layout.Start(comm.Rank());
  const GlobalIndex count = raw.cell_layout.LocalSize(comm.Rank());
  Require(static_cast<GlobalIndex>(raw.topology.size()) == count * raw.VerticesPerCell(),
          "topology chunk has {} entries, expected {} rows of {}", raw.topology.size(), count,
          raw.VerticesPerCell());
  std::vector<GlobalIndex> cell_gids(count);
  std::iota(cell_gids.begin(), cell_gids.end(), start);
  return BuildDistributedPlex(raw.cell_type, raw.dim, raw.topology, cell_gids,
                              raw.cell_layout.GlobalSize(), raw.vertex_layout, raw.geometry, comm);
}

DistributedMesh BuildDistributedPlex(PolytopeType cell_type, int dim,
                                     std::span<const GlobalIndex> topology,
                                     std::span<const GlobalIndex> cell_gids,
                                     GlobalIndex num_global_cells, const Layout &vertex_layout,
                                     std::span<const double> geometry, Communicator &comm)
{
  const int rank = comm.Rank();
  const int c = NumVertices(cell_type);
  Require(dim >= 1, "mesh dimension must be positive, got {}", dim);
  Require(topology.size() == cell_gids.size() * c,
          "topology has {} entries for {} cells of {} vertices", topology.size(),
          cell_gids.size(), c);
  Require(vertex_layout.NumRanks() == comm.Size(), "vertex layout has {} ranks, communicator {}",
          vertex_layout.NumRanks(), comm.Size());
  Require(static_cast<GlobalIndex>(geometry.size()) == vertex_layout.LocalSize(rank) * dim,
          "geometry chunk has {} entries, expected {} rows of {}", geometry.size(),
          vertex_layout.LocalSize(rank), dim);
  const GlobalIndex num_global_vertices = vertex_layout.GlobalSize();

  // Locally referenced global vertices, sorted: position = local vertex number.
  std::unordered_set<GlobalIndex> referenced;
  referenced.reserve(topology.size());
  for (auto v : topology)
  {
    Require(v >= 0 && v < num_global_vertices, "vertex id {} out of range [0, {})", v,
            num_global_vertices);
    referenced.insert(v);
  }
  std::vector<GlobalIndex> vertices(referenced.begin(), referenced.end());
  std::sort(vertices.begin(), vertices.end());

  const Point num_cells = static_cast<Point>(cell_gids.size());
  const Point num_vertices = static_cast<Point>(vertices.size());

  // Maps local vertices (leaves) to their layout owners (roots).
  std::vector<SfLeaf> vertex_leaves(num_vertices);
  for (Point i = 0; i < num_vertices; ++i)
  {
    const int owner = vertex_layout.Owner(vertices[i]);
    vertex_leaves[i] = {i, {owner, static_cast<Point>(vertices[i] - vertex_layout.Start(owner))}};
  }
  const StarForest sf_vert(static_cast<Point>(vertex_layout.LocalSize(rank)),
                           std::move(vertex_leaves));

  DistributedMesh mesh;
  mesh.cell_type = cell_type;
  mesh.dim = dim;
  mesh.coords.assign(static_cast<std::size_t>(num_vertices) * dim, 0.0);
  Bcast<double>(comm, sf_vert, geometry, mesh.coords, dim);

  std::vector<Point> cones(topology.size());
  for (std::size_t i = 0; i < topology.size(); ++i)
  {
    const auto pos = std::lower_bound(vertices.begin(), vertices.end(), topology[i]);
    cones[i] = num_cells + static_cast<Point>(pos - vertices.begin());
  }
  const Point num_points = num_cells + num_vertices;
  std::vector<int> cone_sizes(num_points, 0);
  std::fill_n(cone_sizes.begin(), num_cells, c);
  std::vector<PolytopeType> types(num_points, PolytopeType::vertex);
  std::fill_n(types.begin(), num_cells, cell_type);
  const std::vector<int> orientations(cones.size(), 0);
  mesh.plex =
      Stratify(Symmetrize(BuildFromCones(num_points, cone_sizes, cones, orientations, types)));

  // Unique owner per vertex: the highest rank referencing it.
  std::vector<RemotePoint> candidates(num_vertices);
  for (Point i = 0; i < num_vertices; ++i)
  {
    candidates[i] = {rank, num_cells + i};
  }
  std::vector<RemotePoint> chosen(sf_vert.NumRoots(), RemotePoint{-1, -1});
  Reduce<RemotePoint>(comm, sf_vert, candidates, chosen, MaxLocOp{});
  std::vector<RemotePoint> owners(num_vertices);
  Bcast<RemotePoint>(comm, sf_vert, chosen, owners);

  std::vector<SfLeaf> point_leaves;
  for (Point i = 0; i < num_vertices; ++i)
  {
    if (owners[i].rank != rank)
    {
      point_leaves.push_back({num_cells + i, owners[i]});
    }
  }
  mesh.point_sf = StarForest(num_points, std::move(point_leaves));
  mesh.cell_gids.assign(cell_gids.begin(), cell_gids.end());
  mesh.vertex_gids = std::move(vertices);
  mesh.num_global_cells = num_global_cells;
  mesh.num_global_vertices = num_global_vertices;
  return mesh;
}

}  // namespace plexus
