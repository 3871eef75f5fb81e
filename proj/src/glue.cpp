// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/glue.hpp"

#include <algorithm>

#include "plexus/error.hpp"

namespace plexus
{

namespace
{

// Interpolated strata heights in point-creation order (faces before edges).
std::vector<int> InterpolatedHeights(int num_strata)
{
  std::vector<int> heights;
  for (int h = 1; h + 1 < num_strata; ++h)
  {
    heights.push_back(h);
  }
  return heights;
}

}  // namespace

std::vector<GlobalIndex> GlobalPointNumbers(const DistributedMesh &mesh, Communicator &comm)
{
  const auto &plex = mesh.plex;
  const int num_strata = AllReduceMax(comm, plex.NumStrata());
  Require(plex.NumPoints() == 0 || plex.NumStrata() == num_strata,
          "ranks disagree on the number of strata");
  std::vector<GlobalIndex> numbers(plex.NumPoints(), -1);
  for (Point c = 0; c < mesh.NumCells(); ++c)
  {
    numbers[c] = mesh.cell_gids[c];
  }
  for (Point v = 0; v < mesh.NumVertices(); ++v)
  {
    numbers[mesh.NumCells() + v] = mesh.num_global_cells + mesh.vertex_gids[v];
  }

  GlobalIndex base = mesh.num_global_cells + mesh.num_global_vertices;
  for (int h : InterpolatedHeights(num_strata))
  {
    std::vector<Point> owned;
    if (plex.NumPoints() > 0)
    {
      const auto range = plex.Stratum(h);
      for (Point p = range.begin; p < range.end; ++p)
      {
        if (mesh.point_sf.FindLeaf(p) == nullptr)
        {
          owned.push_back(p);
        }
      }
    }
    const auto count = static_cast<GlobalIndex>(owned.size());
    GlobalIndex next = base + ExclusiveScan(comm, count);
    for (auto p : owned)
    {
      numbers[p] = next++;
    }
    base += AllReduceSum(comm, count);
  }

  std::vector<GlobalIndex> leaf_numbers(mesh.point_sf.LeafExtent(), -1);
  Bcast<GlobalIndex>(comm, mesh.point_sf, numbers, leaf_numbers);
  for (const auto &leaf : mesh.point_sf.Leaves())
  {
    const auto expected = numbers[leaf.local];
    numbers[leaf.local] = leaf_numbers[leaf.local];
    Require(expected < 0 || expected == numbers[leaf.local],
            "shared vertex {} has inconsistent global ids", leaf.local);
  }
  return numbers;
}

std::optional<GlobalMesh> GatherGlobalMesh(const DistributedMesh &mesh, Communicator &comm,
                                           int root)
{
  const auto numbers = GlobalPointNumbers(mesh, comm);
  const auto &plex = mesh.plex;

  // Owned points as [gid, type, cone size, cone..., orientations...].
  std::vector<GlobalIndex> records;
  std::vector<GlobalIndex> vertex_ids;
  std::vector<double> vertex_coords;
  GlobalIndex owned_points = 0;
  for (Point p = 0; p < plex.NumPoints(); ++p)
  {
    if (mesh.point_sf.FindLeaf(p) != nullptr)
    {
      continue;
    }
    ++owned_points;
    const auto cone = plex.Cone(p);
    records.push_back(numbers[p]);
    records.push_back(static_cast<GlobalIndex>(plex.Type(p)));
    records.push_back(static_cast<GlobalIndex>(cone.size()));
    for (auto q : cone)
    {
      records.push_back(numbers[q]);
    }
    for (auto o : plex.ConeOrientations(p))
    {
      records.push_back(o);
    }
    if (mesh.Vertices().contains(p))
    {
      const Point v = p - mesh.NumCells();
      vertex_ids.push_back(mesh.vertex_gids[v]);
      vertex_coords.insert(vertex_coords.end(), mesh.coords.begin() + v * mesh.dim,
                           mesh.coords.begin() + (v + 1) * mesh.dim);
    }
  }
  const GlobalIndex total_points = AllReduceSum(comm, owned_points);

  auto to_root = [&](const auto &values) {
    using T = typename std::decay_t<decltype(values)>::value_type;
    std::vector<std::vector<T>> send(comm.Size());
    send[root] = values;
    return AllToAll(comm, send);
  };
  const auto all_records = to_root(records);
  const auto all_ids = to_root(vertex_ids);
  const auto all_coords = to_root(vertex_coords);
  if (comm.Rank() != root)
  {
    return std::nullopt;
  }

  const auto n = static_cast<Point>(total_points);
  std::vector<int> cone_sizes(n, -1);
  std::vector<PolytopeType> types(n, PolytopeType::unknown);
  std::vector<std::vector<Point>> cones(n);
  std::vector<std::vector<int>> orientations(n);
  for (const auto &buffer : all_records)
  {
    std::size_t k = 0;
    while (k < buffer.size())
    {
      const auto gid = buffer[k];
      const auto type = static_cast<PolytopeType>(buffer[k + 1]);
      const auto size = static_cast<int>(buffer[k + 2]);
      k += 3;
      Require(gid >= 0 && gid < total_points && cone_sizes[gid] < 0,
              "global point {} is owned twice or out of range", gid);
      cone_sizes[gid] = size;
      types[gid] = type;
      for (int i = 0; i < size; ++i)
      {
        cones[gid].push_back(static_cast<Point>(buffer[k + i]));
        orientations[gid].push_back(static_cast<int>(buffer[k + size + i]));
      }
      k += 2 * static_cast<std::size_t>(size);
    }
  }
  std::vector<Point> flat_cones;
  std::vector<int> flat_orientations;
  for (Point p = 0; p < n; ++p)
  {
    Require(cone_sizes[p] >= 0, "global point {} has no owner (unreferenced vertex?)", p);
    flat_cones.insert(flat_cones.end(), cones[p].begin(), cones[p].end());
    flat_orientations.insert(flat_orientations.end(), orientations[p].begin(),
                             orientations[p].end());
  }

  GlobalMesh global;
  global.cell_type = mesh.cell_type;
  global.dim = mesh.dim;
  global.num_cells = mesh.num_global_cells;
  global.num_vertices = mesh.num_global_vertices;
  global.plex = Stratify(
      Symmetrize(BuildFromCones(n, cone_sizes, flat_cones, flat_orientations, types)));
  global.coords.assign(static_cast<std::size_t>(mesh.num_global_vertices) * mesh.dim, 0.0);
  for (std::size_t r = 0; r < all_ids.size(); ++r)
  {
    for (std::size_t i = 0; i < all_ids[r].size(); ++i)
    {
      std::copy_n(all_coords[r].begin() + i * mesh.dim, mesh.dim,
                  global.coords.begin() + all_ids[r][i] * mesh.dim);
    }
  }
  return global;
}

}  // namespace plexus
