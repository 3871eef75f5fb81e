// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/redistribute.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <limits>
#include <numeric>

#include "plexus/construct.hpp"
#include "plexus/error.hpp"
#include "plexus/parallel_interp.hpp"

namespace plexus
{

namespace
{

struct Centroid
{
  GlobalIndex gid = -1;
  std::array<double, 3> x{};
};

std::vector<Point> CellVertexPoints(const DistributedMesh &mesh, Point cell)
{
  return CellVertices(mesh.plex, cell);
}

void Bisect(std::vector<Centroid> &items, std::size_t begin, std::size_t end, int first_part,
            int num_parts, int dim, std::vector<std::pair<GlobalIndex, int>> &out)
{
  if (num_parts == 1 || end - begin == 0)
  {
    for (std::size_t i = begin; i < end; ++i)
    {
      out.push_back({items[i].gid, first_part});
    }
    return;
  }
  std::array<double, 3> lo{}, hi{};
  lo.fill(std::numeric_limits<double>::max());
  hi.fill(std::numeric_limits<double>::lowest());
  for (std::size_t i = begin; i < end; ++i)
  {
    for (int d = 0; d < dim; ++d)
    {
      lo[d] = std::min(lo[d], items[i].x[d]);
      hi[d] = std::max(hi[d], items[i].x[d]);
    }
  }
  int axis = 0;
  for (int d = 1; d < dim; ++d)
  {
    if (hi[d] - lo[d] > hi[axis] - lo[axis])
    {
      axis = d;
    }
  }
  std::sort(items.begin() + begin, items.begin() + end,
            [axis](const Centroid &a, const Centroid &b) {
              return a.x[axis] != b.x[axis] ? a.x[axis] < b.x[axis] : a.gid < b.gid;
            });
  const int left_parts = num_parts / 2;
  const std::size_t count = end - begin;
  const std::size_t left = count * left_parts / num_parts;
  Bisect(items, begin, begin + left, first_part, left_parts, dim, out);
  Bisect(items, begin + left, end, first_part + left_parts, num_parts - left_parts, dim, out);
}

}  // namespace

PartitionAssignment Partition(const DistributedMesh &mesh, int num_parts, PartitionMethod method,
                              Communicator &comm, const std::vector<int> &external_targets)
{
  Require(num_parts >= 1, "number of parts must be positive, got {}", num_parts);
  PartitionAssignment parts;
  parts.target.resize(mesh.NumCells(), 0);
  switch (method)
  {
    case PartitionMethod::block:
    {
      const Layout layout = LayoutChunks(mesh.num_global_cells, num_parts);
      for (Point c = 0; c < mesh.NumCells(); ++c)
      {
        parts.target[c] = layout.Owner(mesh.cell_gids[c]);
      }
      break;
    }
    case PartitionMethod::rcb:
    {
      Require(mesh.dim <= 3, "coordinate bisection supports up to 3 dimensions");
      std::vector<Centroid> local(mesh.NumCells());
      for (Point c = 0; c < mesh.NumCells(); ++c)
      {
        local[c].gid = mesh.cell_gids[c];
        const auto vertices = CellVertexPoints(mesh, c);
        for (auto v : vertices)
        {
          for (int d = 0; d < mesh.dim; ++d)
          {
            local[c].x[d] += mesh.coords[(v - mesh.NumCells()) * mesh.dim + d];
          }
        }
        for (int d = 0; d < mesh.dim; ++d)
        {
          local[c].x[d] /= static_cast<double>(vertices.size());
        }
      }
      auto all = AllGatherV(comm, local);
      std::vector<std::pair<GlobalIndex, int>> assignment;
      assignment.reserve(all.size());
      Bisect(all, 0, all.size(), 0, num_parts, mesh.dim, assignment);
      std::sort(assignment.begin(), assignment.end());
      for (Point c = 0; c < mesh.NumCells(); ++c)
      {
        auto it = std::lower_bound(assignment.begin(), assignment.end(),
                                   std::pair<GlobalIndex, int>{mesh.cell_gids[c], -1});
        parts.target[c] = it->second;
      }
      break;
    }
    case PartitionMethod::external:
    {
      Require(static_cast<GlobalIndex>(external_targets.size()) == mesh.num_global_cells,
              "assignment lists {} cells, mesh has {}", external_targets.size(),
              mesh.num_global_cells);
      for (Point c = 0; c < mesh.NumCells(); ++c)
      {
        parts.target[c] = external_targets[mesh.cell_gids[c]];
      }
      break;
    }
  }
  for (auto t : parts.target)
  {
    Require(t >= 0 && t < num_parts, "target rank {} out of range [0, {})", t, num_parts);
  }
  return parts;
}

std::vector<int> ReadAssignmentFile(const std::string &path)
{
  std::ifstream in(path);
  Require(static_cast<bool>(in), "cannot open assignment file {}", path);
  std::vector<int> targets;
  int t = 0;
  while (in >> t)
  {
    targets.push_back(t);
  }
  Require(in.eof(), "malformed assignment file {}", path);
  return targets;
}

void WriteAssignmentFile(const std::string &path, const std::vector<int> &targets)
{
  std::ofstream out(path);
  Require(static_cast<bool>(out), "cannot write assignment file {}", path);
  for (auto t : targets)
  {
    out << t << '\n';
  }
}

GlobalIndex CountInterfaceFacets(const DistributedMesh &mesh, const PartitionAssignment &parts,
                                 Communicator &comm)
{
  const auto &plex = mesh.plex;
  const int num_strata = AllReduceMax(comm, plex.NumStrata());
  Require(num_strata > 2, "interface facets need an interpolated mesh");
  Require(parts.target.size() == static_cast<std::size_t>(mesh.NumCells()),
          "assignment covers {} cells, rank has {}", parts.target.size(), mesh.NumCells());
  std::vector<int> payload(mesh.point_sf.LeafExtent(), -1);
  for (const auto &leaf : mesh.point_sf.Leaves())
  {
    const auto support =
        plex.NumPoints() > 0 && plex.Height(leaf.local) == 1 ? plex.Support(leaf.local)
                                                             : std::span<const Point>{};
    if (support.size() == 1)
    {
      payload[leaf.local] = parts.target[support[0]];
    }
  }
  const auto gathered = Gather<int>(comm, mesh.point_sf, payload);
  GlobalIndex count = 0;
  if (plex.NumPoints() > 0)
  {
    const auto facets = plex.Stratum(1);
    for (Point f = facets.begin; f < facets.end; ++f)
    {
      if (mesh.point_sf.FindLeaf(f) != nullptr)
      {
        continue;
      }
      std::vector<int> targets;
      for (auto c : plex.Support(f))
      {
        targets.push_back(parts.target[c]);
      }
      for (auto t : gathered[f])
      {
        if (t >= 0)
        {
          targets.push_back(t);
        }
      }
      if (targets.size() == 2 && targets[0] != targets[1])
      {
        ++count;
      }
    }
  }
  return AllReduceSum(comm, count);
}

DistributedMesh Migrate(const DistributedMesh &mesh, const PartitionAssignment &parts,
                        Communicator &comm)
{
  const int size = comm.Size();
  Require(parts.target.size() == static_cast<std::size_t>(mesh.NumCells()),
          "assignment covers {} cells, rank has {}", parts.target.size(), mesh.NumCells());
  const int nv = NumVertices(mesh.cell_type);
  const bool interpolated = AllReduceMax(comm, mesh.plex.NumStrata()) > 2;

  // Cells travel as [gid, vertex gids...].
  std::vector<std::vector<GlobalIndex>> cells_out(size);
  for (Point c = 0; c < mesh.NumCells(); ++c)
  {
    const int t = parts.target[c];
    Require(t >= 0 && t < size, "cannot migrate cell {} to rank {} of {}", mesh.cell_gids[c], t,
            size);
    const auto vertices = CellVertexPoints(mesh, c);
    cells_out[t].push_back(mesh.cell_gids[c]);
    for (auto v : vertices)
    {
      cells_out[t].push_back(mesh.vertex_gids[v - mesh.NumCells()]);
    }
  }

  // Owned vertex coordinates go to their layout home.
  const Layout vertex_layout = LayoutChunks(mesh.num_global_vertices, size);
  std::vector<std::vector<GlobalIndex>> ids_out(size);
  std::vector<std::vector<double>> coords_out(size);
  for (Point v = 0; v < mesh.NumVertices(); ++v)
  {
    if (mesh.point_sf.FindLeaf(mesh.NumCells() + v) != nullptr)
    {
      continue;
    }
    const int home = vertex_layout.Owner(mesh.vertex_gids[v]);
    ids_out[home].push_back(mesh.vertex_gids[v]);
    coords_out[home].insert(coords_out[home].end(), mesh.coords.begin() + v * mesh.dim,
                            mesh.coords.begin() + (v + 1) * mesh.dim);
  }

  const auto cells_in = AllToAll(comm, cells_out);
  const auto ids_in = AllToAll(comm, ids_out);
  const auto coords_in = AllToAll(comm, coords_out);

  std::vector<std::pair<GlobalIndex, std::vector<GlobalIndex>>> received;
  for (const auto &buffer : cells_in)
  {
    Require(buffer.size() % (nv + 1) == 0, "corrupt cell message of {} entries", buffer.size());
    for (std::size_t k = 0; k < buffer.size(); k += nv + 1)
    {
      received.push_back({buffer[k], {buffer.begin() + k + 1, buffer.begin() + k + 1 + nv}});
    }
  }
  std::sort(received.begin(), received.end());
  std::vector<GlobalIndex> gids;
  std::vector<GlobalIndex> topology;
  for (const auto &[gid, vertices] : received)
  {
    gids.push_back(gid);
    topology.insert(topology.end(), vertices.begin(), vertices.end());
  }

  const GlobalIndex start = vertex_layout.Start(comm.Rank());
  std::vector<double> geometry(vertex_layout.LocalSize(comm.Rank()) * mesh.dim, 0.0);
  for (int r = 0; r < size; ++r)
  {
    for (std::size_t i = 0; i < ids_in[r].size(); ++i)
    {
      std::copy_n(coords_in[r].begin() + i * mesh.dim, mesh.dim,
                  geometry.begin() + (ids_in[r][i] - start) * mesh.dim);
    }
  }

  auto migrated = BuildDistributedPlex(mesh.cell_type, mesh.dim, topology, gids,
                                       mesh.num_global_cells, vertex_layout, geometry, comm);
  if (interpolated)
  {
    InterpolateMesh(migrated, comm);
  }
  return migrated;
}

}  // namespace plexus
