// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>

#include "plexus/error.hpp"
#include "plexus/io.hpp"

namespace plexus
{

RawMesh GenerateCube(int nex, int dim, int rank, int size)
{
  Require(nex >= 1, "cells per side must be positive, got {}", nex);
  Require(dim == 2 || dim == 3, "cube dimension must be 2 or 3, got {}", dim);
  Require(rank >= 0 && rank < size, "rank {} out of range [0, {})", rank, size);
  const GlobalIndex n = nex;
  const GlobalIndex m = nex + 1;
  const GlobalIndex num_cells = dim == 2 ? n * n : n * n * n;
  const GlobalIndex num_vertices = dim == 2 ? m * m : m * m * m;

  RawMesh raw;
  raw.dim = dim;
  raw.cell_type = dim == 2 ? PolytopeType::quadrilateral : PolytopeType::hexahedron;
  raw.cell_layout = LayoutChunks(num_cells, size);
  raw.vertex_layout = LayoutChunks(num_vertices, size);

  auto vertex = [&](GlobalIndex i, GlobalIndex j, GlobalIndex k) { return i + m * (j + m * k); };
  const int nv = raw.VerticesPerCell();
  raw.topology.reserve(raw.cell_layout.LocalSize(rank) * nv);
  for (GlobalIndex gid = raw.cell_layout.Start(rank); gid < raw.cell_layout.End(rank); ++gid)
  {
    const GlobalIndex i = gid % n;
    const GlobalIndex j = (gid / n) % n;
    const GlobalIndex k = gid / (n * n);
    const GlobalIndex bottom[4] = {vertex(i, j, k), vertex(i + 1, j, k), vertex(i + 1, j + 1, k),
                                   vertex(i, j + 1, k)};
    raw.topology.insert(raw.topology.end(), bottom, bottom + 4);
    if (dim == 3)
    {
      const GlobalIndex top[4] = {vertex(i, j, k + 1), vertex(i + 1, j, k + 1),
                                  vertex(i + 1, j + 1, k + 1), vertex(i, j + 1, k + 1)};
      raw.topology.insert(raw.topology.end(), top, top + 4);
    }
  }

  raw.geometry.reserve(raw.vertex_layout.LocalSize(rank) * dim);
  for (GlobalIndex gid = raw.vertex_layout.Start(rank); gid < raw.vertex_layout.End(rank); ++gid)
  {
    const GlobalIndex idx[3] = {gid % m, (gid / m) % m, gid / (m * m)};
    for (int d = 0; d < dim; ++d)
    {
      raw.geometry.push_back(static_cast<double>(idx[d]) / static_cast<double>(nex));
    }
  }
  return raw;
}

RawMesh ExtractRawMesh(const DistributedMesh &mesh, Communicator &comm)
{
  const int size = comm.Size();
  const int rank = comm.Rank();
  RawMesh raw;
  raw.cell_type = mesh.cell_type;
  raw.dim = mesh.dim;
  raw.cell_layout = LayoutChunks(mesh.num_global_cells, size);
  raw.vertex_layout = LayoutChunks(mesh.num_global_vertices, size);
  const int nv = NumVertices(mesh.cell_type);

  std::vector<std::vector<GlobalIndex>> cells_out(size);
  for (Point c = 0; c < mesh.NumCells(); ++c)
  {
    const int home = raw.cell_layout.Owner(mesh.cell_gids[c]);
    cells_out[home].push_back(mesh.cell_gids[c]);
    for (auto v : CellVertices(mesh.plex, c))
    {
      cells_out[home].push_back(mesh.vertex_gids[v - mesh.NumCells()]);
    }
  }
  std::vector<std::vector<GlobalIndex>> ids_out(size);
  std::vector<std::vector<double>> coords_out(size);
  for (Point v = 0; v < mesh.NumVertices(); ++v)
  {
    if (mesh.point_sf.FindLeaf(mesh.NumCells() + v) != nullptr)
    {
      continue;
    }
    const int home = raw.vertex_layout.Owner(mesh.vertex_gids[v]);
    ids_out[home].push_back(mesh.vertex_gids[v]);
    coords_out[home].insert(coords_out[home].end(), mesh.coords.begin() + v * mesh.dim,
                            mesh.coords.begin() + (v + 1) * mesh.dim);
  }
  const auto cells_in = AllToAll(comm, cells_out);
  const auto ids_in = AllToAll(comm, ids_out);
  const auto coords_in = AllToAll(comm, coords_out);

  const GlobalIndex cell_start = raw.cell_layout.Start(rank);
  raw.topology.assign(raw.cell_layout.LocalSize(rank) * nv, -1);
  for (const auto &buffer : cells_in)
  {
    for (std::size_t k = 0; k < buffer.size(); k += nv + 1)
    {
      std::copy_n(buffer.begin() + k + 1, nv,
                  raw.topology.begin() + (buffer[k] - cell_start) * nv);
    }
  }
  Require(std::none_of(raw.topology.begin(), raw.topology.end(),
                       [](GlobalIndex v) { return v < 0; }),
          "some cells of the layout chunk were not found on any rank");

  const GlobalIndex vertex_start = raw.vertex_layout.Start(rank);
  raw.geometry.assign(raw.vertex_layout.LocalSize(rank) * mesh.dim, 0.0);
  for (int r = 0; r < size; ++r)
  {
    for (std::size_t i = 0; i < ids_in[r].size(); ++i)
    {
      std::copy_n(coords_in[r].begin() + i * mesh.dim, mesh.dim,
                  raw.geometry.begin() + (ids_in[r][i] - vertex_start) * mesh.dim);
    }
  }
  return raw;
}

}  // namespace plexus
