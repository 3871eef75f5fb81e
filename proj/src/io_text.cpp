// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include <fstream>

#include "plexus/error.hpp"
#include "plexus/io.hpp"

namespace plexus
{

RawMesh ReadText(const std::string &path, Communicator &comm)
{
  std::ifstream in(path);
  Require(static_cast<bool>(in), "cannot open mesh file {}", path);
  int dim = 0;
  int c = 0;
  GlobalIndex num_cells = 0;
  GlobalIndex num_vertices = 0;
  Require(static_cast<bool>(in >> dim >> num_cells >> num_vertices >> c),
          "{}: malformed header", path);
  Require(num_cells >= 0 && num_vertices >= 0, "{}: negative sizes in header", path);
  const auto type = CellTypeFromVertexCount(c, dim);
  Require(type.has_value(), "{}: no cell type with {} vertices in {}D", path, c, dim);

  RawMesh raw;
  raw.dim = dim;
  raw.cell_type = *type;
  raw.cell_layout = LayoutChunks(num_cells, comm.Size());
  raw.vertex_layout = LayoutChunks(num_vertices, comm.Size());
  const int rank = comm.Rank();

  for (GlobalIndex row = 0; row < num_cells; ++row)
  {
    const bool mine = row >= raw.cell_layout.Start(rank) && row < raw.cell_layout.End(rank);
    for (int j = 0; j < c; ++j)
    {
      GlobalIndex v = 0;
      Require(static_cast<bool>(in >> v), "{}: truncated topology at row {}", path, row);
      if (mine)
      {
        raw.topology.push_back(v);
      }
    }
  }
  for (GlobalIndex row = 0; row < num_vertices; ++row)
  {
    const bool mine = row >= raw.vertex_layout.Start(rank) && row < raw.vertex_layout.End(rank);
    for (int d = 0; d < dim; ++d)
    {
      double x = 0.0;
      Require(static_cast<bool>(in >> x), "{}: truncated geometry at row {}", path, row);
      if (mine)
      {
        raw.geometry.push_back(x);
      }
    }
  }
  return raw;
}

void WriteText(const RawMesh &raw, const std::string &path, Communicator &comm)
{
  std::vector<std::vector<GlobalIndex>> topology_out(comm.Size());
  std::vector<std::vector<double>> geometry_out(comm.Size());
  topology_out[0] = raw.topology;
  geometry_out[0] = raw.geometry;
  const auto topology = AllToAll(comm, topology_out);
  const auto geometry = AllToAll(comm, geometry_out);
  if (comm.Rank() != 0)
  {
    return;
  }
  std::ofstream out(path);
  Require(static_cast<bool>(out), "cannot write mesh file {}", path);
  const int c = raw.VerticesPerCell();
  out << raw.dim << ' ' << raw.cell_layout.GlobalSize() << ' ' << raw.vertex_layout.GlobalSize()
      << ' ' << c << '\n';
  for (const auto &chunk : topology)
  {
    for (std::size_t i = 0; i < chunk.size(); ++i)
    {
      out << chunk[i] << ((i + 1) % c == 0 ? '\n' : ' ');
    }
  }
  for (const auto &chunk : geometry)
  {
    for (std::size_t i = 0; i < chunk.size(); ++i)
    {
      out << fmt::format("{:.17g}", chunk[i]) << ((i + 1) % raw.dim == 0 ? '\n' : ' ');
    }
  }
  Require(static_cast<bool>(out), "error writing {}", path);
}

}  // namespace plexus
