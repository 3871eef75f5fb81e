// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_MESH_HPP
#define PLEXUS_MESH_HPP

#include <vector>

#include "plexus/layout.hpp"
#include "plexus/plex.hpp"
#include "plexus/polytope.hpp"
#include "plexus/sf.hpp"

namespace plexus
{

// One rank's chunk of a cell-vertex mesh as stored on disk: `topology` holds the rank's
// cell layout range (rows of global vertex ids) and `geometry` its vertex layout range
// (rows of `dim` coordinates).
struct RawMesh
{
  PolytopeType cell_type = PolytopeType::unknown;
  int dim = 0;
  Layout cell_layout;
  Layout vertex_layout;
  std::vector<GlobalIndex> topology;
  std::vector<double> geometry;

  int VerticesPerCell() const { return NumVertices(cell_type); }
  GlobalIndex NumLocalCells() const;
  GlobalIndex NumLocalVertices() const;

  bool operator==(const RawMesh &) const = default;
};

// A rank's part of a distributed mesh: a serial plex glued to the other ranks' plexes by
// `point_sf`. Cells are points [0, NC) and vertices follow them; interpolation appends
// facet strata after the vertices.
struct DistributedMesh
{
  PolytopeType cell_type = PolytopeType::unknown;
  int dim = 0;
  Plex plex;
  StarForest point_sf;
  // Coordinates of the local vertices, `dim` per vertex, in vertex point order.
  std::vector<double> coords;
  // Rank-count independent ids of the local cells and vertices.
  std::vector<GlobalIndex> cell_gids;
  std::vector<GlobalIndex> vertex_gids;
  GlobalIndex num_global_cells = 0;
  GlobalIndex num_global_vertices = 0;

  Point NumCells() const { return static_cast<Point>(cell_gids.size()); }
  Point NumVertices() const { return static_cast<Point>(vertex_gids.size()); }
  PointRange Cells() const { return {0, NumCells()}; }
  PointRange Vertices() const { return {NumCells(), NumCells() + NumVertices()}; }
  bool IsInterpolated() const { return plex.NumStrata() > 2; }
};

}  // namespace plexus

#endif  // PLEXUS_MESH_HPP
