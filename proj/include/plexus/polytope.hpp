// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_POLYTOPE_HPP
#define PLEXUS_POLYTOPE_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace plexus
{

enum class PolytopeType : std::uint8_t
{
  vertex,
  segment,
  triangle,
  quadrilateral,
  tetrahedron,
  hexahedron,
  unknown
};

// Per-shape constants. Local vertex numbering follows the usual finite element
// convention: quadrilaterals counter-clockwise, hexahedra with the bottom face 0-1-2-3
// counter-clockwise seen from above and the top face 4-5-6-7 stacked on it.
//
// Facet tables (ordered local vertex indices per facet):
//   segment        (0) (1)
//   triangle       (0,1) (1,2) (2,0)
//   quadrilateral  (0,1) (1,2) (2,3) (3,0)
//   tetrahedron    (1,2,3) (0,3,2) (0,1,3) (0,2,1)
//   hexahedron     (0,3,2,1) (4,5,6,7) (0,1,5,4) (1,2,6,5) (2,3,7,6) (3,0,4,7)
// 3D facets are wound counter-clockwise seen from outside the cell.
int Dimension(PolytopeType type);
int NumVertices(PolytopeType type);
int NumFacets(PolytopeType type);
PolytopeType FacetType(PolytopeType type, int facet);
std::span<const int> FacetVertices(PolytopeType type, int facet);

// Order of the symmetry group of the shape (dihedral group for polygons).
int SymmetryGroupSize(PolytopeType type);

std::string_view ToString(PolytopeType type);
std::optional<PolytopeType> PolytopeFromString(std::string_view name);

// Shape of a uniform cell given its vertex count and topological dimension.
std::optional<PolytopeType> CellTypeFromVertexCount(int num_vertices, int dim);

}  // namespace plexus

#endif  // PLEXUS_POLYTOPE_HPP
