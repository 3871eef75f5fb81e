// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/polytope.hpp"

#include <array>

#include "plexus/error.hpp"

namespace plexus
{

namespace
{

struct FacetTable
{
  int num_facets;
  PolytopeType facet_type;
  int facet_size;
  const int *indices;
};

constexpr int kSegmentFacets[] = {0, 1};
constexpr int kTriangleFacets[] = {0, 1, 1, 2, 2, 0};
constexpr int kQuadFacets[] = {0, 1, 1, 2, 2, 3, 3, 0};
constexpr int kTetFacets[] = {1, 2, 3, 0, 3, 2, 0, 1, 3, 0, 2, 1};
constexpr int kHexFacets[] = {0, 3, 2, 1, 4, 5, 6, 7, 0, 1, 5, 4,
                              1, 2, 6, 5, 2, 3, 7, 6, 3, 0, 4, 7};

FacetTable Table(PolytopeType type)
{
  switch (type)
  {
    case PolytopeType::vertex:
      return {0, PolytopeType::unknown, 0, nullptr};
    case PolytopeType::segment:
      return {2, PolytopeType::vertex, 1, kSegmentFacets};
    case PolytopeType::triangle:
      return {3, PolytopeType::segment, 2, kTriangleFacets};
    case PolytopeType::quadrilateral:
      return {4, PolytopeType::segment, 2, kQuadFacets};
    case PolytopeType::tetrahedron:
      return {4, PolytopeType::triangle, 3, kTetFacets};
    case PolytopeType::hexahedron:
      return {6, PolytopeType::quadrilateral, 4, kHexFacets};
    case PolytopeType::unknown:
      break;
  }
  Fail("polytope type is unknown");
}

}  // namespace

int Dimension(PolytopeType type)
{
  switch (type)
  {
    case PolytopeType::vertex:
      return 0;
    case PolytopeType::segment:
      return 1;
    case PolytopeType::triangle:
    case PolytopeType::quadrilateral:
      return 2;
    case PolytopeType::tetrahedron:
    case PolytopeType::hexahedron:
      return 3;
    case PolytopeType::unknown:
      break;
  }
  Fail("polytope type is unknown");
}

int NumVertices(PolytopeType type)
{
  switch (type)
  {
    case PolytopeType::vertex:
      return 1;
    case PolytopeType::segment:
      return 2;
    case PolytopeType::triangle:
      return 3;
    case PolytopeType::quadrilateral:
    case PolytopeType::tetrahedron:
      return 4;
    case PolytopeType::hexahedron:
      return 8;
    case PolytopeType::unknown:
      break;
  }
  Fail("polytope type is unknown");
}

int NumFacets(PolytopeType type) { return Table(type).num_facets; }

PolytopeType FacetType(PolytopeType type, int facet)
{
  const auto table = Table(type);
  Require(facet >= 0 && facet < table.num_facets, "facet {} out of range for {}", facet,
          ToString(type));
  return table.facet_type;
}

std::span<const int> FacetVertices(PolytopeType type, int facet)
{
  const auto table = Table(type);
  Require(facet >= 0 && facet < table.num_facets, "facet {} out of range for {}", facet,
          ToString(type));
  return {table.indices + facet * table.facet_size,
          static_cast<std::size_t>(table.facet_size)};
}

int SymmetryGroupSize(PolytopeType type)
{
  switch (type)
  {
    case PolytopeType::vertex:
      return 1;
    case PolytopeType::segment:
      return 2;
    case PolytopeType::triangle:
      return 6;
    case PolytopeType::quadrilateral:
      return 8;
    case PolytopeType::tetrahedron:
      return 24;
    case PolytopeType::hexahedron:
      return 48;
    case PolytopeType::unknown:
      break;
  }
  Fail("polytope type is unknown");
}

std::string_view ToString(PolytopeType type)
{
  switch (type)
  {
    case PolytopeType::vertex:
      return "vertex";
    case PolytopeType::segment:
      return "segment";
    case PolytopeType::triangle:
      return "triangle";
    case PolytopeType::quadrilateral:
      return "quadrilateral";
    case PolytopeType::tetrahedron:
      return "tetrahedron";
    case PolytopeType::hexahedron:
      return "hexahedron";
    case PolytopeType::unknown:
      break;
  }
  return "unknown";
}

std::optional<PolytopeType> PolytopeFromString(std::string_view name)
{
  constexpr std::array all = {PolytopeType::vertex,        PolytopeType::segment,
                              PolytopeType::triangle,      PolytopeType::quadrilateral,
                              PolytopeType::tetrahedron,   PolytopeType::hexahedron};
  for (auto type : all)
  {
    if (ToString(type) == name)
    {
      return type;
    }
  }
  return std::nullopt;
}

std::optional<PolytopeType> CellTypeFromVertexCount(int num_vertices, int dim)
{
  switch (dim)
  {
    case 1:
      if (num_vertices == 2)
      {
        return PolytopeType::segment;
      }
      break;
    case 2:
      if (num_vertices == 3)
      {
        return PolytopeType::triangle;
      }
      if (num_vertices == 4)
      {
        return PolytopeType::quadrilateral;
      }
      break;
    case 3:
      if (num_vertices == 4)
      {
        return PolytopeType::tetrahedron;
      }
      if (num_vertices == 8)
      {
        return PolytopeType::hexahedron;
      }
      break;
    default:
      break;
  }
  return std::nullopt;
}

}  // namespace plexus
