// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_INTERPOLATE_HPP
#define PLEXUS_INTERPOLATE_HPP

#include <span>
#include <vector>

#include "plexus/plex.hpp"

namespace plexus
{

struct RawFace
{
  PolytopeType type = PolytopeType::unknown;
  std::vector<Point> vertices;

  bool operator==(const RawFace &) const = default;
};

// Facets of a cell given its vertex tuple, in facet-table order (see polytope.hpp). The
// ids in `cell_vertices` are passed through unchanged, so global or local ids both work.
std::vector<RawFace> RawFaces(PolytopeType cell_type, std::span<const Point> cell_vertices);

// Orientation O with ApplyOrientation(stored_cone, O) == candidate.
int ComputeRelativeOrientation(std::span<const Point> stored_cone,
                               std::span<const Point> candidate);

// Inserts a facet stratum below the stratum at `cell_height`. The cells there must have
// vertex cones and known polytope types. New facets are appended after all existing points,
// numbered in first-encounter order over the cells; the first cell to produce a facet
// donates its vertex tuple as the facet cone and every later cell records its relative
// orientation against that cone.
Plex InterpolateStratum(const Plex &plex, int cell_height);

// Builds the fully connected plex (d + 1 strata) from a cells + vertices plex: one facet
// pass in 2D, two in 3D. An empty plex is returned unchanged.
Plex Interpolate(const Plex &plex);

// Cells + vertices plex from uniform cell-vertex connectivity with vertex ids in
// [0, num_vertices). Cells are points [0, NC), vertex v is point NC + v.
Plex CellVertexPlex(PolytopeType cell_type, std::span<const Point> cells, Point num_vertices);

}  // namespace plexus

#endif  // PLEXUS_INTERPOLATE_HPP
