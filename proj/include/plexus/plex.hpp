// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_PLEX_HPP
#define PLEXUS_PLEX_HPP

#include <span>
#include <vector>

#include "plexus/polytope.hpp"
#include "plexus/types.hpp"

namespace plexus
{

//
// Mesh topology as a directed acyclic graph (Hasse diagram). Every mesh entity is a point;
// the cone of a point is the ordered tuple of entities it covers (a cell's facets, a
// facet's edges or vertices), and each cone slot carries the relative orientation of the
// covered point. Supports are the dual relation and are derived by Symmetrize(). Strata
// group points by height (0 = cells) into contiguous point ranges and are derived by
// Stratify().
//
// Storage is compressed: one offset array and flat cone, orientation and support arrays.
//
class Plex
{
public:
  Plex() = default;

  Point NumPoints() const { return static_cast<Point>(cone_offsets_.size()) - 1; }

  int ConeSize(Point p) const;
  std::span<const Point> Cone(Point p) const;
  std::span<const int> ConeOrientations(Point p) const;

  bool HasSupports() const { return !support_offsets_.empty(); }
  int SupportSize(Point p) const;
  std::span<const Point> Support(Point p) const;

  bool IsStratified() const { return stratified_; }
  int NumStrata() const { return static_cast<int>(strata_.size()); }
  PointRange Stratum(int height) const;
  int Height(Point p) const;
  // Topological dimension of the entity (height counted from the vertex stratum).
  int Depth(Point p) const { return NumStrata() - 1 - Height(p); }

  PolytopeType Type(Point p) const;
  void SetType(Point p, PolytopeType type);

  // Rewrites cone slot contents in place; arity is fixed at construction. Invalidates
  // supports if the cone points change.
  void SetCone(Point p, std::span<const Point> cone, std::span<const int> orientations);
  void SetConeOrientation(Point p, int slot, int orientation);

  bool operator==(const Plex &) const = default;

private:
  friend Plex BuildFromCones(Point, std::span<const int>, std::span<const Point>,
                             std::span<const int>, std::span<const PolytopeType>);
  friend Plex Symmetrize(Plex);
  friend Plex Stratify(Plex);

  void CheckPoint(Point p) const;

  std::vector<std::size_t> cone_offsets_{0};
  std::vector<Point> cones_;
  std::vector<int> orientations_;
  std::vector<std::size_t> support_offsets_;
  std::vector<Point> supports_;
  std::vector<PointRange> strata_;
  std::vector<PolytopeType> types_;
  bool stratified_ = false;
};

// Assembles a plex from flattened cones. `cone_sizes` has one entry per point; `cones` and
// `orientations` hold the concatenated tuples. `types` is optional (one entry per point);
// points with an empty cone are vertices, other points default to PolytopeType::unknown.
// Supports and strata are left unset.
Plex BuildFromCones(Point num_points, std::span<const int> cone_sizes,
                    std::span<const Point> cones, std::span<const int> orientations,
                    std::span<const PolytopeType> types = {});

// Computes supports from cones in time linear in the total cone size. Supports are sorted
// ascending and keep multiplicity.
Plex Symmetrize(Plex plex);

// Assigns heights (0 for points with empty support, otherwise one more than the largest
// support height) and records one contiguous point range per height. Throws on cycles or
// when a height class is not a contiguous range.
Plex Stratify(Plex plex);

// Transitive closures, breadth-first in cone (support) order, starting with p itself.
std::vector<Point> Closure(const Plex &plex, Point p);
std::vector<Point> Star(const Plex &plex, Point p);

// Vertex tuple of a point whose cone consists of vertices, or of segments oriented head to
// tail (a polygonal face after edges have been interpolated). A vertex maps to itself.
std::vector<Point> VertexTuple(const Plex &plex, Point p);

// Vertex tuple of a cell in its own local numbering, reconstructed from oriented facets
// through the facet table when the cell has been interpolated. Throws if the oriented
// facets do not agree on a vertex assignment.
std::vector<Point> CellVertices(const Plex &plex, Point cell);

// Alternating sum of stratum sizes by entity dimension (V - E + F - C in 3D).
long EulerCharacteristic(const Plex &plex);

}  // namespace plexus

#endif  // PLEXUS_PLEX_HPP
