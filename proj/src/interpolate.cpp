// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/interpolate.hpp"

#include <algorithm>
#include <array>
#include <utility>

#include <absl/container/flat_hash_map.h>

#include "plexus/error.hpp"
#include "plexus/orientation.hpp"

namespace plexus
{

namespace
{

constexpr int kMaxFacetVertices = 4;

// Facet vertex set, sorted and deduplicated. Equal sets identify the same facet.
struct FacetKey
{
  std::array<Point, kMaxFacetVertices> v{};
  int size = 0;

  bool operator==(const FacetKey &other) const
  {
    return size == other.size && std::equal(v.begin(), v.begin() + size, other.v.begin());
  }

  template <typename H>
  friend H AbslHashValue(H h, const FacetKey &key)
  {
    return H::combine_contiguous(std::move(h), key.v.data(), key.size);
  }
};

// One facet of one cell, as an ordered vertex tuple.
struct FacetTuple
{
  PolytopeType type = PolytopeType::unknown;
  int size = 0;
  std::array<Point, kMaxFacetVertices> v{};

  std::span<const Point> Vertices() const { return {v.data(), static_cast<std::size_t>(size)}; }

  FacetKey Key() const
  {
    FacetKey key;
    std::copy(v.begin(), v.begin() + size, key.v.begin());
    std::sort(key.v.begin(), key.v.begin() + size);
    key.size = static_cast<int>(std::unique(key.v.begin(), key.v.begin() + size) - key.v.begin());
    return key;
  }
};

template <typename Fn>
void ForEachRawFace(PolytopeType cell_type, std::span<const Point> cell_vertices, Fn &&fn)
{
  const int num_facets = NumFacets(cell_type);
  for (int f = 0; f < num_facets; ++f)
  {
    const auto local = FacetVertices(cell_type, f);
    FacetTuple facet;
    facet.type = FacetType(cell_type, f);
    facet.size = static_cast<int>(local.size());
    for (int j = 0; j < facet.size; ++j)
    {
      facet.v[j] = cell_vertices[local[j]];
    }
    fn(f, facet);
  }
}

struct FacetRecord
{
  PolytopeType type;
  int size;
};

// Maps facet vertex sets to new point ids. Ids are contiguous from `first_id` in insertion
// order.
class FacetTable
{
public:
  FacetTable(Point first_id, std::size_t expected) : first_id_(first_id)
  {
    ids_.reserve(expected);
  }

  Point Insert(const FacetTuple &facet)
  {
    const auto [it, inserted] =
        ids_.try_emplace(facet.Key(), first_id_ + static_cast<Point>(records_.size()));
    if (inserted)
    {
      records_.push_back({facet.type, facet.size});
      return it->second;
    }
    const auto &record = records_[it->second - first_id_];
    if (record.type != facet.type || record.size != facet.size)
    {
      Fail("facets with the same vertex set have different shapes ({} with {} vertices vs {} "
           "with {} vertices)",
           ToString(record.type), record.size, ToString(facet.type), facet.size);
    }
    return it->second;
  }

  Point NumFacets() const { return static_cast<Point>(records_.size()); }
  const FacetRecord &Record(Point id) const { return records_[id - first_id_]; }

private:
  Point first_id_;
  absl::flat_hash_map<FacetKey, Point> ids_;
  std::vector<FacetRecord> records_;
};

}  // namespace

std::vector<RawFace> RawFaces(PolytopeType cell_type, std::span<const Point> cell_vertices)
{
  Require(static_cast<int>(cell_vertices.size()) == NumVertices(cell_type),
          "{} needs {} vertices, got {}", ToString(cell_type), NumVertices(cell_type),
          cell_vertices.size());
  std::vector<RawFace> faces;
  ForEachRawFace(cell_type, cell_vertices, [&](int, const FacetTuple &facet) {
    faces.push_back({facet.type, {facet.v.begin(), facet.v.begin() + facet.size}});
  });
  return faces;
}

int ComputeRelativeOrientation(std::span<const Point> stored_cone,
                               std::span<const Point> candidate)
{
  Require(stored_cone.size() == candidate.size() &&
              std::is_permutation(stored_cone.begin(), stored_cone.end(), candidate.begin()),
          "cannot orient facet: vertex sets differ");
  return RelativeOrientation(stored_cone, candidate);
}

Plex InterpolateStratum(const Plex &plex, int cell_height)
{
  Require(plex.IsStratified(), "interpolation needs a stratified plex");
  Require(cell_height >= 0 && cell_height + 1 < plex.NumStrata(),
          "cannot interpolate below stratum {} of a plex with {} strata", cell_height,
          plex.NumStrata());
  const PointRange cells = plex.Stratum(cell_height);
  const Point num_old = plex.NumPoints();

  for (Point c = cells.begin; c < cells.end; ++c)
  {
    const auto type = plex.Type(c);
    Require(type != PolytopeType::unknown && type != PolytopeType::vertex,
            "cell {} has no usable polytope type", c);
    Require(plex.ConeSize(c) == NumVertices(type), "cell {} ({}) has cone size {}, expected {}",
            c, ToString(type), plex.ConeSize(c), NumVertices(type));
    for (auto q : plex.Cone(c))
    {
      Require(plex.ConeSize(q) == 0, "cell {} is already interpolated (cone point {} is not a vertex)",
              c, q);
    }
  }

  // Pass 1: number the facets, remembering the id of every (cell, slot).
  FacetTable table(num_old, static_cast<std::size_t>(cells.size()) * 3);
  std::vector<Point> slot_ids;
  slot_ids.reserve(static_cast<std::size_t>(cells.size()) * 6);
  for (Point c = cells.begin; c < cells.end; ++c)
  {
    ForEachRawFace(plex.Type(c), plex.Cone(c),
                   [&](int, const FacetTuple &facet) { slot_ids.push_back(table.Insert(facet)); });
  }

  // Allocate the new plex exactly.
  const Point num_facets = table.NumFacets();
  const Point num_points = num_old + num_facets;
  std::vector<int> cone_sizes(num_points);
  std::vector<PolytopeType> types(num_points);
  for (Point p = 0; p < num_old; ++p)
  {
    cone_sizes[p] = cells.contains(p) ? NumFacets(plex.Type(p)) : plex.ConeSize(p);
    types[p] = plex.Type(p);
  }
  for (Point f = num_old; f < num_points; ++f)
  {
    cone_sizes[f] = table.Record(f).size;
    types[f] = table.Record(f).type;
  }
  std::vector<std::size_t> offsets(num_points + 1, 0);
  for (Point p = 0; p < num_points; ++p)
  {
    offsets[p + 1] = offsets[p] + cone_sizes[p];
  }
  std::vector<Point> cones(offsets.back());
  std::vector<int> orientations(offsets.back(), 0);
  for (Point p = 0; p < num_old; ++p)
  {
    if (!cells.contains(p))
    {
      std::copy_n(plex.Cone(p).begin(), cone_sizes[p], cones.begin() + offsets[p]);
      std::copy_n(plex.ConeOrientations(p).begin(), cone_sizes[p],
                  orientations.begin() + offsets[p]);
    }
  }

  // Pass 2: attach facets to cells; the first cell donates the facet cone.
  std::vector<char> has_cone(num_facets, 0);
  std::size_t next_slot = 0;
  for (Point c = cells.begin; c < cells.end; ++c)
  {
    ForEachRawFace(plex.Type(c), plex.Cone(c), [&](int slot, const FacetTuple &facet) {
      const Point f = slot_ids[next_slot++];
      cones[offsets[c] + slot] = f;
      const std::span<Point> facet_cone(cones.data() + offsets[f],
                                        static_cast<std::size_t>(facet.size));
      if (!has_cone[f - num_old])
      {
        std::copy_n(facet.v.begin(), facet.size, facet_cone.begin());
        has_cone[f - num_old] = 1;
        orientations[offsets[c] + slot] = 0;
      }
      else
      {
        orientations[offsets[c] + slot] =
            ComputeRelativeOrientation(facet_cone, facet.Vertices());
      }
    });
  }

  return Stratify(Symmetrize(BuildFromCones(num_points, cone_sizes, cones, orientations, types)));
}

Plex Interpolate(const Plex &input)
{
  if (input.NumPoints() == 0)
  {
    return input;
  }
  Plex plex = input.IsStratified() ? input : Stratify(input);
  Require(plex.NumStrata() == 2,
          "interpolation expects a cells + vertices plex with 2 strata, got {}",
          plex.NumStrata());
  const PointRange cells = plex.Stratum(0);
  const auto type0 = plex.Type(cells.begin);
  Require(type0 != PolytopeType::unknown, "cell {} has no polytope type", cells.begin);
  const int dim = Dimension(type0);
  for (Point c = cells.begin; c < cells.end; ++c)
  {
    Require(plex.Type(c) != PolytopeType::unknown && Dimension(plex.Type(c)) == dim,
            "cells of mixed dimension cannot be interpolated together");
  }
  for (int h = 0; h + 1 < dim; ++h)
  {
    plex = InterpolateStratum(plex, h);
  }
  return plex;
}

Plex CellVertexPlex(PolytopeType cell_type, std::span<const Point> cells, Point num_vertices)
{
  const int nv = NumVertices(cell_type);
  Require(cells.size() % nv == 0, "cell array of length {} is not a multiple of {}",
          cells.size(), nv);
  const Point num_cells = static_cast<Point>(cells.size() / nv);
  const Point num_points = num_cells + num_vertices;
  std::vector<int> cone_sizes(num_points, 0);
  std::vector<PolytopeType> types(num_points, PolytopeType::vertex);
  std::fill_n(cone_sizes.begin(), num_cells, nv);
  std::fill_n(types.begin(), num_cells, cell_type);
  std::vector<Point> cones(cells.size());
  for (std::size_t i = 0; i < cells.size(); ++i)
  {
    Require(cells[i] >= 0 && cells[i] < num_vertices, "vertex {} out of range [0, {})",
            cells[i], num_vertices);
    cones[i] = cells[i] + num_cells;
  }
  const std::vector<int> orientations(cones.size(), 0);
  return Stratify(Symmetrize(BuildFromCones(num_points, cone_sizes, cones, orientations, types)));
}

}  // namespace plexus
