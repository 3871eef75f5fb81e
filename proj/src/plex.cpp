// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/plex.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "plexus/error.hpp"
#include "plexus/orientation.hpp"

namespace plexus
{

void Plex::CheckPoint(Point p) const
{
  Require(p >= 0 && p < NumPoints(), "point {} out of range [0, {})", p, NumPoints());
}

int Plex::ConeSize(Point p) const
{
  CheckPoint(p);
  return static_cast<int>(cone_offsets_[p + 1] - cone_offsets_[p]);
}

std::span<const Point> Plex::Cone(Point p) const
{
  CheckPoint(p);
  return {cones_.data() + cone_offsets_[p], cone_offsets_[p + 1] - cone_offsets_[p]};
}

std::span<const int> Plex::ConeOrientations(Point p) const
{
  CheckPoint(p);
  return {orientations_.data() + cone_offsets_[p], cone_offsets_[p + 1] - cone_offsets_[p]};
}

int Plex::SupportSize(Point p) const
{
  CheckPoint(p);
  Require(HasSupports(), "supports have not been computed");
  return static_cast<int>(support_offsets_[p + 1] - support_offsets_[p]);
}

std::span<const Point> Plex::Support(Point p) const
{
  CheckPoint(p);
  Require(HasSupports(), "supports have not been computed");
  return {supports_.data() + support_offsets_[p],
          support_offsets_[p + 1] - support_offsets_[p]};
}

PointRange Plex::Stratum(int height) const
{
  Require(stratified_, "plex has not been stratified");
  Require(height >= 0 && height < NumStrata(), "height {} out of range [0, {})", height,
          NumStrata());
  return strata_[height];
}

int Plex::Height(Point p) const
{
  CheckPoint(p);
  Require(stratified_, "plex has not been stratified");
  for (int h = 0; h < NumStrata(); ++h)
  {
    if (strata_[h].contains(p))
    {
      return h;
    }
  }
  Fail("point {} is in no stratum", p);
}

PolytopeType Plex::Type(Point p) const
{
  CheckPoint(p);
  return types_[p];
}

void Plex::SetType(Point p, PolytopeType type)
{
  CheckPoint(p);
  types_[p] = type;
}

void Plex::SetCone(Point p, std::span<const Point> cone, std::span<const int> orientations)
{
  CheckPoint(p);
  const auto begin = cone_offsets_[p];
  const auto size = cone_offsets_[p + 1] - begin;
  Require(cone.size() == size && orientations.size() == size,
          "cone of point {} has arity {}, got {} points and {} orientations", p, size,
          cone.size(), orientations.size());
  if (HasSupports())
  {
    Require(std::is_permutation(cone.begin(), cone.end(), cones_.begin() + begin),
            "new cone of point {} is not a permutation of the old one", p);
  }
  for (std::size_t i = 0; i < size; ++i)
  {
    Require(cone[i] >= 0 && cone[i] < NumPoints(), "cone point {} out of range", cone[i]);
    cones_[begin + i] = cone[i];
    orientations_[begin + i] = orientations[i];
  }
}

void Plex::SetConeOrientation(Point p, int slot, int orientation)
{
  CheckPoint(p);
  Require(slot >= 0 && slot < ConeSize(p), "cone slot {} out of range for point {}", slot, p);
  orientations_[cone_offsets_[p] + slot] = orientation;
}

Plex BuildFromCones(Point num_points, std::span<const int> cone_sizes,
                    std::span<const Point> cones, std::span<const int> orientations,
                    std::span<const PolytopeType> types)
{
  Require(num_points >= 0, "negative point count {}", num_points);
  Require(cone_sizes.size() == static_cast<std::size_t>(num_points),
          "{} cone sizes given for {} points", cone_sizes.size(), num_points);
  Require(types.empty() || types.size() == static_cast<std::size_t>(num_points),
          "{} polytope types given for {} points", types.size(), num_points);
  Plex plex;
  plex.cone_offsets_.resize(num_points + 1);
  plex.cone_offsets_[0] = 0;
  for (Point p = 0; p < num_points; ++p)
  {
    Require(cone_sizes[p] >= 0, "negative cone size for point {}", p);
    plex.cone_offsets_[p + 1] = plex.cone_offsets_[p] + cone_sizes[p];
  }
  const auto total = plex.cone_offsets_.back();
  Require(cones.size() == total, "cone sizes add up to {} but {} cone points given", total,
          cones.size());
  Require(orientations.size() == total, "{} orientations given for {} cone points",
          orientations.size(), total);
  for (auto q : cones)
  {
    Require(q >= 0 && q < num_points, "cone point {} out of range [0, {})", q, num_points);
  }
  plex.cones_.assign(cones.begin(), cones.end());
  plex.orientations_.assign(orientations.begin(), orientations.end());
  plex.types_.resize(num_points);
  for (Point p = 0; p < num_points; ++p)
  {
    if (!types.empty())
    {
      plex.types_[p] = types[p];
    }
    else
    {
      plex.types_[p] = cone_sizes[p] == 0 ? PolytopeType::vertex : PolytopeType::unknown;
    }
  }
  return plex;
}

Plex Symmetrize(Plex plex)
{
  const Point n = plex.NumPoints();
  std::vector<std::size_t> offsets(n + 1, 0);
  for (auto q : plex.cones_)
  {
    ++offsets[q + 1];
  }
  for (Point p = 0; p < n; ++p)
  {
    offsets[p + 1] += offsets[p];
  }
  std::vector<Point> supports(plex.cones_.size());
  std::vector<std::size_t> fill(offsets.begin(), offsets.end() - 1);
  for (Point p = 0; p < n; ++p)
  {
    for (auto q : plex.Cone(p))
    {
      supports[fill[q]++] = p;
    }
  }
  plex.support_offsets_ = std::move(offsets);
  plex.supports_ = std::move(supports);
  return plex;
}

Plex Stratify(Plex plex)
{
  if (!plex.HasSupports())
  {
    plex = Symmetrize(std::move(plex));
  }
  const Point n = plex.NumPoints();
  std::vector<int> height(n, 0);
  std::vector<int> pending(n);
  std::deque<Point> ready;
  for (Point p = 0; p < n; ++p)
  {
    pending[p] = plex.SupportSize(p);
    if (pending[p] == 0)
    {
      ready.push_back(p);
    }
  }
  Point visited = 0;
  while (!ready.empty())
  {
    const Point p = ready.front();
    ready.pop_front();
    ++visited;
    for (auto q : plex.Cone(p))
    {
      height[q] = std::max(height[q], height[p] + 1);
      if (--pending[q] == 0)
      {
        ready.push_back(q);
      }
    }
  }
  Require(visited == n, "cone relation contains a cycle ({} of {} points unreachable)",
          n - visited, n);

  const int num_strata = n == 0 ? 0 : *std::max_element(height.begin(), height.end()) + 1;
  std::vector<PointRange> strata(num_strata,
                                 PointRange{std::numeric_limits<Point>::max(), -1});
  std::vector<Point> counts(num_strata, 0);
  for (Point p = 0; p < n; ++p)
  {
    auto &range = strata[height[p]];
    range.begin = std::min(range.begin, p);
    range.end = std::max(range.end, p + 1);
    ++counts[height[p]];
  }
  for (int h = 0; h < num_strata; ++h)
  {
    Require(strata[h].size() == counts[h],
            "points of height {} do not form a contiguous range", h);
  }
  plex.strata_ = std::move(strata);
  plex.stratified_ = true;
  return plex;
}

namespace
{

template <typename Next>
std::vector<Point> Traverse(const Plex &plex, Point p, Next next)
{
  std::vector<Point> order{p};
  std::vector<Point> seen{p};
  for (std::size_t i = 0; i < order.size(); ++i)
  {
    for (auto q : next(order[i]))
    {
      auto pos = std::lower_bound(seen.begin(), seen.end(), q);
      if (pos == seen.end() || *pos != q)
      {
        seen.insert(pos, q);
        order.push_back(q);
      }
    }
  }
  return order;
}

}  // namespace

std::vector<Point> Closure(const Plex &plex, Point p)
{
  Require(p >= 0 && p < plex.NumPoints(), "point {} out of range", p);
  return Traverse(plex, p, [&](Point q) { return plex.Cone(q); });
}

std::vector<Point> Star(const Plex &plex, Point p)
{
  Require(p >= 0 && p < plex.NumPoints(), "point {} out of range", p);
  return Traverse(plex, p, [&](Point q) { return plex.Support(q); });
}

std::vector<Point> VertexTuple(const Plex &plex, Point p)
{
  const auto cone = plex.Cone(p);
  if (cone.empty())
  {
    return {p};
  }
  const bool vertex_cone =
      std::all_of(cone.begin(), cone.end(), [&](Point q) { return plex.ConeSize(q) == 0; });
  if (vertex_cone)
  {
    return {cone.begin(), cone.end()};
  }
  const auto orientations = plex.ConeOrientations(p);
  const int n = static_cast<int>(cone.size());
  std::vector<Point> vertices(n);
  std::vector<Point> tails(n);
  for (int i = 0; i < n; ++i)
  {
    const auto edge = plex.Cone(cone[i]);
    Require(edge.size() == 2, "point {} has a cone point {} that is neither a vertex nor a segment",
            p, cone[i]);
    const auto oriented = ApplyOrientation(edge, orientations[i]);
    vertices[i] = oriented[0];
    tails[i] = oriented[1];
  }
  for (int i = 0; i < n; ++i)
  {
    Require(tails[i] == vertices[(i + 1) % n],
            "oriented edges of point {} do not form a closed polygon", p);
  }
  return vertices;
}

std::vector<Point> CellVertices(const Plex &plex, Point cell)
{
  const auto cone = plex.Cone(cell);
  const bool vertex_cone =
      std::all_of(cone.begin(), cone.end(), [&](Point q) { return plex.ConeSize(q) == 0; });
  if (vertex_cone)
  {
    return {cone.begin(), cone.end()};
  }
  const auto type = plex.Type(cell);
  Require(type != PolytopeType::unknown, "cell {} has no polytope type", cell);
  Require(static_cast<int>(cone.size()) == NumFacets(type),
          "cell {} of type {} has {} facets, expected {}", cell, ToString(type), cone.size(),
          NumFacets(type));
  const auto orientations = plex.ConeOrientations(cell);
  std::vector<Point> vertices(NumVertices(type), -1);
  for (int c = 0; c < static_cast<int>(cone.size()); ++c)
  {
    const auto facet = VertexTuple(plex, cone[c]);
    const auto oriented = ApplyOrientation(facet, orientations[c]);
    const auto local = FacetVertices(type, c);
    Require(oriented.size() == local.size(), "facet {} of cell {} has arity {}, expected {}", c,
            cell, oriented.size(), local.size());
    for (std::size_t j = 0; j < local.size(); ++j)
    {
      auto &v = vertices[local[j]];
      Require(v < 0 || v == oriented[j],
              "oriented facets of cell {} disagree on local vertex {}", cell, local[j]);
      v = oriented[j];
    }
  }
  for (auto v : vertices)
  {
    Require(v >= 0, "facets of cell {} do not cover all its vertices", cell);
  }
  return vertices;
}

long EulerCharacteristic(const Plex &plex)
{
  long chi = 0;
  const int num_strata = plex.NumStrata();
  for (int h = 0; h < num_strata; ++h)
  {
    const int dim = num_strata - 1 - h;
    chi += (dim % 2 == 0 ? 1 : -1) * static_cast<long>(plex.Stratum(h).size());
  }
  return chi;
}

}  // namespace plexus
