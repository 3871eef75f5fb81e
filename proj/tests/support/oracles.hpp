// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

// Reference computations for the tests. They only rely on the plex accessors and on raw
// cell-vertex lists; none of the library's interpolation, orientation or communication
// code is reused here.

#ifndef PLEXUS_TESTS_ORACLES_HPP
#define PLEXUS_TESTS_ORACLES_HPP

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "plexus/plex.hpp"

namespace plexus::oracle
{

using VertexSet = std::vector<GlobalIndex>;

struct EntityCounts
{
  long vertices = 0;
  long edges = 0;
  long faces = 0;
  long cells = 0;
  bool operator==(const EntityCounts &) const = default;
};

// Hexahedron corners 0-3 bottom (counter-clockwise), 4-7 top.
inline constexpr std::array<std::array<int, 2>, 12> kHexEdges = {{{0, 1},
                                                                  {1, 2},
                                                                  {2, 3},
                                                                  {3, 0},
                                                                  {4, 5},
                                                                  {5, 6},
                                                                  {6, 7},
                                                                  {7, 4},
                                                                  {0, 4},
                                                                  {1, 5},
                                                                  {2, 6},
                                                                  {3, 7}}};
inline constexpr std::array<std::array<int, 4>, 6> kHexFaces = {{{0, 1, 2, 3},
                                                                 {4, 5, 6, 7},
                                                                 {0, 1, 5, 4},
                                                                 {1, 2, 6, 5},
                                                                 {2, 3, 7, 6},
                                                                 {3, 0, 4, 7}}};

// Distinct vertices, edges and faces of a hexahedral mesh given as rows of 8 vertex ids.
inline EntityCounts EnumerateHexEntities(const std::vector<GlobalIndex> &topology)
{
  std::set<VertexSet> vertices;
  std::set<VertexSet> edges;
  std::set<VertexSet> faces;
  const std::size_t num_cells = topology.size() / 8;
  for (std::size_t c = 0; c < num_cells; ++c)
  {
    const auto *v = topology.data() + 8 * c;
    for (int i = 0; i < 8; ++i)
    {
      vertices.insert({v[i]});
    }
    for (const auto &e : kHexEdges)
    {
      VertexSet key = {v[e[0]], v[e[1]]};
      std::sort(key.begin(), key.end());
      edges.insert(key);
    }
    for (const auto &f : kHexFaces)
    {
      VertexSet key = {v[f[0]], v[f[1]], v[f[2]], v[f[3]]};
      std::sort(key.begin(), key.end());
      faces.insert(key);
    }
  }
  return {static_cast<long>(vertices.size()), static_cast<long>(edges.size()),
          static_cast<long>(faces.size()), static_cast<long>(num_cells)};
}

inline EntityCounts CubeCountsClosedForm(long nex)
{
  return {(nex + 1) * (nex + 1) * (nex + 1), 3 * nex * (nex + 1) * (nex + 1),
          3 * nex * nex * (nex + 1), nex * nex * nex};
}

// All points reachable from p along cones, p included (depth-first, no ordering claims).
inline std::set<Point> ReachableClosure(const Plex &plex, Point p)
{
  std::set<Point> seen;
  std::vector<Point> stack = {p};
  while (!stack.empty())
  {
    const Point q = stack.back();
    stack.pop_back();
    if (!seen.insert(q).second)
    {
      continue;
    }
    for (Point r : plex.Cone(q))
    {
      stack.push_back(r);
    }
  }
  return seen;
}

// All points from which p is reachable along cones, p included.
inline std::set<Point> ReachableStar(const Plex &plex, Point p)
{
  std::set<Point> out;
  for (Point q = 0; q < plex.NumPoints(); ++q)
  {
    if (ReachableClosure(plex, q).count(p) != 0)
    {
      out.insert(q);
    }
  }
  return out;
}

// Sorted labels of the vertices (points with empty cones) below p.
inline VertexSet VertexKey(const Plex &plex, Point p, const std::vector<GlobalIndex> &label)
{
  VertexSet key;
  for (Point q : ReachableClosure(plex, p))
  {
    if (plex.ConeSize(q) == 0)
    {
      key.push_back(label[q]);
    }
  }
  std::sort(key.begin(), key.end());
  return key;
}

// Point p's vertices in the order induced by its oriented cone: a segment lists its
// cone, a polygon lists the first vertex of each oriented edge.
inline std::vector<Point> OrientedVertices(const Plex &plex, Point p)
{
  const auto cone = plex.Cone(p);
  if (cone.empty())
  {
    return {p};
  }
  if (plex.ConeSize(cone[0]) == 0)
  {
    return {cone.begin(), cone.end()};
  }
  const auto orientations = plex.ConeOrientations(p);
  std::vector<Point> out;
  for (std::size_t i = 0; i < cone.size(); ++i)
  {
    const auto edge = plex.Cone(cone[i]);
    // An edge with orientation -2 (or -1 in the long encoding) is traversed backwards.
    const bool reversed = orientations[i] < 0;
    out.push_back(reversed ? edge[1] : edge[0]);
  }
  return out;
}

// A tuple read through an orientation code: start S and direction D from
// O = S (D = +1) or O = -S - 1 (D = -1); entry i is in[(S + D i) mod n].
template <typename T>
std::vector<T> Permute(const std::vector<T> &in, int o)
{
  const int n = static_cast<int>(in.size());
  const int start = o >= 0 ? o : -o - 1;
  const int direction = o >= 0 ? 1 : -1;
  std::vector<T> out(n);
  for (int i = 0; i < n; ++i)
  {
    out[i] = in[(((start + direction * i) % n) + n) % n];
  }
  return out;
}

// Labelled vertex tuple of cone slot i of p as seen by p.
inline std::vector<GlobalIndex> SlotTuple(const Plex &plex, Point p, int i,
                                          const std::vector<GlobalIndex> &label)
{
  const Point q = plex.Cone(p)[i];
  std::vector<GlobalIndex> tuple;
  for (Point v : OrientedVertices(plex, q))
  {
    tuple.push_back(label[v]);
  }
  return Permute(tuple, plex.ConeOrientations(p)[i]);
}

// Compares two labelled plexes up to renumbering of the interpolated points. Points are
// identified by the labels of their vertices; cells and vertices must carry equal labels.
// Cone contents must agree as sets, cell cones slot by slot including the oriented
// vertex tuple of each facet. Returns an empty string on success.
inline std::string CompareLabelledPlexes(const Plex &a, const std::vector<GlobalIndex> &label_a,
                                         const Plex &b, const std::vector<GlobalIndex> &label_b)
{
  if (a.NumStrata() != b.NumStrata())
  {
    return "stratum counts differ";
  }
  for (int h = 0; h < a.NumStrata(); ++h)
  {
    if (a.Stratum(h).size() != b.Stratum(h).size())
    {
      return "stratum " + std::to_string(h) + " sizes differ";
    }
  }
  std::map<std::pair<int, VertexSet>, Point> index_b;
  for (Point p = 0; p < b.NumPoints(); ++p)
  {
    VertexSet key = b.ConeSize(p) == 0 ? VertexSet{label_b[p]} : VertexKey(b, p, label_b);
    if (b.Height(p) == 0)
    {
      key.insert(key.begin(), -1 - label_b[p]);
    }
    if (!index_b.emplace(std::make_pair(b.Height(p), key), p).second)
    {
      return "duplicate entity in second plex";
    }
  }
  auto key_a = [&](Point p) {
    VertexSet key = a.ConeSize(p) == 0 ? VertexSet{label_a[p]} : VertexKey(a, p, label_a);
    if (a.Height(p) == 0)
    {
      key.insert(key.begin(), -1 - label_a[p]);
    }
    return std::make_pair(a.Height(p), key);
  };
  std::vector<Point> to_b(a.NumPoints(), -1);
  for (Point p = 0; p < a.NumPoints(); ++p)
  {
    const auto it = index_b.find(key_a(p));
    if (it == index_b.end())
    {
      return "point " + std::to_string(p) + " has no counterpart";
    }
    to_b[p] = it->second;
  }
  for (Point p = 0; p < a.NumPoints(); ++p)
  {
    const Point q = to_b[p];
    std::vector<Point> cone_a;
    for (Point r : a.Cone(p))
    {
      cone_a.push_back(to_b[r]);
    }
    const auto cone_b_span = b.Cone(q);
    std::vector<Point> cone_b(cone_b_span.begin(), cone_b_span.end());
    const bool is_cell = a.Height(p) == 0;
    if (!is_cell)
    {
      std::sort(cone_a.begin(), cone_a.end());
      std::sort(cone_b.begin(), cone_b.end());
    }
    if (cone_a != cone_b)
    {
      return "cone of point " + std::to_string(p) + " differs";
    }
    if (is_cell)
    {
      for (int i = 0; i < a.ConeSize(p); ++i)
      {
        if (SlotTuple(a, p, i, label_a) != SlotTuple(b, q, i, label_b))
        {
          return "oriented facet " + std::to_string(i) + " of cell " + std::to_string(p) +
                 " differs";
        }
      }
    }
  }
  return {};
}

}  // namespace plexus::oracle

#endif  // PLEXUS_TESTS_ORACLES_HPP
