// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_TYPES_HPP
#define PLEXUS_TYPES_HPP

#include <cstdint>

namespace plexus
{

// Rank-local DAG point number.
using Point = std::int32_t;

// Index into a global (rank-count independent) numbering of cells or vertices.
using GlobalIndex = std::int64_t;

// Half-open range of consecutive points.
struct PointRange
{
  Point begin = 0;
  Point end = 0;

  Point size() const { return end - begin; }
  bool contains(Point p) const { return p >= begin && p < end; }
  bool operator==(const PointRange &) const = default;
};

// A point on some rank, in that rank's own numbering.
struct RemotePoint
{
  int rank = -1;
  Point point = -1;

  auto operator<=>(const RemotePoint &) const = default;
};

}  // namespace plexus

#endif  // PLEXUS_TYPES_HPP
