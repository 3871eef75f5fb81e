// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/orientation.hpp"

#include <array>
#include <numeric>

namespace plexus
{

namespace
{

constexpr int kMaxTabulated = 8;

// Composition tables for n = 1..8, indexed by (first + n) * 2n + (second + n). Derived by
// acting on the identity tuple, independently of the start/direction arithmetic.
struct CompositionTables
{
  std::array<std::vector<int>, kMaxTabulated + 1> table;

  CompositionTables()
  {
    for (int n = 1; n <= kMaxTabulated; ++n)
    {
      std::vector<int> identity(n);
      std::iota(identity.begin(), identity.end(), 0);
      auto &t = table[n];
      t.assign(4 * n * n, 0);
      for (int a = -n; a < n; ++a)
      {
        const auto once = ApplyOrientation(identity, a);
        for (int b = -n; b < n; ++b)
        {
          const auto twice = ApplyOrientation(once, b);
          t[(a + n) * 2 * n + (b + n)] = RelativeOrientation(identity, twice);
        }
      }
    }
  }
};

const CompositionTables &Tables()
{
  static const CompositionTables tables;
  return tables;
}

}  // namespace

int EncodeOrientation(int start, int direction, int n)
{
  Require(start >= 0 && start < n, "orientation start {} out of range [0, {})", start, n);
  Require(direction == 1 || direction == -1, "orientation direction must be +1 or -1, got {}",
          direction);
  return direction == 1 ? start : -start - 1;
}

OrientationParts DecodeOrientation(int orientation, int n)
{
  Require(IsValidOrientation(orientation, n), "orientation {} out of range [-{}, {})",
          orientation, n, n);
  if (orientation >= 0)
  {
    return {orientation, 1};
  }
  return {-orientation - 1, -1};
}

std::vector<int> OrientationElements(int n)
{
  Require(n > 0, "orientation group of an empty tuple");
  if (n == 1)
  {
    return {0};
  }
  if (n == 2)
  {
    return {0, -2};
  }
  std::vector<int> elements;
  elements.reserve(2 * n);
  for (int o = 0; o < n; ++o)
  {
    elements.push_back(o);
  }
  for (int o = -1; o >= -n; --o)
  {
    elements.push_back(o);
  }
  return elements;
}

int CanonicalOrientation(int orientation, int n)
{
  const auto [start, direction] = DecodeOrientation(orientation, n);
  if (n == 1)
  {
    return 0;
  }
  if (n == 2)
  {
    // Only the image of slot 0 matters for a pair.
    return start == 0 ? 0 : -2;
  }
  return EncodeOrientation(start, direction, n);
}

int ComposeOrientations(int n, int first, int second)
{
  Require(IsValidOrientation(first, n) && IsValidOrientation(second, n),
          "cannot compose orientations {} and {} for arity {}", first, second, n);
  if (n <= kMaxTabulated)
  {
    return Tables().table[n][(first + n) * 2 * n + (second + n)];
  }
  const auto a = DecodeOrientation(first, n);
  const auto b = DecodeOrientation(second, n);
  const int start = ((a.start + a.direction * b.start) % n + n) % n;
  return EncodeOrientation(start, a.direction * b.direction, n);
}

int InvertOrientation(int n, int orientation)
{
  const auto [start, direction] = DecodeOrientation(orientation, n);
  const int inverse_start = ((-direction * start) % n + n) % n;
  return CanonicalOrientation(EncodeOrientation(inverse_start, direction, n), n);
}

}  // namespace plexus
