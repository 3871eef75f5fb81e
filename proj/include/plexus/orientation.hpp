// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_ORIENTATION_HPP
#define PLEXUS_ORIENTATION_HPP

#include <span>
#include <vector>

#include "plexus/error.hpp"

namespace plexus
{

// Relative orientation of a cone point with respect to the point covering it, for a cone
// point whose own cone has n entries. An orientation is a starting index S in [0, n) and
// a direction D (+1 forward, -1 reverse), packed into one signed integer:
//   O = S        if D = +1
//   O = -S - 1   if D = -1
// so that O lies in [-n, n). The packed values number the elements of the dihedral group
// of an n-gon (for n = 2 the group has two distinct actions, 0 and -2).
struct OrientationParts
{
  int start = 0;
  int direction = 1;

  bool operator==(const OrientationParts &) const = default;
};

int EncodeOrientation(int start, int direction, int n);
OrientationParts DecodeOrientation(int orientation, int n);

inline bool IsValidOrientation(int orientation, int n)
{
  return n > 0 && orientation >= -n && orientation < n;
}

// Distinct group actions for an n-tuple in canonical encoding: {0} for n = 1,
// {0, -2} for n = 2, and all of [-n, n) otherwise.
std::vector<int> OrientationElements(int n);

// Canonical representative of the action of `orientation` (differs from the input only
// for n <= 2, where several encodings act identically).
int CanonicalOrientation(int orientation, int n);

// Applying `first` and then `second` equals applying ComposeOrientations(n, first, second).
int ComposeOrientations(int n, int first, int second);
int InvertOrientation(int n, int orientation);

// out[i] = in[(S + D*i) mod n]
template <typename T>
void ApplyOrientation(std::span<const T> in, int orientation, std::span<T> out)
{
  const int n = static_cast<int>(in.size());
  Require(out.size() == in.size(), "orientation output arity {} != input arity {}",
          out.size(), in.size());
  if (n == 0)
  {
    return;
  }
  const auto [start, direction] = DecodeOrientation(orientation, n);
  for (int i = 0; i < n; ++i)
  {
    out[i] = in[((start + direction * i) % n + n) % n];
  }
}

template <typename T>
std::vector<T> ApplyOrientation(std::span<const T> in, int orientation)
{
  std::vector<T> out(in.size());
  ApplyOrientation(in, orientation, std::span<T>(out));
  return out;
}

template <typename T>
std::vector<T> ApplyOrientation(const std::vector<T> &in, int orientation)
{
  return ApplyOrientation(std::span<const T>(in), orientation);
}

// Group element O with ApplyOrientation(stored, O) == candidate. Throws if the two tuples
// are not related by a dihedral action (in particular if their entries differ).
template <typename T>
int RelativeOrientation(std::span<const T> stored, std::span<const T> candidate)
{
  const int n = static_cast<int>(stored.size());
  Require(candidate.size() == stored.size(), "cannot orient a {}-tuple against a {}-tuple",
          candidate.size(), stored.size());
  Require(n > 0, "cannot orient an empty tuple");
  for (int o : OrientationElements(n))
  {
    const auto [start, direction] = DecodeOrientation(o, n);
    bool match = true;
    for (int i = 0; i < n && match; ++i)
    {
      match = stored[((start + direction * i) % n + n) % n] == candidate[i];
    }
    if (match)
    {
      return o;
    }
  }
  Fail("tuples of arity {} are not related by any orientation", n);
}

template <typename T>
int RelativeOrientation(const std::vector<T> &stored, const std::vector<T> &candidate)
{
  return RelativeOrientation(std::span<const T>(stored), std::span<const T>(candidate));
}

}  // namespace plexus

#endif  // PLEXUS_ORIENTATION_HPP
