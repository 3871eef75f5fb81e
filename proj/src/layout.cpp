// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/layout.hpp"

#include <algorithm>

#include "plexus/error.hpp"

namespace plexus
{

Layout::Layout(std::vector<GlobalIndex> offsets) : offsets_(std::move(offsets))
{
  Require(offsets_.size() >= 2 && offsets_.front() == 0, "layout offsets must start at 0");
  Require(std::is_sorted(offsets_.begin(), offsets_.end()), "layout offsets must be nondecreasing");
}

int Layout::Owner(GlobalIndex index) const
{
  Require(index >= 0 && index < GlobalSize(), "index {} out of layout range [0, {})", index,
          GlobalSize());
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
  return static_cast<int>(it - offsets_.begin()) - 1;
}

Layout LayoutChunks(GlobalIndex global_size, int size)
{
  Require(size >= 1, "layout needs at least one rank, got {}", size);
  Require(global_size >= 0, "negative layout size {}", global_size);
  std::vector<GlobalIndex> offsets(size + 1, 0);
  const GlobalIndex base = global_size / size;
  const GlobalIndex extra = global_size % size;
  for (int r = 0; r < size; ++r)
  {
    offsets[r + 1] = offsets[r] + base + (r < extra ? 1 : 0);
  }
  return Layout(std::move(offsets));
}

}  // namespace plexus
