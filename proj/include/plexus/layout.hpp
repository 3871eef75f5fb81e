// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_LAYOUT_HPP
#define PLEXUS_LAYOUT_HPP

#include <vector>

#include "plexus/types.hpp"

namespace plexus
{

// Contiguous ownership ranges of a global index set [0, N) over ranks.
class Layout
{
public:
  Layout() = default;
  // offsets has size + 1 nondecreasing entries from 0 to N.
  explicit Layout(std::vector<GlobalIndex> offsets);

  int NumRanks() const { return static_cast<int>(offsets_.size()) - 1; }
  GlobalIndex GlobalSize() const { return offsets_.back(); }
  GlobalIndex Start(int rank) const { return offsets_.at(rank); }
  GlobalIndex End(int rank) const { return offsets_.at(rank + 1); }
  GlobalIndex LocalSize(int rank) const { return End(rank) - Start(rank); }

  // Rank whose range contains `index`.
  int Owner(GlobalIndex index) const;

  const std::vector<GlobalIndex> &Offsets() const { return offsets_; }
  bool operator==(const Layout &) const = default;

private:
  std::vector<GlobalIndex> offsets_{0};
};

// Splits [0, N) into `size` chunks whose lengths differ by at most one, the longer chunks
// on the lower ranks.
Layout LayoutChunks(GlobalIndex global_size, int size);

}  // namespace plexus

#endif  // PLEXUS_LAYOUT_HPP
