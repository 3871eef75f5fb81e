// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/sf.hpp"

namespace plexus
{

StarForest::StarForest(Point num_roots, std::vector<SfLeaf> leaves)
  : num_roots_(num_roots), leaves_(std::move(leaves))
{
  Require(num_roots_ >= 0, "negative root count {}", num_roots_);
  std::sort(leaves_.begin(), leaves_.end());
  for (std::size_t i = 0; i < leaves_.size(); ++i)
  {
    const auto &leaf = leaves_[i];
    Require(leaf.local >= 0, "negative leaf point {}", leaf.local);
    Require(leaf.root.rank >= 0 && leaf.root.point >= 0, "leaf {} has an invalid root",
            leaf.local);
    Require(i == 0 || leaves_[i - 1].local != leaf.local, "point {} is a leaf twice",
            leaf.local);
  }
}

const SfLeaf *StarForest::FindLeaf(Point local) const
{
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), local,
                             [](const SfLeaf &leaf, Point p) { return leaf.local < p; });
  if (it == leaves_.end() || it->local != local)
  {
    return nullptr;
  }
  return &*it;
}

Point StarForest::LeafExtent() const { return leaves_.empty() ? 0 : leaves_.back().local + 1; }

bool StarForest::HasSelfLeaves(int rank) const
{
  return std::any_of(leaves_.begin(), leaves_.end(),
                     [rank](const SfLeaf &leaf) { return leaf.root.rank == rank; });
}

namespace detail
{

std::vector<std::vector<std::size_t>> LeavesByRank(const StarForest &sf, int size)
{
  std::vector<std::vector<std::size_t>> by_rank(size);
  const auto &leaves = sf.Leaves();
  for (std::size_t i = 0; i < leaves.size(); ++i)
  {
    Require(leaves[i].root.rank < size, "leaf {} points at rank {} of {}", leaves[i].local,
            leaves[i].root.rank, size);
    by_rank[leaves[i].root.rank].push_back(i);
  }
  return by_rank;
}

void CheckRootIndex(const StarForest &sf, Point root)
{
  Require(root >= 0 && root < sf.NumRoots(), "remote root {} out of range [0, {})", root,
          sf.NumRoots());
}

}  // namespace detail

std::vector<std::vector<RemotePoint>> Invert(Communicator &comm, const StarForest &sf)
{
  const auto by_rank = detail::LeavesByRank(sf, comm.Size());
  std::vector<std::vector<Point>> outgoing(comm.Size());
  for (int r = 0; r < comm.Size(); ++r)
  {
    for (auto i : by_rank[r])
    {
      outgoing[r].push_back(sf.Leaves()[i].root.point);
      outgoing[r].push_back(sf.Leaves()[i].local);
    }
  }
  const auto incoming = AllToAll(comm, outgoing);
  std::vector<std::vector<RemotePoint>> leaves_of_root(sf.NumRoots());
  for (int r = 0; r < comm.Size(); ++r)
  {
    for (std::size_t k = 0; k + 1 < incoming[r].size(); k += 2)
    {
      const Point root = incoming[r][k];
      detail::CheckRootIndex(sf, root);
      leaves_of_root[root].push_back({r, incoming[r][k + 1]});
    }
  }
  for (auto &leaves : leaves_of_root)
  {
    std::sort(leaves.begin(), leaves.end());
  }
  return leaves_of_root;
}

}  // namespace plexus
