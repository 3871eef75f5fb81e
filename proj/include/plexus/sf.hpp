// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_SF_HPP
#define PLEXUS_SF_HPP

#include <algorithm>
#include <span>
#include <vector>

#include "plexus/comm.hpp"
#include "plexus/types.hpp"

namespace plexus
{

struct SfLeaf
{
  Point local = -1;
  RemotePoint root;

  auto operator<=>(const SfLeaf &) const = default;
};

//
// Star forest: a one-sided description of shared points. Every rank lists its leaves, the
// local points that are copies of a root owned elsewhere, as (local point, (owner rank,
// owner point)). Roots do not know their leaves; Invert() recovers that. The forest is
// purely a communication pattern, so every operation takes its data buffers as arguments
// and works for any trivially copyable element type with `bs` entries per point.
//
// An atomic fetch-and-op is obtained by composing Reduce and Bcast.
//
class StarForest
{
public:
  StarForest() = default;
  // Leaves are sorted by local point; a local point may appear at most once.
  StarForest(Point num_roots, std::vector<SfLeaf> leaves);

  Point NumRoots() const { return num_roots_; }
  const std::vector<SfLeaf> &Leaves() const { return leaves_; }
  std::size_t NumLeaves() const { return leaves_.size(); }

  // Owner of `local` if it is a leaf.
  const SfLeaf *FindLeaf(Point local) const;
  // Largest leaf local point + 1 (0 when there are no leaves).
  Point LeafExtent() const;

  // True if some leaf points at `rank` itself (legal for layout forests, not for point SFs).
  bool HasSelfLeaves(int rank) const;

  bool operator==(const StarForest &) const = default;

private:
  Point num_roots_ = 0;
  std::vector<SfLeaf> leaves_;
};

namespace detail
{

// Leaf indices grouped by owner rank, each group in local point order.
std::vector<std::vector<std::size_t>> LeavesByRank(const StarForest &sf, int size);

void CheckRootIndex(const StarForest &sf, Point root);

}  // namespace detail

struct SumOp
{
  template <typename T>
  T operator()(const T &root, const T &leaf) const
  {
    return root + leaf;
  }
};

struct ReplaceOp
{
  template <typename T>
  T operator()(const T &, const T &leaf) const
  {
    return leaf;
  }
};

// Keeps the larger value; on RemotePoint this is MPI_MAXLOC-style selection of the
// highest rank.
struct MaxLocOp
{
  template <typename T>
  T operator()(const T &root, const T &leaf) const
  {
    return root < leaf ? leaf : root;
  }
};

// Copies root values to every leaf. `root_data` is indexed by root point, `leaf_data` by
// local leaf point; non-leaf entries of `leaf_data` are left untouched.
template <typename T>
void Bcast(Communicator &comm, const StarForest &sf, std::span<const T> root_data,
           std::span<T> leaf_data, int bs = 1)
{
  const auto &leaves = sf.Leaves();
  Require(leaf_data.size() >= static_cast<std::size_t>(sf.LeafExtent()) * bs,
          "leaf buffer too small for the star forest");
  const auto by_rank = detail::LeavesByRank(sf, comm.Size());
  std::vector<std::vector<Point>> requests(comm.Size());
  for (int r = 0; r < comm.Size(); ++r)
  {
    for (auto i : by_rank[r])
    {
      requests[r].push_back(leaves[i].root.point);
    }
  }
  const auto incoming = AllToAll(comm, requests);
  std::vector<std::vector<T>> replies(comm.Size());
  for (int r = 0; r < comm.Size(); ++r)
  {
    for (auto root : incoming[r])
    {
      detail::CheckRootIndex(sf, root);
      Require(root_data.size() >= static_cast<std::size_t>(root + 1) * bs,
              "root buffer too small for root {}", root);
      replies[r].insert(replies[r].end(), root_data.begin() + root * bs,
                        root_data.begin() + (root + 1) * bs);
    }
  }
  const auto answers = AllToAll(comm, replies);
  for (int r = 0; r < comm.Size(); ++r)
  {
    for (std::size_t k = 0; k < by_rank[r].size(); ++k)
    {
      const Point local = leaves[by_rank[r][k]].local;
      std::copy_n(answers[r].begin() + k * bs, bs, leaf_data.begin() + local * bs);
    }
  }
}

// Combines leaf values into root values with `op(root, leaf)`, visiting contributions in
// (source rank, leaf point) order.
template <typename T, typename Op>
void Reduce(Communicator &comm, const StarForest &sf, std::span<const T> leaf_data,
            std::span<T> root_data, Op op, int bs = 1)
{
  const auto &leaves = sf.Leaves();
  Require(leaf_data.size() >= static_cast<std::size_t>(sf.LeafExtent()) * bs,
          "leaf buffer too small for the star forest");
  const auto by_rank = detail::LeavesByRank(sf, comm.Size());
  std::vector<std::vector<Point>> targets(comm.Size());
  std::vector<std::vector<T>> values(comm.Size());
  for (int r = 0; r < comm.Size(); ++r)
  {
    for (auto i : by_rank[r])
    {
      targets[r].push_back(leaves[i].root.point);
      values[r].insert(values[r].end(), leaf_data.begin() + leaves[i].local * bs,
                       leaf_data.begin() + (leaves[i].local + 1) * bs);
    }
  }
  const auto in_targets = AllToAll(comm, targets);
  const auto in_values = AllToAll(comm, values);
  for (int r = 0; r < comm.Size(); ++r)
  {
    for (std::size_t k = 0; k < in_targets[r].size(); ++k)
    {
      const Point root = in_targets[r][k];
      detail::CheckRootIndex(sf, root);
      Require(root_data.size() >= static_cast<std::size_t>(root + 1) * bs,
              "root buffer too small for root {}", root);
      for (int j = 0; j < bs; ++j)
      {
        auto &slot = root_data[root * bs + j];
        slot = op(slot, in_values[r][k * bs + j]);
      }
    }
  }
}

// Root-side view of the forest: for every root its leaves as (rank, point), sorted.
std::vector<std::vector<RemotePoint>> Invert(Communicator &comm, const StarForest &sf);

// Concatenates the `bs`-sized payloads of each root's leaves at the root, ordered by
// (leaf rank, leaf point).
template <typename T>
std::vector<std::vector<T>> Gather(Communicator &comm, const StarForest &sf,
                                   std::span<const T> leaf_data, int bs = 1)
{
  const auto &leaves = sf.Leaves();
  Require(leaf_data.size() >= static_cast<std::size_t>(sf.LeafExtent()) * bs,
          "leaf buffer too small for the star forest");
  const auto by_rank = detail::LeavesByRank(sf, comm.Size());
  std::vector<std::vector<Point>> targets(comm.Size());
  std::vector<std::vector<T>> values(comm.Size());
  for (int r = 0; r < comm.Size(); ++r)
  {
    for (auto i : by_rank[r])
    {
      targets[r].push_back(leaves[i].root.point);
      values[r].insert(values[r].end(), leaf_data.begin() + leaves[i].local * bs,
                       leaf_data.begin() + (leaves[i].local + 1) * bs);
    }
  }
  const auto in_targets = AllToAll(comm, targets);
  const auto in_values = AllToAll(comm, values);
  std::vector<std::vector<T>> gathered(sf.NumRoots());
  for (int r = 0; r < comm.Size(); ++r)
  {
    for (std::size_t k = 0; k < in_targets[r].size(); ++k)
    {
      const Point root = in_targets[r][k];
      detail::CheckRootIndex(sf, root);
      gathered[root].insert(gathered[root].end(), in_values[r].begin() + k * bs,
                            in_values[r].begin() + (k + 1) * bs);
    }
  }
  return gathered;
}

// Inverse of Gather: root lists hold one `bs`-sized block per leaf in (rank, point) order.
// Returns a buffer indexed by local leaf point (entries of non-leaves are value-initialized).
template <typename T>
std::vector<T> Scatter(Communicator &comm, const StarForest &sf,
                       const std::vector<std::vector<T>> &root_lists, int bs = 1)
{
  Require(root_lists.size() == static_cast<std::size_t>(sf.NumRoots()),
          "scatter needs {} root lists, got {}", sf.NumRoots(), root_lists.size());
  const auto leaves_of_root = Invert(comm, sf);
  std::vector<std::vector<T>> outgoing(comm.Size());
  std::vector<std::vector<std::pair<Point, Point>>> order(comm.Size());
  for (Point root = 0; root < sf.NumRoots(); ++root)
  {
    const auto &leaves = leaves_of_root[root];
    Require(root_lists[root].size() == leaves.size() * bs,
            "root {} has {} leaves but a list of {} entries (block size {})", root,
            leaves.size(), root_lists[root].size(), bs);
    for (std::size_t k = 0; k < leaves.size(); ++k)
    {
      order[leaves[k].rank].push_back({leaves[k].point, static_cast<Point>(outgoing[leaves[k].rank].size() / bs)});
      outgoing[leaves[k].rank].insert(outgoing[leaves[k].rank].end(),
                                      root_lists[root].begin() + k * bs,
                                      root_lists[root].begin() + (k + 1) * bs);
    }
  }
  // Per destination, send blocks sorted by destination leaf point.
  std::vector<std::vector<T>> sorted(comm.Size());
  for (int r = 0; r < comm.Size(); ++r)
  {
    std::sort(order[r].begin(), order[r].end());
    for (const auto &[leaf, block] : order[r])
    {
      sorted[r].insert(sorted[r].end(), outgoing[r].begin() + block * bs,
                       outgoing[r].begin() + (block + 1) * bs);
    }
  }
  const auto incoming = AllToAll(comm, sorted);
  std::vector<T> leaf_data(static_cast<std::size_t>(sf.LeafExtent()) * bs);
  const auto by_rank = detail::LeavesByRank(sf, comm.Size());
  for (int r = 0; r < comm.Size(); ++r)
  {
    Require(incoming[r].size() == by_rank[r].size() * bs,
            "scatter from rank {} delivered {} entries for {} leaves", r, incoming[r].size(),
            by_rank[r].size());
    for (std::size_t k = 0; k < by_rank[r].size(); ++k)
    {
      const Point local = sf.Leaves()[by_rank[r][k]].local;
      std::copy_n(incoming[r].begin() + k * bs, bs, leaf_data.begin() + local * bs);
    }
  }
  return leaf_data;
}

}  // namespace plexus

#endif  // PLEXUS_SF_HPP
