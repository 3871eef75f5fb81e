// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/parallel_interp.hpp"

#include <algorithm>
#include <array>
#include <map>

#include "plexus/error.hpp"
#include "plexus/interpolate.hpp"
#include "plexus/orientation.hpp"

namespace plexus
{

namespace
{

constexpr int kMaxKey = 4;

// A facet candidate sent to the rank that matches it.
struct Candidate
{
  std::array<RemotePoint, kMaxKey> key{};
  int size = 0;
  Point local = -1;
};

// Ownership decision returned to a non-owning holder.
struct Claim
{
  Point local = -1;
  RemotePoint owner;
};

// Reorders the cone of p so that new slot j holds old slot (S + D*j) mod n. Edges of a
// reversed polygon are traversed backwards, which also shifts its vertex tuple by one.
void RotateCone(Plex &plex, Point p, int rotation)
{
  const auto cone = plex.Cone(p);
  const auto orientations = plex.ConeOrientations(p);
  const int n = static_cast<int>(cone.size());
  const auto [start, direction] = DecodeOrientation(rotation, n);
  std::vector<Point> new_cone(n);
  std::vector<int> new_orientations(n);
  const bool vertex_cone =
      std::all_of(cone.begin(), cone.end(), [&](Point q) { return plex.ConeSize(q) == 0; });
  for (int j = 0; j < n; ++j)
  {
    const int src = ((start + direction * j) % n + n) % n;
    new_cone[j] = cone[src];
    new_orientations[j] = vertex_cone || direction == 1
                              ? orientations[src]
                              : ComposeOrientations(2, orientations[src], -2);
  }
  plex.SetCone(p, new_cone, new_orientations);

  const int vertex_rotation = vertex_cone || direction == 1
                                  ? rotation
                                  : EncodeOrientation((start + 1) % n, -1, n);
  const int inverse = InvertOrientation(n, vertex_rotation);
  for (auto s : plex.Support(p))
  {
    const auto s_cone = plex.Cone(s);
    for (int c = 0; c < static_cast<int>(s_cone.size()); ++c)
    {
      if (s_cone[c] == p)
      {
        plex.SetConeOrientation(
            s, c, ComposeOrientations(n, inverse, plex.ConeOrientations(s)[c]));
      }
    }
  }
}

}  // namespace

std::vector<RemotePoint> PointOwners(const Plex &plex, const StarForest &sf, int rank)
{
  std::vector<RemotePoint> owners(plex.NumPoints());
  for (Point p = 0; p < plex.NumPoints(); ++p)
  {
    owners[p] = {rank, p};
  }
  for (const auto &leaf : sf.Leaves())
  {
    Require(leaf.local < plex.NumPoints(), "SF leaf {} is not a plex point", leaf.local);
    owners[leaf.local] = leaf.root;
  }
  return owners;
}

std::pair<Plex, StarForest> InterpolateParallel(const Plex &plex, const StarForest &point_sf,
                                                int dim, Communicator &comm)
{
  const int rank = comm.Rank();
  const int size = comm.Size();
  Require(plex.NumPoints() == 0 || plex.NumStrata() == 2,
          "parallel interpolation expects a cells + vertices plex");
  if (plex.NumPoints() > 0)
  {
    Require(Dimension(plex.Type(plex.Stratum(0).begin)) == dim,
            "local cells have dimension {}, expected {}",
            Dimension(plex.Type(plex.Stratum(0).begin)), dim);
  }
  const Point num_old = plex.NumPoints();
  Plex local = Interpolate(plex);

  // Which old points are shared with some other rank.
  std::vector<int> leaf_count(point_sf.NumRoots(), 0);
  const std::vector<int> ones(point_sf.LeafExtent(), 1);
  Reduce<int>(comm, point_sf, ones, leaf_count, SumOp{});
  const auto owners = PointOwners(plex, point_sf, rank);
  auto is_shared = [&](Point p) {
    return point_sf.FindLeaf(p) != nullptr || leaf_count[p] > 0;
  };

  std::vector<std::vector<Candidate>> outgoing(size);
  for (Point q = num_old; q < local.NumPoints(); ++q)
  {
    const auto vertices = VertexTuple(local, q);
    Require(static_cast<int>(vertices.size()) <= kMaxKey, "facet {} has too many vertices", q);
    if (!std::all_of(vertices.begin(), vertices.end(), is_shared))
    {
      continue;
    }
    Candidate candidate;
    candidate.size = static_cast<int>(vertices.size());
    candidate.local = q;
    for (int i = 0; i < candidate.size; ++i)
    {
      candidate.key[i] = owners[vertices[i]];
    }
    std::sort(candidate.key.begin(), candidate.key.begin() + candidate.size);
    outgoing[candidate.key[0].rank].push_back(candidate);
  }
  const auto incoming = AllToAll(comm, outgoing);

  // Match candidates by vertex-owner set; the lowest holding rank owns the facet.
  std::map<std::vector<RemotePoint>, std::vector<RemotePoint>> holders;
  for (int r = 0; r < size; ++r)
  {
    for (const auto &candidate : incoming[r])
    {
      std::vector<RemotePoint> key(candidate.key.begin(), candidate.key.begin() + candidate.size);
      holders[std::move(key)].push_back({r, candidate.local});
    }
  }
  std::vector<std::vector<Claim>> claims(size);
  for (auto &[key, group] : holders)
  {
    if (group.size() < 2)
    {
      continue;
    }
    std::sort(group.begin(), group.end());
    for (std::size_t k = 1; k < group.size(); ++k)
    {
      Require(group[k].rank != group[k - 1].rank,
              "rank {} holds two facets with the same vertices", group[k].rank);
      claims[group[k].rank].push_back({group[k].point, group.front()});
    }
  }
  const auto granted = AllToAll(comm, claims);

  std::vector<SfLeaf> leaves = point_sf.Leaves();
  for (int r = 0; r < size; ++r)
  {
    for (const auto &claim : granted[r])
    {
      leaves.push_back({claim.local, claim.owner});
    }
  }
  StarForest extended(local.NumPoints(), std::move(leaves));
  return {std::move(local), std::move(extended)};
}

Plex SynchronizeConeOrientations(const Plex &plex, const StarForest &point_sf,
                                 Communicator &comm)
{
  const int rank = comm.Rank();
  Plex result = plex;
  const Point n_points = plex.NumPoints();
  const auto owners = PointOwners(plex, point_sf, rank);
  const int num_strata = plex.NumStrata();

  // Owner identities of the first two cone slots of every edge and face.
  auto is_interface_candidate = [&](Point p) {
    if (num_strata < 3 || p >= n_points)
    {
      return false;
    }
    const int h = plex.Height(p);
    return h > 0 && h < num_strata - 1 && plex.ConeSize(p) >= 2;
  };
  std::vector<RemotePoint> root_slots(static_cast<std::size_t>(n_points) * 2);
  for (Point p = 0; p < n_points; ++p)
  {
    if (is_interface_candidate(p))
    {
      root_slots[2 * p] = owners[plex.Cone(p)[0]];
      root_slots[2 * p + 1] = owners[plex.Cone(p)[1]];
    }
  }
  std::vector<RemotePoint> leaf_slots(static_cast<std::size_t>(point_sf.LeafExtent()) * 2);
  Bcast<RemotePoint>(comm, point_sf, root_slots, leaf_slots, 2);

  for (const auto &leaf : point_sf.Leaves())
  {
    const Point p = leaf.local;
    if (!is_interface_candidate(p))
    {
      continue;
    }
    const RemotePoint want0 = leaf_slots[2 * p];
    const RemotePoint want1 = leaf_slots[2 * p + 1];
    const auto cone = result.Cone(p);
    if (owners[cone[0]] == want0 && owners[cone[1]] == want1)
    {
      continue;
    }
    const int n = static_cast<int>(cone.size());
    int rotation = 0;
    bool found = false;
    for (int o : OrientationElements(n))
    {
      const auto [start, direction] = DecodeOrientation(o, n);
      const Point first = cone[start % n];
      const Point second = cone[((start + direction) % n + n) % n];
      if (owners[first] == want0 && owners[second] == want1)
      {
        rotation = o;
        found = true;
        break;
      }
    }
    Require(found,
            "non-conforming interface: cone of point {} on rank {} cannot be aligned with its "
            "owner ({}, {})",
            p, rank, leaf.root.rank, leaf.root.point);
    RotateCone(result, p, rotation);
  }
  return result;
}

void InterpolateMesh(DistributedMesh &mesh, Communicator &comm)
{
  auto [plex, sf] = InterpolateParallel(mesh.plex, mesh.point_sf, Dimension(mesh.cell_type), comm);
  mesh.plex = SynchronizeConeOrientations(plex, sf, comm);
  mesh.point_sf = std::move(sf);
}

}  // namespace plexus
