// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "plexus/validate.hpp"

#include <algorithm>

#include "plexus/orientation.hpp"
#include "plexus/parallel_interp.hpp"

namespace plexus
{

namespace
{

constexpr std::size_t kMaxMessages = 20;
constexpr int kMaxSharedCone = 4;

}  // namespace

void ValidationReport::Add(std::string message)
{
  ++num_violations;
  if (messages.size() < kMaxMessages)
  {
    messages.push_back(std::move(message));
  }
}

void ValidationReport::Merge(const ValidationReport &other)
{
  num_violations += other.num_violations;
  for (const auto &m : other.messages)
  {
    if (messages.size() < kMaxMessages)
    {
      messages.push_back(m);
    }
  }
}

ValidationReport ValidatePlex(const Plex &plex)
{
  ValidationReport report;
  const Point n = plex.NumPoints();
  if (!plex.HasSupports() || !plex.IsStratified())
  {
    report.Add("plex has no supports or strata");
    return report;
  }

  // Duality with multiplicity.
  for (Point p = 0; p < n; ++p)
  {
    for (auto q : plex.Cone(p))
    {
      const auto cone = plex.Cone(p);
      const auto support = plex.Support(q);
      if (std::count(cone.begin(), cone.end(), q) != std::count(support.begin(), support.end(), p))
      {
        report.Add(fmt::format("cone/support mismatch between {} and {}", p, q));
      }
    }
    for (auto s : plex.Support(p))
    {
      const auto cone = plex.Cone(s);
      if (std::find(cone.begin(), cone.end(), p) == cone.end())
      {
        report.Add(fmt::format("{} supports {} but does not cover it", s, p));
      }
    }
  }

  Point covered = 0;
  for (int h = 0; h < plex.NumStrata(); ++h)
  {
    covered += plex.Stratum(h).size();
  }
  if (covered != n)
  {
    report.Add(fmt::format("strata cover {} of {} points", covered, n));
  }

  for (Point p = 0; p < n; ++p)
  {
    const auto cone = plex.Cone(p);
    const auto orientations = plex.ConeOrientations(p);
    for (std::size_t c = 0; c < cone.size(); ++c)
    {
      const int arity = std::max(plex.ConeSize(cone[c]), 1);
      if (!IsValidOrientation(orientations[c], arity))
      {
        report.Add(fmt::format("orientation {} of point {} slot {} out of range for arity {}",
                               orientations[c], p, c, arity));
      }
      else if (arity == 2 && orientations[c] != 0 && orientations[c] != -2)
      {
        report.Add(fmt::format("edge orientation {} of point {} slot {} is not 0 or -2",
                               orientations[c], p, c));
      }
    }
  }
  if (!report.Ok())
  {
    return report;
  }

  // Orientation correctness of interpolated points.
  for (Point p = 0; p < n; ++p)
  {
    const auto cone = plex.Cone(p);
    const bool interpolated =
        std::any_of(cone.begin(), cone.end(), [&](Point q) { return plex.ConeSize(q) > 0; });
    if (!interpolated)
    {
      continue;
    }
    try
    {
      if (plex.SupportSize(p) == 0)
      {
        CellVertices(plex, p);
      }
      else
      {
        VertexTuple(plex, p);
      }
    }
    catch (const Error &e)
    {
      report.Add(e.what());
    }
  }
  return report;
}

std::size_t CountConformanceViolations(const Plex &plex, const StarForest &point_sf,
                                       Communicator &comm)
{
  const Point n = plex.NumPoints();
  const auto owners = PointOwners(plex, point_sf, comm.Rank());
  const RemotePoint none{-1, -1};
  std::vector<RemotePoint> root_cones(static_cast<std::size_t>(n) * kMaxSharedCone, none);
  for (Point p = 0; p < n; ++p)
  {
    const auto cone = plex.Cone(p);
    if (cone.size() > static_cast<std::size_t>(kMaxSharedCone))
    {
      continue;
    }
    for (std::size_t i = 0; i < cone.size(); ++i)
    {
      root_cones[p * kMaxSharedCone + i] = owners[cone[i]];
    }
  }
  std::vector<RemotePoint> leaf_cones(
      static_cast<std::size_t>(point_sf.LeafExtent()) * kMaxSharedCone, none);
  Bcast<RemotePoint>(comm, point_sf, root_cones, leaf_cones, kMaxSharedCone);

  std::size_t violations = 0;
  for (const auto &leaf : point_sf.Leaves())
  {
    const Point p = leaf.local;
    const auto cone = plex.Cone(p);
    if (cone.size() > static_cast<std::size_t>(kMaxSharedCone))
    {
      ++violations;
      continue;
    }
    for (int i = 0; i < kMaxSharedCone; ++i)
    {
      const RemotePoint mine =
          i < static_cast<int>(cone.size()) ? owners[cone[i]] : none;
      if (mine != leaf_cones[p * kMaxSharedCone + i])
      {
        ++violations;
        break;
      }
    }
  }
  return AllReduceSum(comm, violations);
}

ValidationReport ValidateDistributed(const DistributedMesh &mesh, Communicator &comm)
{
  ValidationReport report = ValidatePlex(mesh.plex);
  const int rank = comm.Rank();
  const auto &sf = mesh.point_sf;
  if (sf.NumRoots() != mesh.plex.NumPoints())
  {
    report.Add(fmt::format("rank {}: point SF has {} roots for {} points", rank, sf.NumRoots(),
                           mesh.plex.NumPoints()));
  }
  for (const auto &leaf : sf.Leaves())
  {
    if (leaf.root.rank == rank)
    {
      report.Add(fmt::format("rank {}: point {} is its own ghost", rank, leaf.local));
    }
    if (leaf.local >= mesh.plex.NumPoints())
    {
      report.Add(fmt::format("rank {}: leaf {} is not a plex point", rank, leaf.local));
    }
  }

  // Each leaf must point at a root that is not itself a leaf.
  std::vector<int> is_leaf(mesh.plex.NumPoints(), 0);
  for (const auto &leaf : sf.Leaves())
  {
    if (leaf.local < mesh.plex.NumPoints())
    {
      is_leaf[leaf.local] = 1;
    }
  }
  const bool sf_ok = report.Ok();
  if (AllReduceSum(comm, sf_ok ? 0 : 1) == 0)
  {
    std::vector<int> remote_is_leaf(sf.LeafExtent(), 0);
    Bcast<int>(comm, sf, is_leaf, remote_is_leaf);
    for (const auto &leaf : sf.Leaves())
    {
      if (remote_is_leaf[leaf.local])
      {
        report.Add(fmt::format("rank {}: leaf {} points at a non-owned copy", rank, leaf.local));
      }
    }
    const auto violations = CountConformanceViolations(mesh.plex, sf, comm);
    if (violations > 0 && rank == 0)
    {
      report.Add(fmt::format("{} non-conforming interface cones", violations));
    }
  }

  // Same report on every rank.
  ValidationReport merged;
  std::vector<char> text;
  for (const auto &m : report.messages)
  {
    text.insert(text.end(), m.begin(), m.end());
    text.push_back('\0');
  }
  const auto counts = AllGather(comm, report.num_violations);
  const auto all_text = AllGatherV(comm, text);
  for (auto c : counts)
  {
    merged.num_violations += c;
  }
  std::string current;
  for (auto ch : all_text)
  {
    if (ch == '\0')
    {
      if (merged.messages.size() < kMaxMessages)
      {
        merged.messages.push_back(current);
      }
      current.clear();
    }
    else
    {
      current.push_back(ch);
    }
  }
  return merged;
}

}  // namespace plexus
