// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_VALIDATE_HPP
#define PLEXUS_VALIDATE_HPP

#include <string>
#include <vector>

#include "plexus/comm.hpp"
#include "plexus/mesh.hpp"

namespace plexus
{

struct ValidationReport
{
  std::size_t num_violations = 0;
  // First few violation messages.
  std::vector<std::string> messages;

  bool Ok() const { return num_violations == 0; }
  void Add(std::string message);
  void Merge(const ValidationReport &other);
};

// Structural checks on a serial plex: cone/support duality, strata cover, orientation
// ranges (edges only use 0 and -2), and orientation correctness of every interpolated
// point (oriented facets of each cell reassemble into one consistent vertex tuple).
ValidationReport ValidatePlex(const Plex &plex);

// Collective. Number of SF edges p -> q between edges/faces whose cones do not map slot by
// slot onto each other through the SF.
std::size_t CountConformanceViolations(const Plex &plex, const StarForest &point_sf,
                                       Communicator &comm);

// Collective. Local plex checks plus point SF checks (no self leaves, leaves inside the
// plex, every point owned exactly once) and interface conformance. The report is the
// same on all ranks.
ValidationReport ValidateDistributed(const DistributedMesh &mesh, Communicator &comm);

}  // namespace plexus

#endif  // PLEXUS_VALIDATE_HPP
