// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_TESTS_FIXTURES_HPP
#define PLEXUS_TESTS_FIXTURES_HPP

#include <numeric>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "plexus/comm.hpp"
#include "plexus/construct.hpp"
#include "plexus/glue.hpp"
#include "plexus/interpolate.hpp"
#include "plexus/io.hpp"
#include "plexus/parallel_interp.hpp"

namespace plexus::fixture
{

// Two triangles sharing the edge (3,4): cells 0 and 1, vertices 2-5. The second cell is
// listed starting at vertex 4 so that the shared edge lands in its first cone slot.
inline Plex TwoTriangles(std::vector<Point> second = {4, 3, 5})
{
  const std::vector<int> sizes = {3, 3, 0, 0, 0, 0};
  std::vector<Point> cones = {2, 3, 4};
  cones.insert(cones.end(), second.begin(), second.end());
  const std::vector<int> orientations(6, 0);
  const std::vector<PolytopeType> types = {PolytopeType::triangle, PolytopeType::triangle,
                                           PolytopeType::vertex,   PolytopeType::vertex,
                                           PolytopeType::vertex,   PolytopeType::vertex};
  return Stratify(BuildFromCones(6, sizes, cones, orientations, types));
}

// Two ranks holding one triangle each over four global vertices:
// rank 0 gets (0,1,3), rank 1 gets (3,1,2).
inline RawMesh SplitTriangles(int rank)
{
  RawMesh raw;
  raw.cell_type = PolytopeType::triangle;
  raw.dim = 2;
  raw.cell_layout = Layout({0, 1, 2});
  raw.vertex_layout = Layout({0, 2, 4});
  if (rank == 0)
  {
    raw.topology = {0, 1, 3};
    raw.geometry = {0.0, 0.0, 1.0, 0.0};
  }
  else
  {
    raw.topology = {3, 1, 2};
    raw.geometry = {1.0, 1.0, 0.0, 1.0};
  }
  return raw;
}

inline Plex SerialCube(int nex, int dim)
{
  const auto raw = GenerateCube(nex, dim);
  const std::vector<Point> cells(raw.topology.begin(), raw.topology.end());
  return Interpolate(CellVertexPlex(raw.cell_type, cells,
                                    static_cast<Point>(raw.vertex_layout.GlobalSize())));
}

inline DistributedMesh DistributedCube(int nex, int dim, Communicator &comm,
                                       bool interpolate = true)
{
  auto mesh = BuildDistributedPlex(GenerateCube(nex, dim, comm.Rank(), comm.Size()), comm);
  if (interpolate)
  {
    InterpolateMesh(mesh, comm);
  }
  return mesh;
}

inline std::vector<GlobalIndex> IdentityLabels(const Plex &plex)
{
  std::vector<GlobalIndex> labels(plex.NumPoints());
  std::iota(labels.begin(), labels.end(), GlobalIndex{0});
  return labels;
}

// Empty when the glued mesh matches the serial plex (valid on the gather root only).
inline std::string CompareWithSerial(const GlobalMesh &glued, const Plex &serial)
{
  return oracle::CompareLabelledPlexes(serial, IdentityLabels(serial), glued.plex,
                                       IdentityLabels(glued.plex));
}

// Counts pointSF edges whose leaf cone differs from the root cone, slot by slot, in
// global point numbers or in orientation. Collective; every rank gets the total.
inline long ConformanceOracle(const DistributedMesh &mesh, Communicator &comm)
{
  const auto global = GlobalPointNumbers(mesh, comm);
  const auto &plex = mesh.plex;
  // Per local point: global id, cone size, then (global cone id, orientation) pairs.
  std::vector<GlobalIndex> mine;
  for (Point p = 0; p < plex.NumPoints(); ++p)
  {
    mine.push_back(p);
    mine.push_back(plex.ConeSize(p));
    for (int i = 0; i < plex.ConeSize(p); ++i)
    {
      mine.push_back(global[plex.Cone(p)[i]]);
      mine.push_back(plex.ConeOrientations(p)[i]);
    }
  }
  std::vector<std::vector<GlobalIndex>> send(comm.Size(), mine);
  const auto all = AllToAll(comm, send);
  auto cone_of = [&](int rank, Point point) {
    const auto &buffer = all[rank];
    std::size_t k = 0;
    while (k < buffer.size())
    {
      const auto size = static_cast<std::size_t>(buffer[k + 1]);
      if (buffer[k] == point)
      {
        return std::vector<GlobalIndex>(buffer.begin() + k + 2,
                                        buffer.begin() + k + 2 + 2 * size);
      }
      k += 2 + 2 * size;
    }
    return std::vector<GlobalIndex>{-1};
  };
  long violations = 0;
  for (const auto &leaf : mesh.point_sf.Leaves())
  {
    if (cone_of(comm.Rank(), leaf.local) != cone_of(leaf.root.rank, leaf.root.point))
    {
      ++violations;
    }
  }
  return AllReduceSum(comm, violations);
}

}  // namespace plexus::fixture

#endif  // PLEXUS_TESTS_FIXTURES_HPP
