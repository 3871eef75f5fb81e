// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

// Acceptance suite: prints one PASS/FAIL line per criterion and exits non-zero if any
// criterion fails.

#include <hdf5.h>

#include <chrono>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <functional>
#include <numeric>
#include <random>
#include <string>

#include <fmt/core.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "plexus/orientation.hpp"
#include "plexus/redistribute.hpp"
#include "plexus/validate.hpp"

using namespace plexus;

namespace
{

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point start)
{
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome
{
  bool ok = true;
  std::string detail;

  void Check(bool condition, const std::string &what)
  {
    if (!condition && ok)
    {
      ok = false;
      detail = what;
    }
  }
};

Outcome TwoTriangleFixture()
{
  Outcome out;
  const auto input = fixture::TwoTriangles();
  const auto start = Clock::now();
  const auto plex = Interpolate(input);
  const double elapsed = Seconds(start);

  out.Check(plex.NumPoints() == 11, fmt::format("{} points", plex.NumPoints()));
  out.Check(plex.NumStrata() == 3, "expected 3 strata");
  if (!out.ok)
  {
    return out;
  }
  out.Check(plex.Stratum(0).size() == 2 && plex.Stratum(1).size() == 5 &&
                plex.Stratum(2).size() == 4,
            "strata sizes are not (2, 5, 4)");
  const auto c0 = plex.Cone(0);
  out.Check(std::vector<Point>(c0.begin(), c0.end()) == std::vector<Point>{6, 7, 8},
            "C(0) != (6,7,8)");
  const auto c7 = plex.Cone(7);
  out.Check(std::vector<Point>(c7.begin(), c7.end()) == std::vector<Point>{3, 4},
            "C(7) != (3,4)");
  out.Check(elapsed < 1e-3, fmt::format("took {:.3f} ms", elapsed * 1e3));
  out.detail = out.ok ? fmt::format("11 points, strata (2,5,4), {:.3f} ms", elapsed * 1e3)
                      : out.detail;
  return out;
}

Outcome OrientationFixture()
{
  Outcome out;
  const auto plex = Interpolate(fixture::TwoTriangles());
  out.Check(plex.Cone(0)[1] == 7 && plex.ConeOrientations(0)[1] == 0, "O(0,1) != 0 on edge 7");
  out.Check(plex.Cone(1)[0] == 7 && plex.ConeOrientations(1)[0] == -2,
            "O(1,0) != -2 on edge 7");

  long round_trips = 0;
  for (int n = 1; n <= 8; ++n)
  {
    for (int start = 0; start < n; ++start)
    {
      for (int direction : {1, -1})
      {
        const int o = EncodeOrientation(start, direction, n);
        const auto parts = DecodeOrientation(o, n);
        out.Check(o >= -n && o < n, fmt::format("code {} out of range for n={}", o, n));
        out.Check(parts.start == start && parts.direction == direction,
                  fmt::format("round trip failed for n={} S={} D={}", n, start, direction));
        // The code must act on a tuple exactly as the (S, D) pair says.
        std::vector<int> tuple(n);
        std::iota(tuple.begin(), tuple.end(), 0);
        out.Check(ApplyOrientation(tuple, o) == oracle::Permute(tuple, o),
                  fmt::format("action mismatch for n={} O={}", n, o));
        ++round_trips;
      }
    }
    for (int o = -n; o < n; ++o)
    {
      const auto parts = DecodeOrientation(o, n);
      out.Check(EncodeOrientation(parts.start, parts.direction, n) == o,
                fmt::format("decode/encode failed for n={} O={}", n, o));
      ++round_trips;
    }
  }
  if (out.ok)
  {
    out.detail = fmt::format("O(0,1)=0, O(1,0)=-2, {} round trips", round_trips);
  }
  return out;
}

Outcome CountingEuler()
{
  Outcome out;
  const auto start = Clock::now();
  for (int nex : {1, 2, 4, 8})
  {
    const auto plex = fixture::SerialCube(nex, 3);
    const auto expected = oracle::CubeCountsClosedForm(nex);
    out.Check(oracle::EnumerateHexEntities(GenerateCube(nex, 3).topology) == expected,
              fmt::format("brute-force enumeration disagrees with closed form at NEX={}", nex));
    if (plex.NumStrata() != 4)
    {
      out.Check(false, fmt::format("NEX={} has {} strata", nex, plex.NumStrata()));
      continue;
    }
    const oracle::EntityCounts got = {static_cast<long>(plex.Stratum(3).size()),
                                      static_cast<long>(plex.Stratum(2).size()),
                                      static_cast<long>(plex.Stratum(1).size()),
                                      static_cast<long>(plex.Stratum(0).size())};
    out.Check(got == expected, fmt::format("NEX={}: V={} E={} F={} C={}", nex, got.vertices,
                                           got.edges, got.faces, got.cells));
    out.Check(got.vertices - got.edges + got.faces - got.cells == 1,
              fmt::format("NEX={}: Euler characteristic is not 1", nex));
    out.Check(EulerCharacteristic(plex) == 1, fmt::format("NEX={}: library Euler != 1", nex));
  }
  const double elapsed = Seconds(start);
  out.Check(elapsed < 5.0, fmt::format("took {:.2f} s", elapsed));
  if (out.ok)
  {
    out.detail = fmt::format("NEX 1,2,4,8 exact, chi=1, {:.2f} s", elapsed);
  }
  return out;
}

Outcome SerialParallelEquivalence(long &conformance_violations, int &meshes_checked)
{
  Outcome out;
  const auto start = Clock::now();
  for (int nex : {2, 4, 8})
  {
    const auto serial = fixture::SerialCube(nex, 3);
    for (int ranks : {1, 2, 4, 8})
    {
      std::string mismatch;
      RunRanks(ranks, [&](Communicator &comm) {
        const auto mesh = fixture::DistributedCube(nex, 3, comm);
        const long violations = fixture::ConformanceOracle(mesh, comm);
        const auto glued = GatherGlobalMesh(mesh, comm);
        if (comm.Rank() == 0)
        {
          conformance_violations += violations;
          ++meshes_checked;
          mismatch = fixture::CompareWithSerial(*glued, serial);
        }
      });
      out.Check(mismatch.empty(), fmt::format("NEX={} P={}: {}", nex, ranks, mismatch));
    }
  }
  const double elapsed = Seconds(start);
  out.Check(elapsed < 30.0, fmt::format("took {:.2f} s", elapsed));
  if (out.ok)
  {
    out.detail = fmt::format("12 configurations isomorphic, {:.2f} s", elapsed);
  }
  return out;
}

Outcome Conformance(long violations, int meshes)
{
  Outcome out;
  // The two-rank triangle fixture and 2D quad meshes on top of the cube runs.
  RunRanks(2, [&](Communicator &comm) {
    auto mesh = BuildDistributedPlex(fixture::SplitTriangles(comm.Rank()), comm);
    InterpolateMesh(mesh, comm);
    const long v = fixture::ConformanceOracle(mesh, comm);
    if (comm.Rank() == 0)
    {
      violations += v;
      ++meshes;
    }
  });
  for (int ranks : {2, 3, 5})
  {
    RunRanks(ranks, [&](Communicator &comm) {
      const auto mesh = fixture::DistributedCube(5, 2, comm);
      const long v = fixture::ConformanceOracle(mesh, comm);
      const auto library = CountConformanceViolations(mesh.plex, mesh.point_sf, comm);
      if (comm.Rank() == 0)
      {
        violations += v + static_cast<long>(library);
        ++meshes;
      }
    });
  }
  out.Check(violations == 0, fmt::format("{} violations", violations));
  out.detail = fmt::format("{} violations over {} distributed meshes", violations, meshes);
  return out;
}

double BestInterpolationTime(int nex)
{
  const auto raw = GenerateCube(nex, 3);
  const std::vector<Point> cells(raw.topology.begin(), raw.topology.end());
  const auto input = CellVertexPlex(raw.cell_type, cells,
                                    static_cast<Point>(raw.vertex_layout.GlobalSize()));
  double best = 1e300;
  for (int repeat = 0; repeat < 3; ++repeat)
  {
    const auto start = Clock::now();
    const auto plex = Interpolate(input);
    best = std::min(best, Seconds(start));
    if (plex.NumPoints() == 0)
    {
      return -1.0;
    }
  }
  return best;
}

Outcome Linearity()
{
  Outcome out;
  const auto start = Clock::now();
  const double t16 = BestInterpolationTime(16);
  const double t32 = BestInterpolationTime(32);
  const double ratio = t32 / t16;
  const double elapsed = Seconds(start);
  out.Check(ratio >= 4.0 && ratio <= 16.0, fmt::format("ratio {:.2f}", ratio));
  out.Check(elapsed < 60.0, fmt::format("took {:.2f} s", elapsed));
  out.detail = fmt::format("NEX=16 {:.4f} s, NEX=32 {:.4f} s, ratio {:.2f}", t16, t32, ratio);
  return out;
}

std::pair<hsize_t, hsize_t> DatasetShape(const std::string &file, const std::string &path)
{
  hsize_t dims[2] = {0, 0};
  const hid_t f = H5Fopen(file.c_str(), H5F_ACC_RDONLY, H5P_DEFAULT);
  const hid_t d = H5Dopen2(f, path.c_str(), H5P_DEFAULT);
  const hid_t s = H5Dget_space(d);
  H5Sget_simple_extent_dims(s, dims, nullptr);
  H5Sclose(s);
  H5Dclose(d);
  H5Fclose(f);
  return {dims[0], dims[1]};
}

Outcome IoInvariance()
{
  Outcome out;
  const auto dir = std::filesystem::temp_directory_path() / "plexus_acceptance";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "cube3.h5").string();
  const auto reference = GenerateCube(3, 3);
  RunRanks(1, [&](Communicator &comm) { WriteXdmf(reference, path, comm); });

  const auto topo_shape = DatasetShape(path, "/topology/cells");
  const auto geom_shape = DatasetShape(path, "/geometry/vertices");
  out.Check(topo_shape == std::make_pair<hsize_t, hsize_t>(27, 8),
            fmt::format("topology shape {}x{}", topo_shape.first, topo_shape.second));
  out.Check(geom_shape == std::make_pair<hsize_t, hsize_t>(64, 3),
            fmt::format("geometry shape {}x{}", geom_shape.first, geom_shape.second));

  for (const auto &input : {path, DescriptorPath(path)})
  {
    for (int ranks = 1; ranks <= 4; ++ranks)
    {
      bool identical = false;
      RunRanks(ranks, [&](Communicator &comm) {
        const auto raw = ReadXdmf(input, comm);
        const auto topology = AllGatherV(comm, raw.topology);
        const auto geometry = AllGatherV(comm, raw.geometry);
        if (comm.Rank() == 0)
        {
          identical = raw.cell_type == reference.cell_type && topology == reference.topology &&
                      std::memcmp(geometry.data(), reference.geometry.data(),
                                  geometry.size() * sizeof(double)) == 0 &&
                      geometry.size() == reference.geometry.size();
        }
      });
      out.Check(identical, fmt::format("{} read on {} ranks differs", input, ranks));
    }
  }
  std::filesystem::remove_all(dir);
  if (out.ok)
  {
    out.detail = "1..4 readers bit-identical, shapes 27x8 and 64x3";
  }
  return out;
}

Outcome MigrationConservation()
{
  Outcome out;
  const auto serial = fixture::SerialCube(4, 3);
  std::mt19937 rng(20240917);
  for (int trial = 0; trial < 5; ++trial)
  {
    std::vector<int> targets(64);
    std::uniform_int_distribution<int> pick(0, 3);
    for (auto &t : targets)
    {
      t = pick(rng);
    }
    std::string mismatch;
    GlobalIndex total = 0;
    bool placed = true;
    long violations = 0;
    RunRanks(4, [&](Communicator &comm) {
      const auto mesh = fixture::DistributedCube(4, 3, comm);
      const auto parts = Partition(mesh, 4, PartitionMethod::external, comm, targets);
      const auto moved = Migrate(mesh, parts, comm);
      bool here = true;
      for (auto gid : moved.cell_gids)
      {
        here = here && targets[gid] == comm.Rank();
      }
      const auto all_here = AllReduceSum(comm, here ? 0 : 1);
      const auto cells = AllReduceSum(comm, static_cast<GlobalIndex>(moved.NumCells()));
      const long v = fixture::ConformanceOracle(moved, comm);
      const auto glued = GatherGlobalMesh(moved, comm);
      if (comm.Rank() == 0)
      {
        total = cells;
        placed = all_here == 0;
        violations = v;
        mismatch = fixture::CompareWithSerial(*glued, serial);
      }
    });
    out.Check(total == 64, fmt::format("trial {}: {} cells after migration", trial, total));
    out.Check(placed, fmt::format("trial {}: cells not on their target rank", trial));
    out.Check(violations == 0, fmt::format("trial {}: {} conformance violations", trial,
                                           violations));
    out.Check(mismatch.empty(), fmt::format("trial {}: {}", trial, mismatch));
  }

  GlobalIndex block = 0;
  GlobalIndex rcb = 0;
  RunRanks(4, [&](Communicator &comm) {
    const auto mesh = fixture::DistributedCube(8, 3, comm);
    const auto b = CountInterfaceFacets(mesh, Partition(mesh, 4, PartitionMethod::block, comm),
                                        comm);
    const auto r = CountInterfaceFacets(mesh, Partition(mesh, 4, PartitionMethod::rcb, comm),
                                        comm);
    if (comm.Rank() == 0)
    {
      block = b;
      rcb = r;
    }
  });
  out.Check(rcb <= block, fmt::format("rcb {} > block {} interface faces", rcb, block));
  if (out.ok)
  {
    out.detail =
        fmt::format("5 random assignments conserved; interface faces rcb {} <= block {}", rcb,
                    block);
  }
  return out;
}

}  // namespace

int main()
{
  long violations = 0;
  int meshes = 0;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"two-triangle interpolation fixture", TwoTriangleFixture},
      {"orientation fixture and encoding round trip", OrientationFixture},
      {"hex cube entity counts and Euler characteristic", CountingEuler},
      {"serial-parallel equivalence",
       [&] { return SerialParallelEquivalence(violations, meshes); }},
      {"interface cone conformance", [&] { return Conformance(violations, meshes); }},
      {"linear interpolation cost", Linearity},
      {"parallel I/O invariance", IoInvariance},
      {"migration conservation", MigrationConservation},
  };
  int failures = 0;
  int index = 0;
  for (const auto &[name, run] : criteria)
  {
    ++index;
    Outcome outcome;
    try
    {
      outcome = run();
    }
    catch (const std::exception &e)
    {
      outcome = {false, fmt::format("exception: {}", e.what())};
    }
    failures += outcome.ok ? 0 : 1;
    fmt::print("[{}] criterion {}: {} ({})\n", outcome.ok ? "PASS" : "FAIL", index, name,
               outcome.detail);
  }
  fmt::print("{} of {} criteria passed\n", index - failures, index);
  return failures == 0 ? 0 : 1;
}
