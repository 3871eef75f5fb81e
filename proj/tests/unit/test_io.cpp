// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "fixtures.hpp"
#include "plexus/io.hpp"

using namespace plexus;

namespace
{

struct TempDir
{
  std::filesystem::path path;
  TempDir()
  {
    path = std::filesystem::temp_directory_path() /
           ("plexus_io_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string operator/(const std::string &name) const { return (path / name).string(); }
};

// Global arrays of a chunked mesh, assembled on every rank.
RawMesh Assemble(const RawMesh &raw, Communicator &comm)
{
  RawMesh out = raw;
  out.topology = AllGatherV(comm, raw.topology);
  out.geometry = AllGatherV(comm, raw.geometry);
  out.cell_layout = LayoutChunks(raw.cell_layout.GlobalSize(), 1);
  out.vertex_layout = LayoutChunks(raw.vertex_layout.GlobalSize(), 1);
  return out;
}

}  // namespace

TEST_SUITE("io")
{
  TEST_CASE("generator")
  {
    const auto big = GenerateCube(200, 3, 0, 4096);
    CHECK(big.cell_layout.GlobalSize() == 8'000'000);
    CHECK(big.vertex_layout.GlobalSize() == 8'120'601);
    const auto one = GenerateCube(1, 3);
    CHECK(one.topology == std::vector<GlobalIndex>{0, 1, 3, 2, 4, 5, 7, 6});
    CHECK(one.geometry.size() == 24);
    const auto quads = GenerateCube(2, 2);
    CHECK(quads.cell_layout.GlobalSize() == 4);
    CHECK(quads.vertex_layout.GlobalSize() == 9);
    CHECK(quads.VerticesPerCell() == 4);
    CHECK_THROWS_AS(GenerateCube(0, 3), Error);
    CHECK_THROWS_AS(GenerateCube(2, 4), Error);
  }

  TEST_CASE("paths")
  {
    CHECK(FormatFromPath("a.h5") == MeshFormat::hdf5);
    CHECK(FormatFromPath("a.XDMF") == MeshFormat::hdf5);
    CHECK(FormatFromPath("a.txt") == MeshFormat::text);
    CHECK(HeavyDataPath("dir/a.xdmf") == "dir/a.h5");
    CHECK(DescriptorPath("dir/a.h5") == "dir/a.xdmf");
  }

  TEST_CASE("hdf5 round trip across rank counts")
  {
    TempDir dir;
    const auto file = dir / "cube2.h5";
    const auto reference = GenerateCube(2, 3);
    RunRanks(2, [&](Communicator &comm) {
      WriteXdmf(GenerateCube(2, 3, comm.Rank(), comm.Size()), file, comm);
    });
    CHECK(std::filesystem::exists(dir / "cube2.xdmf"));
    RunRanks(3, [&](Communicator &comm) {
      const auto raw = ReadXdmf(file, comm);
      const std::vector<GlobalIndex> chunks = {3, 3, 2};
      CHECK(raw.NumLocalCells() == chunks[comm.Rank()]);
      CHECK(raw.cell_type == PolytopeType::hexahedron);
      CHECK(Assemble(raw, comm) == reference);
    });
    for (int ranks = 1; ranks <= 4; ++ranks)
    {
      RunRanks(ranks, [&](Communicator &comm) {
        const auto raw = ReadXdmf(dir / "cube2.xdmf", comm);
        CHECK(Assemble(raw, comm) == reference);
        CHECK(raw == GenerateCube(2, 3, comm.Rank(), comm.Size()));
      });
    }
  }

  TEST_CASE("custom dataset paths and missing datasets")
  {
    TempDir dir;
    const auto file = dir / "custom.h5";
    IoOptions options;
    options.topology_path = "/mesh/cells";
    options.geometry_path = "/mesh/coordinates";
    RunRanks(1, [&](Communicator &comm) { WriteXdmf(GenerateCube(2, 2), file, comm, options); });
    RunRanks(2, [&](Communicator &comm) {
      CHECK(Assemble(ReadXdmf(file, comm, options), comm) == GenerateCube(2, 2));
      // The descriptor carries the paths itself.
      CHECK(Assemble(ReadXdmf(dir / "custom.xdmf", comm), comm) == GenerateCube(2, 2));
      CHECK_THROWS_AS(ReadXdmf(file, comm), Error);
    });

    std::ofstream(dir / "broken.xdmf")
        << "<Xdmf><Domain><Grid><Topology TopologyType=\"Quadrilateral\">"
           "<DataItem Format=\"HDF\" Dimensions=\"4 4\">custom.h5:/absent</DataItem></Topology>"
           "<Geometry><DataItem Format=\"HDF\" Dimensions=\"9 2\">custom.h5:/mesh/coordinates"
           "</DataItem></Geometry></Grid></Domain></Xdmf>";
    CHECK_THROWS_AS(RunRanks(1, [&](Communicator &comm) { ReadXdmf(dir / "broken.xdmf", comm); }),
                    Error);
    CHECK_THROWS_AS(RunRanks(1, [&](Communicator &comm) { ReadXdmf(dir / "none.h5", comm); }),
                    Error);
  }

  TEST_CASE("text round trip")
  {
    TempDir dir;
    const auto file = dir / "cube.txt";
    auto reference = GenerateCube(3, 3);
    reference.geometry[4] = 0.1 + 0.2;
    RunRanks(1, [&](Communicator &comm) { WriteText(reference, file, comm); });
    RunRanks(3, [&](Communicator &comm) {
      CHECK(Assemble(ReadText(file, comm), comm) == reference);
    });
    std::ofstream(dir / "short.txt") << "3 2 8 8\n0 1 2 3 4 5 6 7\n";
    CHECK_THROWS_AS(RunRanks(1, [&](Communicator &comm) { ReadText(dir / "short.txt", comm); }),
                    Error);
  }

  TEST_CASE("stored plex datasets")
  {
    TempDir dir;
    const auto file = dir / "plex.h5";
    RunRanks(1, [&](Communicator &comm) { WriteXdmf(GenerateCube(2, 3), file, comm); });
    CHECK_FALSE(ReadPlexDatasets(file).has_value());
    const auto plex = fixture::SerialCube(2, 3);
    WritePlexDatasets(file, plex);
    const auto back = ReadPlexDatasets(file);
    REQUIRE(back.has_value());
    CHECK(*back == plex);
  }

  TEST_CASE("extracting raw chunks inverts construction")
  {
    RunRanks(3, [](Communicator &comm) {
      const auto raw = GenerateCube(3, 2, comm.Rank(), comm.Size());
      auto mesh = BuildDistributedPlex(raw, comm);
      InterpolateMesh(mesh, comm);
      CHECK(ExtractRawMesh(mesh, comm) == raw);
    });
  }
}
