// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "plexus/interpolate.hpp"
#include "plexus/validate.hpp"

using namespace plexus;

namespace
{

std::vector<Point> AsVector(std::span<const Point> s) { return {s.begin(), s.end()}; }

// Every cell's oriented facets reproduce the facet table applied to its raw vertices.
void CheckFacetTuples(const Plex &plex, const std::vector<Point> &cells, int nv)
{
  const auto labels = fixture::IdentityLabels(plex);
  for (Point c = 0; c < plex.Stratum(0).size(); ++c)
  {
    const auto type = plex.Type(c);
    for (int f = 0; f < NumFacets(type); ++f)
    {
      std::vector<GlobalIndex> expected;
      for (int local : FacetVertices(type, f))
      {
        expected.push_back(cells[c * nv + local] + plex.Stratum(0).size());
      }
      CHECK(oracle::SlotTuple(plex, c, f, labels) == expected);
    }
  }
}

}  // namespace

TEST_SUITE("interpolation")
{
  TEST_CASE("raw faces")
  {
    const std::vector<Point> tri = {2, 3, 4};
    const auto faces = RawFaces(PolytopeType::triangle, tri);
    REQUIRE(faces.size() == 3);
    CHECK(faces[0].vertices == std::vector<Point>{2, 3});
    CHECK(faces[1].vertices == std::vector<Point>{3, 4});
    CHECK(faces[2].vertices == std::vector<Point>{4, 2});
    CHECK(faces[0].type == PolytopeType::segment);

    const std::vector<Point> hex = {0, 1, 2, 3, 4, 5, 6, 7};
    const auto hex_faces = RawFaces(PolytopeType::hexahedron, hex);
    CHECK(hex_faces.size() == 6);
    for (const auto &face : hex_faces)
    {
      CHECK(face.type == PolytopeType::quadrilateral);
      CHECK(face.vertices.size() == 4);
    }

    const std::vector<Point> seg = {5, 9};
    const auto ends = RawFaces(PolytopeType::segment, seg);
    REQUIRE(ends.size() == 2);
    CHECK(ends[0].type == PolytopeType::vertex);
    CHECK(ends[0].vertices == std::vector<Point>{5});
    CHECK(ends[1].vertices == std::vector<Point>{9});
  }

  TEST_CASE("two triangles")
  {
    const auto plex = Interpolate(fixture::TwoTriangles());
    CHECK(plex.NumPoints() == 11);
    CHECK(AsVector(plex.Cone(0)) == std::vector<Point>{6, 7, 8});
    CHECK(AsVector(plex.Cone(7)) == std::vector<Point>{3, 4});
    CHECK(plex.ConeOrientations(0)[1] == 0);
    CHECK(plex.Cone(1)[0] == 7);
    CHECK(plex.ConeOrientations(1)[0] == -2);
    CHECK(ValidatePlex(plex).Ok());

    // Listing the second cell as (3,5,4) moves the shared edge to its last slot.
    const auto listed = Interpolate(fixture::TwoTriangles({3, 5, 4}));
    CHECK(listed.NumPoints() == 11);
    CHECK(listed.Cone(1)[2] == 7);
    CHECK(listed.ConeOrientations(1)[2] == -2);
  }

  TEST_CASE("single cell uses donor order")
  {
    const std::vector<Point> cells = {0, 1, 2, 3, 4, 5, 6, 7};
    const auto plex = Interpolate(CellVertexPlex(PolytopeType::hexahedron, cells, 8));
    CHECK(plex.NumStrata() == 4);
    for (Point p = 0; p < plex.NumPoints(); ++p)
    {
      if (plex.Height(p) == 0)
      {
        for (int o : plex.ConeOrientations(p))
        {
          CHECK(o == 0);
        }
      }
    }
    CheckFacetTuples(plex, cells, 8);
  }

  TEST_CASE("cube counts")
  {
    const auto plex = fixture::SerialCube(2, 3);
    REQUIRE(plex.NumStrata() == 4);
    CHECK(plex.Stratum(0).size() == 8);
    CHECK(plex.Stratum(1).size() == 36);
    CHECK(plex.Stratum(2).size() == 54);
    CHECK(plex.Stratum(3).size() == 27);
    CHECK(ValidatePlex(plex).Ok());
    const auto raw = GenerateCube(2, 3);
    CheckFacetTuples(plex, std::vector<Point>(raw.topology.begin(), raw.topology.end()), 8);

    const auto quads = fixture::SerialCube(3, 2);
    REQUIRE(quads.NumStrata() == 3);
    CHECK(quads.Stratum(1).size() == 24);
  }

  TEST_CASE("tetrahedra")
  {
    // Two tetrahedra glued along the face (1,2,3).
    const std::vector<Point> cells = {0, 1, 2, 3, 4, 1, 3, 2};
    const auto plex = Interpolate(CellVertexPlex(PolytopeType::tetrahedron, cells, 5));
    REQUIRE(plex.NumStrata() == 4);
    CHECK(plex.Stratum(1).size() == 7);
    CHECK(plex.Stratum(2).size() == 9);
    CHECK(EulerCharacteristic(plex) == 1);
    CHECK(ValidatePlex(plex).Ok());
    CheckFacetTuples(plex, cells, 4);
  }

  TEST_CASE("relative orientation")
  {
    const std::vector<Point> stored = {3, 4};
    CHECK(ComputeRelativeOrientation(stored, std::vector<Point>{4, 3}) == -2);
    CHECK(ComputeRelativeOrientation(stored, stored) == 0);
    const std::vector<Point> quad = {1, 2, 3, 4};
    CHECK(ComputeRelativeOrientation(quad, std::vector<Point>{4, 1, 2, 3}) == 3);
    CHECK_THROWS_AS(ComputeRelativeOrientation(quad, std::vector<Point>{1, 2, 3, 5}), Error);
  }

  TEST_CASE("preconditions")
  {
    const auto plex = Interpolate(fixture::TwoTriangles());
    CHECK_THROWS_AS(Interpolate(plex), Error);
    CHECK(Interpolate(Plex{}).NumPoints() == 0);
    // Two hexahedra sharing four vertices whose cyclic orders disagree.
    const std::vector<Point> twisted = {0, 1, 2, 3, 4, 5, 6, 7, 0, 2, 1, 3, 8, 9, 10, 11};
    CHECK_THROWS_AS(Interpolate(CellVertexPlex(PolytopeType::hexahedron, twisted, 12)),
                    Error);
  }
}
