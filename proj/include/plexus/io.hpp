// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_IO_HPP
#define PLEXUS_IO_HPP

#include <optional>
#include <string>

#include "plexus/comm.hpp"
#include "plexus/glue.hpp"
#include "plexus/mesh.hpp"

namespace plexus
{

enum class MeshFormat
{
  hdf5,
  text
};

struct IoOptions
{
  std::string topology_path = "/topology/cells";
  std::string geometry_path = "/geometry/vertices";
  // Collective dataset transfers. The in-process transport reads with independent access
  // either way; the flag only exists so callers can state intent.
  bool collective = false;
};

// hdf5 for .h5/.hdf5/.xdmf/.xmf, text for everything else.
MeshFormat FormatFromPath(const std::string &path);

// HDF5 file and XDMF descriptor paths belonging to one output path (either may be given).
std::string HeavyDataPath(const std::string &path);
std::string DescriptorPath(const std::string &path);

// Collective. Each rank reads its layout chunk of the topology and geometry datasets
// (rows split along the first dimension, chunk lengths differing by at most one). `path`
// is an XDMF descriptor referencing HDF5 datasets, or an HDF5 file read with the dataset
// paths in `options`.
RawMesh ReadXdmf(const std::string &path, Communicator &comm, const IoOptions &options = {});

// Collective. Writes 64-bit integer topology and 64-bit float geometry datasets to the
// HDF5 file, each rank its own rows, plus an XDMF descriptor next to it.
void WriteXdmf(const RawMesh &raw, const std::string &path, Communicator &comm,
               const IoOptions &options = {});

// Plain text format:
//   dim NE NV c
//   NE rows of c vertex ids
//   NV rows of dim coordinates (17 significant digits)
RawMesh ReadText(const std::string &path, Communicator &comm);
void WriteText(const RawMesh &raw, const std::string &path, Communicator &comm);

RawMesh ReadMesh(const std::string &path, Communicator &comm, MeshFormat format,
                 const IoOptions &options = {});
void WriteMesh(const RawMesh &raw, const std::string &path, Communicator &comm,
               MeshFormat format, const IoOptions &options = {});

// Non-collective: the full topology of a glued mesh under /plex in an existing HDF5 file.
void WritePlexDatasets(const std::string &h5_path, const Plex &plex);
std::optional<Plex> ReadPlexDatasets(const std::string &h5_path);

// Structured cube [0,1]^dim with nex cells per side as hexahedra (3D) or quadrilaterals
// (2D), lexicographic cell and vertex numbering. Returns the chunk of `rank` out of `size`.
RawMesh GenerateCube(int nex, int dim, int rank = 0, int size = 1);

// Collective. Raw chunks of a distributed mesh in global cell and vertex layout order
// (the inverse of BuildDistributedPlex).
RawMesh ExtractRawMesh(const DistributedMesh &mesh, Communicator &comm);

}  // namespace plexus

#endif  // PLEXUS_IO_HPP
