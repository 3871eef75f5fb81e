// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

// plexus: mesh generation, inspection and the parallel startup pipeline over simulated
// ranks. Run `plexus --help` for the command list.

#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <optional>
#include <string>

#include <fmt/format.h>

#include "pipeline.hpp"
#include "plexus/construct.hpp"
#include "plexus/glue.hpp"
#include "plexus/parallel_interp.hpp"
#include "plexus/validate.hpp"

using namespace plexus;

namespace
{

constexpr int kExitInvalid = 1;
constexpr int kExitError = 2;

struct CommonOptions
{
  std::string input;
  std::string output;
  int ranks = 1;
  std::string format;
  std::string topology_path = IoOptions{}.topology_path;
  std::string geometry_path = IoOptions{}.geometry_path;

  IoOptions Io() const { return {topology_path, geometry_path, false}; }
  std::optional<MeshFormat> Format() const
  {
    if (format.empty())
    {
      return std::nullopt;
    }
    return format == "text" ? MeshFormat::text : MeshFormat::hdf5;
  }
  MeshFormat InputFormat() const { return Format().value_or(FormatFromPath(input)); }
};

void AddInput(CLI::App &cmd, CommonOptions &opts, bool positional)
{
  if (positional)
  {
    cmd.add_option("input,--input", opts.input, "Input mesh")->required();
  }
  else
  {
    cmd.add_option("--input", opts.input, "Input mesh")->required();
  }
  cmd.add_option("--topology-path", opts.topology_path, "HDF5 topology dataset path");
  cmd.add_option("--geometry-path", opts.geometry_path, "HDF5 geometry dataset path");
}

void AddRanks(CLI::App &cmd, CommonOptions &opts)
{
  cmd.add_option("--ranks", opts.ranks, "Number of simulated ranks")
      ->check(CLI::PositiveNumber);
}

void AddFormat(CLI::App &cmd, CommonOptions &opts, const std::string &what)
{
  cmd.add_option("--format", opts.format, what)->check(CLI::IsMember({"hdf5", "text"}));
}

std::string JoinCounts(const Plex &plex)
{
  std::string out;
  for (int h = 0; h < plex.NumStrata(); ++h)
  {
    out += fmt::format("{}{}", h == 0 ? "" : ",", plex.Stratum(h).size());
  }
  return out;
}

std::string ConeSizeChart(const Plex &plex)
{
  std::map<int, long> histogram;
  for (Point p = 0; p < plex.NumPoints(); ++p)
  {
    ++histogram[plex.ConeSize(p)];
  }
  std::string out;
  for (const auto &[size, count] : histogram)
  {
    out += fmt::format("{}{}:{}", out.empty() ? "" : ",", size, count);
  }
  return out;
}

std::optional<Plex> StoredPlex(const CommonOptions &opts)
{
  if (opts.InputFormat() != MeshFormat::hdf5)
  {
    return std::nullopt;
  }
  return ReadPlexDatasets(HeavyDataPath(opts.input));
}

// Loads the input on opts.ranks ranks, builds (and optionally interpolates) the distributed
// mesh and hands it to `body` on every rank.
template <typename Body>
void WithMesh(const CommonOptions &opts, bool interpolate, Body &&body)
{
  const auto format = opts.InputFormat();
  RunRanks(opts.ranks, [&](Communicator &comm) {
    auto mesh = BuildDistributedPlex(ReadMesh(opts.input, comm, format, opts.Io()), comm);
    if (interpolate)
    {
      InterpolateMesh(mesh, comm);
    }
    body(mesh, comm);
  });
}

int RunGen(int nex, int dim, const CommonOptions &opts)
{
  const auto format = opts.Format().value_or(FormatFromPath(opts.output));
  RunRanks(opts.ranks, [&](Communicator &comm) {
    WriteMesh(GenerateCube(nex, dim, comm.Rank(), comm.Size()), opts.output, comm, format,
              opts.Io());
  });
  const long cells = dim == 2 ? long{nex} * nex : long{nex} * nex * nex;
  const long vertices = dim == 2 ? long{nex + 1} * (nex + 1) : long{nex + 1} * (nex + 1) * (nex + 1);
  fmt::print("wrote {} cells={} vertices={}\n", opts.output, cells, vertices);
  return 0;
}

int RunInfo(const CommonOptions &opts)
{
  const auto stored = StoredPlex(opts);
  WithMesh(opts, false, [&](const DistributedMesh &mesh, Communicator &comm) {
    const auto leaves = AllGather(comm, static_cast<long>(mesh.point_sf.NumLeaves()));
    const auto glued = GatherGlobalMesh(mesh, comm);
    if (comm.Rank() != 0)
    {
      return;
    }
    const Plex &plex = stored ? *stored : glued->plex;
    fmt::print("cell_type={}\ndim={}\n", ToString(mesh.cell_type), mesh.dim);
    fmt::print("cells={} vertices={}\n", mesh.num_global_cells, mesh.num_global_vertices);
    fmt::print("num_strata={}\nstrata={}\n", plex.NumStrata(), JoinCounts(plex));
    fmt::print("cone_sizes={}\n", ConeSizeChart(plex));
    std::string per_rank;
    for (std::size_t r = 0; r < leaves.size(); ++r)
    {
      per_rank += fmt::format("{}{}", r == 0 ? "" : ",", leaves[r]);
    }
    fmt::print("ranks={}\nsf_leaves={}\n", comm.Size(), per_rank);
  });
  return 0;
}

int RunInterpolate(const CommonOptions &opts)
{
  const auto out_format = FormatFromPath(opts.output);
  WithMesh(opts, true, [&](const DistributedMesh &mesh, Communicator &comm) {
    const auto glued = GatherGlobalMesh(mesh, comm);
    WriteMesh(ExtractRawMesh(mesh, comm), opts.output, comm, out_format, opts.Io());
    if (comm.Rank() != 0)
    {
      return;
    }
    if (out_format == MeshFormat::hdf5)
    {
      WritePlexDatasets(HeavyDataPath(opts.output), glued->plex);
    }
    fmt::print("num_strata={}\nstrata={}\n", glued->plex.NumStrata(), JoinCounts(glued->plex));
  });
  return 0;
}

int RunPartition(const CommonOptions &opts, const std::string &partitioner)
{
  const auto choice = tools::ParsePartitioner(partitioner);
  std::vector<int> external;
  if (choice.method == PartitionMethod::external)
  {
    external = ReadAssignmentFile(choice.assignment_file);
  }
  WithMesh(opts, true, [&](const DistributedMesh &mesh, Communicator &comm) {
    const auto parts = Partition(mesh, comm.Size(), choice.method, comm, external);
    const auto interface = CountInterfaceFacets(mesh, parts, comm);
    // Assignment by global cell id, assembled on rank 0.
    std::vector<std::vector<GlobalIndex>> send(comm.Size());
    for (Point c = 0; c < mesh.NumCells(); ++c)
    {
      send[0].push_back(mesh.cell_gids[c]);
      send[0].push_back(parts.target[c]);
    }
    const auto received = AllToAll(comm, send);
    if (comm.Rank() != 0)
    {
      return;
    }
    std::vector<int> targets(mesh.num_global_cells, -1);
    for (const auto &buffer : received)
    {
      for (std::size_t k = 0; k < buffer.size(); k += 2)
      {
        targets[buffer[k]] = static_cast<int>(buffer[k + 1]);
      }
    }
    std::vector<long> sizes(comm.Size(), 0);
    for (auto t : targets)
    {
      ++sizes[t];
    }
    std::string per_part;
    for (std::size_t r = 0; r < sizes.size(); ++r)
    {
      per_part += fmt::format("{}{}", r == 0 ? "" : ",", sizes[r]);
    }
    fmt::print("parts={}\npart_cells={}\ninterface_facets={}\n", comm.Size(), per_part,
               interface);
    if (!opts.output.empty())
    {
      WriteAssignmentFile(opts.output, targets);
    }
  });
  return 0;
}

int RunConvert(const CommonOptions &opts)
{
  const auto in_format = FormatFromPath(opts.input);
  const auto out_format = opts.Format().value_or(FormatFromPath(opts.output));
  RunRanks(opts.ranks, [&](Communicator &comm) {
    WriteMesh(ReadMesh(opts.input, comm, in_format, opts.Io()), opts.output, comm, out_format,
              opts.Io());
  });
  fmt::print("wrote {}\n", opts.output);
  return 0;
}

int RunValidate(const CommonOptions &opts)
{
  const auto stored = StoredPlex(opts);
  long violations = 0;
  WithMesh(opts, true, [&](const DistributedMesh &mesh, Communicator &comm) {
    auto report = ValidateDistributed(mesh, comm);
    const auto glued = GatherGlobalMesh(mesh, comm);
    if (comm.Rank() != 0)
    {
      return;
    }
    report.Merge(ValidatePlex(glued->plex));
    const long euler = EulerCharacteristic(glued->plex);
    if (stored)
    {
      report.Merge(ValidatePlex(*stored));
      if (EulerCharacteristic(*stored) != euler || stored->NumPoints() != glued->plex.NumPoints())
      {
        report.Add("stored plex does not match the interpolated input mesh");
      }
    }
    for (const auto &message : report.messages)
    {
      fmt::print(stderr, "violation: {}\n", message);
    }
    violations = static_cast<long>(report.num_violations);
    fmt::print("num_strata={}\nstrata={}\nviolations={}\neuler={}\n", glued->plex.NumStrata(),
               JoinCounts(glued->plex), violations, euler);
  });
  return violations == 0 ? 0 : kExitInvalid;
}

int RunPipelineCommand(const CommonOptions &opts, const std::string &partitioner,
                       const std::string &migrate_order, bool validate)
{
  tools::PipelineOptions options;
  options.input = opts.input;
  if (!opts.output.empty())
  {
    options.output = opts.output;
  }
  options.input_format = opts.Format();
  options.io = opts.Io();
  options.ranks = opts.ranks;
  options.partitioner = tools::ParsePartitioner(partitioner);
  options.migrate_before_interpolation = migrate_order == "before";
  options.validate = validate;
  const auto report = tools::RunPipeline(options);
  fmt::print("{}", tools::FormatReport(report));
  return report.violations.value_or(0) == 0 ? 0 : kExitInvalid;
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Parallel unstructured mesh startup over simulated ranks"};
  app.require_subcommand(1);
  // PLEXUS_SEED is reserved: every algorithm here is deterministic and ignores it.

  CommonOptions opts;
  int nex = 2;
  int dim = 3;
  std::string partitioner = "block";
  std::string migrate_order = "after";
  bool validate = false;

  auto *gen = app.add_subcommand("gen", "Generate a structured cube mesh");
  gen->add_option("--nex", nex, "Cells per side")->check(CLI::PositiveNumber);
  gen->add_option("--dim", dim, "2 (quadrilaterals) or 3 (hexahedra)")
      ->check(CLI::IsMember({2, 3}));
  gen->add_option("-o,--output", opts.output, "Output mesh")->required();
  gen->add_option("--topology-path", opts.topology_path, "HDF5 topology dataset path");
  gen->add_option("--geometry-path", opts.geometry_path, "HDF5 geometry dataset path");
  AddRanks(*gen, opts);
  AddFormat(*gen, opts, "Output format (default: from extension)");

  auto *info = app.add_subcommand("info", "Print mesh sizes, strata and SF leaf counts");
  AddInput(*info, opts, true);
  AddRanks(*info, opts);
  AddFormat(*info, opts, "Input format (default: from extension)");

  auto *interpolate = app.add_subcommand("interpolate", "Interpolate in parallel and write");
  AddInput(*interpolate, opts, true);
  interpolate->add_option("-o,--output", opts.output, "Output mesh")->required();
  AddRanks(*interpolate, opts);
  AddFormat(*interpolate, opts, "Input format (default: from extension)");

  auto *partition = app.add_subcommand("partition", "Partition cells over --ranks parts");
  AddInput(*partition, opts, true);
  partition->add_option("-o,--output", opts.output, "Assignment file (one rank per cell)");
  partition->add_option("--partitioner", partitioner, "block, rcb or file:<path>");
  AddRanks(*partition, opts);
  AddFormat(*partition, opts, "Input format (default: from extension)");

  auto *convert = app.add_subcommand("convert", "Convert between HDF5/XDMF and text");
  AddInput(*convert, opts, true);
  convert->add_option("-o,--output", opts.output, "Output mesh")->required();
  AddRanks(*convert, opts);
  AddFormat(*convert, opts, "Output format (default: from extension)");

  auto *validate_cmd = app.add_subcommand("validate", "Check invariants and report Euler");
  AddInput(*validate_cmd, opts, true);
  AddRanks(*validate_cmd, opts);
  AddFormat(*validate_cmd, opts, "Input format (default: from extension)");

  auto *pipeline = app.add_subcommand("pipeline", "Load, construct, interpolate, redistribute");
  AddInput(*pipeline, opts, false);
  pipeline->add_option("-o,--output", opts.output, "Output mesh");
  pipeline->add_option("--partitioner", partitioner, "block, rcb or file:<path>");
  pipeline->add_option("--migrate-order", migrate_order,
                       "Redistribute before or after interpolation")
      ->check(CLI::IsMember({"before", "after"}));
  pipeline->add_flag("--validate", validate, "Run the invariant suite afterwards");
  AddRanks(*pipeline, opts);
  AddFormat(*pipeline, opts, "Input format (default: from extension)");

  CLI11_PARSE(app, argc, argv);

  try
  {
    if (gen->parsed())
    {
      return RunGen(nex, dim, opts);
    }
    if (info->parsed())
    {
      return RunInfo(opts);
    }
    if (interpolate->parsed())
    {
      return RunInterpolate(opts);
    }
    if (partition->parsed())
    {
      return RunPartition(opts, partitioner);
    }
    if (convert->parsed())
    {
      return RunConvert(opts);
    }
    if (validate_cmd->parsed())
    {
      return RunValidate(opts);
    }
    return RunPipelineCommand(opts, partitioner, migrate_order, validate);
  }
  catch (const tools::StageError &e)
  {
    fmt::print(stderr, "error: stage {}: {}\n", e.Stage(), e.what());
  }
  catch (const std::exception &e)
  {
    fmt::print(stderr, "error: {}\n", e.what());
  }
  return kExitError;
}
