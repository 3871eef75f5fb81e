// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#include "pipeline.hpp"

#include <chrono>
#include <functional>

#include <fmt/format.h>

#include "plexus/construct.hpp"
#include "plexus/glue.hpp"
#include "plexus/parallel_interp.hpp"
#include "plexus/validate.hpp"

namespace plexus::tools
{

PartitionerChoice ParsePartitioner(const std::string &text)
{
  if (text == "block")
  {
    return {PartitionMethod::block, {}};
  }
  if (text == "rcb")
  {
    return {PartitionMethod::rcb, {}};
  }
  if (text.rfind("file:", 0) == 0 && text.size() > 5)
  {
    return {PartitionMethod::external, text.substr(5)};
  }
  Fail("unknown partitioner '{}' (expected block, rcb or file:<path>)", text);
}

namespace
{

// Runs one stage on every rank and records the slowest rank's wall time.
class StageClock
{
public:
  StageClock(Communicator &comm, PipelineReport &report) : comm_(comm), report_(report) {}

  void Run(const std::string &name, const std::function<void()> &body)
  {
    comm_.Barrier();
    const auto start = std::chrono::steady_clock::now();
    try
    {
      body();
    }
    catch (const CommAborted &)
    {
      throw;
    }
    catch (const std::exception &e)
    {
      throw StageError(name, e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const double slowest = AllReduceMax(comm_, elapsed);
    if (comm_.Rank() == 0)
    {
      report_.stages.push_back({name, slowest});
    }
  }

private:
  Communicator &comm_;
  PipelineReport &report_;
};

}  // namespace

PipelineReport RunPipeline(const PipelineOptions &options)
{
  Require(options.ranks >= 1, "--ranks must be at least 1, got {}", options.ranks);
  const auto input_format = options.input_format.value_or(FormatFromPath(options.input));
  std::vector<int> external;
  if (options.partitioner.method == PartitionMethod::external)
  {
    external = ReadAssignmentFile(options.partitioner.assignment_file);
  }

  PipelineReport report;
  RunRanks(options.ranks, [&](Communicator &comm) {
    StageClock clock(comm, report);
    RawMesh raw;
    DistributedMesh mesh;
    clock.Run("raw_data_loading",
              [&] { raw = ReadMesh(options.input, comm, input_format, options.io); });
    clock.Run("plex_construction", [&] { mesh = BuildDistributedPlex(raw, comm); });

    auto redistribute = [&] {
      clock.Run("redistribution", [&] {
        const auto parts = Partition(mesh, comm.Size(), options.partitioner.method, comm,
                                     external);
        mesh = Migrate(mesh, parts, comm);
      });
    };
    if (options.migrate_before_interpolation)
    {
      redistribute();
    }
    clock.Run("topological_interpolation", [&] { InterpolateMesh(mesh, comm); });
    if (!options.migrate_before_interpolation)
    {
      redistribute();
    }

    const auto cells = AllReduceSum(comm, static_cast<long>(mesh.NumCells()));
    const auto leaves = AllReduceSum(comm, static_cast<long>(mesh.point_sf.NumLeaves()));
    PartitionAssignment current;
    current.target.assign(mesh.NumCells(), comm.Rank());
    const auto interface = AllReduceMax(comm, mesh.plex.NumStrata()) > 2
                               ? static_cast<long>(CountInterfaceFacets(mesh, current, comm))
                               : 0L;

    std::optional<ValidationReport> validation;
    if (options.validate)
    {
      try
      {
        validation = ValidateDistributed(mesh, comm);
      }
      catch (const CommAborted &)
      {
        throw;
      }
      catch (const std::exception &e)
      {
        throw StageError("validation", e.what());
      }
    }
    const auto glued = GatherGlobalMesh(mesh, comm);
    if (options.output)
    {
      try
      {
        const auto format = options.output_format.value_or(FormatFromPath(*options.output));
        WriteMesh(ExtractRawMesh(mesh, comm), *options.output, comm, format, options.io);
        if (format == MeshFormat::hdf5 && comm.Rank() == 0)
        {
          WritePlexDatasets(HeavyDataPath(*options.output), glued->plex);
        }
      }
      catch (const CommAborted &)
      {
        throw;
      }
      catch (const std::exception &e)
      {
        throw StageError("output", e.what());
      }
    }
    if (comm.Rank() == 0)
    {
      report.cells = cells;
      report.vertices = static_cast<long>(glued->num_vertices);
      for (int h = 0; h < glued->plex.NumStrata(); ++h)
      {
        report.strata.push_back(glued->plex.Stratum(h).size());
      }
      report.sf_leaves = leaves;
      report.interface_facets = interface;
      if (validation)
      {
        auto combined = *validation;
        combined.Merge(ValidatePlex(glued->plex));
        report.violations = static_cast<long>(combined.num_violations);
        report.euler = EulerCharacteristic(glued->plex);
      }
    }
  });
  return report;
}

std::string FormatReport(const PipelineReport &report)
{
  std::string out;
  double total = 0.0;
  for (const auto &stage : report.stages)
  {
    out += fmt::format("stage.{}.seconds={:.6f}\n", stage.name, stage.seconds);
    total += stage.seconds;
  }
  out += fmt::format("total.seconds={:.6f}\n", total);
  out += fmt::format("cells={}\nvertices={}\n", report.cells, report.vertices);
  std::string strata;
  for (std::size_t h = 0; h < report.strata.size(); ++h)
  {
    strata += fmt::format("{}{}", h == 0 ? "" : ",", report.strata[h]);
  }
  out += fmt::format("strata={}\nsf_leaves={}\ninterface_facets={}\n", strata, report.sf_leaves,
                     report.interface_facets);
  if (report.violations)
  {
    out += fmt::format("violations={}\neuler={}\n", *report.violations, *report.euler);
  }
  out += "\n";
  out += fmt::format("{:<28} {:>12} {:>8}\n", "stage", "seconds", "share");
  for (const auto &stage : report.stages)
  {
    out += fmt::format("{:<28} {:>12.6f} {:>7.1f}%\n", stage.name, stage.seconds,
                       total > 0.0 ? 100.0 * stage.seconds / total : 0.0);
  }
  out += fmt::format("{:<28} {:>12.6f}\n", "total", total);
  return out;
}

}  // namespace plexus::tools
