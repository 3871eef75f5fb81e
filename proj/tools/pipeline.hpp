// Copyright The Plexus Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef PLEXUS_TOOLS_PIPELINE_HPP
#define PLEXUS_TOOLS_PIPELINE_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "plexus/io.hpp"
#include "plexus/redistribute.hpp"

namespace plexus::tools
{

struct PartitionerChoice
{
  PartitionMethod method = PartitionMethod::block;
  std::string assignment_file;
};

// block | rcb | file:<path>
PartitionerChoice ParsePartitioner(const std::string &text);

struct PipelineOptions
{
  std::string input;
  std::optional<std::string> output;
  std::optional<MeshFormat> input_format;
  std::optional<MeshFormat> output_format;
  IoOptions io;
  int ranks = 1;
  PartitionerChoice partitioner;
  bool migrate_before_interpolation = false;
  bool validate = false;
};

struct StageTiming
{
  std::string name;
  double seconds = 0.0;
};

struct PipelineReport
{
  std::vector<StageTiming> stages;
  long cells = 0;
  long vertices = 0;
  std::vector<long> strata;
  long sf_leaves = 0;
  long interface_facets = 0;
  std::optional<long> violations;
  std::optional<long> euler;
};

// A failure inside one pipeline stage.
class StageError : public std::runtime_error
{
public:
  StageError(std::string stage, const std::string &message)
    : std::runtime_error(message), stage_(std::move(stage))
  {
  }
  const std::string &Stage() const { return stage_; }

private:
  std::string stage_;
};

PipelineReport RunPipeline(const PipelineOptions &options);

// key=value lines followed by a table.
std::string FormatReport(const PipelineReport &report);

}  // namespace plexus::tools

#endif  // PLEXUS_TOOLS_PIPELINE_HPP
