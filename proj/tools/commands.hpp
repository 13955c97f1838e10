#pragma once

// Subcommands of the semrel tool. Kept out of main() so tests can run the
// whole command line in-process.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "semrel/relevance.hpp"

namespace semrel::cli {

enum class WeightMode { Paper, Uniform, File };

struct RunConfig {
  std::filesystem::path embeddings;
  std::filesystem::path corpus;
  std::filesystem::path strokes_table;
  std::filesystem::path weights_file;
  std::filesystem::path metrics;  // analyze input
  std::filesystem::path out;

  std::string embeddings_header = "auto";  // auto | yes | no
  SemRevMethod method = SemRevMethod::Cosine;
  WeightMode weight_mode = WeightMode::Paper;
  BoundaryPolicy boundary = BoundaryPolicy::ComputeAvailable;

  int smooth_k = 10;
  int tensor_k = 5;
  double lambda_min = 1e-4;
  double lambda_max = 1e6;
  int lambda_points = 30;
  int sweeps = 3;
  std::uint64_t seed = 20240611;

  std::vector<std::string> metric_subset;
  std::vector<std::string> response_subset;
};

/// Adds stroke_count to every corpus row. Returns the number of tokens
/// with an unknown character.
std::size_t cmd_strokes(const RunConfig& config, std::ostream& log);

/// Writes the metric CSV. Returns the number of records.
std::size_t cmd_annotate(const RunConfig& config, std::ostream& log);

/// Fits every requested metric x response comparison and writes the report.
void cmd_analyze(const RunConfig& config, std::ostream& log);

/// key=value lines describing every resolved setting.
std::vector<std::pair<std::string, std::string>> describe(const RunConfig& config);

/// Parses argv-style arguments (without the program name) and runs the
/// selected subcommand. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace semrel::cli
