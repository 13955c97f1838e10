#include "commands.hpp"

#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "semrel/analysis.hpp"
#include "semrel/corpus.hpp"
#include "semrel/embedding_store.hpp"
#include "semrel/error.hpp"
#include "semrel/text.hpp"

namespace semrel::cli {

namespace fs = std::filesystem;

namespace {

std::ifstream open_input(const fs::path& path, std::string_view what) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, fmt::format("cannot open {} '{}'", what, path.string()));
  return in;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path.string() + "'");
  return out;
}

void finish(std::ofstream& out, const fs::path& path) {
  out.close();
  if (!out) throw Error(ErrorCode::IoError, "failed writing '" + path.string() + "'");
}

void require(const fs::path& path, std::string_view flag, std::string_view command) {
  if (path.empty()) {
    throw Error(ErrorCode::InvalidArgument, fmt::format("{} requires {}", command, flag));
  }
}

StrokeTable load_strokes(const fs::path& path, std::ostream& log) {
  auto in = open_input(path, "stroke table");
  auto parsed = parse_stroke_table(in);
  if (!parsed.malformed_lines.empty()) {
    log << fmt::format("stroke table: skipped {} malformed line(s)\n",
                       parsed.malformed_lines.size());
  }
  return std::move(parsed.table);
}

EmbeddingTable load_embeddings(const RunConfig& config, std::ostream& log) {
  bool header = config.embeddings_header == "yes";
  if (config.embeddings_header == "auto") {
    auto probe = open_input(config.embeddings, "embeddings");
    std::string first;
    text::read_line(probe, first);
    header = looks_like_header(first);
  }
  auto in = open_input(config.embeddings, "embeddings");
  auto parsed = parse_embeddings(in, header);
  const auto& d = parsed.diagnostics;
  log << fmt::format("embeddings: {} vectors of dimension {} ({} lines, {} malformed, {} duplicate)\n",
                     parsed.table.size(), parsed.table.dim(), d.lines_read, d.malformed_lines,
                     d.duplicate_tokens);
  if (d.declared_count && *d.declared_count != parsed.table.size()) {
    log << fmt::format("embeddings: header declares {} entries\n", *d.declared_count);
  }
  return std::move(parsed.table);
}

WeightTable resolve_weights(const RunConfig& config) {
  switch (config.weight_mode) {
    case WeightMode::Paper: return WeightTable::paper();
    case WeightMode::Uniform: return WeightTable::uniform();
    case WeightMode::File: {
      require(config.weights_file, "--weights-file", "--weights file");
      auto in = open_input(config.weights_file, "weight file");
      return parse_weight_table(in);
    }
  }
  return WeightTable::paper();
}

std::string_view method_name(SemRevMethod m) {
  return m == SemRevMethod::Cosine ? "cosine" : "correlation";
}

std::string_view weight_mode_name(WeightMode m) {
  switch (m) {
    case WeightMode::Paper: return "paper";
    case WeightMode::Uniform: return "uniform";
    case WeightMode::File: return "file";
  }
  return "paper";
}

std::string_view boundary_name(BoundaryPolicy b) {
  return b == BoundaryPolicy::ComputeAvailable ? "compute_available" : "drop_initial";
}

}  // namespace

std::vector<std::pair<std::string, std::string>> describe(const RunConfig& c) {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : ",") + x;
    return s;
  };
  return {
      {"embeddings", c.embeddings.string()},
      {"corpus", c.corpus.string()},
      {"strokes_table", c.strokes_table.string()},
      {"weights_file", c.weights_file.string()},
      {"metrics", c.metrics.string()},
      {"out", c.out.string()},
      {"embeddings_header", c.embeddings_header},
      {"method", std::string(method_name(c.method))},
      {"weights", std::string(weight_mode_name(c.weight_mode))},
      {"boundary_policy", std::string(boundary_name(c.boundary))},
      {"smooth_k", std::to_string(c.smooth_k)},
      {"tensor_k", std::to_string(c.tensor_k)},
      {"lambda_min", fmt::format("{}", c.lambda_min)},
      {"lambda_max", fmt::format("{}", c.lambda_max)},
      {"lambda_points", std::to_string(c.lambda_points)},
      {"sweeps", std::to_string(c.sweeps)},
      {"seed", std::to_string(c.seed)},
      {"metric_subset", join(c.metric_subset)},
      {"response_subset", join(c.response_subset)},
  };
}

std::size_t cmd_strokes(const RunConfig& config, std::ostream& log) {
  require(config.corpus, "--corpus", "strokes");
  require(config.strokes_table, "--strokes-table", "strokes");
  require(config.out, "--out", "strokes");

  const auto strokes = load_strokes(config.strokes_table, log);
  {
    auto in = open_input(config.corpus, "corpus");
    parse_corpus(in);  // validates the schema before anything is written
  }

  auto in = open_input(config.corpus, "corpus");
  std::string line;
  text::read_line(in, line);
  const auto header = text::split(line, '\t');
  std::size_t surface_col = 0;
  while (header[surface_col] != ColumnMap{}.surface) ++surface_col;

  auto out = open_output(config.out);
  out << line << "\tstroke_count\n";
  std::size_t unknown = 0;
  while (text::read_line(in, line)) {
    if (line.empty()) continue;
    const auto fields = text::split(line, '\t');
    const auto count = find_word_stroke_count(fields[surface_col], strokes);
    if (!count) ++unknown;
    out << line << '\t' << (count ? std::to_string(*count) : std::string()) << '\n';
  }
  finish(out, config.out);
  if (unknown > 0) {
    log << fmt::format("warning: {} token(s) contain characters missing from the stroke table\n",
                       unknown);
  }
  return unknown;
}

std::size_t cmd_annotate(const RunConfig& config, std::ostream& log) {
  require(config.embeddings, "--embeddings", "annotate");
  require(config.corpus, "--corpus", "annotate");
  require(config.out, "--out", "annotate");

  AnnotateOptions options;
  options.method = config.method;
  options.weights = resolve_weights(config);
  options.boundary = config.boundary;

  const auto table = load_embeddings(config, log);
  StrokeTable strokes;
  if (!config.strokes_table.empty()) strokes = load_strokes(config.strokes_table, log);
  Corpus corpus;
  {
    auto in = open_input(config.corpus, "corpus");
    corpus = parse_corpus(in);
  }

  const auto annotation = annotate_corpus(corpus, table, strokes, options);
  auto out = open_output(config.out);
  write_metric_csv(out, annotation.records);
  finish(out, config.out);

  const auto& d = annotation.diagnostics;
  const double coverage =
      d.tokens == 0 ? 0.0 : 100.0 * static_cast<double>(d.tokens - d.target_oov) / d.tokens;
  log << fmt::format(
      "annotate: {} tokens in {} sentences, {} without a vector ({:.1f}% coverage), "
      "{} with unknown characters",
      d.tokens, corpus.sentences.size(), d.target_oov, coverage, d.unknown_character);
  if (d.boundary_dropped > 0) log << fmt::format(", {} dropped at sentence start", d.boundary_dropped);
  log << '\n';
  return annotation.records.size();
}

void cmd_analyze(const RunConfig& config, std::ostream& log) {
  require(config.metrics, "--metrics", "analyze");
  require(config.out, "--out", "analyze");

  std::vector<MetricRecord> records;
  {
    auto in = open_input(config.metrics, "metric CSV");
    records = read_metric_csv(in);
  }

  std::vector<Response> responses;
  if (config.response_subset.empty()) {
    for (Response r : kAllResponses) {
      for (const auto& rec : records) {
        if (record_value(rec, to_string(r))) {
          responses.push_back(r);
          break;
        }
      }
    }
  } else {
    for (const auto& name : config.response_subset) responses.push_back(*parse_response(name));
  }
  if (responses.empty()) {
    throw Error(ErrorCode::MissingColumn,
                "the metric CSV has no response values (log_first, log_gaze, log_total)");
  }

  std::vector<std::string> metrics = config.metric_subset;
  if (metrics.empty()) {
    metrics.assign(kRelevanceMetrics.begin(), kRelevanceMetrics.end());
    for (const auto& rec : records) {
      if (model_value(rec, "surprisal")) {
        metrics.emplace_back("surprisal");
        break;
      }
    }
  }

  ModelConfig model;
  model.smooth_k = config.smooth_k;
  model.tensor_k = config.tensor_k;
  model.search.lambda_min = config.lambda_min;
  model.search.lambda_max = config.lambda_max;
  model.search.grid_points = config.lambda_points;
  model.search.sweeps = config.sweeps;

  std::vector<ComparisonResult> comparisons;
  for (Response r : responses) {
    auto results = run_comparisons(records, metrics, r, model);
    const auto ranking = rank_metrics(results);
    log << fmt::format("{} (n = {}):", to_string(r), results.front().n_used);
    for (const auto& name : ranking) {
      for (const auto& c : results) {
        if (c.metric_name == name) log << fmt::format("  {} {:.2f}", name, c.delta_aic);
      }
    }
    log << '\n';
    for (auto& c : results) comparisons.push_back(std::move(c));
  }

  std::vector<std::string> corr_columns{"stroke_count", "log_freq"};
  corr_columns.insert(corr_columns.end(), metrics.begin(), metrics.end());
  for (Response r : responses) corr_columns.emplace_back(to_string(r));
  const auto corr = correlation_matrix(records, corr_columns);

  auto manifest = describe(config);
  manifest.emplace_back("records", std::to_string(records.size()));
  const auto paths = emit_report(corr, comparisons, config.out, manifest);
  log << fmt::format("report written to {} ({} partial-effect files)\n", config.out.string(),
                     paths.curve_files.size());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Contextual semantic relevance metrics and reading-time model comparison",
               "semrel"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read option=value settings from a file (flags take precedence)");

  const std::map<std::string, SemRevMethod> methods{{"cosine", SemRevMethod::Cosine},
                                                    {"correlation", SemRevMethod::Correlation}};
  const std::map<std::string, WeightMode> weight_modes{
      {"paper", WeightMode::Paper}, {"uniform", WeightMode::Uniform}, {"file", WeightMode::File}};
  const std::map<std::string, BoundaryPolicy> policies{
      {"compute_available", BoundaryPolicy::ComputeAvailable},
      {"drop_initial", BoundaryPolicy::DropInitial}};

  app.add_option("--embeddings", config.embeddings, "word2vec-style text embedding file")
      ->check(CLI::ExistingFile);
  app.add_option("--embeddings-header", config.embeddings_header,
                 "Whether the embedding file starts with '<count> <dim>'")
      ->check(CLI::IsMember({"auto", "yes", "no"}))
      ->capture_default_str();
  app.add_option("--corpus", config.corpus, "Corpus TSV")->check(CLI::ExistingFile);
  app.add_option("--strokes-table", config.strokes_table, "Character stroke table TSV")
      ->check(CLI::ExistingFile);
  app.add_option("--out", config.out, "Output file (strokes, annotate) or directory (analyze)");
  app.add_option("--method", config.method, "Pairwise relevance: cosine or correlation")
      ->transform(CLI::CheckedTransformer(methods, CLI::ignore_case))
      ->capture_default_str();
  app.add_option("--weights", config.weight_mode, "Window weights: paper, uniform or file")
      ->transform(CLI::CheckedTransformer(weight_modes, CLI::ignore_case))
      ->capture_default_str();
  app.add_option("--weights-file", config.weights_file,
                 "key=value weight overrides (implies --weights file)")
      ->check(CLI::ExistingFile);
  app.add_option("--boundary-policy", config.boundary,
                 "compute_available or drop_initial (no metrics without three left neighbours)")
      ->transform(CLI::CheckedTransformer(policies, CLI::ignore_case))
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Seed recorded in the run manifest")
      ->capture_default_str();

  auto* strokes = app.add_subcommand("strokes", "Append word stroke counts to a corpus TSV");
  auto* annotate = app.add_subcommand("annotate", "Compute relevance metrics for every token");
  auto* analyze = app.add_subcommand("analyze", "Fit base/full models and write the report");
  for (auto* sub : {strokes, annotate, analyze}) sub->fallthrough();

  analyze->add_option("--metrics", config.metrics, "Metric CSV written by annotate")
      ->check(CLI::ExistingFile);
  analyze->add_option("--metric", config.metric_subset,
                      "Restrict to these metrics (repeatable; default: all)")
      ->check(CLI::IsMember({"cosine_context", "dynamic_rel", "attn_unweighted", "attn_weighted",
                             "surprisal"}));
  analyze->add_option("--response", config.response_subset,
                      "Restrict to these responses (repeatable; default: all present)")
      ->check(CLI::IsMember({"log_first", "log_gaze", "log_total"}));
  analyze->add_option("--smooth-k", config.smooth_k, "Basis size of the metric smooth")
      ->check(CLI::Range(4, 100))
      ->capture_default_str();
  analyze->add_option("--tensor-k", config.tensor_k, "Marginal basis size of the tensor term")
      ->check(CLI::Range(4, 20))
      ->capture_default_str();
  analyze->add_option("--lambda-min", config.lambda_min, "Smallest smoothing parameter")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  analyze->add_option("--lambda-max", config.lambda_max, "Largest smoothing parameter")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  analyze->add_option("--lambda-points", config.lambda_points, "Grid points per penalty")
      ->check(CLI::Range(1, 1000))
      ->capture_default_str();
  analyze->add_option("--sweeps", config.sweeps, "Coordinate-descent sweeps")
      ->check(CLI::Range(0, 100))
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }
  if (!config.weights_file.empty()) config.weight_mode = WeightMode::File;

  try {
    if (strokes->parsed()) {
      cmd_strokes(config, err);
    } else if (annotate->parsed()) {
      cmd_annotate(config, err);
    } else if (analyze->parsed()) {
      cmd_analyze(config, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace semrel::cli
