#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "semrel/gam.hpp"
#include "semrel/relevance.hpp"

namespace semrel {

enum class Response { LogFirst, LogGaze, LogTotal };

inline constexpr std::array<Response, 3> kAllResponses = {Response::LogFirst, Response::LogGaze,
                                                          Response::LogTotal};

std::string_view to_string(Response response) noexcept;
std::optional<Response> parse_response(std::string_view name);

/// The four relevance metrics, in table order.
inline constexpr std::array<std::string_view, 4> kRelevanceMetrics = {
    "cosine_context", "dynamic_rel", "attn_unweighted", "attn_weighted"};

/// Raw value of a named MetricRecord column (stroke_count, log_freq, the
/// four metrics, surprisal, log_first, log_gaze, log_total). Throws
/// InvalidArgument for an unknown name.
std::optional<double> record_value(const MetricRecord& record, std::string_view column);

/// Value of a metric as it enters a model. Surprisal enters on the log
/// scale (missing when zero); the relevance metrics enter as-is.
std::optional<double> model_value(const MetricRecord& record, std::string_view metric);

struct CorrelationMatrix {
  std::vector<std::string> columns;
  Eigen::MatrixXd r;
  Eigen::MatrixXi pair_rows;  // pairwise-complete row counts
};

/// Pearson correlation for every column pair over the rows where both are
/// present. Throws InsufficientData when a pair has fewer than 3 such rows
/// or zero variance, InvalidArgument with fewer than 2 columns.
CorrelationMatrix correlation_matrix(const std::vector<MetricRecord>& records,
                                     const std::vector<std::string>& columns);

struct ModelConfig {
  int smooth_k = 10;
  int tensor_k = 5;
  gam::LambdaSearch search;
  int curve_points = 100;
};

struct ComparisonResult {
  std::string metric_name;
  std::string response_name;
  std::size_t n_used = 0;
  double aic_base = 0.0;
  double aic_full = 0.0;
  double delta_aic = 0.0;
  double metric_edf = 0.0;
  /// Proxy for a significant smooth: edf > 1.01 and delta_aic < 0.
  bool metric_significant = false;
  std::vector<std::size_t> rows;  // record indices used by both fits
  gam::PartialEffect curve;       // metric smooth of the full model
};

/// Indices of records with every listed metric, stroke count, log
/// frequency, the response and an experiment id present.
std::vector<std::size_t> comparison_rows(const std::vector<MetricRecord>& records,
                                         const std::vector<std::string>& metrics,
                                         Response response);

/// Base: intercept + te(stroke_count, log_freq) + s(experiment, re).
/// Full: base + s(metric). Both fits use comparison_rows(records, {metric}).
ComparisonResult run_model_comparison(const std::vector<MetricRecord>& records,
                                      std::string_view metric, Response response,
                                      const ModelConfig& config = {});

/// Compares every metric for one response on one shared row set (rows
/// complete for all metrics), fitting the base model once.
std::vector<ComparisonResult> run_comparisons(const std::vector<MetricRecord>& records,
                                              const std::vector<std::string>& metrics,
                                              Response response, const ModelConfig& config = {});

/// Metric names ordered by ascending delta_aic, ties by name. Throws
/// MixedResponse when the results disagree on response, NMismatch when
/// they disagree on n_used.
std::vector<std::string> rank_metrics(const std::vector<ComparisonResult>& results);

struct ReportPaths {
  std::filesystem::path corr_csv;
  std::filesystem::path delta_aic_csv;
  std::filesystem::path comparisons_csv;
  std::filesystem::path manifest;
  std::vector<std::filesystem::path> curve_files;
};

/// Writes corr.csv, delta_aic.csv, comparisons.csv, one partial-effect CSV
/// and SVG per comparison under partial_effects/, and manifest.txt holding
/// the given key=value entries plus row counts. Throws InvalidArgument
/// (before touching the filesystem) when `comparisons` is empty, IoError
/// when a file cannot be written.
ReportPaths emit_report(const CorrelationMatrix& corr,
                        const std::vector<ComparisonResult>& comparisons,
                        const std::filesystem::path& out_dir,
                        const std::vector<std::pair<std::string, std::string>>& manifest);

/// Standalone SVG line plot of a partial-effect curve.
std::string render_curve_svg(const gam::PartialEffect& curve, std::string_view title,
                             std::string_view x_label, std::string_view y_label);

}  // namespace semrel
