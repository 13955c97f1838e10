#include "semrel/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <fmt/format.h>

#include "semrel/error.hpp"

namespace semrel {

std::string_view to_string(Response response) noexcept {
  switch (response) {
    case Response::LogFirst: return "log_first";
    case Response::LogGaze: return "log_gaze";
    case Response::LogTotal: return "log_total";
  }
  return "unknown";
}

std::optional<Response> parse_response(std::string_view name) {
  for (Response r : kAllResponses) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

std::optional<double> record_value(const MetricRecord& r, std::string_view column) {
  if (column == "stroke_count") {
    return r.stroke_count ? std::optional<double>(*r.stroke_count) : std::nullopt;
  }
  if (column == "log_freq") return r.log_freq;
  if (column == "cosine_context") return r.cosine_context;
  if (column == "dynamic_rel") return r.dynamic_rel;
  if (column == "attn_unweighted") return r.attn_unweighted;
  if (column == "attn_weighted") return r.attn_weighted;
  if (column == "surprisal") return r.surprisal;
  if (column == "log_first") return r.log_first;
  if (column == "log_gaze") return r.log_gaze;
  if (column == "log_total") return r.log_total;
  throw Error(ErrorCode::InvalidArgument, "unknown column '" + std::string(column) + "'");
}

std::optional<double> model_value(const MetricRecord& record, std::string_view metric) {
  const auto v = record_value(record, metric);
  if (metric == "surprisal") {
    if (!v || !(*v > 0.0)) return std::nullopt;
    return std::log(*v);
  }
  return v;
}

CorrelationMatrix correlation_matrix(const std::vector<MetricRecord>& records,
                                     const std::vector<std::string>& columns) {
  if (columns.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "correlation matrix needs at least two columns");
  }
  const auto k = static_cast<Eigen::Index>(columns.size());
  std::vector<std::vector<std::optional<double>>> values(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) {
    values[c].reserve(records.size());
    for (const auto& r : records) values[c].push_back(record_value(r, columns[c]));
  }

  CorrelationMatrix out;
  out.columns = columns;
  out.r = Eigen::MatrixXd::Identity(k, k);
  out.pair_rows = Eigen::MatrixXi::Zero(k, k);
  for (Eigen::Index a = 0; a < k; ++a) {
    for (Eigen::Index b = a; b < k; ++b) {
      const auto& va = values[static_cast<std::size_t>(a)];
      const auto& vb = values[static_cast<std::size_t>(b)];
      double n = 0, ma = 0, mb = 0;
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (va[i] && vb[i]) {
          ++n;
          ma += *va[i];
          mb += *vb[i];
        }
      }
      const auto pair_name = fmt::format("({}, {})", columns[a], columns[b]);
      if (n < 3) {
        throw Error(ErrorCode::InsufficientData,
                    fmt::format("{} has {} complete rows", pair_name, n));
      }
      ma /= n;
      mb /= n;
      double sab = 0, saa = 0, sbb = 0;
      for (std::size_t i = 0; i < records.size(); ++i) {
        if (va[i] && vb[i]) {
          const double da = *va[i] - ma;
          const double db = *vb[i] - mb;
          sab += da * db;
          saa += da * da;
          sbb += db * db;
        }
      }
      if (saa == 0.0 || sbb == 0.0) {
        throw Error(ErrorCode::InsufficientData, pair_name + " has a constant column");
      }
      const double r = a == b ? 1.0 : sab / std::sqrt(saa * sbb);
      out.r(a, b) = out.r(b, a) = r;
      out.pair_rows(a, b) = out.pair_rows(b, a) = static_cast<int>(n);
    }
  }
  return out;
}

std::vector<std::size_t> comparison_rows(const std::vector<MetricRecord>& records,
                                         const std::vector<std::string>& metrics,
                                         Response response) {
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& r = records[i];
    bool ok = r.stroke_count && r.log_freq && !r.experiment_id.empty() &&
              record_value(r, to_string(response));
    for (const auto& m : metrics) {
      if (!ok) break;
      ok = model_value(r, m).has_value();
    }
    if (ok) rows.push_back(i);
  }
  return rows;
}

namespace {

constexpr std::string_view kTensorLabel = "te(stroke_count,log_freq)";
constexpr std::string_view kRandomLabel = "s(experiment,bs=re)";

std::string smooth_label(std::string_view metric) { return fmt::format("s({})", metric); }

struct BaseModel {
  gam::VectorXd y;
  std::vector<gam::TermSpec> terms;
  gam::FitResult fit;
};

BaseModel fit_base(const std::vector<MetricRecord>& records, const std::vector<std::size_t>& rows,
                   Response response, const ModelConfig& config, std::size_t extra_columns) {
  std::vector<double> stroke, logfreq;
  std::vector<std::string> experiment;
  BaseModel base;
  base.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = records[rows[i]];
    base.y(static_cast<Eigen::Index>(i)) = *record_value(r, to_string(response));
    stroke.push_back(*r.stroke_count);
    logfreq.push_back(*r.log_freq);
    experiment.push_back(r.experiment_id);
  }
  const std::set<std::string> levels(experiment.begin(), experiment.end());
  const std::size_t columns = 1 + static_cast<std::size_t>(config.tensor_k * config.tensor_k - 1) +
                              levels.size() + extra_columns;
  if (rows.size() <= columns) {
    throw Error(ErrorCode::TooFewRows,
                fmt::format("{} usable rows for {} model columns ({})", rows.size(), columns,
                            to_string(response)));
  }
  base.terms.push_back(gam::tensor_term(stroke, logfreq, config.tensor_k, config.tensor_k,
                                        std::string(kTensorLabel)));
  base.terms.push_back(gam::random_intercept_term(experiment, std::string(kRandomLabel)));
  base.fit = gam::fit_penalized(base.y, base.terms, config.search);
  return base;
}

ComparisonResult fit_full(const std::vector<MetricRecord>& records,
                          const std::vector<std::size_t>& rows, std::string_view metric,
                          Response response, const BaseModel& base, const ModelConfig& config) {
  std::vector<double> x;
  x.reserve(rows.size());
  for (auto i : rows) x.push_back(*model_value(records[i], metric));

  auto terms = base.terms;
  terms.push_back(gam::smooth_term(x, config.smooth_k, smooth_label(metric)));
  const auto full = gam::fit_penalized(base.y, terms, config.search);

  ComparisonResult out;
  out.metric_name = std::string(metric);
  out.response_name = std::string(to_string(response));
  out.n_used = rows.size();
  out.aic_base = base.fit.aic;
  out.aic_full = full.aic;
  out.delta_aic = gam::delta_aic(full, base.fit);
  out.metric_edf = full.find_term(smooth_label(metric))->edf;
  out.metric_significant = out.metric_edf > 1.01 && out.delta_aic < 0.0;
  out.rows = rows;
  const auto [lo, hi] = std::minmax_element(x.begin(), x.end());
  out.curve = gam::partial_effect(full, smooth_label(metric),
                                  gam::linspace(*lo, *hi, config.curve_points));
  return out;
}

}  // namespace

ComparisonResult run_model_comparison(const std::vector<MetricRecord>& records,
                                      std::string_view metric, Response response,
                                      const ModelConfig& config) {
  const std::vector<std::string> metrics{std::string(metric)};
  const auto rows = comparison_rows(records, metrics, response);
  const auto base =
      fit_base(records, rows, response, config, static_cast<std::size_t>(config.smooth_k - 1));
  return fit_full(records, rows, metric, response, base, config);
}

std::vector<ComparisonResult> run_comparisons(const std::vector<MetricRecord>& records,
                                              const std::vector<std::string>& metrics,
                                              Response response, const ModelConfig& config) {
  if (metrics.empty()) throw Error(ErrorCode::InvalidArgument, "no metrics to compare");
  const auto rows = comparison_rows(records, metrics, response);
  const auto base =
      fit_base(records, rows, response, config, static_cast<std::size_t>(config.smooth_k - 1));
  std::vector<ComparisonResult> out;
  out.reserve(metrics.size());
  for (const auto& m : metrics) out.push_back(fit_full(records, rows, m, response, base, config));
  return out;
}

std::vector<std::string> rank_metrics(const std::vector<ComparisonResult>& results) {
  for (const auto& r : results) {
    if (r.response_name != results.front().response_name) {
      throw Error(ErrorCode::MixedResponse,
                  r.response_name + " vs " + results.front().response_name);
    }
    if (r.n_used != results.front().n_used) {
      throw Error(ErrorCode::NMismatch, "results were fitted on different row counts");
    }
  }
  std::vector<const ComparisonResult*> order;
  for (const auto& r : results) order.push_back(&r);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
    if (a->delta_aic != b->delta_aic) return a->delta_aic < b->delta_aic;
    return a->metric_name < b->metric_name;
  });
  std::vector<std::string> names;
  for (const auto* r : order) names.push_back(r->metric_name);
  return names;
}

}  // namespace semrel
