#include "semrel/relevance.hpp"

#include <algorithm>
#include <cmath>
#include <string_view>

#include <fmt/format.h>

#include "semrel/error.hpp"
#include "semrel/text.hpp"

namespace semrel {

double sem_rev(VectorView u, VectorView v, SemRevMethod method) {
  return method == SemRevMethod::Cosine ? cosine(u, v) : pearson(u, v);
}

const ContextWord* WindowContext::at(int offset) const {
  if (offset > 0) return following && following->offset == offset ? &*following : nullptr;
  for (const auto& w : preceding) {
    if (w.offset == offset) return &w;
  }
  return nullptr;
}

WindowContext build_window(std::span<const Token> sentence, std::size_t target_index,
                           const EmbeddingTable& table) {
  if (target_index < 1 || target_index > sentence.size()) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("target index {} outside sentence of {} tokens", target_index,
                            sentence.size()));
  }
  const std::size_t t = target_index - 1;
  const auto target_vec = table.lookup(sentence[t].surface);
  if (!target_vec) throw Error(ErrorCode::TargetOOV, "'" + sentence[t].surface + "'");

  WindowContext window;
  window.target = &sentence[t];
  window.target_vector = *target_vec;
  for (int offset = -3; offset <= -1; ++offset) {
    const auto back = static_cast<std::size_t>(-offset);
    if (back > t) continue;
    const Token& tok = sentence[t - back];
    if (const auto v = table.lookup(tok.surface)) {
      window.preceding.push_back(ContextWord{&tok, *v, offset});
    }
  }
  if (t + 1 < sentence.size()) {
    const Token& tok = sentence[t + 1];
    if (const auto v = table.lookup(tok.surface)) window.following = ContextWord{&tok, *v, 1};
  }
  return window;
}

std::array<int, 2> pair_offsets(Pair pair) noexcept {
  switch (pair) {
    case Pair::TargetPrev1: return {0, -1};
    case Pair::TargetPrev2: return {0, -2};
    case Pair::TargetPrev3: return {0, -3};
    case Pair::Prev2Prev1: return {-2, -1};
    case Pair::Prev3Prev2: return {-3, -2};
    case Pair::TargetNext: return {0, 1};
  }
  return {0, 0};
}

double WeightTable::weight(Pair pair) const noexcept {
  return const_cast<WeightTable*>(this)->weight(pair);
}

double& WeightTable::weight(Pair pair) noexcept {
  switch (pair) {
    case Pair::TargetPrev1: return w_target_prev1;
    case Pair::TargetPrev2: return w_target_prev2;
    case Pair::TargetPrev3: return w_target_prev3;
    case Pair::Prev2Prev1: return w_pair_prev21;
    case Pair::Prev3Prev2: return w_pair_prev32;
    case Pair::TargetNext: break;
  }
  return w_target_next;
}

namespace {

constexpr std::array<std::pair<std::string_view, Pair>, 6> kWeightKeys = {{
    {"w_target_prev1", Pair::TargetPrev1},
    {"w_target_prev2", Pair::TargetPrev2},
    {"w_target_prev3", Pair::TargetPrev3},
    {"w_pair_prev21", Pair::Prev2Prev1},
    {"w_pair_prev32", Pair::Prev3Prev2},
    {"w_target_next", Pair::TargetNext},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

void WeightTable::validate() const {
  for (const auto& [name, pair] : kWeightKeys) {
    const double w = weight(pair);
    if (!(w > 0.0 && w <= 1.0)) {
      throw Error(ErrorCode::BadWeights, fmt::format("{} = {} is outside (0, 1]", name, w));
    }
  }
}

WeightTable parse_weight_table(std::istream& source) {
  WeightTable weights;
  std::string line;
  std::size_t line_no = 0;
  while (text::read_line(source, line)) {
    ++line_no;
    const auto content = trim(line);
    if (content.empty() || content.front() == '#') continue;
    const auto eq = content.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::BadWeights, fmt::format("line {}: expected key=value", line_no));
    }
    const auto key = trim(content.substr(0, eq));
    const auto value = text::parse_double(trim(content.substr(eq + 1)));
    const auto it = std::find_if(kWeightKeys.begin(), kWeightKeys.end(),
                                 [&](const auto& kv) { return kv.first == key; });
    if (it == kWeightKeys.end()) {
      throw Error(ErrorCode::BadWeights, fmt::format("line {}: unknown key '{}'", line_no, key));
    }
    if (!value) {
      throw Error(ErrorCode::BadWeights, fmt::format("line {}: bad number", line_no));
    }
    weights.weight(it->second) = *value;
  }
  weights.validate();
  return weights;
}

std::optional<double> metric_cosine_context(const WindowContext& window) {
  if (window.preceding.empty()) return std::nullopt;
  std::vector<double> sum(window.target_vector.size(), 0.0);
  for (const auto& w : window.preceding) {
    for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += w.vector[i];
  }
  try {
    return cosine(sum, window.target_vector);
  } catch (const Error&) {
    return std::nullopt;
  }
}

namespace {

VectorView vector_at(const WindowContext& window, int offset, bool& found) {
  if (offset == 0) {
    found = true;
    return window.target_vector;
  }
  const auto* w = window.at(offset);
  found = w != nullptr;
  return found ? w->vector : VectorView{};
}

// Weighted sum over the pairs in `pairs` whose members are both present.
// Pairs with an undefined similarity (zero vector / zero variance) are skipped.
template <typename Pairs>
std::optional<double> weighted_pair_sum(const WindowContext& window, SemRevMethod method,
                                        const Pairs& pairs, const WeightTable& weights) {
  double total = 0.0;
  std::size_t used = 0;
  for (Pair p : pairs) {
    const auto [a, b] = pair_offsets(p);
    bool has_a = false, has_b = false;
    const auto va = vector_at(window, a, has_a);
    const auto vb = vector_at(window, b, has_b);
    if (!has_a || !has_b) continue;
    try {
      total += weights.weight(p) * sem_rev(va, vb, method);
      ++used;
    } catch (const Error&) {
    }
  }
  if (used == 0) return std::nullopt;
  return total;
}

constexpr std::array<Pair, 5> kPrecedingPairs = {Pair::TargetPrev1, Pair::TargetPrev2,
                                                 Pair::TargetPrev3, Pair::Prev2Prev1,
                                                 Pair::Prev3Prev2};

}  // namespace

std::optional<double> metric_dynamic(const WindowContext& window, SemRevMethod method) {
  return weighted_pair_sum(window, method, kPrecedingPairs, WeightTable::uniform());
}

std::optional<double> metric_attention(const WindowContext& window, SemRevMethod method,
                                       const WeightTable& weights) {
  return weighted_pair_sum(window, method, kAllPairs, weights);
}

Annotation annotate_corpus(const Corpus& corpus, const EmbeddingTable& table,
                           const StrokeTable& strokes, const AnnotateOptions& options) {
  options.weights.validate();
  const auto uniform = WeightTable::uniform();
  Annotation out;
  out.records.reserve(corpus.token_count);
  auto log_or_missing = [](const std::optional<double>& v) -> std::optional<double> {
    if (!v || !(*v > 0.0)) return std::nullopt;
    return std::log(*v);
  };

  for (const auto& sentence : corpus.sentences) {
    const std::span<const Token> tokens(sentence.tokens);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      const Token& tok = tokens[i];
      MetricRecord rec;
      rec.sentence_id = tok.sentence_id;
      rec.position = tok.position;
      rec.surface = tok.surface;
      rec.experiment_id = tok.experiment_id;
      rec.stroke_count = find_word_stroke_count(tok.surface, strokes);
      if (!rec.stroke_count) ++out.diagnostics.unknown_character;
      rec.log_freq = log_or_missing(tok.word_freq);
      rec.surprisal = tok.surprisal;
      rec.log_first = log_or_missing(tok.first_duration);
      rec.log_gaze = log_or_missing(tok.gaze_duration);
      rec.log_total = log_or_missing(tok.total_duration);
      ++out.diagnostics.tokens;

      if (!table.contains(tok.surface)) {
        ++out.diagnostics.target_oov;
      } else if (options.boundary == BoundaryPolicy::DropInitial && i < 3) {
        ++out.diagnostics.boundary_dropped;
      } else {
        const auto window = build_window(tokens, i + 1, table);
        rec.cosine_context = metric_cosine_context(window);
        rec.dynamic_rel = metric_dynamic(window, options.method);
        rec.attn_unweighted = metric_attention(window, options.method, uniform);
        rec.attn_weighted = metric_attention(window, options.method, options.weights);
      }
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

namespace {

constexpr std::string_view kMetricCsvHeader =
    "sentence_id,position,surface,experiment_id,stroke_count,log_freq,cosine_context,"
    "dynamic_rel,attn_unweighted,attn_weighted,surprisal,log_first,log_gaze,log_total";

std::string cell(const std::optional<double>& v) { return v ? fmt::format("{}", *v) : ""; }
std::string cell(const std::optional<int>& v) { return v ? fmt::format("{}", *v) : ""; }

}  // namespace

void write_metric_csv(std::ostream& out, const std::vector<MetricRecord>& records) {
  out << kMetricCsvHeader << '\n';
  for (const auto& r : records) {
    out << text::csv_field(r.sentence_id) << ',' << r.position << ',' << text::csv_field(r.surface)
        << ',' << text::csv_field(r.experiment_id) << ',' << cell(r.stroke_count) << ','
        << cell(r.log_freq) << ',' << cell(r.cosine_context) << ',' << cell(r.dynamic_rel) << ','
        << cell(r.attn_unweighted) << ',' << cell(r.attn_weighted) << ',' << cell(r.surprisal)
        << ',' << cell(r.log_first) << ',' << cell(r.log_gaze) << ',' << cell(r.log_total)
        << '\n';
  }
}

std::vector<MetricRecord> read_metric_csv(std::istream& in) {
  std::string line;
  if (!text::read_line(in, line)) throw Error(ErrorCode::MissingColumn, "empty metric CSV");
  const auto header = text::split_csv(line);
  if (!header) throw Error(ErrorCode::BadNumeric, "unterminated quote in metric CSV header");

  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < header->size(); ++i) {
      if ((*header)[i] == name) return i;
    }
    return std::nullopt;
  };
  auto require = [&](std::string_view name) {
    const auto c = column(name);
    if (!c) throw Error(ErrorCode::MissingColumn, "metric CSV lacks '" + std::string(name) + "'");
    return *c;
  };
  const auto c_sentence = require("sentence_id");
  const auto c_position = require("position");
  const auto c_surface = require("surface");
  const auto c_experiment = require("experiment_id");
  const auto c_stroke = column("stroke_count");

  struct NumericColumn {
    std::string_view name;
    std::optional<double> MetricRecord::*field;
  };
  const std::array<NumericColumn, 9> numeric = {{
      {"log_freq", &MetricRecord::log_freq},
      {"cosine_context", &MetricRecord::cosine_context},
      {"dynamic_rel", &MetricRecord::dynamic_rel},
      {"attn_unweighted", &MetricRecord::attn_unweighted},
      {"attn_weighted", &MetricRecord::attn_weighted},
      {"surprisal", &MetricRecord::surprisal},
      {"log_first", &MetricRecord::log_first},
      {"log_gaze", &MetricRecord::log_gaze},
      {"log_total", &MetricRecord::log_total},
  }};
  std::array<std::optional<std::size_t>, 9> numeric_cols;
  for (std::size_t k = 0; k < numeric.size(); ++k) numeric_cols[k] = column(numeric[k].name);

  std::vector<MetricRecord> records;
  std::size_t row_no = 1;
  while (text::read_line(in, line)) {
    ++row_no;
    if (line.empty()) continue;
    const auto fields = text::split_csv(line);
    if (!fields || fields->size() != header->size()) {
      throw Error(ErrorCode::BadNumeric, fmt::format("metric CSV row {}: wrong field count", row_no));
    }
    auto bad = [&](std::string_view what) {
      return Error(ErrorCode::BadNumeric, fmt::format("metric CSV row {}: bad {}", row_no, what));
    };
    MetricRecord r;
    r.sentence_id = (*fields)[c_sentence];
    r.surface = (*fields)[c_surface];
    r.experiment_id = (*fields)[c_experiment];
    const auto pos = text::parse_int((*fields)[c_position]);
    if (!pos) throw bad("position");
    r.position = static_cast<int>(*pos);
    if (c_stroke && !(*fields)[*c_stroke].empty()) {
      const auto s = text::parse_int((*fields)[*c_stroke]);
      if (!s) throw bad("stroke_count");
      r.stroke_count = static_cast<int>(*s);
    }
    for (std::size_t k = 0; k < numeric.size(); ++k) {
      if (!numeric_cols[k] || (*fields)[*numeric_cols[k]].empty()) continue;
      const auto v = text::parse_double((*fields)[*numeric_cols[k]]);
      if (!v) throw bad(numeric[k].name);
      r.*(numeric[k].field) = *v;
    }
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace semrel
