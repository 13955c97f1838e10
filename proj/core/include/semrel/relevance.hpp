#pragma once

#include <array>
#include <cstddef>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "semrel/corpus.hpp"
#include "semrel/embedding_store.hpp"

namespace semrel {

enum class SemRevMethod { Cosine, Correlation };

/// Pairwise semantic relevance: cosine or Pearson correlation.
double sem_rev(VectorView u, VectorView v, SemRevMethod method);

/// One in-vocabulary neighbour of the target. `offset` is the signed
/// distance in token positions (-3..-1 or +1).
struct ContextWord {
  const Token* token = nullptr;
  VectorView vector;
  int offset = 0;
};

/// Target plus up to three preceding and one following neighbour from the
/// same sentence. Preceding words are ordered by offset -3, -2, -1. An
/// out-of-vocabulary neighbour leaves a hole at its offset; offsets are
/// never renumbered.
struct WindowContext {
  const Token* target = nullptr;
  VectorView target_vector;
  std::vector<ContextWord> preceding;
  std::optional<ContextWord> following;

  /// The neighbour at `offset`, if present.
  const ContextWord* at(int offset) const;
};

/// Window for the token at 1-based `target_index`. Throws TargetOOV when the
/// target has no vector and InvalidArgument for an index out of range.
WindowContext build_window(std::span<const Token> sentence, std::size_t target_index,
                           const EmbeddingTable& table);

/// The six window pairs, each keyed by the two offsets involved (0 = target).
enum class Pair { TargetPrev1, TargetPrev2, TargetPrev3, Prev2Prev1, Prev3Prev2, TargetNext };

inline constexpr std::array<Pair, 6> kAllPairs = {Pair::TargetPrev1, Pair::TargetPrev2,
                                                  Pair::TargetPrev3, Pair::Prev2Prev1,
                                                  Pair::Prev3Prev2,  Pair::TargetNext};

/// The offsets joined by a pair, e.g. Prev2Prev1 -> {-2, -1}.
std::array<int, 2> pair_offsets(Pair pair) noexcept;

/// Positional weights, one per pair, each in (0, 1].
struct WeightTable {
  double w_target_prev1 = 1.0;
  double w_target_prev2 = 2.0 / 3.0;
  double w_target_prev3 = 0.5;
  double w_pair_prev21 = 0.5;
  double w_pair_prev32 = 1.0 / 3.0;
  double w_target_next = 1.0 / 3.0;

  static WeightTable paper() { return {}; }
  static WeightTable uniform() { return {1.0, 1.0, 1.0, 1.0, 1.0, 1.0}; }

  double weight(Pair pair) const noexcept;
  double& weight(Pair pair) noexcept;

  /// Throws BadWeights if any weight is outside (0, 1].
  void validate() const;
};

/// Reads key=value lines naming any of the six weights; omitted keys keep
/// their default. Blank lines and '#' comments are ignored. Throws BadWeights.
WeightTable parse_weight_table(std::istream& source);

/// cos(sum of preceding vectors, target). Absent without preceding words or
/// when the sum is a zero vector.
std::optional<double> metric_cosine_context(const WindowContext& window);

/// Sum of SemRev over the available pairs among (T,-1), (T,-2), (T,-3),
/// (-2,-1), (-3,-2). Absent when no pair is available.
std::optional<double> metric_dynamic(const WindowContext& window, SemRevMethod method);

/// Weighted sum of SemRev over the available pairs of metric_dynamic plus
/// (T,+1). Absent when no pair is available.
std::optional<double> metric_attention(const WindowContext& window, SemRevMethod method,
                                       const WeightTable& weights);

enum class BoundaryPolicy {
  ComputeAvailable,  // truncated windows use whatever neighbours exist
  DropInitial,       // tokens without a full three-word left context get no metrics
};

struct AnnotateOptions {
  SemRevMethod method = SemRevMethod::Cosine;
  WeightTable weights = WeightTable::paper();
  BoundaryPolicy boundary = BoundaryPolicy::ComputeAvailable;
};

struct MetricRecord {
  std::string sentence_id;
  int position = 0;
  std::string surface;
  std::string experiment_id;
  std::optional<int> stroke_count;
  std::optional<double> log_freq;
  std::optional<double> cosine_context;
  std::optional<double> dynamic_rel;
  std::optional<double> attn_unweighted;
  std::optional<double> attn_weighted;
  std::optional<double> surprisal;
  std::optional<double> log_first;
  std::optional<double> log_gaze;
  std::optional<double> log_total;
};

struct AnnotateDiagnostics {
  std::size_t tokens = 0;
  std::size_t target_oov = 0;
  std::size_t unknown_character = 0;
  std::size_t boundary_dropped = 0;
};

struct Annotation {
  std::vector<MetricRecord> records;
  AnnotateDiagnostics diagnostics;
};

/// One record per corpus token, in corpus order. `attn_unweighted` always
/// uses uniform weights; `attn_weighted` uses options.weights.
Annotation annotate_corpus(const Corpus& corpus, const EmbeddingTable& table,
                           const StrokeTable& strokes, const AnnotateOptions& options = {});

/// Metric CSV: sentence_id, position, surface, experiment_id, stroke_count,
/// log_freq, cosine_context, dynamic_rel, attn_unweighted, attn_weighted,
/// surprisal, log_first, log_gaze, log_total. Missing values are empty.
void write_metric_csv(std::ostream& out, const std::vector<MetricRecord>& records);
std::vector<MetricRecord> read_metric_csv(std::istream& in);

}  // namespace semrel
