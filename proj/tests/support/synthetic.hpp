#pragma once

// Seeded synthetic corpora for tests and the acceptance suite.

#include <cstdint>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "semrel/corpus.hpp"
#include "semrel/embedding_store.hpp"

namespace semrel::testing {

/// Small random corpus over a tiny vocabulary. Some tokens are drawn from
/// outside the vocabulary so windows have holes.
struct ToyCorpus {
  Vocab vocab;
  EmbeddingTable table;
  StrokeTable strokes;
  Corpus corpus;
};

struct ToyConfig {
  std::size_t sentences = 1000;
  std::size_t vocabulary = 10;
  std::size_t dim = 4;
  std::size_t min_length = 1;
  std::size_t max_length = 12;
  double oov_rate = 0.1;
};

ToyCorpus make_toy_corpus(std::uint64_t seed, const ToyConfig& config = {});

/// Reading-study facsimile: topical sentences, per-experiment offsets and
/// log-durations that fall as the weighted attention metric rises.
struct StudyConfig {
  std::size_t sentences = 500;
  std::size_t experiments = 5;
  std::size_t words = 150;
  std::size_t topics = 5;
  std::size_t dim = 16;
  std::size_t min_length = 6;
  std::size_t max_length = 14;
  double effect = 0.12;  // log-ms change per standard deviation of the metric
  double noise = 0.2;    // residual sd on the log scale
};

struct StudyData {
  EmbeddingTable table;
  StrokeTable strokes;
  Corpus corpus;
  std::vector<std::pair<std::string, std::vector<double>>> entries;
};

StudyData make_study(std::uint64_t seed, const StudyConfig& config = {});

}  // namespace semrel::testing
