#include <cmath>
#include <random>
#include <sstream>
#include <string>

#include <benchmark/benchmark.h>

#include "semrel/semrel.hpp"
#include "semrel/text.hpp"

using namespace semrel;

namespace {

std::string word(std::size_t i) {
  return text::encode_utf8(U'一' + static_cast<char32_t>(i % 400)) +
         text::encode_utf8(U'一' + static_cast<char32_t>(i / 400));
}

std::string embedding_text(std::size_t rows, std::size_t dim) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  std::ostringstream out;
  out << rows << ' ' << dim << '\n';
  for (std::size_t r = 0; r < rows; ++r) {
    out << word(r);
    for (std::size_t d = 0; d < dim; ++d) out << ' ' << n01(rng);
    out << '\n';
  }
  return out.str();
}

struct Workload {
  EmbeddingTable table;
  StrokeTable strokes;
  Corpus corpus;
};

Workload workload(std::size_t sentences) {
  Workload w;
  std::istringstream in(embedding_text(2000, 200));
  w.table = parse_embeddings(in, true).table;
  for (char32_t c = U'一'; c < U'一' + 400; ++c) w.strokes.insert(c, 1 + static_cast<int>(c % 20));
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::size_t> pick(0, 2099), len(5, 20);
  for (std::size_t s = 0; s < sentences; ++s) {
    Sentence sentence{"s" + std::to_string(s), {}};
    for (std::size_t i = 0, n = len(rng); i < n; ++i) {
      Token t;
      t.surface = word(pick(rng));  // indices past 1999 are out of vocabulary
      t.sentence_id = sentence.id;
      t.position = static_cast<int>(i + 1);
      t.experiment_id = "e" + std::to_string(s % 4);
      t.word_freq = 100.0;
      sentence.tokens.push_back(std::move(t));
    }
    w.corpus.token_count += sentence.tokens.size();
    w.corpus.sentences.push_back(std::move(sentence));
  }
  return w;
}

void BM_ParseEmbeddings(benchmark::State& state) {
  const auto text = embedding_text(static_cast<std::size_t>(state.range(0)), 200);
  for (auto _ : state) {
    std::istringstream in(text);
    benchmark::DoNotOptimize(parse_embeddings(in, true));
  }
  state.SetBytesProcessed(static_cast<std::int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseEmbeddings)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

void BM_AnnotateCorpus(benchmark::State& state) {
  const auto w = workload(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(annotate_corpus(w.corpus, w.table, w.strokes));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * w.corpus.token_count));
}
BENCHMARK(BM_AnnotateCorpus)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_FitPenalized(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u01;
  std::normal_distribution<double> n01;
  std::vector<double> x1(n), x2(n), m(n);
  std::vector<std::string> g(n);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    x1[i] = u01(rng);
    x2[i] = u01(rng);
    m[i] = u01(rng);
    g[i] = "e" + std::to_string(i % 5);
    y(i) = x1[i] * x2[i] - std::sin(3 * m[i]) + 0.1 * (i % 5) + 0.2 * n01(rng);
  }
  const std::vector<gam::TermSpec> terms{gam::tensor_term(x1, x2, 5, 5, "te"),
                                         gam::random_intercept_term(g, "re"),
                                         gam::smooth_term(m, 10, "s(m)")};
  for (auto _ : state) benchmark::DoNotOptimize(gam::fit_penalized(y, terms));
}
BENCHMARK(BM_FitPenalized)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
