#include <cmath>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "semrel/relevance.hpp"
#include "synthetic.hpp"
#include "test_util.hpp"

using namespace semrel;
using semrel::testing::code_of;

namespace {

std::vector<Token> sentence_of(const std::vector<std::string>& words, const std::string& sid = "s1") {
  std::vector<Token> out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    Token t;
    t.surface = words[i];
    t.sentence_id = sid;
    t.position = static_cast<int>(i + 1);
    t.experiment_id = "e1";
    out.push_back(t);
  }
  return out;
}

const std::vector<std::string> kFig1 = {"我", "很", "喜欢", "吃", "苹果", "沙拉"};

EmbeddingTable fig1_table() {
  std::vector<std::pair<std::string, std::vector<double>>> entries;
  for (std::size_t i = 0; i < kFig1.size(); ++i) {
    std::vector<double> v(4, 0.1);
    v[i % 4] += 1.0 + static_cast<double>(i);
    entries.emplace_back(kFig1[i], v);
  }
  return EmbeddingTable::from_entries(4, entries);
}

std::vector<std::string> surfaces(const std::vector<ContextWord>& words) {
  std::vector<std::string> out;
  for (const auto& w : words) out.push_back(w.token->surface);
  return out;
}

// Window built by hand from explicit vectors; offsets listed explicitly.
struct ManualWindow {
  std::vector<Token> tokens;
  WindowContext window;
};

ManualWindow manual(const std::vector<double>& target,
                    const std::vector<std::pair<int, std::vector<double>>>& context) {
  std::vector<std::pair<std::string, std::vector<double>>> entries{{"T", target}};
  std::vector<std::string> words(5, "-");
  words[3] = "T";
  for (const auto& [offset, v] : context) {
    const std::string name = "w" + std::to_string(offset + 3);
    entries.emplace_back(name, v);
    words[static_cast<std::size_t>(3 + offset)] = name;
  }
  static std::vector<EmbeddingTable> keep;  // tables must outlive the returned views
  keep.push_back(EmbeddingTable::from_entries(target.size(), entries));
  ManualWindow m;
  m.tokens = sentence_of(words);
  m.window = build_window(m.tokens, 4, keep.back());
  return m;
}

}  // namespace

TEST(BuildWindow, Fig1Sentence) {
  const auto table = fig1_table();
  const auto s = sentence_of(kFig1);

  const auto w5 = build_window(s, 5, table);
  EXPECT_EQ(w5.target->surface, "苹果");
  EXPECT_EQ(surfaces(w5.preceding), (std::vector<std::string>{"很", "喜欢", "吃"}));
  ASSERT_TRUE(w5.following.has_value());
  EXPECT_EQ(w5.following->token->surface, "沙拉");
  EXPECT_EQ(w5.following->offset, 1);

  const auto w1 = build_window(s, 1, table);
  EXPECT_TRUE(w1.preceding.empty());
  ASSERT_TRUE(w1.following.has_value());
  EXPECT_EQ(w1.following->token->surface, "很");

  const auto w6 = build_window(s, 6, table);
  ASSERT_EQ(w6.preceding.size(), 3u);
  EXPECT_EQ(w6.preceding[0].offset, -3);
  EXPECT_EQ(w6.preceding[0].token->surface, "喜欢");
  EXPECT_EQ(w6.preceding[1].offset, -2);
  EXPECT_EQ(w6.preceding[1].token->surface, "吃");
  EXPECT_EQ(w6.preceding[2].offset, -1);
  EXPECT_EQ(w6.preceding[2].token->surface, "苹果");
  EXPECT_FALSE(w6.following.has_value());
}

TEST(BuildWindow, OovNeighbourKeepsTrueOffsets) {
  const auto table = fig1_table();
  const auto s = sentence_of({"我", "很", "龙", "吃", "苹果"});
  const auto w = build_window(s, 4, table);
  // 龙 sits at -1 and has no vector: -2 and -3 keep their offsets.
  ASSERT_EQ(w.preceding.size(), 2u);
  EXPECT_EQ(w.preceding[0].offset, -3);
  EXPECT_EQ(w.preceding[1].offset, -2);
  EXPECT_EQ(w.at(-1), nullptr);
  EXPECT_EQ(w.at(-2)->token->surface, "很");
  EXPECT_EQ(w.at(1)->token->surface, "苹果");
}

TEST(BuildWindow, Errors) {
  const auto table = fig1_table();
  const auto s = sentence_of({"我", "龙"});
  EXPECT_EQ(code_of([&] { build_window(s, 2, table); }), ErrorCode::TargetOOV);
  EXPECT_EQ(code_of([&] { build_window(s, 0, table); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { build_window(s, 3, table); }), ErrorCode::InvalidArgument);
}

TEST(SemRev, Examples) {
  const std::vector<double> v{0.3, -1.2, 2.0}, e1{1, 0}, e2{0, 1};
  EXPECT_NEAR(sem_rev(v, v, SemRevMethod::Cosine), 1.0, 1e-15);
  EXPECT_EQ(sem_rev(e1, e2, SemRevMethod::Cosine), 0.0);
  EXPECT_NEAR(sem_rev(std::vector<double>{1, 2}, std::vector<double>{2, 4},
                      SemRevMethod::Correlation),
              1.0, 1e-15);
}

TEST(PairOffsets, Literal) {
  EXPECT_EQ(pair_offsets(Pair::TargetPrev1), (std::array<int, 2>{0, -1}));
  EXPECT_EQ(pair_offsets(Pair::TargetPrev3), (std::array<int, 2>{0, -3}));
  EXPECT_EQ(pair_offsets(Pair::Prev2Prev1), (std::array<int, 2>{-2, -1}));
  EXPECT_EQ(pair_offsets(Pair::Prev3Prev2), (std::array<int, 2>{-3, -2}));
  EXPECT_EQ(pair_offsets(Pair::TargetNext), (std::array<int, 2>{0, 1}));
}

TEST(CosineContext, Examples) {
  const std::vector<double> t{0.5, -1.0, 2.0};
  EXPECT_NEAR(*metric_cosine_context(manual(t, {{-3, t}, {-2, t}, {-1, t}}).window), 1.0, 1e-15);

  const auto m = manual({1, 1}, {{-2, {1, 0}}, {-1, {0, 1}}});
  const double expected = semrel::testing::naive_cosine({1 + 0, 0 + 1}, {1, 1});
  EXPECT_NEAR(*metric_cosine_context(m.window), expected, 1e-15);
  EXPECT_NEAR(*metric_cosine_context(m.window), 1.0, 1e-15);

  EXPECT_EQ(*metric_cosine_context(manual({0, 1}, {{-1, {1, 0}}}).window), 0.0);
  EXPECT_FALSE(metric_cosine_context(manual({0, 1}, {{1, {1, 0}}}).window).has_value());
  // Preceding vectors summing to zero: absent rather than an error.
  EXPECT_FALSE(metric_cosine_context(manual({1, 1}, {{-2, {1, 0}}, {-1, {-1, 0}}}).window));
}

TEST(Dynamic, Examples) {
  const std::vector<double> t{0.5, -1.0, 2.0};
  EXPECT_NEAR(*metric_dynamic(manual(t, {{-3, t}, {-2, t}, {-1, t}, {1, t}}).window,
                              SemRevMethod::Cosine),
              5.0, 1e-14);
  EXPECT_NEAR(*metric_dynamic(manual(t, {{-1, t}}).window, SemRevMethod::Cosine), 1.0, 1e-15);

  // (T,-1) = 1, (T,-2) = 0, (-2,-1) = 0
  const auto m = manual({1, 0}, {{-2, {0, 1}}, {-1, {1, 0}}});
  EXPECT_EQ(*metric_dynamic(m.window, SemRevMethod::Cosine), 1.0);
  EXPECT_FALSE(metric_dynamic(manual(t, {{1, t}}).window, SemRevMethod::Cosine).has_value());
}

TEST(Attention, FixedPoints) {
  const std::vector<double> t{0.0, 1.0, 0.0};
  const auto m = manual(t, {{-3, t}, {-2, t}, {-1, t}, {1, t}});
  EXPECT_NEAR(*metric_attention(m.window, SemRevMethod::Cosine, WeightTable::paper()),
              1.0 + 2.0 / 3.0 + 0.5 + 0.5 + 1.0 / 3.0 + 1.0 / 3.0, 1e-12);
  EXPECT_EQ(*metric_attention(m.window, SemRevMethod::Cosine, WeightTable::uniform()), 6.0);

  const auto no_next = manual({1, 2, 3}, {{-3, {3, 1, 2}}, {-2, {0, 1, 1}}, {-1, {2, 2, 1}}});
  EXPECT_NEAR(*metric_attention(no_next.window, SemRevMethod::Cosine, WeightTable::uniform()),
              *metric_dynamic(no_next.window, SemRevMethod::Cosine), 1e-12);
}

TEST(Attention, TruncatedWindowKeepsPositionalWeights) {
  // Only -2 present: its weight stays 2/3 although it is the nearest neighbour.
  const auto m = manual({1, 0}, {{-2, {1, 0}}});
  EXPECT_NEAR(*metric_attention(m.window, SemRevMethod::Cosine, WeightTable::paper()),
              2.0 / 3.0, 1e-15);
  // Only the following word: 1/3.
  const auto n = manual({1, 0}, {{1, {1, 0}}});
  EXPECT_NEAR(*metric_attention(n.window, SemRevMethod::Cosine, WeightTable::paper()), 1.0 / 3.0,
              1e-15);
  const auto none = manual({1, 0}, {});
  EXPECT_FALSE(metric_attention(none.window, SemRevMethod::Cosine, WeightTable::paper()));
}

TEST(Attention, LinearInEachWeight) {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> n01;
  auto rv = [&] {
    std::vector<double> v(5);
    for (auto& x : v) x = n01(rng);
    return v;
  };
  for (int trial = 0; trial < 50; ++trial) {
    const auto m = manual(rv(), {{-3, rv()}, {-2, rv()}, {-1, rv()}, {1, rv()}});
    for (auto method : {SemRevMethod::Cosine, SemRevMethod::Correlation}) {
      const auto base = WeightTable::paper();
      const double a0 = *metric_attention(m.window, method, base);
      for (Pair p : kAllPairs) {
        auto bumped = base;
        const double w_new = std::min(1.0, base.weight(p) + 0.25);
        bumped.weight(p) = w_new;
        const auto [oa, ob] = pair_offsets(p);
        auto vec = [&](int off) { return off == 0 ? m.window.target_vector : m.window.at(off)->vector; };
        const double s = sem_rev(vec(oa), vec(ob), method);
        EXPECT_NEAR(*metric_attention(m.window, method, bumped) - a0, (w_new - base.weight(p)) * s,
                    1e-12);
      }
    }
  }
}

TEST(WeightTable, Presets) {
  const auto p = WeightTable::paper();
  double sum = 0;
  for (Pair pair : kAllPairs) sum += p.weight(pair);
  EXPECT_NEAR(sum, 10.0 / 3.0, 1e-15);
  EXPECT_EQ(p.weight(Pair::TargetPrev2), 2.0 / 3.0);
  EXPECT_EQ(p.weight(Pair::Prev3Prev2), 1.0 / 3.0);
  for (Pair pair : kAllPairs) EXPECT_EQ(WeightTable::uniform().weight(pair), 1.0);
}

TEST(WeightTable, ValidateAndParse) {
  WeightTable w;
  w.w_target_next = 0.0;
  EXPECT_EQ(code_of([&] { w.validate(); }), ErrorCode::BadWeights);
  w.w_target_next = 1.5;
  EXPECT_EQ(code_of([&] { w.validate(); }), ErrorCode::BadWeights);

  std::istringstream ok("# comment\n\nw_target_next = 0.25\nw_pair_prev21=1\n");
  const auto parsed = parse_weight_table(ok);
  EXPECT_EQ(parsed.w_target_next, 0.25);
  EXPECT_EQ(parsed.w_pair_prev21, 1.0);
  EXPECT_EQ(parsed.w_target_prev2, 2.0 / 3.0);

  for (const char* bad : {"w_nope=1\n", "w_target_next\n", "w_target_next=abc\n",
                          "w_target_prev1=2\n"}) {
    std::istringstream in(bad);
    EXPECT_EQ(code_of([&] { parse_weight_table(in); }), ErrorCode::BadWeights) << bad;
  }
}

TEST(Annotate, Fig1Shape) {
  Corpus c;
  c.sentences.push_back({"s1", sentence_of(kFig1)});
  c.token_count = kFig1.size();
  StrokeTable strokes;
  for (char32_t ch : std::u32string(U"我很喜欢吃苹果沙拉")) strokes.insert(ch, 5);
  const auto ann = annotate_corpus(c, fig1_table(), strokes);
  ASSERT_EQ(ann.records.size(), 6u);
  const auto& r5 = ann.records[4];
  EXPECT_EQ(r5.surface, "苹果");
  EXPECT_TRUE(r5.cosine_context && r5.dynamic_rel && r5.attn_unweighted && r5.attn_weighted);
  EXPECT_EQ(r5.stroke_count, 10);
  // The first token has only (T,+1).
  EXPECT_FALSE(ann.records[0].cosine_context);
  EXPECT_FALSE(ann.records[0].dynamic_rel);
  EXPECT_TRUE(ann.records[0].attn_weighted);
}

TEST(Annotate, OovTargetHasNoMetrics) {
  Corpus c;
  c.sentences.push_back({"s1", sentence_of({"我", "龙", "吃"})});
  c.token_count = 3;
  StrokeTable strokes;
  strokes.insert(U'我', 7);
  const auto ann = annotate_corpus(c, fig1_table(), strokes);
  const auto& r = ann.records[1];
  EXPECT_FALSE(r.cosine_context || r.dynamic_rel || r.attn_unweighted || r.attn_weighted);
  EXPECT_EQ(ann.diagnostics.target_oov, 1u);
  EXPECT_EQ(ann.diagnostics.unknown_character, 2u);
  EXPECT_FALSE(ann.records[2].stroke_count.has_value());
  EXPECT_TRUE(ann.records[2].attn_weighted.has_value());
}

TEST(Annotate, DropInitialPolicy) {
  const auto toy = semrel::testing::make_toy_corpus(5, {.sentences = 50, .oov_rate = 0.0});
  AnnotateOptions opts;
  opts.boundary = BoundaryPolicy::DropInitial;
  const auto dropped = annotate_corpus(toy.corpus, toy.table, toy.strokes, opts);
  const auto full = annotate_corpus(toy.corpus, toy.table, toy.strokes);
  std::size_t expected_dropped = 0;
  for (std::size_t i = 0; i < full.records.size(); ++i) {
    const auto& d = dropped.records[i];
    if (d.position < 4) {
      ++expected_dropped;
      EXPECT_FALSE(d.attn_weighted || d.dynamic_rel || d.cosine_context);
    } else {
      EXPECT_EQ(d.attn_weighted, full.records[i].attn_weighted);
    }
  }
  EXPECT_EQ(dropped.diagnostics.boundary_dropped, expected_dropped);
}

TEST(Annotate, MatchesNaiveOracle) {
  const auto toy = semrel::testing::make_toy_corpus(99, {.sentences = 300});
  for (auto method : {SemRevMethod::Cosine, SemRevMethod::Correlation}) {
    AnnotateOptions opts;
    opts.method = method;
    const auto ann = annotate_corpus(toy.corpus, toy.table, toy.strokes, opts);
    std::size_t r = 0;
    for (const auto& s : toy.corpus.sentences) {
      std::vector<std::string> words;
      for (const auto& t : s.tokens) words.push_back(t.surface);
      for (std::size_t i = 0; i < words.size(); ++i, ++r) {
        const auto want = semrel::testing::naive_metrics(words, i, toy.vocab,
                                                         method == SemRevMethod::Correlation);
        const auto& got = ann.records[r];
        auto same = [](const std::optional<double>& a, const std::optional<double>& b) {
          return a.has_value() == b.has_value() && (!a || std::abs(*a - *b) <= 1e-12);
        };
        EXPECT_TRUE(same(got.cosine_context, want.cosine_context));
        EXPECT_TRUE(same(got.dynamic_rel, want.dynamic_rel));
        EXPECT_TRUE(same(got.attn_unweighted, want.attn_unweighted));
        EXPECT_TRUE(same(got.attn_weighted, want.attn_weighted));
      }
    }
  }
}

TEST(Annotate, CosineScaleInvariance) {
  const auto toy = semrel::testing::make_toy_corpus(17, {.sentences = 200});
  std::vector<std::pair<std::string, std::vector<double>>> scaled;
  for (const auto& [w, v] : toy.vocab) {
    auto s = v;
    for (auto& x : s) x *= 37.5;
    scaled.emplace_back(w, s);
  }
  const auto table2 = EmbeddingTable::from_entries(toy.table.dim(), scaled);
  const auto a = annotate_corpus(toy.corpus, toy.table, toy.strokes);
  const auto b = annotate_corpus(toy.corpus, table2, toy.strokes);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    auto near = [](const std::optional<double>& x, const std::optional<double>& y) {
      return x.has_value() == y.has_value() && (!x || std::abs(*x - *y) <= 1e-12);
    };
    EXPECT_TRUE(near(a.records[i].cosine_context, b.records[i].cosine_context));
    EXPECT_TRUE(near(a.records[i].dynamic_rel, b.records[i].dynamic_rel));
    EXPECT_TRUE(near(a.records[i].attn_unweighted, b.records[i].attn_unweighted));
    EXPECT_TRUE(near(a.records[i].attn_weighted, b.records[i].attn_weighted));
  }
}

TEST(Annotate, SentenceBoundaryPoisoning) {
  // Neighbouring sentences made of sentinel words: changing their vectors
  // must not move any metric of the middle sentence.
  const std::vector<std::string> middle = {"a", "b", "c", "d", "e"};
  auto build = [&](double sentinel) {
    std::vector<std::pair<std::string, std::vector<double>>> e = {
        {"a", {1, 0.2, 0}}, {"b", {0.1, 1, 0.3}}, {"c", {0, 0.4, 1}},
        {"d", {0.7, 0.7, 0}}, {"e", {0.2, 0.1, 0.9}}, {"P", {sentinel, -sentinel, 3 * sentinel}}};
    return EmbeddingTable::from_entries(3, e);
  };
  Corpus c;
  c.sentences.push_back({"before", sentence_of({"P", "P", "P", "P"}, "before")});
  c.sentences.push_back({"mid", sentence_of(middle, "mid")});
  c.sentences.push_back({"after", sentence_of({"P", "P"}, "after")});
  c.token_count = 11;
  StrokeTable strokes;
  strokes.insert(U'x', 1);
  const auto a = annotate_corpus(c, build(1.0), strokes);
  const auto b = annotate_corpus(c, build(-1e6), strokes);
  for (std::size_t i = 4; i < 9; ++i) {
    EXPECT_EQ(a.records[i].cosine_context, b.records[i].cosine_context);
    EXPECT_EQ(a.records[i].dynamic_rel, b.records[i].dynamic_rel);
    EXPECT_EQ(a.records[i].attn_unweighted, b.records[i].attn_unweighted);
    EXPECT_EQ(a.records[i].attn_weighted, b.records[i].attn_weighted);
  }
}

TEST(MetricCsv, DeterministicRoundTrip) {
  const auto toy = semrel::testing::make_toy_corpus(23, {.sentences = 100});
  const auto ann = annotate_corpus(toy.corpus, toy.table, toy.strokes);
  std::stringstream a, b;
  write_metric_csv(a, ann.records);
  write_metric_csv(b, annotate_corpus(toy.corpus, toy.table, toy.strokes).records);
  EXPECT_EQ(a.str(), b.str());

  const auto back = read_metric_csv(a);
  ASSERT_EQ(back.size(), ann.records.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].sentence_id, ann.records[i].sentence_id);
    EXPECT_EQ(back[i].position, ann.records[i].position);
    EXPECT_EQ(back[i].stroke_count, ann.records[i].stroke_count);
    EXPECT_EQ(back[i].attn_weighted, ann.records[i].attn_weighted);
    EXPECT_EQ(back[i].cosine_context, ann.records[i].cosine_context);
    EXPECT_EQ(back[i].log_freq, ann.records[i].log_freq);
  }
}

TEST(MetricCsv, HeaderAndErrors) {
  std::stringstream out;
  write_metric_csv(out, {});
  EXPECT_EQ(out.str(),
            "sentence_id,position,surface,experiment_id,stroke_count,log_freq,cosine_context,"
            "dynamic_rel,attn_unweighted,attn_weighted,surprisal,log_first,log_gaze,log_total\n");
  std::istringstream empty("");
  EXPECT_EQ(code_of([&] { read_metric_csv(empty); }), ErrorCode::MissingColumn);
  std::istringstream short_row(out.str() + "s,1,a\n");
  EXPECT_EQ(code_of([&] { read_metric_csv(short_row); }), ErrorCode::BadNumeric);
}
