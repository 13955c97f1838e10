#include <gtest/gtest.h>

#include "semrel/analysis.hpp"
#include "synthetic.hpp"
#include "test_util.hpp"

using namespace semrel;
using semrel::testing::code_of;
using semrel::testing::slurp;
using semrel::testing::TempDir;

namespace {

struct Inputs {
  CorrelationMatrix corr;
  std::vector<ComparisonResult> comparisons;
};

const Inputs& inputs() {
  static const Inputs in = [] {
    semrel::testing::StudyConfig cfg;
    cfg.sentences = 80;
    const auto study = semrel::testing::make_study(31, cfg);
    const auto records = annotate_corpus(study.corpus, study.table, study.strokes).records;
    const std::vector<std::string> metrics(kRelevanceMetrics.begin(), kRelevanceMetrics.end());
    Inputs out;
    for (Response r : kAllResponses) {
      for (auto& c : run_comparisons(records, metrics, r)) out.comparisons.push_back(std::move(c));
    }
    out.corr = correlation_matrix(records, {"stroke_count", "log_freq", "attn_weighted",
                                            "log_first"});
    return out;
  }();
  return in;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start < s.size()) {
    const auto end = s.find('\n', start);
    out.push_back(s.substr(start, end - start));
    start = end + 1;
  }
  return out;
}

}  // namespace

TEST(EmitReport, FileSet) {
  TempDir dir("semrel_report");
  const auto paths = emit_report(inputs().corr, inputs().comparisons, dir.path(), {{"seed", "7"}});
  const auto delta = lines(slurp(paths.delta_aic_csv));
  ASSERT_EQ(delta.size(), 5u);
  EXPECT_EQ(delta[0], "metric,log_first,log_gaze,log_total");
  EXPECT_EQ(delta[1].substr(0, delta[1].find(',')), "cosine_context");
  for (std::size_t i = 1; i < delta.size(); ++i)
    EXPECT_EQ(std::count(delta[i].begin(), delta[i].end(), ','), 3);

  const auto corr = lines(slurp(paths.corr_csv));
  ASSERT_EQ(corr.size(), 5u);
  EXPECT_EQ(corr[0], "column,stroke_count,log_freq,attn_weighted,log_first");

  EXPECT_EQ(lines(slurp(paths.comparisons_csv)).size(), 13u);
  EXPECT_EQ(paths.curve_files.size(), 24u);
  for (const auto& f : paths.curve_files) EXPECT_TRUE(std::filesystem::exists(f)) << f;
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "partial_effects" /
                                      "attn_weighted__log_gaze.svg"));
  const auto curve = lines(slurp(dir.path() / "partial_effects" / "attn_weighted__log_first.csv"));
  EXPECT_EQ(curve[0], "grid,value");
  EXPECT_EQ(curve.size(), 101u);

  const auto manifest = slurp(paths.manifest);
  EXPECT_NE(manifest.find("seed=7\n"), std::string::npos);
  EXPECT_NE(manifest.find("rows.log_first="), std::string::npos);
  EXPECT_NE(manifest.find("comparisons=12\n"), std::string::npos);
}

TEST(EmitReport, ByteIdenticalRerun) {
  TempDir a("semrel_report_a"), b("semrel_report_b");
  const auto pa = emit_report(inputs().corr, inputs().comparisons, a.path(), {});
  const auto pb = emit_report(inputs().corr, inputs().comparisons, b.path(), {});
  EXPECT_EQ(slurp(pa.corr_csv), slurp(pb.corr_csv));
  EXPECT_EQ(slurp(pa.delta_aic_csv), slurp(pb.delta_aic_csv));
  EXPECT_EQ(slurp(pa.comparisons_csv), slurp(pb.comparisons_csv));
  ASSERT_EQ(pa.curve_files.size(), pb.curve_files.size());
  for (std::size_t i = 0; i < pa.curve_files.size(); ++i)
    EXPECT_EQ(slurp(pa.curve_files[i]), slurp(pb.curve_files[i]));
}

TEST(EmitReport, EmptyComparisonsWritesNothing) {
  TempDir dir("semrel_report_empty");
  const auto target = dir.path() / "out";
  EXPECT_EQ(code_of([&] { emit_report(inputs().corr, {}, target, {}); }),
            ErrorCode::InvalidArgument);
  EXPECT_FALSE(std::filesystem::exists(target));
}

TEST(EmitReport, UnwritableTarget) {
  TempDir dir("semrel_report_io");
  const auto blocker = dir.path() / "file";
  std::ofstream(blocker) << "x";
  EXPECT_EQ(code_of([&] { emit_report(inputs().corr, inputs().comparisons, blocker, {}); }),
            ErrorCode::IoError);
}

TEST(CurveSvg, WellFormedAndEscaped) {
  gam::PartialEffect pe{{0.0, 0.5, 1.0}, {0.1, 0.0, -0.1}};
  const auto svg = render_curve_svg(pe, "a < b & c", "x", "y");
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("a &lt; b &amp; c"), std::string::npos);
  EXPECT_NE(svg.find("<polyline"), std::string::npos);
  EXPECT_EQ(svg.substr(svg.size() - 7), "</svg>\n");
  EXPECT_EQ(svg, render_curve_svg(pe, "a < b & c", "x", "y"));
}
