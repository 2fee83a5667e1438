//------------------------------------------------------------------------------
//
//   Copyright 2026 The pixelstega Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "test_support.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace pixelstega {
namespace {

using testing::expect_error;
using testing::random_distribution;

/// Partition laid out in value order with the given widths.
QuantizedPartition partition_of(std::vector<std::uint64_t> const &widths)
{
  QuantizedPartition part;
  for (std::size_t k = 0; k < 256; ++k)
  {
    part.order[k]  = static_cast<std::uint8_t>(k);
    part.rank[k]   = static_cast<std::uint8_t>(k);
    part.cut[k + 1] = part.cut[k] + (k < widths.size() ? widths[k] : 0);
  }
  return part;
}

PixelDistribution dist_of(std::vector<std::uint64_t> const &weights)
{
  WeightArray w{};
  std::copy(weights.begin(), weights.end(), w.begin());
  return PixelDistribution(w);
}

TEST(EntropyTest, Basics)
{
  EXPECT_DOUBLE_EQ(entropy(PixelDistribution::uniform()), 8.0);
  EXPECT_DOUBLE_EQ(entropy(PixelDistribution::point_mass(3)), 0.0);
  EXPECT_DOUBLE_EQ(entropy(dist_of({5, 5})), 1.0);
  EXPECT_DOUBLE_EQ(entropy(partition_of({1, 1})), 1.0);
  EXPECT_DOUBLE_EQ(entropy(quantize(PixelDistribution::uniform(), CoderState(26))), 8.0);
}

TEST(DivergenceTest, IdenticalIsZero)
{
  auto const part = partition_of({3, 1});
  auto const dist = dist_of({3, 1});
  EXPECT_EQ(kld_q_p(part, dist), 0.0);
  EXPECT_EQ(jsd_q_p(part, dist), 0.0);
}

TEST(DivergenceTest, HalfVersusThreeQuarters)
{
  double const expected = 1.0 - 0.5 * std::log2(3.0);  // 0.20751874963942...
  EXPECT_NEAR(kld_q_p(partition_of({1, 1}), dist_of({3, 1})), expected, 1e-12);
  EXPECT_NEAR(expected, 0.20752, 1e-5);
}

TEST(DivergenceTest, DisjointPointMasses)
{
  auto const q = partition_of({0, 4});
  auto const p = dist_of({1, 0});
  EXPECT_NEAR(jsd_q_p(q, p), 1.0, 1e-12);
  expect_error(ErrorCode::AbsoluteContinuityViolated, [&] { kld_q_p(q, p); });
}

TEST(DivergenceTest, GibbsAndJsdBoundsOnRandomPairs)
{
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 500; ++trial)
  {
    auto const p = random_distribution(rng);
    auto const q = random_distribution(rng);
    auto const pa = probabilities(p);
    auto const qa = probabilities(q);
    ASSERT_EQ(kl_divergence(pa, pa), 0.0);
    double const js = js_divergence(qa, pa);
    ASSERT_GE(js, 0.0);
    ASSERT_LE(js, 1.0);
    bool covered = true;
    for (std::size_t v = 0; v < 256; ++v)
    {
      covered = covered && !(qa[v] > 0 && pa[v] == 0);
    }
    if (covered)
    {
      ASSERT_GE(kl_divergence(qa, pa), 0.0);
      if (qa != pa)
      {
        ASSERT_GT(kl_divergence(qa, pa), 0.0);
      }
    }
  }
}

TEST(DivergenceTest, QuantizedDistributionIsClose)
{
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 100; ++trial)
  {
    WeightArray w;
    for (auto &x : w)
    {
      x = 1 + rng() % 1000;
    }
    PixelDistribution const p(w);
    auto const              part = quantize(p, CoderState(26));
    ASSERT_LT(kld_q_p(part, p), 1e-6);
    ASSERT_LT(jsd_q_p(part, p), 1e-6);
  }
}

ReportRow row_with_er(double er)
{
  ReportRow row;
  row.name            = "x";
  row.totals.er_pixel = er;
  return row;
}

TEST(AggregateTest, SingleAndPair)
{
  std::vector<ReportRow> one{row_with_er(1.5)};
  auto const             single = aggregate(one);
  EXPECT_EQ(single.er_pixel.mean, 1.5);
  EXPECT_EQ(single.er_pixel.std, 0.0);

  std::vector<ReportRow> two{row_with_er(1.0), row_with_er(3.0)};
  auto const             pair = aggregate(two);
  EXPECT_DOUBLE_EQ(pair.er_pixel.mean, 2.0);
  EXPECT_DOUBLE_EQ(pair.er_pixel.std, std::sqrt(2.0));
}

TEST(AggregateTest, CsvShape)
{
  std::vector<ReportRow> rows(5000, row_with_er(0.5));
  std::ostringstream     out;
  write_csv(out, aggregate(rows));
  std::istringstream in(out.str());
  std::string        line;
  std::getline(in, line);
  EXPECT_EQ(line, "image,steps,bits,er_pixel,er_step,h_p,h_q,kld,jsd");
  std::size_t detail  = 0;
  std::size_t summary = 0;
  while (std::getline(in, line))
  {
    (line.rfind("summary,", 0) == 0 ? summary : detail) += 1;
  }
  EXPECT_EQ(detail, 5000U);
  EXPECT_EQ(summary, 1U);
}

TEST(ReportTest, TotalsAndRateDenominators)
{
  std::vector<std::uint8_t> const bytes(12, 0xC3);
  auto                            msg = make_message(bytes, Framing::Raw, 1);
  auto const result = embed_image(UniformModel{}, Shape{2, 2, 3}, msg, {26, Framing::Raw, true});
  auto const t      = result.report.totals();
  EXPECT_EQ(t.steps, 12U);
  EXPECT_EQ(t.bits_confirmed, 96U);
  EXPECT_DOUBLE_EQ(t.er_step, 8.0);
  EXPECT_DOUBLE_EQ(t.er_pixel, 24.0);
  EXPECT_DOUBLE_EQ(t.mean_h_p, 8.0);
  EXPECT_DOUBLE_EQ(t.mean_h_q, 8.0);
  EXPECT_EQ(t.mean_kld, 0.0);
}

std::vector<EmbedReport> run_reports(ProbabilityModel const &model, Shape shape, int count)
{
  std::vector<EmbedReport> out;
  for (int i = 0; i < count; ++i)
  {
    BitStream msg(BitVector{}, static_cast<std::uint64_t>(i));
    out.push_back(embed_image(model, shape, msg, {26, Framing::Raw, true}).report);
  }
  return out;
}

TEST(HeatmapTest, DegenerateIsBlack)
{
  auto const reports      = run_reports(DegenerateModel(4), Shape{5, 4, 1}, 3);
  auto const [ent, bits]  = heatmaps(reports);
  EXPECT_EQ(ent.shape(), (Shape{5, 4, 1}));
  for (std::size_t i = 0; i < 20; ++i)
  {
    EXPECT_EQ(ent[i], 0);
    EXPECT_EQ(bits[i], 0);
  }
}

TEST(HeatmapTest, UniformEntropyIsWhite)
{
  auto const reports     = run_reports(UniformModel{}, Shape{8, 8, 1}, 4);
  auto const [ent, bits] = heatmaps(reports);
  for (std::size_t i = 0; i < 64; ++i)
  {
    EXPECT_EQ(ent[i], 255);
    EXPECT_EQ(bits[i], 255);
  }
}

TEST(HeatmapTest, RgbCollapsesToGray)
{
  auto const reports     = run_reports(UniformModel{}, Shape{3, 2, 3}, 2);
  auto const [ent, bits] = heatmaps(reports);
  EXPECT_EQ(ent.shape(), (Shape{3, 2, 1}));
}

TEST(HeatmapTest, ShapeMismatch)
{
  auto reports = run_reports(UniformModel{}, Shape{2, 2, 1}, 1);
  auto other   = run_reports(UniformModel{}, Shape{3, 2, 1}, 1);
  reports.push_back(other.front());
  expect_error(ErrorCode::ShapeMismatch, [&] { heatmaps(reports); });
}

TEST(HeatmapTest, StrokeModelIsDarkInBackground)
{
  auto const model       = train_context_model(synth::stroke_corpus(300, 5));
  auto const reports     = run_reports(model, Shape{28, 28, 1}, 60);
  auto const [ent, bits] = heatmaps(reports);
  double     border      = 0.0;
  double     centre      = 0.0;
  for (std::size_t c = 0; c < 28; ++c)
  {
    border += ent.at(0, c, 0) + ent.at(27, c, 0);
  }
  for (std::size_t r = 10; r < 18; ++r)
  {
    for (std::size_t c = 10; c < 18; ++c)
    {
      centre += ent.at(r, c, 0);
    }
  }
  EXPECT_LT(border / 56.0, centre / 64.0);
}

TEST(PearsonTest, KnownValues)
{
  std::vector<double> const x{1, 2, 3, 4};
  std::vector<double> const y{2, 4, 6, 8};
  std::vector<double> const z{8, 6, 4, 2};
  EXPECT_NEAR(pearson(x, y), 1.0, 1e-12);
  EXPECT_NEAR(pearson(x, z), -1.0, 1e-12);
}

}  // namespace
}  // namespace pixelstega
