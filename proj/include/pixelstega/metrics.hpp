#pragma once
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

#include "pixelstega/coder.hpp"
#include "pixelstega/distribution.hpp"
#include "pixelstega/error.hpp"
#include "pixelstega/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace pixelstega {

// All metrics are in bits and computed in double precision; nothing here
// feeds back into the coding path.

inline double entropy(std::span<double const> probs)
{
  double h = 0.0;
  for (double p : probs)
  {
    if (p > 0.0)
    {
      h -= p * std::log2(p);
    }
  }
  return h;
}

inline std::array<double, kPixelValues> probabilities(PixelDistribution const &dist)
{
  std::array<double, kPixelValues> p{};
  for (std::size_t v = 0; v < kPixelValues; ++v)
  {
    p[v] = dist.probability(v);
  }
  return p;
}

/// q indexed by pixel value.
inline std::array<double, kPixelValues> probabilities(QuantizedPartition const &part)
{
  std::array<double, kPixelValues> q{};
  for (std::size_t v = 0; v < kPixelValues; ++v)
  {
    q[v] = part.probability(static_cast<std::uint8_t>(v));
  }
  return q;
}

inline double entropy(PixelDistribution const &dist)
{
  auto const p = probabilities(dist);
  return entropy(p);
}

inline double entropy(QuantizedPartition const &part)
{
  auto const q = probabilities(part);
  return entropy(q);
}

/// D_KL(a || b). Summed as a * ln(a/b) - a + b per symbol, a form whose
/// terms are individually non-negative, so rounding never yields a negative
/// divergence.
inline double kl_divergence(std::span<double const> a, std::span<double const> b)
{
  if (a.size() != b.size())
  {
    fail(ErrorCode::ShapeMismatch, "divergence over distributions of different support size");
  }
  double nats = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    if (a[i] <= 0.0)
    {
      nats += b[i];
      continue;
    }
    if (b[i] <= 0.0)
    {
      fail(ErrorCode::AbsoluteContinuityViolated,
           "symbol " + std::to_string(i) + " has mass in q but none in p");
    }
    double const d    = a[i] - b[i];
    double const term = a[i] * std::log1p(d / b[i]) - d;
    nats += std::max(term, 0.0);
  }
  return nats / std::log(2.0);
}

inline double js_divergence(std::span<double const> a, std::span<double const> b)
{
  if (a.size() != b.size())
  {
    fail(ErrorCode::ShapeMismatch, "divergence over distributions of different support size");
  }
  std::vector<double> mid(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
  {
    mid[i] = 0.5 * (a[i] + b[i]);
  }
  return std::min(0.5 * kl_divergence(a, mid) + 0.5 * kl_divergence(b, mid), 1.0);
}

inline double kld_q_p(QuantizedPartition const &part, PixelDistribution const &dist)
{
  auto const q = probabilities(part);
  auto const p = probabilities(dist);
  return kl_divergence(q, p);
}

inline double jsd_q_p(QuantizedPartition const &part, PixelDistribution const &dist)
{
  auto const q = probabilities(part);
  auto const p = probabilities(dist);
  return js_divergence(q, p);
}

struct StepStats
{
  StepRecord record;
  double     h_p = 0.0;
  double     h_q = 0.0;
  double     kld = 0.0;
  double     jsd = 0.0;
};

struct ReportTotals
{
  std::uint64_t steps            = 0;
  std::uint64_t bits_confirmed   = 0;
  double        er_pixel         = 0.0;
  double        er_step          = 0.0;
  double        mean_h_p         = 0.0;
  double        mean_h_q         = 0.0;
  double        mean_kld         = 0.0;
  double        mean_jsd         = 0.0;
  double        self_information = 0.0;
};

/// Per-step evidence of one embedding or extraction run.
class EmbedReport
{
public:
  EmbedReport() = default;

  EmbedReport(Shape shape, unsigned prc)
    : shape_(shape)
    , prc_(prc)
  {
    steps_.reserve(shape.steps());
  }

  void record(PixelDistribution const &dist, QuantizedPartition const &part, StepRecord const &rec)
  {
    auto const p = probabilities(dist);
    auto const q = probabilities(part);
    steps_.push_back({rec, entropy(p), entropy(q), kl_divergence(q, p), js_divergence(q, p)});
  }

  /// Records a step for which no quantized partition exists (LSB baseline).
  void record(StepStats const &stats)
  {
    steps_.push_back(stats);
  }

  Shape const &shape() const noexcept
  {
    return shape_;
  }
  unsigned prc() const noexcept
  {
    return prc_;
  }
  std::vector<StepStats> const &steps() const noexcept
  {
    return steps_;
  }

  std::uint64_t bits_confirmed() const noexcept
  {
    std::uint64_t bits = 0;
    for (auto const &s : steps_)
    {
      bits += s.record.bits_confirmed;
    }
    return bits;
  }

  /// Sum over steps of -log2(q_width / width_before), the ideal code length
  /// of the chosen pixels under q.
  double self_information() const noexcept
  {
    double bits = 0.0;
    for (auto const &s : steps_)
    {
      if (s.record.q_width > 0)
      {
        bits += std::log2(static_cast<double>(s.record.width_before)) -
                std::log2(static_cast<double>(s.record.q_width));
      }
    }
    return bits;
  }

  ReportTotals totals() const
  {
    ReportTotals t;
    t.steps            = steps_.size();
    t.bits_confirmed   = bits_confirmed();
    t.self_information = self_information();
    if (steps_.empty())
    {
      return t;
    }
    auto const n = static_cast<double>(steps_.size());
    t.er_step    = static_cast<double>(t.bits_confirmed) / n;
    t.er_pixel   = static_cast<double>(t.bits_confirmed) / static_cast<double>(shape_.pixels());
    for (auto const &s : steps_)
    {
      t.mean_h_p += s.h_p;
      t.mean_h_q += s.h_q;
      t.mean_kld += s.kld;
      t.mean_jsd += s.jsd;
    }
    t.mean_h_p /= n;
    t.mean_h_q /= n;
    t.mean_kld /= n;
    t.mean_jsd /= n;
    return t;
  }

private:
  Shape                  shape_{};
  unsigned               prc_ = 0;
  std::vector<StepStats> steps_;
};

struct MeanStd
{
  double mean = 0.0;
  double std  = 0.0;
};

/// Mean and sample standard deviation, accumulated in input order.
inline MeanStd mean_std(std::span<double const> xs)
{
  MeanStd r;
  if (xs.empty())
  {
    return r;
  }
  for (double x : xs)
  {
    r.mean += x;
  }
  r.mean /= static_cast<double>(xs.size());
  if (xs.size() > 1)
  {
    double ss = 0.0;
    for (double x : xs)
    {
      ss += (x - r.mean) * (x - r.mean);
    }
    r.std = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return r;
}

inline double pearson(std::span<double const> x, std::span<double const> y)
{
  if (x.size() != y.size() || x.size() < 2)
  {
    fail(ErrorCode::ShapeMismatch, "correlation needs two equal-length series");
  }
  double const mx = mean_std(x).mean;
  double const my = mean_std(y).mean;
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i)
  {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (sxx == 0.0 || syy == 0.0)
  {
    return 0.0;
  }
  return sxy / std::sqrt(sxx * syy);
}

struct ReportRow
{
  std::string  name;
  ReportTotals totals;
};

struct SummaryTable
{
  std::vector<ReportRow> rows;
  MeanStd                steps;
  MeanStd                bits;
  MeanStd                er_pixel;
  MeanStd                er_step;
  MeanStd                h_p;
  MeanStd                h_q;
  MeanStd                kld;
  MeanStd                jsd;
};

inline SummaryTable aggregate(std::span<ReportRow const> rows)
{
  if (rows.empty())
  {
    fail(ErrorCode::InvalidArgument, "aggregate needs at least one report");
  }
  SummaryTable table;
  table.rows.assign(rows.begin(), rows.end());
  auto column = [&](auto field) {
    std::vector<double> xs;
    xs.reserve(rows.size());
    for (auto const &r : rows)
    {
      xs.push_back(static_cast<double>(field(r.totals)));
    }
    return mean_std(xs);
  };
  table.steps    = column([](ReportTotals const &t) { return t.steps; });
  table.bits     = column([](ReportTotals const &t) { return t.bits_confirmed; });
  table.er_pixel = column([](ReportTotals const &t) { return t.er_pixel; });
  table.er_step  = column([](ReportTotals const &t) { return t.er_step; });
  table.h_p      = column([](ReportTotals const &t) { return t.mean_h_p; });
  table.h_q      = column([](ReportTotals const &t) { return t.mean_h_q; });
  table.kld      = column([](ReportTotals const &t) { return t.mean_kld; });
  table.jsd      = column([](ReportTotals const &t) { return t.mean_jsd; });
  return table;
}

inline constexpr char const *kCsvHeader = "image,steps,bits,er_pixel,er_step,h_p,h_q,kld,jsd";

inline void write_csv_row(std::ostream &out, ReportRow const &row)
{
  auto const &t = row.totals;
  out << row.name << ',' << t.steps << ',' << t.bits_confirmed << ',' << std::fixed << std::setprecision(6)
      << t.er_pixel << ',' << t.er_step << ',' << t.mean_h_p << ',' << t.mean_h_q << ','
      << std::scientific << std::setprecision(6) << t.mean_kld << ',' << t.mean_jsd << '\n';
  out << std::defaultfloat;
}

/// Header, one row per image, then a single "summary" row whose cells are
/// formatted as "mean+-std".
inline void write_csv(std::ostream &out, SummaryTable const &table)
{
  out << kCsvHeader << '\n';
  for (auto const &row : table.rows)
  {
    write_csv_row(out, row);
  }
  auto cell = [](MeanStd const &m, bool sci) {
    std::ostringstream s;
    if (sci)
    {
      s << std::scientific;
    }
    else
    {
      s << std::fixed;
    }
    s << std::setprecision(6) << m.mean << "+-" << m.std;
    return s.str();
  };
  out << "summary," << cell(table.steps, false) << ',' << cell(table.bits, false) << ','
      << cell(table.er_pixel, false) << ',' << cell(table.er_step, false) << ',' << cell(table.h_p, false)
      << ',' << cell(table.h_q, false) << ',' << cell(table.kld, true) << ',' << cell(table.jsd, true) << '\n';
}

/// Per-step means over reports sharing one shape.
struct PositionMeans
{
  Shape               shape;
  std::vector<double> h_p;
  std::vector<double> h_q;
  std::vector<double> bits;
};

inline PositionMeans position_means(std::span<EmbedReport const> reports)
{
  if (reports.empty())
  {
    fail(ErrorCode::InvalidArgument, "no reports");
  }
  PositionMeans m;
  m.shape       = reports.front().shape();
  auto const n  = m.shape.steps();
  m.h_p.assign(n, 0.0);
  m.h_q.assign(n, 0.0);
  m.bits.assign(n, 0.0);
  for (auto const &r : reports)
  {
    if (r.shape() != m.shape || r.steps().size() != n)
    {
      fail(ErrorCode::ShapeMismatch, "reports cover different image shapes");
    }
    for (std::size_t i = 0; i < n; ++i)
    {
      m.h_p[i] += r.steps()[i].h_p;
      m.h_q[i] += r.steps()[i].h_q;
      m.bits[i] += r.steps()[i].record.bits_confirmed;
    }
  }
  auto const count = static_cast<double>(reports.size());
  for (std::size_t i = 0; i < n; ++i)
  {
    m.h_p[i] /= count;
    m.h_q[i] /= count;
    m.bits[i] /= count;
  }
  return m;
}

/// Min-max scaling to 0..255. A constant field maps to 0 when it is zero and
/// to 255 otherwise.
inline std::vector<std::uint8_t> scale_to_bytes(std::span<double const> values)
{
  auto const [lo, hi] = std::minmax_element(values.begin(), values.end());
  std::vector<std::uint8_t> out(values.size(), 0);
  if (values.empty())
  {
    return out;
  }
  if (*hi - *lo <= 0.0)
  {
    std::fill(out.begin(), out.end(), *hi > 0.0 ? 255 : 0);
    return out;
  }
  for (std::size_t i = 0; i < values.size(); ++i)
  {
    out[i] = static_cast<std::uint8_t>(std::lround(255.0 * (values[i] - *lo) / (*hi - *lo)));
  }
  return out;
}

/// Gray maps of per-pixel mean H(p) and mean confirmed bits; RGB steps are
/// averaged over the three channels of each pixel.
inline std::pair<ImageGrid, ImageGrid> heatmaps(std::span<EmbedReport const> reports)
{
  PositionMeans const m = position_means(reports);
  std::size_t const   c = m.shape.channels;
  std::vector<double> entropy_px(m.shape.pixels(), 0.0);
  std::vector<double> bits_px(m.shape.pixels(), 0.0);
  for (std::size_t i = 0; i < m.shape.steps(); ++i)
  {
    entropy_px[i / c] += m.h_p[i] / static_cast<double>(c);
    bits_px[i / c] += m.bits[i] / static_cast<double>(c);
  }
  Shape const gray{m.shape.width, m.shape.height, 1};
  return {ImageGrid(gray, scale_to_bytes(entropy_px)), ImageGrid(gray, scale_to_bytes(bits_px))};
}

}  // namespace pixelstega
