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

#include "pixelstega/distribution.hpp"
#include "pixelstega/error.hpp"
#include "pixelstega/image.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace pixelstega {

/// Source of p(x_i | x_<i). Implementations must depend only on values at
/// indices below pos.index, so that embedder and extractor see identical
/// distributions.
class ProbabilityModel
{
public:
  virtual ~ProbabilityModel() = default;

  virtual PixelDistribution distribution(ImageGrid const &prefix, SequencePosition const &pos) const = 0;
};

class UniformModel final : public ProbabilityModel
{
public:
  PixelDistribution distribution(ImageGrid const &, SequencePosition const &) const override
  {
    return PixelDistribution::uniform();
  }
};

/// Zero-entropy model: every step is a point mass on one value.
class DegenerateModel final : public ProbabilityModel
{
public:
  explicit DegenerateModel(std::uint8_t value)
    : value_(value)
  {}

  PixelDistribution distribution(ImageGrid const &, SequencePosition const &) const override
  {
    return PixelDistribution::point_mass(value_);
  }

private:
  std::uint8_t value_;
};

/// Same distribution at every step.
class FixedModel final : public ProbabilityModel
{
public:
  explicit FixedModel(PixelDistribution dist)
    : dist_(std::move(dist))
  {}

  PixelDistribution distribution(ImageGrid const &, SequencePosition const &) const override
  {
    return dist_;
  }

private:
  PixelDistribution dist_;
};

namespace detail {

inline void put_le(std::vector<std::uint8_t> &out, std::uint64_t value, int bytes)
{
  for (int i = 0; i < bytes; ++i)
  {
    out.push_back(static_cast<std::uint8_t>(value >> (8 * i)));
  }
}

class LeReader
{
public:
  explicit LeReader(std::span<std::uint8_t const> bytes)
    : bytes_(bytes)
  {}

  bool has(std::size_t n) const noexcept
  {
    return bytes_.size() - pos_ >= n;
  }

  std::uint64_t get(int bytes)
  {
    std::uint64_t value = 0;
    for (int i = 0; i < bytes; ++i)
    {
      value |= static_cast<std::uint64_t>(bytes_[pos_++]) << (8 * i);
    }
    return value;
  }

  std::size_t remaining() const noexcept
  {
    return bytes_.size() - pos_;
  }

private:
  std::span<std::uint8_t const> bytes_;
  std::size_t                   pos_ = 0;
};

inline void check_magic(std::span<std::uint8_t const> bytes, char const (&magic)[5])
{
  if (bytes.size() < 4 || !std::equal(magic, magic + 4, bytes.begin()))
  {
    fail(ErrorCode::BadMagic, std::string("expected magic ") + magic);
  }
}

inline void write_bytes(std::vector<std::uint8_t> const &bytes, std::filesystem::path const &path)
{
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<char const *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out)
  {
    fail(ErrorCode::SinkFailure, "failed writing " + path.string());
  }
}

}  // namespace detail

struct ContextModelConfig
{
  unsigned      buckets   = 16;
  std::uint32_t smoothing = 1;
};

/**
 * Causal context model standing in for a neural autoregressive network.
 *
 * The context of a subpixel is (channel, bucket(left), bucket(up)) where left
 * and up are same-channel neighbours quantized to `buckets` levels, and a
 * dedicated EDGE bucket (index `buckets`) marks neighbours outside the image.
 * Each context row holds 256 occurrence counts; emitted weights are
 * count + smoothing, so no value ever has zero probability.
 */
class ContextModel final : public ProbabilityModel
{
public:
  static constexpr std::uint16_t kFormatVersion = 1;

  ContextModel(std::size_t channels, ContextModelConfig config)
    : ContextModel(channels, config, std::vector<std::uint64_t>(row_count(channels, config.buckets) * kPixelValues, 0))
  {}

  ContextModel(std::size_t channels, ContextModelConfig config, std::vector<std::uint64_t> counts)
    : channels_(channels)
    , config_(config)
    , counts_(std::move(counts))
  {
    if (channels_ != 1 && channels_ != 3)
    {
      fail(ErrorCode::InvalidArgument, "context model needs 1 or 3 channels");
    }
    if (config_.buckets == 0 || config_.buckets > 255)
    {
      fail(ErrorCode::InvalidArgument, "bucket count must be in [1, 255]");
    }
    if (config_.smoothing == 0)
    {
      fail(ErrorCode::InvalidArgument, "smoothing pseudo-count must be positive");
    }
    if (counts_.size() != row_count(channels_, config_.buckets) * kPixelValues)
    {
      fail(ErrorCode::CorruptTable, "count table size does not match channels and buckets");
    }
  }

  static std::size_t row_count(std::size_t channels, unsigned buckets) noexcept
  {
    return channels * (buckets + 1) * (buckets + 1);
  }

  std::size_t channels() const noexcept
  {
    return channels_;
  }
  ContextModelConfig const &config() const noexcept
  {
    return config_;
  }
  unsigned edge_bucket() const noexcept
  {
    return config_.buckets;
  }
  std::size_t contexts() const noexcept
  {
    return row_count(channels_, config_.buckets);
  }
  std::vector<std::uint64_t> const &counts() const noexcept
  {
    return counts_;
  }

  unsigned bucket(std::uint8_t value) const noexcept
  {
    return static_cast<unsigned>(value) * config_.buckets / 256U;
  }

  std::size_t context_index(std::size_t channel, unsigned left, unsigned up) const noexcept
  {
    std::size_t const side = config_.buckets + 1;
    return (channel * side + left) * side + up;
  }

  std::size_t context_of(ImageGrid const &image, SequencePosition const &pos) const
  {
    unsigned const left = pos.col == 0 ? edge_bucket() : bucket(image.at(pos.row, pos.col - 1, pos.channel));
    unsigned const up   = pos.row == 0 ? edge_bucket() : bucket(image.at(pos.row - 1, pos.col, pos.channel));
    return context_index(pos.channel, left, up);
  }

  std::uint64_t count(std::size_t context, std::size_t value) const
  {
    return counts_.at(context * kPixelValues + value);
  }

  void add(std::size_t context, std::size_t value, std::uint64_t n = 1)
  {
    counts_.at(context * kPixelValues + value) += n;
  }

  PixelDistribution distribution(ImageGrid const &prefix, SequencePosition const &pos) const override
  {
    if (prefix.channels() != channels_)
    {
      fail(ErrorCode::ShapeMismatch, "image channel count differs from model");
    }
    std::size_t const ctx = context_of(prefix, pos);
    WeightArray       w;
    for (std::size_t v = 0; v < kPixelValues; ++v)
    {
      w[v] = counts_[ctx * kPixelValues + v] + config_.smoothing;
    }
    return PixelDistribution(w);
  }

  friend bool operator==(ContextModel const &a, ContextModel const &b)
  {
    return a.channels_ == b.channels_ && a.config_.buckets == b.config_.buckets &&
           a.config_.smoothing == b.config_.smoothing && a.counts_ == b.counts_;
  }

private:
  std::size_t                channels_;
  ContextModelConfig         config_;
  std::vector<std::uint64_t> counts_;
};

/// Counts every subpixel of the corpus under its causal context. Counting is
/// commutative, so corpus order does not matter.
inline ContextModel train_context_model(std::span<ImageGrid const> corpus, ContextModelConfig config = {})
{
  if (corpus.empty())
  {
    fail(ErrorCode::EmptyCorpus, "training corpus is empty");
  }
  std::size_t const channels = corpus.front().channels();
  ContextModel      model(channels, config);
  for (ImageGrid const &image : corpus)
  {
    if (image.channels() != channels)
    {
      fail(ErrorCode::MixedChannelCorpus, "corpus mixes gray and RGB images");
    }
    Shape const &shape = image.shape();
    for (std::size_t i = 0; i < shape.steps(); ++i)
    {
      auto const pos = position_at(shape, i);
      model.add(model.context_of(image, pos), image[i]);
    }
  }
  return model;
}

/// "PSCM", u16 version, u8 channels, u8 buckets, u32 smoothing, then the
/// count table as little-endian u64 in (channel, left, up, value) order.
inline std::vector<std::uint8_t> save_model(ContextModel const &model)
{
  std::vector<std::uint8_t> out{'P', 'S', 'C', 'M'};
  out.reserve(12 + model.counts().size() * 8);
  detail::put_le(out, ContextModel::kFormatVersion, 2);
  detail::put_le(out, model.channels(), 1);
  detail::put_le(out, model.config().buckets, 1);
  detail::put_le(out, model.config().smoothing, 4);
  for (std::uint64_t c : model.counts())
  {
    detail::put_le(out, c, 8);
  }
  return out;
}

inline ContextModel load_model(std::span<std::uint8_t const> bytes)
{
  detail::check_magic(bytes, "PSCM");
  detail::LeReader in(bytes.subspan(4));
  if (!in.has(2))
  {
    fail(ErrorCode::CorruptTable, "model header truncated");
  }
  auto const version = in.get(2);
  if (version != ContextModel::kFormatVersion)
  {
    fail(ErrorCode::UnsupportedVersion, "model version " + std::to_string(version));
  }
  if (!in.has(6))
  {
    fail(ErrorCode::CorruptTable, "model header truncated");
  }
  auto const               channels = static_cast<std::size_t>(in.get(1));
  ContextModelConfig config;
  config.buckets   = static_cast<unsigned>(in.get(1));
  config.smoothing = static_cast<std::uint32_t>(in.get(4));
  if ((channels != 1 && channels != 3) || config.buckets == 0 || config.smoothing == 0)
  {
    fail(ErrorCode::CorruptTable, "model header fields out of range");
  }
  std::size_t const n = ContextModel::row_count(channels, config.buckets) * kPixelValues;
  if (in.remaining() != n * 8)
  {
    fail(ErrorCode::CorruptTable, "count table holds " + std::to_string(in.remaining()) + " bytes, expected " +
                                      std::to_string(n * 8));
  }
  std::vector<std::uint64_t> counts(n);
  for (auto &c : counts)
  {
    c = in.get(8);
  }
  return ContextModel(channels, config, std::move(counts));
}

inline void save_model(ContextModel const &model, std::filesystem::path const &path)
{
  detail::write_bytes(save_model(model), path);
}

inline ContextModel load_model(std::filesystem::path const &path)
{
  auto const bytes = read_file(path);
  return load_model(std::span<std::uint8_t const>(bytes));
}

/// Replays distributions computed by an external process, one per coding
/// step, indexed by sequence position.
class DistributionStreamModel final : public ProbabilityModel
{
public:
  static constexpr std::uint16_t kFormatVersion = 1;

  explicit DistributionStreamModel(std::vector<PixelDistribution> steps)
    : steps_(std::move(steps))
  {}

  std::size_t size() const noexcept
  {
    return steps_.size();
  }

  std::vector<PixelDistribution> const &steps() const noexcept
  {
    return steps_;
  }

  PixelDistribution distribution(ImageGrid const &, SequencePosition const &pos) const override
  {
    if (pos.index >= steps_.size())
    {
      fail(ErrorCode::StreamExhausted, "distribution stream holds " + std::to_string(steps_.size()) +
                                           " steps, step " + std::to_string(pos.index) + " requested");
    }
    return steps_[pos.index];
  }

private:
  std::vector<PixelDistribution> steps_;
};

/// "PSDS", u16 version, u32 step count, then 256 little-endian u32 weights per step.
inline std::vector<std::uint8_t> save_distribution_stream(std::span<PixelDistribution const> steps)
{
  std::vector<std::uint8_t> out{'P', 'S', 'D', 'S'};
  detail::put_le(out, DistributionStreamModel::kFormatVersion, 2);
  detail::put_le(out, steps.size(), 4);
  for (auto const &d : steps)
  {
    for (std::uint64_t w : d.weights())
    {
      if (w > 0xFFFFFFFFULL)
      {
        fail(ErrorCode::InvalidArgument, "stream weights must fit in 32 bits");
      }
      detail::put_le(out, w, 4);
    }
  }
  return out;
}

inline DistributionStreamModel load_distribution_stream(std::span<std::uint8_t const> bytes)
{
  detail::check_magic(bytes, "PSDS");
  detail::LeReader in(bytes.subspan(4));
  if (!in.has(2))
  {
    fail(ErrorCode::CorruptTable, "stream header truncated");
  }
  auto const version = in.get(2);
  if (version != DistributionStreamModel::kFormatVersion)
  {
    fail(ErrorCode::UnsupportedVersion, "stream version " + std::to_string(version));
  }
  if (!in.has(4))
  {
    fail(ErrorCode::CorruptTable, "stream header truncated");
  }
  auto const count = static_cast<std::size_t>(in.get(4));
  if (in.remaining() != count * kPixelValues * 4)
  {
    fail(ErrorCode::CorruptTable, "stream body holds " + std::to_string(in.remaining()) + " bytes, expected " +
                                      std::to_string(count * kPixelValues * 4));
  }
  std::vector<PixelDistribution> steps;
  steps.reserve(count);
  for (std::size_t s = 0; s < count; ++s)
  {
    WeightArray w;
    for (auto &x : w)
    {
      x = in.get(4);
    }
    try
    {
      steps.emplace_back(w);
    }
    catch (Error const &)
    {
      fail(ErrorCode::CorruptTable, "step " + std::to_string(s) + " has zero total weight");
    }
  }
  return DistributionStreamModel(std::move(steps));
}

inline DistributionStreamModel load_distribution_stream(std::filesystem::path const &path)
{
  auto const bytes = read_file(path);
  return load_distribution_stream(std::span<std::uint8_t const>(bytes));
}

}  // namespace pixelstega
