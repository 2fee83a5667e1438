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

#include "pixelstega/bitio.hpp"
#include "pixelstega/coder.hpp"
#include "pixelstega/error.hpp"
#include "pixelstega/image.hpp"
#include "pixelstega/metrics.hpp"
#include "pixelstega/models.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace pixelstega {

enum class Framing
{
  Framed,  ///< whitened 32-bit length header + payload; extraction returns the payload
  Raw,     ///< bare message bits; extraction returns every recovered byte
};

struct CodingOptions
{
  unsigned prc           = kDefaultPrecision;
  Framing  framing       = Framing::Framed;
  bool     collect_stats = true;
};

/// Default partitioning rule; a template parameter so alternative rules can
/// be plugged into whole-image runs.
struct DefaultQuantizer
{
  QuantizedPartition operator()(PixelDistribution const &dist, CoderState const &state) const
  {
    return quantize(dist, state);
  }
};

/// Builds the message stream for a byte payload. Framed messages are
/// whitened after framing; raw messages are embedded bit for bit.
inline BitStream make_message(std::span<std::uint8_t const> payload, Framing framing,
                              std::optional<std::uint64_t> pad_seed = std::nullopt)
{
  if (framing == Framing::Raw)
  {
    return BitStream(bits_from_bytes(payload), pad_seed);
  }
  BitVector bits = frame_encode(payload);
  whiten(bits);
  return BitStream(std::move(bits), pad_seed);
}

struct EmbedResult
{
  ImageGrid     image;
  EmbedReport   report;
  std::uint64_t bits_confirmed = 0;
};

namespace detail {

inline void check_precision(unsigned prc)
{
  if (prc < kMinPrecision || prc > kMaxPrecision)
  {
    fail(ErrorCode::InvalidArgument, "prc must be in [8, 62], got " + std::to_string(prc));
  }
}

}  // namespace detail

/**
 * Generates an image whose pixels encode `msg`.
 *
 * Every step asks the model for p(x_i | x_<i), partitions the current
 * interval, and lets the message window pick the pixel. In framed mode the
 * whole frame (header and payload) must be confirmed before the image ends,
 * otherwise CapacityExceeded is raised: unconfirmed bits cannot be
 * recovered by the extractor.
 */
template <typename Quantizer = DefaultQuantizer>
EmbedResult embed_image(ProbabilityModel const &model, Shape const &shape, BitStream &msg,
                        CodingOptions const &options = {}, Quantizer quantizer = {})
{
  require_valid(shape);
  detail::check_precision(options.prc);

  EmbedResult result{ImageGrid(shape), EmbedReport(shape, options.prc), 0};
  CoderState  state(options.prc);
  for (std::size_t i = 0; i < shape.steps(); ++i)
  {
    auto const pos  = position_at(shape, i);
    auto const dist = model.distribution(result.image, pos);
    auto const part = quantizer(dist, state);
    auto const rec  = embed_step(state, part, msg);
    result.image[i] = rec.pixel_value;
    if (options.collect_stats)
    {
      result.report.record(dist, part, rec);
    }
  }
  result.bits_confirmed = state.confirmed;

  if (options.framing == Framing::Framed && state.confirmed < msg.payload_size())
  {
    fail(ErrorCode::CapacityExceeded, "image confirms " + std::to_string(state.confirmed) + " of " +
                                          std::to_string(msg.payload_size()) +
                                          " framed message bits; increase image size or use --raw");
  }
  return result;
}

struct ExtractResult
{
  std::vector<std::uint8_t> bytes;
  BitVector                 bits;
  EmbedReport               report;
};

/// Replays the coder over an existing image and reads the message back.
template <typename Quantizer = DefaultQuantizer>
ExtractResult extract_image(ProbabilityModel const &model, ImageGrid const &image, CodingOptions const &options = {},
                            Quantizer quantizer = {})
{
  detail::check_precision(options.prc);
  Shape const &shape = image.shape();

  ExtractResult result{{}, {}, EmbedReport(shape, options.prc)};
  // The model must only see the decoded prefix, exactly as during embedding.
  ImageGrid  prefix(shape);
  CoderState state(options.prc);
  for (std::size_t i = 0; i < shape.steps(); ++i)
  {
    auto const pos  = position_at(shape, i);
    auto const dist = model.distribution(prefix, pos);
    auto const part = quantizer(dist, state);
    auto       step = extract_step(state, part, image[i]);
    prefix[i]       = image[i];
    result.bits.insert(result.bits.end(), step.bits.begin(), step.bits.end());
    if (options.collect_stats)
    {
      result.report.record(dist, part, step.record);
    }
  }

  if (options.framing == Framing::Framed)
  {
    BitVector frame = result.bits;
    whiten(frame);
    result.bytes = frame_decode(frame);
  }
  else
  {
    result.bytes = pack_bits(result.bits);
  }
  return result;
}

// Baseline: rejection sampling into the least significant bit of each pixel.

constexpr int kLsbMaxRetries = 64;

namespace detail {

/// Inverse-CDF draw over integer weights. The uniform variate is
/// (r * total) >> 64, which stays portable across standard libraries.
inline std::uint8_t sample(PixelDistribution const &dist, std::mt19937_64 &rng)
{
  using u128              = unsigned __int128;
  std::uint64_t const r   = static_cast<std::uint64_t>((static_cast<u128>(rng()) * dist.total()) >> 64);
  std::uint64_t       acc = 0;
  for (std::size_t v = 0; v < kPixelValues; ++v)
  {
    acc += dist.weight(v);
    if (r < acc)
    {
      return static_cast<std::uint8_t>(v);
    }
  }
  return 255;
}

inline std::uint8_t parity_argmax(PixelDistribution const &dist, bool bit)
{
  std::optional<std::uint8_t> best;
  for (std::size_t v = bit ? 1 : 0; v < kPixelValues; v += 2)
  {
    if (dist.weight(v) > 0 && (!best || dist.weight(v) > dist.weight(*best)))
    {
      best = static_cast<std::uint8_t>(v);
    }
  }
  if (!best)
  {
    fail(ErrorCode::NoParityMass, std::string("no value with LSB ") + (bit ? "1" : "0") + " has positive weight");
  }
  return *best;
}

}  // namespace detail

struct LsbResult
{
  ImageGrid     image;
  EmbedReport   report;
  std::uint64_t fallbacks = 0;
};

/// Samples each pixel from p until its LSB equals the next message bit,
/// giving up after 64 draws and taking the most probable value of the
/// required parity instead. Exactly one message bit per step.
inline LsbResult lsb_embed(ProbabilityModel const &model, Shape const &shape, BitStream &msg, std::uint64_t rng_seed)
{
  require_valid(shape);
  std::mt19937_64 rng(rng_seed);
  LsbResult       result{ImageGrid(shape), EmbedReport(shape, 1), 0};
  for (std::size_t i = 0; i < shape.steps(); ++i)
  {
    auto const dist = model.distribution(result.image, position_at(shape, i));
    bool const bit  = msg.window(1) != 0;
    detail::parity_argmax(dist, bit);

    std::optional<std::uint8_t> pixel;
    for (int attempt = 0; attempt < kLsbMaxRetries && !pixel; ++attempt)
    {
      auto const v = detail::sample(dist, rng);
      if (((v & 1U) != 0) == bit)
      {
        pixel = v;
      }
    }
    if (!pixel)
    {
      pixel = detail::parity_argmax(dist, bit);
      ++result.fallbacks;
    }
    result.image[i] = *pixel;
    msg.advance(1);

    StepStats stats;
    stats.record = {*pixel, 1, 0, 0};
    stats.h_p    = entropy(dist);
    result.report.record(stats);
  }
  return result;
}

inline BitVector lsb_extract(ImageGrid const &image)
{
  BitVector bits;
  bits.reserve(image.data().size());
  for (std::uint8_t v : image.data())
  {
    bits.push_back((v & 1U) != 0);
  }
  return bits;
}

}  // namespace pixelstega
