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
#include "pixelstega/distribution.hpp"
#include "pixelstega/error.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>

namespace pixelstega {

constexpr unsigned kDefaultPrecision = 26;
constexpr unsigned kMinPrecision     = 8;
constexpr unsigned kMaxPrecision     = 62;

/**
 * Fixed-precision interval registers.
 *
 * The current interval is [low, high], both inclusive, held in `prc` bits.
 * After each renormalization either the interval is full or the top bits of
 * low and high differ, so high - low + 1 >= 2.
 */
struct CoderState
{
  unsigned      prc       = kDefaultPrecision;
  std::uint64_t low       = 0;
  std::uint64_t high      = 0;
  std::uint64_t steps     = 0;
  std::uint64_t confirmed = 0;

  explicit CoderState(unsigned precision = kDefaultPrecision)
    : prc(precision)
  {
    // Toy registers go down to a handful of bits; full
    // images are limited to [kMinPrecision, kMaxPrecision] by the caller.
    if (precision < 2 || precision > kMaxPrecision)
    {
      fail(ErrorCode::InvalidArgument, "register width must be in [2, 62], got " + std::to_string(precision));
    }
    high = mask();
  }

  std::uint64_t mask() const noexcept
  {
    return (std::uint64_t{1} << prc) - 1;
  }

  std::uint64_t width() const noexcept
  {
    return high - low + 1;
  }

  bool valid() const noexcept
  {
    if (low > high || high > mask())
    {
      return false;
    }
    bool const full = low == 0 && high == mask();
    bool const msb_differ = ((low ^ high) >> (prc - 1)) != 0;
    return full || msb_differ;
  }
};

/// Sorted symbol order plus 257 cumulative boundaries tiling [0, width).
/// Symbol order[k] owns offsets [cut[k], cut[k+1]) from the interval start.
struct QuantizedPartition
{
  std::array<std::uint8_t, kPixelValues>      order{};
  std::array<std::uint8_t, kPixelValues>      rank{};
  std::array<std::uint64_t, kPixelValues + 1> cut{};

  std::uint64_t width() const noexcept
  {
    return cut[kPixelValues];
  }

  std::uint64_t width_at(std::size_t k) const noexcept
  {
    return cut[k + 1] - cut[k];
  }

  std::uint64_t width_of(std::uint8_t value) const noexcept
  {
    return width_at(rank[value]);
  }

  /// q(value) = quantized width / interval width.
  double probability(std::uint8_t value) const noexcept
  {
    return static_cast<double>(width_of(value)) / static_cast<double>(width());
  }

  /// Rank k whose subinterval contains `offset` (0 <= offset < width).
  std::size_t locate(std::uint64_t offset) const noexcept
  {
    auto const it = std::upper_bound(cut.begin(), cut.end(), offset);
    return static_cast<std::size_t>(it - cut.begin()) - 1;
  }
};

/// Partitions the current interval proportionally to `dist`.
///
/// Symbols are ordered by weight descending, ties by ascending value. Each
/// symbol gets floor(width * weight / total); whatever that leaves over is
/// given to the most probable symbol, which therefore always has a nonempty
/// subinterval.
inline QuantizedPartition quantize(PixelDistribution const &dist, CoderState const &state)
{
  QuantizedPartition part;
  std::iota(part.order.begin(), part.order.end(), std::uint8_t{0});
  std::stable_sort(part.order.begin(), part.order.end(), [&](std::uint8_t a, std::uint8_t b) {
    return dist.weight(a) > dist.weight(b);
  });

  using u128                 = unsigned __int128;
  std::uint64_t const width  = state.width();
  std::uint64_t const total  = dist.total();
  std::uint64_t       used   = 0;
  std::array<std::uint64_t, kPixelValues> widths{};
  for (std::size_t k = 0; k < kPixelValues; ++k)
  {
    widths[k] = static_cast<std::uint64_t>(static_cast<u128>(width) * dist.weight(part.order[k]) / total);
    used += widths[k];
  }
  widths[0] += width - used;

  for (std::size_t k = 0; k < kPixelValues; ++k)
  {
    part.cut[k + 1]          = part.cut[k] + widths[k];
    part.rank[part.order[k]] = static_cast<std::uint8_t>(k);
  }
  return part;
}

/// Evidence left behind by one coding step.
struct StepRecord
{
  std::uint8_t  pixel_value    = 0;
  unsigned      bits_confirmed = 0;
  std::uint64_t q_width        = 0;
  std::uint64_t width_before   = 0;
};

namespace detail {

/// Number of leading bits shared by two prc-bit values.
inline unsigned common_prefix(std::uint64_t a, std::uint64_t b, unsigned prc) noexcept
{
  std::uint64_t const diff = a ^ b;
  if (diff == 0)
  {
    return prc;
  }
  return static_cast<unsigned>(std::countl_zero(diff)) - (64U - prc);
}

/// Narrows to [low', high'], shifts out the shared prefix and returns its
/// length. The prefix bits are the top `s` bits of low'.
inline unsigned narrow_and_renormalize(CoderState &state, std::uint64_t new_low, std::uint64_t new_high) noexcept
{
  unsigned const      s    = common_prefix(new_low, new_high, state.prc);
  std::uint64_t const mask = state.mask();
  std::uint64_t const fill = (std::uint64_t{1} << s) - 1;
  state.low                = (new_low << s) & mask;
  state.high               = ((new_high << s) & mask) | fill;
  state.steps += 1;
  state.confirmed += s;
  assert(state.valid());
  return s;
}

}  // namespace detail

/// One stegosampling step: the message window selects the subinterval, and
/// the pixel is the symbol owning it. The shared prefix of the new interval
/// is confirmed and the window slides past it.
inline StepRecord embed_step(CoderState &state, QuantizedPartition const &part, BitStream &msg)
{
  std::uint64_t const t = msg.window(state.prc);
  assert(state.low <= t && t <= state.high);

  std::size_t const   k        = part.locate(t - state.low);
  std::uint64_t const width    = state.width();
  std::uint64_t const new_low  = state.low + part.cut[k];
  std::uint64_t const new_high = state.low + part.cut[k + 1] - 1;

  unsigned const s = detail::narrow_and_renormalize(state, new_low, new_high);
  msg.advance(s);
  return {part.order[k], s, part.width_at(k), width};
}

inline StepRecord embed_step(CoderState &state, PixelDistribution const &dist, BitStream &msg)
{
  return embed_step(state, quantize(dist, state), msg);
}

struct ExtractedStep
{
  BitVector  bits;
  StepRecord record;
};

/// Inverse of embed_step: the pixel names the subinterval and the shared
/// prefix of that subinterval is read back out as message bits.
inline ExtractedStep extract_step(CoderState &state, QuantizedPartition const &part, std::uint8_t pixel)
{
  std::size_t const   k     = part.rank[pixel];
  std::uint64_t const q     = part.width_at(k);
  if (q == 0)
  {
    fail(ErrorCode::UndecodablePixel, "pixel value " + std::to_string(pixel) + " at step " +
                                          std::to_string(state.steps) +
                                          " has an empty subinterval (model mismatch or corrupted image)");
  }
  std::uint64_t const width    = state.width();
  std::uint64_t const new_low  = state.low + part.cut[k];
  std::uint64_t const new_high = state.low + part.cut[k + 1] - 1;

  unsigned const prc = state.prc;
  unsigned const s   = detail::narrow_and_renormalize(state, new_low, new_high);

  ExtractedStep out;
  out.bits.reserve(s);
  for (unsigned i = 0; i < s; ++i)
  {
    out.bits.push_back(((new_low >> (prc - 1 - i)) & 1U) != 0);
  }
  out.record = {pixel, s, q, width};
  return out;
}

inline ExtractedStep extract_step(CoderState &state, PixelDistribution const &dist, std::uint8_t pixel)
{
  return extract_step(state, quantize(dist, state), pixel);
}

}  // namespace pixelstega
