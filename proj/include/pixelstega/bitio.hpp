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

#include "pixelstega/error.hpp"

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace pixelstega {

/// Ordered bit sequence, one element per bit.
using BitVector = std::vector<bool>;

namespace detail {

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t os_entropy_seed()
{
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
}

}  // namespace detail

/// Expands bytes into bits, MSB first within each byte.
inline BitVector bits_from_bytes(std::span<std::uint8_t const> bytes)
{
  BitVector bits;
  bits.reserve(bytes.size() * 8);
  for (std::uint8_t byte : bytes)
  {
    for (int i = 7; i >= 0; --i)
    {
      bits.push_back(((byte >> i) & 1U) != 0);
    }
  }
  return bits;
}

/// Packs bits MSB first. Only complete bytes are emitted; a trailing partial
/// byte is dropped.
inline std::vector<std::uint8_t> pack_bits(BitVector const &bits)
{
  std::vector<std::uint8_t> bytes(bits.size() / 8, 0);
  for (std::size_t i = 0; i < bytes.size() * 8; ++i)
  {
    if (bits[i])
    {
      bytes[i / 8] = static_cast<std::uint8_t>(bytes[i / 8] | (0x80U >> (i % 8)));
    }
  }
  return bytes;
}

/**
 * Message bits consumed by the coder through a sliding window.
 *
 * Reads past the end of the payload are served from a counter-based padding
 * generator: the bit at padding index j is a pure function of (seed, j), so
 * the same window can be re-read any number of times and an extractor that
 * knows nothing about the seed still recovers the payload bits verbatim.
 */
class BitStream
{
public:
  BitStream()
    : BitStream(BitVector{})
  {}

  explicit BitStream(BitVector payload, std::optional<std::uint64_t> pad_seed = std::nullopt)
    : payload_(std::move(payload))
    , pad_seed_(pad_seed ? *pad_seed : detail::os_entropy_seed())
  {}

  static BitStream from_bytes(std::span<std::uint8_t const> bytes,
                              std::optional<std::uint64_t> pad_seed = std::nullopt)
  {
    return BitStream(bits_from_bytes(bytes), pad_seed);
  }

  bool bit(std::uint64_t offset) const noexcept
  {
    if (offset < payload_.size())
    {
      return payload_[static_cast<std::size_t>(offset)];
    }
    std::uint64_t const j    = offset - payload_.size();
    std::uint64_t const word = detail::splitmix64(pad_seed_ ^ detail::splitmix64(j >> 6));
    return ((word >> (63 - (j & 63))) & 1U) != 0;
  }

  /// Integer formed by `width` bits starting at `offset`, first bit most significant.
  std::uint64_t window(std::uint64_t offset, unsigned width) const
  {
    if (width > 64)
    {
      fail(ErrorCode::InvalidArgument, "window width exceeds 64 bits");
    }
    std::uint64_t value = 0;
    for (unsigned i = 0; i < width; ++i)
    {
      value = (value << 1) | (bit(offset + i) ? 1U : 0U);
    }
    return value;
  }

  /// Window anchored at the confirmed-consumption pointer.
  std::uint64_t window(unsigned width) const
  {
    return window(confirmed_, width);
  }

  void advance(std::uint64_t count) noexcept
  {
    confirmed_ += count;
  }

  std::uint64_t confirmed() const noexcept
  {
    return confirmed_;
  }

  std::size_t payload_size() const noexcept
  {
    return payload_.size();
  }

  BitVector const &payload() const noexcept
  {
    return payload_;
  }

  std::uint64_t pad_seed() const noexcept
  {
    return pad_seed_;
  }

private:
  BitVector     payload_;
  std::uint64_t pad_seed_;
  std::uint64_t confirmed_ = 0;
};

/// Public keystream XORed over framed messages. A length header is mostly
/// zero bits, and the coder needs message bits that look uniform: a run of
/// zeros keeps selecting the most probable pixel and carries almost nothing.
constexpr std::uint64_t kWhiteningSeed = 0x5049584C53544547ULL;

inline bool whitening_bit(std::uint64_t index) noexcept
{
  std::uint64_t const word = detail::splitmix64(kWhiteningSeed ^ detail::splitmix64(index >> 6));
  return ((word >> (63 - (index & 63))) & 1U) != 0;
}

/// XORs the keystream in place; applying it twice restores the input.
inline void whiten(BitVector &bits) noexcept
{
  for (std::size_t i = 0; i < bits.size(); ++i)
  {
    bits[i] = bits[i] != whitening_bit(i);
  }
}

constexpr std::size_t kFrameHeaderBits = 32;

/// 32-bit big-endian bit count followed by the payload bits.
inline BitVector frame_encode(std::span<std::uint8_t const> payload)
{
  if (payload.size() > std::numeric_limits<std::uint32_t>::max() / 8)
  {
    fail(ErrorCode::OversizePayload, "payload bit count does not fit in 32 bits");
  }
  auto const bit_count = static_cast<std::uint32_t>(payload.size() * 8);

  BitVector bits;
  bits.reserve(kFrameHeaderBits + bit_count);
  for (int i = 31; i >= 0; --i)
  {
    bits.push_back(((bit_count >> i) & 1U) != 0);
  }
  BitVector const body = bits_from_bytes(payload);
  bits.insert(bits.end(), body.begin(), body.end());
  return bits;
}

/// Length declared by a frame header, if at least 32 bits are present.
inline std::optional<std::uint32_t> frame_length(BitVector const &bits)
{
  if (bits.size() < kFrameHeaderBits)
  {
    return std::nullopt;
  }
  std::uint32_t length = 0;
  for (std::size_t i = 0; i < kFrameHeaderBits; ++i)
  {
    length = (length << 1) | (bits[i] ? 1U : 0U);
  }
  return length;
}

/// Inverse of frame_encode. Bits after the framed payload are ignored. A
/// payload length that is not a multiple of 8 yields a final byte padded
/// with zero bits.
inline std::vector<std::uint8_t> frame_decode(BitVector const &bits)
{
  auto const length = frame_length(bits);
  if (!length)
  {
    fail(ErrorCode::TruncatedStream, "fewer than 32 bits available for the frame header");
  }
  if (bits.size() - kFrameHeaderBits < *length)
  {
    fail(ErrorCode::TruncatedStream, "frame declares " + std::to_string(*length) +
                                         " payload bits but only " +
                                         std::to_string(bits.size() - kFrameHeaderBits) +
                                         " are available");
  }
  BitVector body(bits.begin() + kFrameHeaderBits,
                 bits.begin() + static_cast<std::ptrdiff_t>(kFrameHeaderBits + *length));
  while (body.size() % 8 != 0)
  {
    body.push_back(false);
  }
  return pack_bits(body);
}

}  // namespace pixelstega
