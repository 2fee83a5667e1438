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

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace pixelstega {

constexpr std::size_t   kPixelValues = 256;
constexpr std::uint64_t kMaxTotal    = std::uint64_t{1} << 40;

using WeightArray = std::array<std::uint64_t, kPixelValues>;

/// Integer weights over the 256 pixel values; P(v) = weight(v) / total().
/// The total is kept below 2^40 so width * weight fits a 128-bit product for
/// any register width up to 62 bits.
class PixelDistribution
{
public:
  explicit PixelDistribution(WeightArray const &weights)
    : weights_(weights)
  {
    for (std::uint64_t w : weights_)
    {
      if (w >= kMaxTotal || total_ + w >= kMaxTotal)
      {
        fail(ErrorCode::InvalidDistribution, "total weight must stay below 2^40");
      }
      total_ += w;
    }
    if (total_ == 0)
    {
      fail(ErrorCode::InvalidDistribution, "total weight is zero");
    }
  }

  static PixelDistribution uniform()
  {
    WeightArray w;
    w.fill(1);
    return PixelDistribution(w);
  }

  static PixelDistribution point_mass(std::uint8_t value)
  {
    WeightArray w{};
    w[value] = 1;
    return PixelDistribution(w);
  }

  std::uint64_t weight(std::size_t value) const noexcept
  {
    return weights_[value];
  }

  std::uint64_t total() const noexcept
  {
    return total_;
  }

  WeightArray const &weights() const noexcept
  {
    return weights_;
  }

  double probability(std::size_t value) const noexcept
  {
    return static_cast<double>(weights_[value]) / static_cast<double>(total_);
  }

  friend bool operator==(PixelDistribution const &, PixelDistribution const &) = default;

private:
  WeightArray   weights_{};
  std::uint64_t total_ = 0;
};

/// Converts a float distribution (e.g. a softmax from an external network)
/// into integer weights: floor(p * 2^31) + 1. Scaling by a power of two and
/// flooring are exact in IEEE double, so the result depends only on the
/// input bits.
inline PixelDistribution weights_from_floats(std::span<double const, kPixelValues> probs)
{
  double sum = 0.0;
  for (double p : probs)
  {
    if (std::isnan(p))
    {
      fail(ErrorCode::InvalidDistribution, "NaN probability");
    }
    if (p < 0.0)
    {
      fail(ErrorCode::NegativeProbability, "probability " + std::to_string(p) + " is negative");
    }
    sum += p;
  }
  if (sum < 0.99 || sum > 1.01)
  {
    fail(ErrorCode::InvalidDistribution, "probabilities sum to " + std::to_string(sum));
  }
  WeightArray w{};
  for (std::size_t v = 0; v < kPixelValues; ++v)
  {
    w[v] = static_cast<std::uint64_t>(std::floor(probs[v] * 2147483648.0)) + 1;
  }
  return PixelDistribution(w);
}

}  // namespace pixelstega
