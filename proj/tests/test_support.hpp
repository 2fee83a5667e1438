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

#include "pixelstega/pixelstega.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace pixelstega::testing {

template <typename F>
void expect_error(ErrorCode code, F &&fn)
{
  try
  {
    fn();
    ADD_FAILURE() << "expected " << to_string(code) << " but nothing was thrown";
  }
  catch (Error const &e)
  {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

inline std::uint64_t mix(std::uint64_t a, std::uint64_t b)
{
  return pixelstega::detail::splitmix64(a ^ pixelstega::detail::splitmix64(b));
}

/// Random valid distribution: sometimes flat, sometimes sharply peaked,
/// sometimes with zero-weight holes.
inline PixelDistribution random_distribution(std::mt19937_64 &rng)
{
  WeightArray w{};
  switch (rng() % 4)
  {
  case 0:
    for (auto &x : w)
    {
      x = 1 + rng() % 1000;
    }
    break;
  case 1:
    for (auto &x : w)
    {
      x = rng() % 3 == 0 ? 0 : rng() % 50;
    }
    w[rng() % 256] += 1'000'000 + rng() % 1'000'000'000;
    break;
  case 2:
    for (auto &x : w)
    {
      x = rng() % 5 == 0 ? 1 + rng() % (1ULL << 32) : 0;
    }
    w[rng() % 256] += 1;
    break;
  default:
    w[rng() % 256] = 1 + rng() % 100;
    w[rng() % 256] += 1 + rng() % 100;
    break;
  }
  return PixelDistribution(w);
}

/// Synthetic causal model: the distribution at step i is a hash of i and the
/// previous subpixel, with holes (zero weights) and occasional sharp peaks.
class HashModel final : public ProbabilityModel
{
public:
  explicit HashModel(std::uint64_t salt)
    : salt_(salt)
  {}

  PixelDistribution distribution(ImageGrid const &prefix, SequencePosition const &pos) const override
  {
    std::uint64_t const prev = pos.index == 0 ? 999 : prefix[pos.index - 1];
    std::mt19937_64     rng(mix(salt_, pos.index * 1024 + prev));
    return random_distribution(rng);
  }

private:
  std::uint64_t salt_;
};

/**
 * Independent reference for the embedding walk, in absolute coordinates.
 *
 * The interval is kept as [A, A + W) over denominator 2^(c + prc) with
 * arbitrary-precision integers, where c is the number of confirmed bits.
 * The pixel is the subinterval containing floor(M * 2^(c + prc)), M being
 * the message read as a binary fraction, and the confirmed count is the
 * common binary prefix length of A and A + W - 1. Nothing here touches the
 * coder's registers or window.
 */
struct ReferenceWalk
{
  std::vector<std::uint8_t> pixels;
  std::vector<unsigned>     confirmed_per_step;
};

inline ReferenceWalk reference_embed(std::vector<PixelDistribution> const &dists, BitStream const &msg, unsigned prc)
{
  using boost::multiprecision::cpp_int;
  ReferenceWalk out;
  cpp_int       a       = 0;
  cpp_int       w       = cpp_int(1) << prc;
  std::uint64_t c       = 0;
  cpp_int       message = 0;  // floor(M * 2^(c + prc))
  for (unsigned i = 0; i < prc; ++i)
  {
    message = (message << 1) + (msg.bit(i) ? 1 : 0);
  }

  for (auto const &dist : dists)
  {
    // Own quantization: weight-descending, ties by value, floors then deficit to the top.
    std::vector<int> order(256);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int x, int y) { return dist.weight(x) > dist.weight(y); });
    std::vector<cpp_int> widths(256);
    cpp_int              used = 0;
    for (int k = 0; k < 256; ++k)
    {
      widths[k] = w * cpp_int(dist.weight(order[k])) / cpp_int(dist.total());
      used += widths[k];
    }
    widths[0] += w - used;

    cpp_int lo = a;
    int     k  = 0;
    for (; k < 256; ++k)
    {
      if (message >= lo && message < lo + widths[k])
      {
        break;
      }
      lo += widths[k];
    }
    out.pixels.push_back(static_cast<std::uint8_t>(order[k]));

    cpp_int const  hi  = lo + widths[k] - 1;
    unsigned const len = static_cast<unsigned>(c) + prc;
    unsigned       s   = 0;
    // Common prefix beyond the c bits already confirmed.
    while (s < prc && bit_test(lo, len - 1 - c - s) == bit_test(hi, len - 1 - c - s))
    {
      ++s;
    }
    out.confirmed_per_step.push_back(s);
    a = lo << s;
    w = widths[k] << s;
    for (unsigned i = 0; i < s; ++i)
    {
      message = (message << 1) + (msg.bit(c + prc + i) ? 1 : 0);
    }
    c += s;
  }
  return out;
}

}  // namespace pixelstega::testing
