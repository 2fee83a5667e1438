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
#include "pixelstega/models.hpp"
#include "pixelstega/stego.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace pixelstega {

/// Distribution that, on a 5-bit full interval, gives value 0 offsets
/// [0,8), value 1 [8,14), value 4 [14,16) and values 5..12 two units each.
inline PixelDistribution toy_distribution()
{
  WeightArray w{};
  w[0] = 8;
  w[1] = 6;
  for (std::size_t v = 4; v <= 12; ++v)
  {
    w[v] = 2;
  }
  return PixelDistribution(w);
}

struct SelftestResult
{
  bool        ok = true;
  std::string failed_vector;
  std::string detail;
};

/// Replays the golden vectors through the given partitioning rule. Stops at
/// the first mismatch.
template <typename Quantizer = DefaultQuantizer>
SelftestResult run_selftest(Quantizer quantizer = {})
{
  auto mismatch = [](std::string vector, std::string detail) {
    return SelftestResult{false, std::move(vector), std::move(detail)};
  };

  // Message window 01111 on a 5-bit register selects pixel 4 on [14,15],
  // confirms 0111 and returns to the full interval.
  try
  {
    CoderState state(5);
    BitStream  msg(BitVector{false, true, true, true, true}, 0);
    auto const part = quantizer(toy_distribution(), state);
    auto const rec  = embed_step(state, part, msg);
    bool const interval_ok = part.cut[part.rank[4]] == 14 && part.cut[part.rank[4] + 1] == 16;
    if (!interval_ok || rec.pixel_value != 4 || rec.bits_confirmed != 4 || state.low != 0 || state.high != 31 ||
        msg.confirmed() != 4)
    {
      return mismatch("toy-prc5", "pixel " + std::to_string(rec.pixel_value) + ", " +
                                       std::to_string(rec.bits_confirmed) + " bits, state [" +
                                       std::to_string(state.low) + "," + std::to_string(state.high) + "]");
    }
    CoderState back(5);
    auto const ext = extract_step(back, quantizer(toy_distribution(), back), 4);
    if (ext.bits != BitVector{false, true, true, true})
    {
      return mismatch("toy-prc5", "extraction did not recover 0111");
    }
  }
  catch (Error const &e)
  {
    return mismatch("toy-prc5", e.what());
  }

  // Uniform model at prc 26 passes message bytes straight through as pixels.
  try
  {
    std::vector<std::uint8_t> const bytes{0x0F, 0xF0, 0xAA, 0x55};
    UniformModel                    uniform;
    BitStream                       msg = make_message(bytes, Framing::Raw, 0);
    CodingOptions const             opts{kDefaultPrecision, Framing::Raw, false};
    auto const embedded = embed_image(uniform, Shape{2, 2, 1}, msg, opts, quantizer);
    if (std::vector<std::uint8_t>(embedded.image.data().begin(), embedded.image.data().end()) != bytes ||
        embedded.bits_confirmed != 32)
    {
      return mismatch("uniform-byte-passthrough", "pixels differ from message bytes");
    }
    if (extract_image(uniform, embedded.image, opts, quantizer).bytes != bytes)
    {
      return mismatch("uniform-byte-passthrough", "extraction differs from message bytes");
    }
  }
  catch (Error const &e)
  {
    return mismatch("uniform-byte-passthrough", e.what());
  }

  // Framed payload through a smoothed non-uniform model.
  try
  {
    std::vector<std::uint8_t> const payload{'p', 'i', 'x', 'e', 'l'};
    WeightArray                     w;
    for (std::size_t v = 0; v < kPixelValues; ++v)
    {
      w[v] = 1 + (v % 7) * (v % 13);
    }
    FixedModel          model{PixelDistribution(w)};
    BitStream           msg = make_message(payload, Framing::Framed, 7);
    CodingOptions const opts{kDefaultPrecision, Framing::Framed, false};
    auto const          embedded = embed_image(model, Shape{8, 8, 1}, msg, opts, quantizer);
    if (extract_image(model, embedded.image, opts, quantizer).bytes != payload)
    {
      return mismatch("framed-roundtrip", "recovered payload differs");
    }
  }
  catch (Error const &e)
  {
    return mismatch("framed-roundtrip", e.what());
  }

  return {};
}

}  // namespace pixelstega
