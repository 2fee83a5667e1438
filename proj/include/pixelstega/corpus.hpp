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

#include "pixelstega/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace pixelstega::synth {

// Desk-scale stand-ins for real datasets, reproducible from a seed.

inline double unit(std::mt19937_64 &rng)
{
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(std::mt19937_64 &rng, double lo, double hi)
{
  return lo + (hi - lo) * unit(rng);
}

namespace detail {

inline double segment_distance(double px, double py, double ax, double ay, double bx, double by)
{
  double const dx  = bx - ax;
  double const dy  = by - ay;
  double const len = dx * dx + dy * dy;
  double       t   = len > 0.0 ? ((px - ax) * dx + (py - ay) * dy) / len : 0.0;
  t                = std::clamp(t, 0.0, 1.0);
  double const cx  = ax + t * dx - px;
  double const cy  = ay + t * dy - py;
  return std::sqrt(cx * cx + cy * cy);
}

}  // namespace detail

/// Handwriting-like gray image: a few thick bright polyline strokes with
/// soft edges on a black background, kept inside a central box.
inline ImageGrid stroke_image(std::mt19937_64 &rng, std::size_t width = 28, std::size_t height = 28)
{
  ImageGrid    img(Shape{width, height, 1});
  double const w      = static_cast<double>(width);
  double const h      = static_cast<double>(height);
  double const radius = uniform(rng, 0.9, 1.6) * w / 28.0;

  std::vector<std::pair<double, double>> points;
  int const segments = 2 + static_cast<int>(rng() % 4);
  points.emplace_back(uniform(rng, 0.3 * w, 0.7 * w), uniform(rng, 0.2 * h, 0.8 * h));
  for (int s = 0; s < segments; ++s)
  {
    points.emplace_back(uniform(rng, 0.22 * w, 0.78 * w), uniform(rng, 0.18 * h, 0.82 * h));
  }

  for (std::size_t r = 0; r < height; ++r)
  {
    for (std::size_t c = 0; c < width; ++c)
    {
      double d = 1e9;
      for (std::size_t k = 1; k < points.size(); ++k)
      {
        d = std::min(d, detail::segment_distance(static_cast<double>(c), static_cast<double>(r), points[k - 1].first,
                                                 points[k - 1].second, points[k].first, points[k].second));
      }
      double const intensity = std::clamp(radius + 0.5 - d, 0.0, 1.0);
      img[r * width + c]     = static_cast<std::uint8_t>(std::lround(255.0 * intensity));
    }
  }
  return img;
}

/// Natural-ish image: smooth random gradient field plus mild sensor noise.
inline ImageGrid texture_image(std::mt19937_64 &rng, Shape shape)
{
  ImageGrid img(shape);
  for (std::size_t ch = 0; ch < shape.channels; ++ch)
  {
    double const base = uniform(rng, 40.0, 200.0);
    double const fx   = uniform(rng, 0.02, 0.2);
    double const fy   = uniform(rng, 0.02, 0.2);
    double const amp  = uniform(rng, 20.0, 60.0);
    double const ph   = uniform(rng, 0.0, 6.28);
    for (std::size_t r = 0; r < shape.height; ++r)
    {
      for (std::size_t c = 0; c < shape.width; ++c)
      {
        double const noise = uniform(rng, -12.0, 12.0);
        double const v =
            base + amp * std::sin(fx * static_cast<double>(c) + fy * static_cast<double>(r) + ph) + noise;
        img[(r * shape.width + c) * shape.channels + ch] = static_cast<std::uint8_t>(std::lround(std::clamp(v, 0.0, 255.0)));
      }
    }
  }
  return img;
}

inline std::vector<ImageGrid> stroke_corpus(std::size_t count, std::uint64_t seed, std::size_t width = 28,
                                            std::size_t height = 28)
{
  std::mt19937_64        rng(seed);
  std::vector<ImageGrid> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
  {
    out.push_back(stroke_image(rng, width, height));
  }
  return out;
}

inline std::vector<ImageGrid> texture_corpus(std::size_t count, std::uint64_t seed, Shape shape)
{
  std::mt19937_64        rng(seed);
  std::vector<ImageGrid> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i)
  {
    out.push_back(texture_image(rng, shape));
  }
  return out;
}

}  // namespace pixelstega::synth
