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

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace pixelstega {

struct Shape
{
  std::size_t width    = 0;
  std::size_t height   = 0;
  std::size_t channels = 1;

  std::size_t pixels() const noexcept
  {
    return width * height;
  }

  std::size_t steps() const noexcept
  {
    return width * height * channels;
  }

  bool valid() const noexcept
  {
    return width > 0 && height > 0 && (channels == 1 || channels == 3);
  }

  friend bool operator==(Shape const &, Shape const &) = default;
};

inline void require_valid(Shape const &shape)
{
  if (!shape.valid())
  {
    fail(ErrorCode::InvalidShape, "shape " + std::to_string(shape.width) + "x" +
                                      std::to_string(shape.height) + "x" +
                                      std::to_string(shape.channels) +
                                      " is not a positive gray or RGB shape");
  }
}

/// One coding step: index i = (row * width + col) * channels + channel.
struct SequencePosition
{
  std::size_t index   = 0;
  std::size_t row     = 0;
  std::size_t col     = 0;
  std::size_t channel = 0;

  friend bool operator==(SequencePosition const &, SequencePosition const &) = default;
};

inline SequencePosition position_at(Shape const &shape, std::size_t index) noexcept
{
  std::size_t const pixel = index / shape.channels;
  return {index, pixel / shape.width, pixel % shape.width, index % shape.channels};
}

/// Raster order, top-left to bottom-right, channels interleaved per pixel.
inline std::vector<SequencePosition> sequence_positions(Shape const &shape)
{
  require_valid(shape);
  std::vector<SequencePosition> out;
  out.reserve(shape.steps());
  for (std::size_t i = 0; i < shape.steps(); ++i)
  {
    out.push_back(position_at(shape, i));
  }
  return out;
}

/// Row-major, channel-interleaved 8-bit image.
class ImageGrid
{
public:
  ImageGrid() = default;

  explicit ImageGrid(Shape shape)
    : ImageGrid(shape, std::vector<std::uint8_t>(shape.steps(), 0))
  {}

  ImageGrid(Shape shape, std::vector<std::uint8_t> data)
    : shape_(shape)
    , data_(std::move(data))
  {
    require_valid(shape_);
    if (data_.size() != shape_.steps())
    {
      fail(ErrorCode::InvalidShape, "data length " + std::to_string(data_.size()) +
                                        " does not match shape (" +
                                        std::to_string(shape_.steps()) + " values)");
    }
  }

  Shape const &shape() const noexcept
  {
    return shape_;
  }
  std::size_t width() const noexcept
  {
    return shape_.width;
  }
  std::size_t height() const noexcept
  {
    return shape_.height;
  }
  std::size_t channels() const noexcept
  {
    return shape_.channels;
  }

  std::uint8_t operator[](std::size_t index) const noexcept
  {
    return data_[index];
  }
  std::uint8_t &operator[](std::size_t index) noexcept
  {
    return data_[index];
  }

  std::uint8_t at(std::size_t row, std::size_t col, std::size_t channel) const
  {
    return data_.at((row * shape_.width + col) * shape_.channels + channel);
  }

  std::span<std::uint8_t const> data() const noexcept
  {
    return data_;
  }

  friend bool operator==(ImageGrid const &, ImageGrid const &) = default;

private:
  Shape                     shape_{};
  std::vector<std::uint8_t> data_;
};

namespace detail {

class PnmHeaderParser
{
public:
  explicit PnmHeaderParser(std::span<std::uint8_t const> bytes)
    : bytes_(bytes)
  {}

  void skip_space_and_comments()
  {
    while (pos_ < bytes_.size())
    {
      auto const c = bytes_[pos_];
      if (c == '#')
      {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r')
        {
          ++pos_;
        }
      }
      else if (std::isspace(c) != 0)
      {
        ++pos_;
      }
      else
      {
        return;
      }
    }
  }

  std::size_t number(char const *field)
  {
    skip_space_and_comments();
    std::size_t value  = 0;
    std::size_t digits = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_]) != 0)
    {
      value = value * 10 + static_cast<std::size_t>(bytes_[pos_] - '0');
      if (value > (std::size_t{1} << 31))
      {
        fail(ErrorCode::BadHeader, std::string(field) + " out of range");
      }
      ++pos_;
      ++digits;
    }
    if (digits == 0)
    {
      fail(ErrorCode::BadHeader, std::string("missing ") + field);
    }
    return value;
  }

  /// Exactly one whitespace byte separates maxval from the raster.
  void single_whitespace()
  {
    if (pos_ >= bytes_.size() || std::isspace(bytes_[pos_]) == 0)
    {
      fail(ErrorCode::BadHeader, "expected whitespace after maxval");
    }
    ++pos_;
  }

  std::size_t position() const noexcept
  {
    return pos_;
  }

  void seek(std::size_t pos) noexcept
  {
    pos_ = pos;
  }

private:
  std::span<std::uint8_t const> bytes_;
  std::size_t                   pos_ = 0;
};

}  // namespace detail

/// Parses binary PGM (P5) or PPM (P6) with maxval 255.
inline ImageGrid read_image(std::span<std::uint8_t const> bytes)
{
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
  {
    fail(ErrorCode::BadMagic, "expected P5 or P6");
  }
  std::size_t const channels = bytes[1] == '5' ? 1 : 3;

  detail::PnmHeaderParser parser(bytes);
  parser.seek(2);
  if (parser.position() < bytes.size() && std::isspace(bytes[2]) == 0 && bytes[2] != '#')
  {
    fail(ErrorCode::BadMagic, "magic not followed by whitespace");
  }
  std::size_t const width  = parser.number("width");
  std::size_t const height = parser.number("height");
  std::size_t const maxval = parser.number("maxval");
  if (width == 0 || height == 0)
  {
    fail(ErrorCode::BadHeader, "zero image dimension");
  }
  if (maxval != 255)
  {
    fail(ErrorCode::MaxvalUnsupported, "maxval " + std::to_string(maxval) + " (only 255 is supported)");
  }
  parser.single_whitespace();

  Shape const       shape{width, height, channels};
  std::size_t const start = parser.position();
  if (bytes.size() - start < shape.steps())
  {
    fail(ErrorCode::ShortData, "expected " + std::to_string(shape.steps()) + " raster bytes, found " +
                                   std::to_string(bytes.size() - start));
  }
  auto const first = bytes.begin() + static_cast<std::ptrdiff_t>(start);
  return ImageGrid(shape, std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(shape.steps())));
}

inline std::vector<std::uint8_t> read_file(std::filesystem::path const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    fail(ErrorCode::InvalidArgument, "cannot open " + path.string());
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline ImageGrid read_image(std::filesystem::path const &path)
{
  auto const bytes = read_file(path);
  return read_image(std::span<std::uint8_t const>(bytes));
}

/// Canonical encoding: "P5\n<w> <h>\n255\n" (or P6) followed by the raster.
inline std::vector<std::uint8_t> encode_image(ImageGrid const &grid)
{
  std::string const header = std::string(grid.channels() == 1 ? "P5" : "P6") + "\n" +
                             std::to_string(grid.width()) + " " + std::to_string(grid.height()) +
                             "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.insert(out.end(), grid.data().begin(), grid.data().end());
  return out;
}

inline void write_image(ImageGrid const &grid, std::ostream &sink)
{
  auto const bytes = encode_image(grid);
  sink.write(reinterpret_cast<char const *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  sink.flush();
  if (!sink)
  {
    fail(ErrorCode::SinkFailure, "failed writing image");
  }
}

inline void write_image(ImageGrid const &grid, std::filesystem::path const &path)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    fail(ErrorCode::SinkFailure, "cannot open " + path.string() + " for writing");
  }
  write_image(grid, out);
}

}  // namespace pixelstega
