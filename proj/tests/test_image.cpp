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

#include "test_support.hpp"

#include <random>
#include <sstream>
#include <string>

namespace pixelstega {
namespace {

using testing::expect_error;

std::vector<std::uint8_t> bytes_of(std::string const &s)
{
  return {s.begin(), s.end()};
}

TEST(ImageIoTest, ReadsGrayP5)
{
  auto bytes = bytes_of("P5 2 2 255\n");
  bytes.insert(bytes.end(), {0, 1, 2, 3});
  auto const img = read_image(std::span<std::uint8_t const>(bytes));
  EXPECT_EQ(img.shape(), (Shape{2, 2, 1}));
  EXPECT_EQ(img.at(0, 0, 0), 0);
  EXPECT_EQ(img.at(0, 1, 0), 1);
  EXPECT_EQ(img.at(1, 0, 0), 2);
  EXPECT_EQ(img.at(1, 1, 0), 3);
}

TEST(ImageIoTest, ReadsRgbP6)
{
  auto bytes = bytes_of("P6\n1 1\n255\n");
  bytes.insert(bytes.end(), {10, 20, 30});
  auto const img = read_image(std::span<std::uint8_t const>(bytes));
  EXPECT_EQ(img.channels(), 3U);
  EXPECT_EQ(img.at(0, 0, 0), 10);
  EXPECT_EQ(img.at(0, 0, 1), 20);
  EXPECT_EQ(img.at(0, 0, 2), 30);
}

TEST(ImageIoTest, AcceptsCommentsAndOddWhitespace)
{
  auto bytes = bytes_of("P5\n# made by hand\n 2\t# width\n\n2 # height\n255\r");
  bytes.insert(bytes.end(), {9, 8, 7, 6});
  auto const img = read_image(std::span<std::uint8_t const>(bytes));
  EXPECT_EQ(std::vector<std::uint8_t>(img.data().begin(), img.data().end()), (std::vector<std::uint8_t>{9, 8, 7, 6}));
}

TEST(ImageIoTest, RasterMayStartWithWhitespaceByte)
{
  auto bytes = bytes_of("P5 1 2 255\n");
  bytes.insert(bytes.end(), {'\n', ' '});
  auto const img = read_image(std::span<std::uint8_t const>(bytes));
  EXPECT_EQ(img[0], '\n');
  EXPECT_EQ(img[1], ' ');
}

TEST(ImageIoTest, Errors)
{
  auto short_data = bytes_of("P5 2 2 255\n");
  short_data.insert(short_data.end(), {0, 1, 2});
  expect_error(ErrorCode::ShortData, [&] { read_image(std::span<std::uint8_t const>(short_data)); });

  auto const p2 = bytes_of("P2 1 1 255\n0");
  expect_error(ErrorCode::BadMagic, [&] { read_image(std::span<std::uint8_t const>(p2)); });

  auto const maxval = bytes_of("P5 1 1 65535\n\0\0");
  expect_error(ErrorCode::MaxvalUnsupported, [&] { read_image(std::span<std::uint8_t const>(maxval)); });

  auto const noheight = bytes_of("P5 1 \n");
  expect_error(ErrorCode::BadHeader, [&] { read_image(std::span<std::uint8_t const>(noheight)); });

  auto const zero = bytes_of("P5 0 1 255\n");
  expect_error(ErrorCode::BadHeader, [&] { read_image(std::span<std::uint8_t const>(zero)); });
}

TEST(ImageIoTest, CanonicalHeaderLength)
{
  ImageGrid const img(Shape{2, 2, 1}, {0, 1, 2, 3});
  auto const      bytes = encode_image(img);
  // "P5\n2 2\n255\n" is 11 bytes; 15 bytes in total with the raster.
  EXPECT_EQ(bytes.size(), 15U);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 11), "P5\n2 2\n255\n");
}

TEST(ImageIoTest, InvalidChannelCountRejected)
{
  expect_error(ErrorCode::InvalidShape, [] { ImageGrid(Shape{2, 2, 2}); });
  expect_error(ErrorCode::InvalidShape, [] { ImageGrid(Shape{2, 2, 1}, {1, 2, 3}); });
}

TEST(ImageIoTest, WriteReadRoundTripRandomGrids)
{
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 100; ++trial)
  {
    Shape const               shape{1 + rng() % 40, 1 + rng() % 40, rng() % 2 == 0 ? 1U : 3U};
    std::vector<std::uint8_t> data(shape.steps());
    for (auto &v : data)
    {
      v = static_cast<std::uint8_t>(rng());
    }
    ImageGrid const   img(shape, data);
    std::stringstream ss;
    write_image(img, ss);
    std::string const s = ss.str();
    std::vector<std::uint8_t> bytes(s.begin(), s.end());
    ASSERT_EQ(read_image(std::span<std::uint8_t const>(bytes)), img);
    ASSERT_EQ(encode_image(read_image(std::span<std::uint8_t const>(bytes))), bytes);
  }
}

TEST(SequenceTest, GrayRowOrder)
{
  auto const pos = sequence_positions(Shape{2, 1, 1});
  ASSERT_EQ(pos.size(), 2U);
  EXPECT_EQ(pos[0], (SequencePosition{0, 0, 0, 0}));
  EXPECT_EQ(pos[1], (SequencePosition{1, 0, 1, 0}));
}

TEST(SequenceTest, RgbInterleaved)
{
  auto const pos = sequence_positions(Shape{1, 1, 3});
  ASSERT_EQ(pos.size(), 3U);
  for (std::size_t c = 0; c < 3; ++c)
  {
    EXPECT_EQ(pos[c], (SequencePosition{c, 0, 0, c}));
  }
}

TEST(SequenceTest, Gray28Shape)
{
  auto const pos = sequence_positions(Shape{28, 28, 1});
  ASSERT_EQ(pos.size(), 784U);
  EXPECT_EQ(pos.back().row, 27U);
  EXPECT_EQ(pos.back().col, 27U);
}

TEST(SequenceTest, BijectionOntoIndices)
{
  for (Shape const shape : {Shape{3, 5, 1}, Shape{4, 2, 3}, Shape{7, 1, 3}})
  {
    auto const pos = sequence_positions(shape);
    for (std::size_t i = 0; i < pos.size(); ++i)
    {
      ASSERT_EQ(pos[i].index, i);
      ASSERT_EQ((pos[i].row * shape.width + pos[i].col) * shape.channels + pos[i].channel, i);
    }
  }
}

}  // namespace
}  // namespace pixelstega
