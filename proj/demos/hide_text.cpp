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

// Hides a line of text in a generated 28x28 image and reads it back.

#include "pixelstega/pixelstega.hpp"

#include <iostream>
#include <string>

int main(int argc, char **argv)
{
  using namespace pixelstega;

  std::string const text = argc > 1 ? argv[1] : "meet at dawn";
  std::vector<std::uint8_t> const payload(text.begin(), text.end());

  auto const corpus = synth::stroke_corpus(500, 1);
  auto const model  = train_context_model(corpus);

  auto       msg    = make_message(payload, Framing::Framed, 2024);
  auto const result = embed_image(model, Shape{28, 28, 1}, msg);
  write_image(result.image, std::filesystem::path("stego.pgm"));

  auto const totals = result.report.totals();
  std::cout << "embedded " << payload.size() << " bytes, " << totals.bits_confirmed << " bits confirmed ("
            << totals.er_pixel << " bpp), mean KLD " << totals.mean_kld << " bits\n";

  auto const back = extract_image(model, read_image(std::filesystem::path("stego.pgm")));
  std::cout << "recovered: " << std::string(back.bytes.begin(), back.bytes.end()) << "\n";
  return back.bytes == payload ? 0 : 1;
}
