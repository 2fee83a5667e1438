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

#include "CLI11.hpp"
#include "pixelstega/pixelstega.hpp"

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace pixelstega::cli {

/// Process exit codes, one per error family.
enum Exit : int
{
  kOk         = 0,
  kInternal   = 1,
  kConfig     = 2,
  kCapacity   = 3,
  kExtraction = 4,
  kSelftest   = 5,
};

inline int exit_code_for(ErrorCode code)
{
  switch (code)
  {
  case ErrorCode::CapacityExceeded: return kCapacity;
  case ErrorCode::UndecodablePixel:
  case ErrorCode::TruncatedStream: return kExtraction;
  case ErrorCode::SinkFailure: return kInternal;
  default: return kConfig;
  }
}

struct ModelSource
{
  std::string model_path;
  bool        uniform = false;
  std::string stream_path;

  void add_to(CLI::App &cmd)
  {
    auto *m = cmd.add_option("--model", model_path, "Trained context model (PSCM)");
    auto *u = cmd.add_flag("--uniform", uniform, "Uniform distribution at every step");
    auto *s = cmd.add_option("--dist-stream", stream_path, "Precomputed distribution stream (PSDS)");
    m->excludes(u)->excludes(s);
    u->excludes(s);
  }

  std::unique_ptr<ProbabilityModel> load() const
  {
    int const given = static_cast<int>(!model_path.empty()) + static_cast<int>(uniform) +
                      static_cast<int>(!stream_path.empty());
    if (given != 1)
    {
      fail(ErrorCode::InvalidArgument, "exactly one of --model, --uniform, --dist-stream is required");
    }
    if (uniform)
    {
      return std::make_unique<UniformModel>();
    }
    if (!model_path.empty())
    {
      return std::make_unique<ContextModel>(load_model(std::filesystem::path(model_path)));
    }
    return std::make_unique<DistributionStreamModel>(load_distribution_stream(std::filesystem::path(stream_path)));
  }
};

inline void write_file(std::filesystem::path const &path, std::span<std::uint8_t const> bytes)
{
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<char const *>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out)
  {
    fail(ErrorCode::SinkFailure, "failed writing " + path.string());
  }
}

inline void check_prc(unsigned prc)
{
  if (prc < kMinPrecision || prc > kMaxPrecision)
  {
    fail(ErrorCode::InvalidArgument, "--prc must be in [8, 62]");
  }
}

inline std::vector<ImageGrid> load_corpus(std::filesystem::path const &dir)
{
  if (!std::filesystem::is_directory(dir))
  {
    fail(ErrorCode::InvalidArgument, dir.string() + " is not a directory");
  }
  std::vector<std::filesystem::path> files;
  for (auto const &entry : std::filesystem::directory_iterator(dir))
  {
    auto const ext = entry.path().extension().string();
    if (entry.is_regular_file() && (ext == ".pgm" || ext == ".ppm" || ext == ".pnm"))
    {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::vector<ImageGrid> corpus;
  corpus.reserve(files.size());
  for (auto const &f : files)
  {
    corpus.push_back(read_image(f));
  }
  return corpus;
}

/// Parses argv and runs one subcommand; returns the process exit code.
inline int run(int argc, char const *const *argv)
{
  CLI::App app{"Steganographic image generation by arithmetic-coding stegosampling"};
  app.require_subcommand(1);

  // train
  std::string        corpus_dir;
  std::string        out_path;
  ContextModelConfig train_cfg;
  auto *train = app.add_subcommand("train", "Fit the causal context model on a PGM/PPM corpus");
  train->add_option("--corpus", corpus_dir, "Directory of .pgm/.ppm images")->required();
  train->add_option("--out", out_path, "Model file to write")->required();
  train->add_option("--buckets", train_cfg.buckets, "Neighbour quantization levels")->check(CLI::Range(1, 255));
  train->add_option("--smooth", train_cfg.smoothing, "Pseudo-count per value")->check(CLI::Range(1, 1 << 30));

  // embed
  ModelSource                  embed_src;
  std::string                  message_path;
  std::size_t                  width  = 0;
  std::size_t                  height = 0;
  bool                         rgb    = false;
  unsigned                     prc    = kDefaultPrecision;
  bool                         raw    = false;
  std::optional<std::uint64_t> seed;
  std::string                  report_path;
  auto *embed = app.add_subcommand("embed", "Generate a stego image carrying a message file");
  embed_src.add_to(*embed);
  embed->add_option("--message", message_path, "Message file (raw bytes)")->required();
  embed->add_option("--width", width)->required();
  embed->add_option("--height", height)->required();
  embed->add_flag("--rgb", rgb, "Three channels instead of gray");
  embed->add_option("--prc", prc, "Register width in bits [8, 62]");
  embed->add_flag("--raw", raw, "Embed message bits without a length header");
  embed->add_option("--seed", seed, "Padding generator seed (default: OS entropy)");
  embed->add_option("--out", out_path, "Stego image (.pgm/.ppm)")->required();
  embed->add_option("--report", report_path, "Per-image metrics CSV");

  // extract
  ModelSource extract_src;
  std::string image_path;
  auto *extract = app.add_subcommand("extract", "Recover the message from a stego image");
  extract_src.add_to(*extract);
  extract->add_option("--image", image_path)->required();
  extract->add_option("--prc", prc, "Register width in bits [8, 62]");
  extract->add_flag("--raw", raw, "Return every recovered byte instead of a framed payload");
  extract->add_option("--out", out_path, "Recovered message file")->required();

  // analyze
  ModelSource analyze_src;
  std::size_t count = 0;
  std::string csv_path;
  std::string entropy_map_path;
  std::string bits_map_path;
  unsigned    threads = std::max(1U, std::thread::hardware_concurrency());
  auto *analyze = app.add_subcommand("analyze", "Embed random messages into N images and report capacity and distortion");
  analyze_src.add_to(*analyze);
  analyze->add_option("--count", count)->required()->check(CLI::PositiveNumber);
  analyze->add_option("--width", width)->required();
  analyze->add_option("--height", height)->required();
  analyze->add_flag("--rgb", rgb);
  analyze->add_option("--prc", prc);
  analyze->add_option("--seed", seed, "Base seed for the random messages");
  analyze->add_option("--threads", threads)->check(CLI::PositiveNumber);
  analyze->add_option("--out-csv", csv_path)->required();
  analyze->add_option("--out-entropy-map", entropy_map_path)->required();
  analyze->add_option("--out-bits-map", bits_map_path)->required();

  // selftest
  auto *selftest = app.add_subcommand("selftest", "Replay the golden vectors");

  // synth-corpus
  std::string kind = "strokes";
  auto *synth = app.add_subcommand("synth-corpus", "Write a reproducible synthetic training corpus");
  synth->add_option("--out", out_path, "Output directory")->required();
  synth->add_option("--count", count)->required()->check(CLI::PositiveNumber);
  synth->add_option("--kind", kind)->check(CLI::IsMember({"strokes", "texture"}));
  synth->add_option("--width", width);
  synth->add_option("--height", height);
  synth->add_flag("--rgb", rgb);
  synth->add_option("--seed", seed);

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try
  {
    if (*train)
    {
      auto const corpus = load_corpus(corpus_dir);
      auto const model  = train_context_model(corpus, train_cfg);
      save_model(model, std::filesystem::path(out_path));
      std::cout << "contexts: " << model.contexts() << "\ncorpus images: " << corpus.size() << "\n";
      return kOk;
    }

    if (*embed)
    {
      check_prc(prc);
      auto const     model   = embed_src.load();
      auto const     payload = read_file(message_path);
      std::uint64_t const pad_seed = seed ? *seed : detail::os_entropy_seed();
      Shape const    shape{width, height, rgb ? 3U : 1U};
      BitStream      msg = make_message(payload, raw ? Framing::Raw : Framing::Framed, pad_seed);
      std::cout << "pad seed: " << pad_seed << "\n";
      auto const result = embed_image(*model, shape, msg, CodingOptions{prc, raw ? Framing::Raw : Framing::Framed, true});
      write_image(result.image, std::filesystem::path(out_path));
      auto const totals = result.report.totals();
      std::cout << "bits confirmed: " << totals.bits_confirmed << "\nER: " << totals.er_pixel << " bpp ("
                << totals.er_step << " bits/step)\n";
      if (!report_path.empty())
      {
        std::ofstream csv(report_path);
        csv << kCsvHeader << '\n';
        write_csv_row(csv, {std::filesystem::path(out_path).filename().string(), totals});
      }
      return kOk;
    }

    if (*extract)
    {
      check_prc(prc);
      auto const model = extract_src.load();
      auto const image = read_image(std::filesystem::path(image_path));
      auto const result =
          extract_image(*model, image, CodingOptions{prc, raw ? Framing::Raw : Framing::Framed, false});
      write_file(out_path, result.bytes);
      std::cout << "recovered bytes: " << result.bytes.size() << "\n";
      return kOk;
    }

    if (*analyze)
    {
      check_prc(prc);
      auto const          model = analyze_src.load();
      Shape const         shape{width, height, rgb ? 3U : 1U};
      require_valid(shape);
      std::uint64_t const base = seed ? *seed : detail::os_entropy_seed();
      std::vector<std::optional<EmbedReport>> reports(count);
      std::atomic<std::size_t>                next{0};
      std::vector<std::string>                errors(threads);
      auto worker = [&](unsigned id) {
        try
        {
          for (std::size_t i = next++; i < count; i = next++)
          {
            BitStream msg(BitVector{}, detail::splitmix64(base ^ detail::splitmix64(i)));
            reports[i] = embed_image(*model, shape, msg, CodingOptions{prc, Framing::Raw, true}).report;
          }
        }
        catch (std::exception const &e)
        {
          errors[id] = e.what();
          next       = count;
        }
      };
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < threads; ++t)
      {
        pool.emplace_back(worker, t);
      }
      for (auto &t : pool)
      {
        t.join();
      }
      for (auto const &e : errors)
      {
        if (!e.empty())
        {
          std::cerr << "error: " << e << "\n";
          return kConfig;
        }
      }
      std::vector<EmbedReport> done;
      std::vector<ReportRow>   rows;
      for (std::size_t i = 0; i < count; ++i)
      {
        rows.push_back({"img" + std::to_string(i), reports[i]->totals()});
        done.push_back(std::move(*reports[i]));
      }
      auto const table = aggregate(rows);
      std::ofstream csv(csv_path);
      write_csv(csv, table);
      auto const [entropy_map, bits_map] = heatmaps(done);
      write_image(entropy_map, std::filesystem::path(entropy_map_path));
      write_image(bits_map, std::filesystem::path(bits_map_path));
      std::cout << "images: " << count << "\nER: " << table.er_pixel.mean << " +- " << table.er_pixel.std
                << " bpp\nKLD: " << table.kld.mean << "\nJSD: " << table.jsd.mean << "\nbase seed: " << base << "\n";
      return kOk;
    }

    if (*selftest)
    {
      auto const r = run_selftest();
      if (!r.ok)
      {
        std::cerr << "selftest FAILED: " << r.failed_vector << " (" << r.detail << ")\n";
        return kSelftest;
      }
      std::cout << "selftest passed: toy-prc5, uniform-byte-passthrough, framed-roundtrip\n";
      return kOk;
    }

    if (*synth)
    {
      std::uint64_t const s = seed ? *seed : 1;
      std::filesystem::create_directories(out_path);
      std::vector<ImageGrid> corpus;
      if (kind == "strokes")
      {
        corpus = synth::stroke_corpus(count, s, width ? width : 28, height ? height : 28);
      }
      else
      {
        corpus = synth::texture_corpus(count, s, Shape{width ? width : 32, height ? height : 32, rgb ? 3U : 1U});
      }
      for (std::size_t i = 0; i < corpus.size(); ++i)
      {
        char name[32];
        std::snprintf(name, sizeof name, "%05zu.%s", i, corpus[i].channels() == 1 ? "pgm" : "ppm");
        write_image(corpus[i], std::filesystem::path(out_path) / name);
      }
      std::cout << "wrote " << corpus.size() << " images to " << out_path << "\n";
      return kOk;
    }
  }
  catch (Error const &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  catch (std::exception const &e)
  {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kConfig;
}

}  // namespace pixelstega::cli
