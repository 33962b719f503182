// Copyright 2026 The mmwtex Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "mmw/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "mmw/error.hpp"
#include "mmw/manifest.hpp"
#include "mmw/rng.hpp"
#include "text_util.hpp"

namespace mmw {

namespace {

constexpr double kTextureMean = 128.0;
constexpr double kTextureStd = 40.0;

std::uint64_t part_index(BodyPart p) {
  switch (p) {
    case BodyPart::Face: return 0;
    case BodyPart::Torso: return 1;
    case BodyPart::WholeBody: return 2;
  }
  return 0;
}

// Separable box filter with replicated edges, in place.
void box_filter(std::vector<double>& field, int w, int h, int width) {
  if (width <= 1) return;
  const int lo = -(width - 1) / 2;
  const int hi = lo + width - 1;
  std::vector<double> tmp(field.size());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int d = lo; d <= hi; ++d) s += field[static_cast<std::size_t>(y * w + std::clamp(x + d, 0, w - 1))];
      tmp[static_cast<std::size_t>(y * w + x)] = s / width;
    }
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      double s = 0.0;
      for (int d = lo; d <= hi; ++d) s += tmp[static_cast<std::size_t>(std::clamp(y + d, 0, h - 1) * w + x)];
      field[static_cast<std::size_t>(y * w + x)] = s / width;
    }
}

std::uint8_t to_level(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::floor(v + 0.5), 0.0, 255.0));
}

GrayImage shift_right(const GrayImage& img, int shift) {
  if (shift == 0) return img;
  GrayImage out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x)
      out.at(x, y) = img.at(std::clamp(x - shift, 0, img.width() - 1), y);
  return out;
}

GrayImage add_noise(const GrayImage& base, double sigma, Pcg32& rng) {
  if (sigma == 0.0) return base;
  GrayImage out(base.width(), base.height());
  auto src = base.pixels();
  auto dst = out.pixels();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = to_level(src[i] + sigma * rng.normal());
  return out;
}

std::string subject_name(std::size_t s) {
  std::string digits = std::to_string(s);
  if (digits.size() < 3) digits.insert(0, 3 - digits.size(), '0');
  return "s" + digits;
}

}  // namespace

void validate(const SynthConfig& cfg) {
  if (cfg.subjects < 1) fail(ErrorCode::InvalidArgument, "synthetic dataset needs at least one subject");
  if (cfg.samples_per_pose < 1) fail(ErrorCode::InvalidArgument, "samples per pose must be >= 1");
  if (cfg.parts.empty()) fail(ErrorCode::InvalidArgument, "no body parts requested");
  if (!(cfg.intra_noise >= 0.0) || !std::isfinite(cfg.intra_noise))
    fail(ErrorCode::InvalidArgument, "intra-class noise must be finite and >= 0");
  if (cfg.pose_shift < 0) fail(ErrorCode::InvalidArgument, "pose shift must be >= 0");
  if (cfg.texture_scale < 1) fail(ErrorCode::InvalidArgument, "texture scale must be >= 1");
}

GrayImage synth_texture(Size size, int texture_scale, Pcg32& rng) {
  std::vector<double> field(static_cast<std::size_t>(size.width) * static_cast<std::size_t>(size.height));
  for (double& v : field) v = rng.normal();
  box_filter(field, size.width, size.height, texture_scale);
  double mean = 0.0;
  for (double v : field) mean += v;
  mean /= static_cast<double>(field.size());
  double var = 0.0;
  for (double v : field) var += (v - mean) * (v - mean);
  const double sd = std::sqrt(var / static_cast<double>(field.size()));
  GrayImage img(size.width, size.height);
  auto px = img.pixels();
  for (std::size_t i = 0; i < field.size(); ++i)
    px[i] = to_level(kTextureMean + kTextureStd * (sd > 0.0 ? (field[i] - mean) / sd : 0.0));
  return img;
}

std::vector<SynthSample> generate(const SynthConfig& cfg) {
  validate(cfg);
  std::vector<SynthSample> out;
  out.reserve(cfg.parts.size() * cfg.subjects * cfg.samples_per_pose * 2);
  for (BodyPart part : cfg.parts) {
    const Size size = nominal_crop(part);
    for (std::size_t s = 0; s < cfg.subjects; ++s) {
      const std::uint64_t stream = 2 * (3 * s + part_index(part));
      Pcg32 base_rng(cfg.seed, stream);
      Pcg32 noise_rng(cfg.seed, stream + 1);
      const GrayImage base = synth_texture(size, cfg.texture_scale, base_rng);
      const std::string subject = subject_name(s);
      for (Pose pose : {Pose::Frontal, Pose::Lateral}) {
        for (std::size_t i = 0; i < cfg.samples_per_pose; ++i) {
          SynthSample sample;
          sample.record.subject_id = subject;
          sample.record.sample_id =
              subject + (pose == Pose::Frontal ? "_f" : "_l") + std::to_string(i);
          sample.record.part = part;
          sample.record.pose = pose;
          sample.record.occluded = false;
          GrayImage own = cfg.identity_signal ? base : synth_texture(size, cfg.texture_scale, noise_rng);
          if (pose == Pose::Lateral) own = shift_right(own, cfg.pose_shift);
          sample.image = add_noise(own, cfg.intra_noise, noise_rng);
          out.push_back(std::move(sample));
        }
      }
    }
  }
  return out;
}

std::filesystem::path write_dataset(const std::vector<SynthSample>& samples,
                                    const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorCode::Io, "cannot create '" + dir.string() + "': " + ec.message());
  std::vector<ManifestEntry> entries;
  std::map<BodyPart, std::vector<ManifestEntry>> per_part;
  entries.reserve(samples.size());
  for (const SynthSample& s : samples) {
    const std::string part_dir(to_string(s.record.part));
    std::filesystem::create_directories(dir / part_dir, ec);
    if (ec) fail(ErrorCode::Io, "cannot create '" + (dir / part_dir).string() + "': " + ec.message());
    const std::string rel = part_dir + "/" + s.record.sample_id + ".pgm";
    write_pgm(dir / rel, s.image);
    entries.push_back({s.record, rel});
    per_part[s.record.part].push_back({s.record, s.record.sample_id + ".pgm"});
  }
  for (const auto& [part, rows] : per_part)
    detail::write_file(dir / std::string(to_string(part)) / "manifest.csv", manifest_csv(rows));
  const auto manifest = dir / "manifest.csv";
  detail::write_file(manifest, manifest_csv(entries));
  return manifest;
}

}  // namespace mmw
