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


#include "mmw/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <string>
#include <thread>
#include <tuple>
#include <utility>

#include "mmw/error.hpp"

namespace mmw {

const char* to_string(Descriptor d) noexcept { return d == Descriptor::Lbp ? "lbp" : "hog"; }

Descriptor parse_descriptor(std::string_view text) {
  if (text == "lbp") return Descriptor::Lbp;
  if (text == "hog") return Descriptor::Hog;
  fail(ErrorCode::Parse, "unknown descriptor '" + std::string(text) + "' (expected lbp or hog)");
}

FeatureKind feature_kind(Descriptor d) noexcept { return d == Descriptor::Lbp ? FeatureKind::Lbp : FeatureKind::Hog; }

GrayImage descriptor_input(const GrayImage& crop, bool equalize) {
  if (equalize) return resize_bilinear(equalize_histogram(crop), kDescriptorWidth, kDescriptorHeight);
  return resize_bilinear(crop, kDescriptorWidth, kDescriptorHeight);
}

FeatureVector extract_features(const GrayImage& crop, BodyPart part, const ExtractOptions& options) {
  const GrayImage input = descriptor_input(crop, options.equalizes(part));
  FeatureVector f = options.descriptor == Descriptor::Lbp ? extract_lbp(input, options.lbp)
                                                          : extract_hog(input, options.hog);
  f.part = part;
  return f;
}

namespace {

// Runs fn(i) for i in [0, n) on a few worker threads. Each index writes its own
// slot, so the result does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t n, Fn fn) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace

Dataset extract_dataset(const std::vector<SynthSample>& samples, const ExtractOptions& options) {
  Dataset out(samples.size());
  parallel_for(samples.size(), [&](std::size_t i) {
    out[i].record = samples[i].record;
    out[i].feature = extract_features(samples[i].image, samples[i].record.part, options);
  });
  return out;
}

Dataset extract_manifest(const std::vector<ManifestEntry>& manifest, const ExtractOptions& options,
                         const std::vector<BoxAnnotation>& boxes) {
  std::map<std::pair<std::string, BodyPart>, Rect> box_of;
  for (const auto& b : boxes) box_of[{b.sample_id, b.part}] = b.box;

  std::vector<const ManifestEntry*> order;
  for (const auto& e : manifest) order.push_back(&e);
  std::sort(order.begin(), order.end(), [](const ManifestEntry* a, const ManifestEntry* b) {
    return std::tie(a->record.part, a->record.subject_id, a->record.sample_id) <
           std::tie(b->record.part, b->record.subject_id, b->record.sample_id);
  });

  Dataset out(order.size());
  parallel_for(order.size(), [&](std::size_t i) {
    const ManifestEntry& e = *order[i];
    try {
      GrayImage img = read_pgm(e.path);
      if (!box_of.empty()) {
        const auto it = box_of.find({e.record.sample_id, e.record.part});
        if (it == box_of.end()) fail(ErrorCode::InvalidArgument, "no bounding box");
        img = crop(img, it->second);
      }
      out[i].record = e.record;
      out[i].feature = extract_features(img, e.record.part, options);
    } catch (const Error& err) {
      fail(err.code(), "sample " + e.record.sample_id + " (" + std::string(to_string(e.record.part)) + "): " + err.what());
    }
  });
  return out;
}

Dataset select_part(const Dataset& data, BodyPart part) {
  Dataset out;
  for (const auto& s : data)
    if (s.record.part == part) out.push_back(s);
  return out;
}

}  // namespace mmw
