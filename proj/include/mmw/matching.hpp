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

#ifndef MMW_MATCHING_HPP
#define MMW_MATCHING_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mmw/classify.hpp"
#include "mmw/sample.hpp"

namespace mmw {

/// a.b / (|a| |b|). Zero-norm inputs and dimension mismatches throw.
double cosine_similarity(std::span<const double> a, std::span<const double> b);
double cosine_similarity(const FeatureVector& a, const FeatureVector& b);

/// Elementwise mean of one or more vectors of identical kind and dim.
FeatureVector build_template(std::span<const FeatureVector> features);

enum class ProtocolKind { FrontalBaseline, CrossPose };

/// Gallery/probe split. FrontalBaseline draws both sets from frontal
/// samples; CrossPose draws the gallery from frontal and probes from lateral
/// samples. Occluded samples are excluded unless `include_occluded`.
struct Protocol {
  ProtocolKind kind = ProtocolKind::FrontalBaseline;
  std::size_t gallery_count = 2;
  std::size_t probe_count = 2;
  std::uint64_t split_seed = 0;
  bool include_occluded = false;

  static Protocol frontal(std::uint64_t seed = 0) { return {ProtocolKind::FrontalBaseline, 2, 2, seed, false}; }
  static Protocol cross_pose(std::uint64_t seed = 0) { return {ProtocolKind::CrossPose, 2, 2, seed, false}; }
};

const char* to_string(ProtocolKind kind) noexcept;
ProtocolKind parse_protocol(std::string_view text);

/// Result of applying a protocol. Subjects are sorted by id; each subject's
/// gallery and the probe list are sorted by (subject_id, sample_id).
struct Split {
  std::vector<std::string> subjects;
  std::vector<std::vector<const Sample*>> gallery;
  std::vector<const Sample*> probes;
  std::vector<std::size_t> probe_subject;  // index into `subjects`
};

/// The dataset must hold one body part with homogeneous feature dims.
/// A subject lacking enough eligible samples raises InsufficientSamples.
Split split_dataset(const Dataset& data, const Protocol& protocol);

struct Comparison {
  std::string probe_id;
  std::string claimed_subject;
  std::string true_subject;
  double score = 0.0;

  bool genuine() const noexcept { return claimed_subject == true_subject; }
  bool operator==(const Comparison&) const = default;
};

/// Verification scores, one entry per (probe, enrolled template) pair, in
/// probe-major canonical order.
struct ScoreSet {
  std::vector<Comparison> comparisons;

  std::vector<double> genuine() const;
  std::vector<double> impostor() const;
};

/// Identification scores: rows = probes, columns = enrolled subjects.
struct ScoreMatrix {
  std::vector<std::string> probe_ids;
  std::vector<std::string> subjects;
  std::vector<std::size_t> true_column;
  std::vector<double> scores;  // row-major probes x subjects

  std::size_t rows() const noexcept { return probe_ids.size(); }
  std::size_t cols() const noexcept { return subjects.size(); }
  double at(std::size_t r, std::size_t c) const { return scores[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return std::span(scores).subspan(r * cols(), cols());
  }
};

/// Every probe against every subject template (mean of its gallery features).
ScoreSet run_verification(const Dataset& data, const Protocol& protocol);

/// Probes x templates cosine score matrix.
ScoreMatrix run_identification(const Dataset& data, const Protocol& protocol);

/// Trains a softmax classifier on the gallery features of the split and fills
/// the matrix with the probes' class probabilities.
ScoreMatrix run_identification_softmax(const Dataset& data, const Protocol& protocol,
                                       const TrainConfig& cfg, SoftmaxModel* model_out = nullptr);

/// `probe_id,claimed_subject,true_subject,score,label` with label genuine|impostor.
std::string scores_csv(const ScoreSet& scores);

/// Identification matrix flattened to the same CSV columns (label from the
/// true column).
std::string scores_csv(const ScoreMatrix& matrix);

}  // namespace mmw

#endif  // MMW_MATCHING_HPP
