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

#ifndef MMW_FUSION_HPP
#define MMW_FUSION_HPP

#include <span>
#include <string>
#include <vector>

#include "mmw/classify.hpp"
#include "mmw/matching.hpp"
#include "mmw/sample.hpp"

namespace mmw {

enum class FusionLevel { Feature, Score, LateHead };

const char* to_string(FusionLevel level) noexcept;
FusionLevel parse_fusion_level(std::string_view text);

/// Concatenates the feature vectors of one scan in the given order. Needs at
/// least two inputs, all with the same subject and sample id. The result
/// keeps the first input's record and is of kind Fused.
Sample fuse_features(std::span<const Sample> inputs);

/// fuse_features applied sample-by-sample across datasets. Every dataset must
/// cover the same (subject, sample) set; output follows the first dataset's order.
Dataset fuse_feature_sets(std::span<const Dataset> sets);

/// Unnormalized sum rule. Inputs must describe the same comparisons in the
/// same order.
ScoreSet fuse_scores(std::span<const ScoreSet> sets);
ScoreMatrix fuse_scores(std::span<const ScoreMatrix> sets);

/// Two-branch late-fusion head: concat(a, b) -> FC(+bias) -> ReLU -> softmax.
/// The softmax layer has no bias, like the standalone classifier.
class LateFusionHead {
 public:
  LateFusionHead() = default;
  LateFusionHead(std::size_t dim_a, std::size_t dim_b, std::size_t hidden,
                 std::vector<std::string> labels);

  std::size_t dim_a() const noexcept { return dim_a_; }
  std::size_t dim_b() const noexcept { return dim_b_; }
  std::size_t input_dim() const noexcept { return dim_a_ + dim_b_; }
  std::size_t hidden() const noexcept { return hidden_; }
  std::size_t num_classes() const noexcept { return output_.num_classes(); }

  /// Row-major hidden x input_dim.
  std::vector<double>& fc_weights() noexcept { return fc_weights_; }
  const std::vector<double>& fc_weights() const noexcept { return fc_weights_; }
  std::vector<double>& fc_bias() noexcept { return fc_bias_; }
  const std::vector<double>& fc_bias() const noexcept { return fc_bias_; }
  SoftmaxModel& output() noexcept { return output_; }
  const SoftmaxModel& output() const noexcept { return output_; }

  std::vector<double> hidden_activations(std::span<const double> a, std::span<const double> b) const;
  std::vector<double> probabilities(std::span<const double> a, std::span<const double> b) const;
  Prediction predict(std::span<const double> a, std::span<const double> b) const;

  bool operator==(const LateFusionHead&) const = default;

 private:
  std::size_t dim_a_ = 0;
  std::size_t dim_b_ = 0;
  std::size_t hidden_ = 0;
  std::vector<double> fc_weights_;
  std::vector<double> fc_bias_;
  SoftmaxModel output_;
};

/// Aligned branch inputs: sample i of `a` and of `b` come from the same scan.
struct BranchTrainingSet {
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> b;
  std::vector<std::size_t> labels;
  std::size_t num_classes = 0;
};

struct LateFusionConfig {
  TrainConfig train;
  std::size_t hidden_width = 0;  // 0 -> width of branch a
};

struct HeadGradient {
  std::vector<double> fc_weights;
  std::vector<double> fc_bias;
  std::vector<double> output;
};

double late_fusion_loss(const LateFusionHead& head, const BranchTrainingSet& data,
                        std::span<const std::size_t> batch);
HeadGradient late_fusion_gradient(const LateFusionHead& head, const BranchTrainingSet& data,
                                  std::span<const std::size_t> batch);

/// Trains the head with the branch features frozen. FC weights start
/// Glorot-uniform, FC biases at zero, softmax weights uniform in
/// [-0.01, 0.01]; plain mini-batch SGD, deterministic under the seed.
LateFusionHead train_late_fusion(const BranchTrainingSet& data, std::vector<std::string> labels,
                                 const LateFusionConfig& cfg);

/// Late fusion under a protocol: both datasets are split identically (same
/// seed, same sample ids), the head is trained on gallery pairs and scores
/// hold the probes' class probabilities.
ScoreMatrix run_identification_late_fusion(const Dataset& branch_a, const Dataset& branch_b,
                                           const Protocol& protocol, const LateFusionConfig& cfg,
                                           LateFusionHead* head_out = nullptr);

}  // namespace mmw

#endif  // MMW_FUSION_HPP
