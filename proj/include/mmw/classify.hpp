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

#ifndef MMW_CLASSIFY_HPP
#define MMW_CLASSIFY_HPP

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mmw {

struct TrainConfig {
  std::size_t batch_size = 50;
  double learning_rate = 1e-4;
  std::size_t epochs = 100;
  std::uint64_t seed = 0;
};

void validate(const TrainConfig& cfg);

/// Linear softmax without bias: P(y = j | x) = exp(x.w_j) / sum_k exp(x.w_k).
class SoftmaxModel {
 public:
  SoftmaxModel() = default;
  SoftmaxModel(std::vector<std::string> labels, std::size_t dim);
  SoftmaxModel(std::vector<std::string> labels, std::size_t dim, std::vector<double> weights);

  std::size_t num_classes() const noexcept { return labels_.size(); }
  std::size_t dim() const noexcept { return dim_; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }

  /// Row-major N x D.
  std::span<const double> weights() const noexcept { return weights_; }
  std::span<double> weights() noexcept { return weights_; }
  std::span<const double> row(std::size_t k) const { return std::span(weights_).subspan(k * dim_, dim_); }

  std::vector<double> logits(std::span<const double> x) const;

  bool operator==(const SoftmaxModel&) const = default;

 private:
  std::vector<std::string> labels_;
  std::size_t dim_ = 0;
  std::vector<double> weights_;
};

/// Max-subtracted softmax of a logit vector.
std::vector<double> softmax(std::span<const double> logits);

std::vector<double> softmax_probs(const SoftmaxModel& model, std::span<const double> x);

struct Prediction {
  std::size_t index = 0;
  std::vector<double> probabilities;
};

/// Argmax of softmax_probs; ties go to the lowest class index.
Prediction predict_class(const SoftmaxModel& model, std::span<const double> x);

std::size_t argmax(std::span<const double> values);

/// Inputs with integer class labels in [0, num_classes).
struct TrainingSet {
  std::vector<std::vector<double>> inputs;
  std::vector<std::size_t> labels;
  std::size_t num_classes = 0;
};

/// Checks homogeneous dims, label range and at least one sample per class.
void validate(const TrainingSet& data);

/// Mean cross-entropy over the given sample indices.
double cross_entropy(const SoftmaxModel& model, const TrainingSet& data,
                     std::span<const std::size_t> batch);

/// Gradient of the mean cross-entropy wrt W: mean over the batch of
/// (p - onehot(y)) x^T, row-major N x D.
std::vector<double> cross_entropy_gradient(const SoftmaxModel& model, const TrainingSet& data,
                                           std::span<const std::size_t> batch);

/// Plain mini-batch SGD. Weights start uniform in [-0.01, 0.01]; every epoch
/// reshuffles the sample order (Fisher-Yates on Pcg32(seed)). When
/// `epoch_loss` is non-null it receives the full-data loss after each epoch.
SoftmaxModel train_softmax(const TrainingSet& data, std::vector<std::string> class_labels,
                           const TrainConfig& cfg, std::vector<double>* epoch_loss = nullptr);

/// `MMWSOFTMAX 1 <N> <D>`, N weight rows, then one line of N labels.
std::string serialize_model(const SoftmaxModel& model);
SoftmaxModel parse_model(std::string_view text);
void save_model(const std::filesystem::path& path, const SoftmaxModel& model);
SoftmaxModel load_model(const std::filesystem::path& path);

}  // namespace mmw

#endif  // MMW_CLASSIFY_HPP
