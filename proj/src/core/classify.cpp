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

#include "mmw/classify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mmw/error.hpp"
#include "mmw/rng.hpp"
#include "text_util.hpp"

namespace mmw {

void validate(const TrainConfig& cfg) {
  if (cfg.batch_size == 0 || cfg.epochs == 0 || !(cfg.learning_rate > 0.0))
    fail(ErrorCode::InvalidArgument, "batch size, learning rate and epochs must all be positive");
}

SoftmaxModel::SoftmaxModel(std::vector<std::string> labels, std::size_t dim)
    : labels_(std::move(labels)), dim_(dim), weights_(labels_.size() * dim, 0.0) {}

SoftmaxModel::SoftmaxModel(std::vector<std::string> labels, std::size_t dim,
                           std::vector<double> weights)
    : labels_(std::move(labels)), dim_(dim), weights_(std::move(weights)) {
  if (weights_.size() != labels_.size() * dim_)
    fail(ErrorCode::DimMismatch, "softmax weight matrix does not match N x D");
  for (double w : weights_)
    if (!std::isfinite(w)) fail(ErrorCode::NonFinite, "softmax weights must be finite");
}

std::vector<double> SoftmaxModel::logits(std::span<const double> x) const {
  if (x.size() != dim_)
    fail(ErrorCode::DimMismatch, "input has dim " + std::to_string(x.size()) +
                                     ", model expects " + std::to_string(dim_));
  std::vector<double> z(num_classes());
  for (std::size_t k = 0; k < z.size(); ++k) {
    const auto w = row(k);
    z[k] = std::inner_product(w.begin(), w.end(), x.begin(), 0.0);
  }
  return z;
}

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> p(logits.begin(), logits.end());
  if (p.empty()) return p;
  const double m = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (double& v : p) {
    v = std::exp(v - m);
    sum += v;
  }
  for (double& v : p) v /= sum;
  return p;
}

std::vector<double> softmax_probs(const SoftmaxModel& model, std::span<const double> x) {
  return softmax(model.logits(x));
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i)
    if (values[i] > values[best]) best = i;
  return best;
}

Prediction predict_class(const SoftmaxModel& model, std::span<const double> x) {
  Prediction p;
  p.probabilities = softmax_probs(model, x);
  p.index = argmax(p.probabilities);
  return p;
}

void validate(const TrainingSet& data) {
  if (data.inputs.empty()) fail(ErrorCode::InvalidArgument, "training set is empty");
  if (data.inputs.size() != data.labels.size())
    fail(ErrorCode::DimMismatch, "training inputs and labels differ in length");
  const std::size_t dim = data.inputs.front().size();
  if (dim == 0) fail(ErrorCode::DimMismatch, "training inputs must have dim > 0");
  std::vector<std::size_t> per_class(data.num_classes, 0);
  for (std::size_t i = 0; i < data.inputs.size(); ++i) {
    if (data.inputs[i].size() != dim)
      fail(ErrorCode::DimMismatch, "training input " + std::to_string(i) + " has dim " +
                                       std::to_string(data.inputs[i].size()) + ", expected " +
                                       std::to_string(dim));
    if (data.labels[i] >= data.num_classes)
      fail(ErrorCode::OutOfRange, "training label " + std::to_string(data.labels[i]) +
                                      " is out of range");
    ++per_class[data.labels[i]];
  }
  for (std::size_t k = 0; k < per_class.size(); ++k)
    if (per_class[k] == 0)
      fail(ErrorCode::InsufficientSamples, "class " + std::to_string(k) + " has no training samples");
}

double cross_entropy(const SoftmaxModel& model, const TrainingSet& data,
                     std::span<const std::size_t> batch) {
  if (batch.empty()) return 0.0;
  double loss = 0.0;
  for (std::size_t i : batch) {
    const auto z = model.logits(data.inputs[i]);
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - m);
    loss += std::log(sum) + m - z[data.labels[i]];
  }
  return loss / static_cast<double>(batch.size());
}

std::vector<double> cross_entropy_gradient(const SoftmaxModel& model, const TrainingSet& data,
                                           std::span<const std::size_t> batch) {
  const std::size_t n = model.num_classes();
  const std::size_t d = model.dim();
  std::vector<double> grad(n * d, 0.0);
  if (batch.empty()) return grad;
  const double scale = 1.0 / static_cast<double>(batch.size());
  for (std::size_t i : batch) {
    const auto& x = data.inputs[i];
    auto p = softmax_probs(model, x);
    p[data.labels[i]] -= 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      const double c = p[k] * scale;
      double* g = grad.data() + k * d;
      for (std::size_t j = 0; j < d; ++j) g[j] += c * x[j];
    }
  }
  return grad;
}

SoftmaxModel train_softmax(const TrainingSet& data, std::vector<std::string> class_labels,
                           const TrainConfig& cfg, std::vector<double>* epoch_loss) {
  validate(cfg);
  validate(data);
  if (class_labels.size() != data.num_classes)
    fail(ErrorCode::InvalidArgument, "class label count does not match num_classes");

  Pcg32 rng(cfg.seed);
  const std::size_t dim = data.inputs.front().size();
  SoftmaxModel model(std::move(class_labels), dim);
  for (double& w : model.weights()) w = rng.uniform(-0.01, 0.01);

  std::vector<std::size_t> order(data.inputs.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  if (epoch_loss) epoch_loss->clear();

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    shuffle(std::span(order), rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t len = std::min(cfg.batch_size, order.size() - start);
      const auto grad = cross_entropy_gradient(model, data, std::span(order).subspan(start, len));
      auto w = model.weights();
      for (std::size_t i = 0; i < w.size(); ++i) w[i] -= cfg.learning_rate * grad[i];
    }
    if (epoch_loss) epoch_loss->push_back(cross_entropy(model, data, order));
  }
  return model;
}

std::string serialize_model(const SoftmaxModel& model) {
  std::string out = "MMWSOFTMAX 1 " + std::to_string(model.num_classes()) + " " +
                    std::to_string(model.dim()) + "\n";
  for (std::size_t k = 0; k < model.num_classes(); ++k) {
    const auto r = model.row(k);
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) out += ' ';
      out += detail::format_double(r[j]);
    }
    out += '\n';
  }
  for (std::size_t k = 0; k < model.num_classes(); ++k) {
    const auto& label = model.labels()[k];
    if (label.empty() || label.find_first_of(" \t\r\n") != std::string::npos)
      fail(ErrorCode::InvalidArgument, "class label '" + label + "' cannot be serialized");
    if (k) out += ' ';
    out += label;
  }
  out += '\n';
  return out;
}

SoftmaxModel parse_model(std::string_view text) {
  auto lines = detail::split_lines(text);
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) fail(ErrorCode::BadHeader, "missing MMWSOFTMAX header");
  const auto header = detail::split_ws(lines[0]);
  std::size_t n = 0, d = 0;
  if (header.size() != 4 || header[0] != "MMWSOFTMAX" || header[1] != "1" ||
      !detail::parse_number(header[2], n) || !detail::parse_number(header[3], d) || n == 0 ||
      d == 0) {
    fail(ErrorCode::BadHeader, "bad header: expected 'MMWSOFTMAX 1 <N> <D>'");
  }
  if (lines.size() < n + 2) fail(ErrorCode::TruncatedPayload, "softmax model file is truncated");
  if (lines.size() > n + 2) fail(ErrorCode::Parse, "trailing data after softmax label line");

  std::vector<double> weights;
  weights.reserve(n * d);
  for (std::size_t k = 0; k < n; ++k) {
    const auto fields = detail::split_ws(lines[k + 1]);
    if (fields.size() != d)
      fail(ErrorCode::DimMismatch, "weight row " + std::to_string(k) + " has " +
                                       std::to_string(fields.size()) + " values, expected " +
                                       std::to_string(d));
    for (auto f : fields) {
      double v = 0.0;
      if (!detail::parse_number(f, v)) fail(ErrorCode::Parse, "'" + std::string(f) + "' is not a number");
      if (!std::isfinite(v)) fail(ErrorCode::NonFinite, "non-finite softmax weight");
      weights.push_back(v);
    }
  }
  const auto label_fields = detail::split_ws(lines[n + 1]);
  if (label_fields.size() != n)
    fail(ErrorCode::DimMismatch, "label line holds " + std::to_string(label_fields.size()) +
                                     " labels, expected " + std::to_string(n));
  std::vector<std::string> labels(label_fields.begin(), label_fields.end());
  return SoftmaxModel(std::move(labels), d, std::move(weights));
}

void save_model(const std::filesystem::path& path, const SoftmaxModel& model) {
  detail::write_file(path, serialize_model(model));
}

SoftmaxModel load_model(const std::filesystem::path& path) {
  return parse_model(detail::read_file(path));
}

}  // namespace mmw
