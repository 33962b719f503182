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

#include "mmw/fusion.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "mmw/error.hpp"
#include "mmw/rng.hpp"

namespace mmw {

const char* to_string(FusionLevel level) noexcept {
  switch (level) {
    case FusionLevel::Feature: return "feature";
    case FusionLevel::Score: return "score";
    case FusionLevel::LateHead: return "late";
  }
  return "?";
}

FusionLevel parse_fusion_level(std::string_view text) {
  if (text == "feature") return FusionLevel::Feature;
  if (text == "score") return FusionLevel::Score;
  if (text == "late" || text == "cnn") return FusionLevel::LateHead;
  fail(ErrorCode::Parse, "unknown fusion level '" + std::string(text) + "'");
}

Sample fuse_features(std::span<const Sample> inputs) {
  if (inputs.size() < 2) fail(ErrorCode::InvalidArgument, "feature fusion needs at least two inputs");
  const SampleRecord& id = inputs.front().record;
  Sample out;
  out.record = id;
  out.feature.kind = FeatureKind::Fused;
  out.feature.part = inputs.front().feature.part;
  std::size_t total = 0;
  for (const Sample& s : inputs) total += s.feature.dim();
  out.feature.values.reserve(total);
  for (const Sample& s : inputs) {
    if (s.record.subject_id != id.subject_id || s.record.sample_id != id.sample_id)
      fail(ErrorCode::InvalidArgument, "feature fusion inputs come from different scans ('" +
                                           id.subject_id + "/" + id.sample_id + "' vs '" +
                                           s.record.subject_id + "/" + s.record.sample_id + "')");
    out.feature.values.insert(out.feature.values.end(), s.feature.values.begin(),
                              s.feature.values.end());
  }
  return out;
}

Dataset fuse_feature_sets(std::span<const Dataset> sets) {
  if (sets.size() < 2) fail(ErrorCode::InvalidArgument, "feature fusion needs at least two inputs");
  using Key = std::pair<std::string, std::string>;
  std::vector<std::map<Key, const Sample*>> index(sets.size());
  for (std::size_t i = 1; i < sets.size(); ++i) {
    if (sets[i].size() != sets[0].size())
      fail(ErrorCode::InvalidArgument, "feature fusion inputs cover different sample sets");
    for (const Sample& s : sets[i]) index[i][{s.record.subject_id, s.record.sample_id}] = &s;
  }
  Dataset out;
  out.reserve(sets[0].size());
  std::vector<Sample> row(sets.size());
  for (const Sample& s : sets[0]) {
    row[0] = s;
    for (std::size_t i = 1; i < sets.size(); ++i) {
      auto it = index[i].find({s.record.subject_id, s.record.sample_id});
      if (it == index[i].end())
        fail(ErrorCode::InvalidArgument, "sample '" + s.record.subject_id + "/" +
                                             s.record.sample_id + "' is missing from fusion input " +
                                             std::to_string(i));
      row[i] = *it->second;
    }
    out.push_back(fuse_features(row));
  }
  return out;
}

ScoreSet fuse_scores(std::span<const ScoreSet> sets) {
  if (sets.size() < 2) fail(ErrorCode::InvalidArgument, "score fusion needs at least two inputs");
  ScoreSet out = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    const auto& other = sets[i].comparisons;
    if (other.size() != out.comparisons.size())
      fail(ErrorCode::InvalidArgument, "score sets differ in the number of comparisons");
    for (std::size_t c = 0; c < other.size(); ++c) {
      auto& mine = out.comparisons[c];
      if (mine.probe_id != other[c].probe_id || mine.claimed_subject != other[c].claimed_subject ||
          mine.true_subject != other[c].true_subject)
        fail(ErrorCode::InvalidArgument, "score sets describe different comparisons at index " +
                                             std::to_string(c));
      mine.score += other[c].score;
    }
  }
  return out;
}

ScoreMatrix fuse_scores(std::span<const ScoreMatrix> sets) {
  if (sets.size() < 2) fail(ErrorCode::InvalidArgument, "score fusion needs at least two inputs");
  ScoreMatrix out = sets.front();
  for (std::size_t i = 1; i < sets.size(); ++i) {
    const ScoreMatrix& m = sets[i];
    if (m.probe_ids != out.probe_ids || m.subjects != out.subjects || m.true_column != out.true_column)
      fail(ErrorCode::InvalidArgument, "score matrices describe different comparisons");
    for (std::size_t k = 0; k < out.scores.size(); ++k) out.scores[k] += m.scores[k];
  }
  return out;
}

// ---------------------------------------------------------------------------
// Late-fusion head

LateFusionHead::LateFusionHead(std::size_t dim_a, std::size_t dim_b, std::size_t hidden,
                               std::vector<std::string> labels)
    : dim_a_(dim_a),
      dim_b_(dim_b),
      hidden_(hidden),
      fc_weights_(hidden * (dim_a + dim_b), 0.0),
      fc_bias_(hidden, 0.0),
      output_(std::move(labels), hidden) {
  if (dim_a == 0 || dim_b == 0 || hidden == 0)
    fail(ErrorCode::InvalidArgument, "late-fusion branch and hidden widths must be positive");
}

namespace {

// Dot product with four interleaved partial sums. The fixed association keeps
// results reproducible while letting the compiler overlap the additions.
double dot(const double* x, const double* y, std::size_t n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  std::size_t j = 0;
  for (; j + 4 <= n; j += 4) {
    s0 += x[j] * y[j];
    s1 += x[j + 1] * y[j + 1];
    s2 += x[j + 2] * y[j + 2];
    s3 += x[j + 3] * y[j + 3];
  }
  for (; j < n; ++j) s0 += x[j] * y[j];
  return (s0 + s1) + (s2 + s3);
}

struct Forward {
  std::vector<double> pre;     // FC output before ReLU
  std::vector<double> hidden;  // after ReLU
  std::vector<double> probs;
};

Forward forward(const LateFusionHead& head, std::span<const double> a, std::span<const double> b) {
  if (a.size() != head.dim_a() || b.size() != head.dim_b())
    fail(ErrorCode::DimMismatch, "late-fusion branch input dims do not match the head");
  Forward f;
  f.pre.resize(head.hidden());
  f.hidden.resize(head.hidden());
  const std::size_t in = head.input_dim();
  for (std::size_t h = 0; h < head.hidden(); ++h) {
    const double* w = head.fc_weights().data() + h * in;
    double z = head.fc_bias()[h];
    z += dot(a.data(), w, a.size());
    z += dot(b.data(), w + a.size(), b.size());
    f.pre[h] = z;
    f.hidden[h] = z > 0.0 ? z : 0.0;
  }
  f.probs = softmax_probs(head.output(), f.hidden);
  return f;
}

void check_branches(const BranchTrainingSet& data) {
  if (data.a.size() != data.b.size() || data.a.size() != data.labels.size())
    fail(ErrorCode::InvalidArgument, "late-fusion branches are not aligned sample-by-sample");
  TrainingSet probe{data.a, data.labels, data.num_classes};
  validate(probe);
  for (const auto& v : data.b)
    if (v.size() != data.b.front().size() || v.empty())
      fail(ErrorCode::DimMismatch, "late-fusion branch b has inconsistent dims");
}

}  // namespace

std::vector<double> LateFusionHead::hidden_activations(std::span<const double> a,
                                                       std::span<const double> b) const {
  return forward(*this, a, b).hidden;
}

std::vector<double> LateFusionHead::probabilities(std::span<const double> a,
                                                  std::span<const double> b) const {
  return forward(*this, a, b).probs;
}

Prediction LateFusionHead::predict(std::span<const double> a, std::span<const double> b) const {
  Prediction p;
  p.probabilities = probabilities(a, b);
  p.index = argmax(p.probabilities);
  return p;
}

double late_fusion_loss(const LateFusionHead& head, const BranchTrainingSet& data,
                        std::span<const std::size_t> batch) {
  if (batch.empty()) return 0.0;
  double loss = 0.0;
  for (std::size_t i : batch) {
    const Forward f = forward(head, data.a[i], data.b[i]);
    const auto z = head.output().logits(f.hidden);
    const double m = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double v : z) sum += std::exp(v - m);
    loss += std::log(sum) + m - z[data.labels[i]];
  }
  return loss / static_cast<double>(batch.size());
}

HeadGradient late_fusion_gradient(const LateFusionHead& head, const BranchTrainingSet& data,
                                  std::span<const std::size_t> batch) {
  const std::size_t hid = head.hidden();
  const std::size_t in = head.input_dim();
  const std::size_t n = head.num_classes();
  HeadGradient g{std::vector<double>(hid * in, 0.0), std::vector<double>(hid, 0.0),
                 std::vector<double>(n * hid, 0.0)};
  if (batch.empty()) return g;
  const double scale = 1.0 / static_cast<double>(batch.size());
  std::vector<double> dh(hid);
  for (std::size_t i : batch) {
    const auto& a = data.a[i];
    const auto& b = data.b[i];
    Forward f = forward(head, a, b);
    f.probs[data.labels[i]] -= 1.0;
    std::fill(dh.begin(), dh.end(), 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      const double d = f.probs[k] * scale;
      const auto u = head.output().row(k);
      double* gu = g.output.data() + k * hid;
      for (std::size_t h = 0; h < hid; ++h) {
        gu[h] += d * f.hidden[h];
        dh[h] += d * u[h];
      }
    }
    for (std::size_t h = 0; h < hid; ++h) {
      if (!(f.pre[h] > 0.0)) continue;
      g.fc_bias[h] += dh[h];
      double* gw = g.fc_weights.data() + h * in;
      for (std::size_t j = 0; j < a.size(); ++j) gw[j] += dh[h] * a[j];
      for (std::size_t j = 0; j < b.size(); ++j) gw[a.size() + j] += dh[h] * b[j];
    }
  }
  return g;
}

namespace {

// One mini-batch SGD step applied in place. Equivalent to subtracting
// lr * late_fusion_gradient, without materialising the hidden x input FC
// gradient, which for descriptor-sized branches runs to tens of millions of
// entries.
void sgd_step(LateFusionHead& head, const BranchTrainingSet& data, std::span<const std::size_t> batch,
              double lr) {
  const std::size_t hid = head.hidden(), in = head.input_dim(), n = head.num_classes();
  const std::size_t da = head.dim_a();
  const double scale = 1.0 / static_cast<double>(batch.size());

  std::vector<Forward> fw;
  fw.reserve(batch.size());
  for (std::size_t i : batch) {
    fw.push_back(forward(head, data.a[i], data.b[i]));
    fw.back().probs[data.labels[i]] -= 1.0;
  }

  // Back-propagate into the hidden layer with the pre-update output weights.
  std::vector<double> dh(batch.size() * hid, 0.0);
  for (std::size_t s = 0; s < batch.size(); ++s)
    for (std::size_t k = 0; k < n; ++k) {
      const double d = fw[s].probs[k] * scale;
      const auto u = head.output().row(k);
      for (std::size_t h = 0; h < hid; ++h) dh[s * hid + h] += d * u[h];
    }

  auto u = head.output().weights();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t h = 0; h < hid; ++h) {
      double g = 0.0;
      for (std::size_t s = 0; s < batch.size(); ++s) g += fw[s].probs[k] * scale * fw[s].hidden[h];
      u[k * hid + h] -= lr * g;
    }

  for (std::size_t h = 0; h < hid; ++h) {
    double* w = head.fc_weights().data() + h * in;
    double gb = 0.0;
    for (std::size_t s = 0; s < batch.size(); ++s) {
      if (!(fw[s].pre[h] > 0.0)) continue;
      const double c = lr * dh[s * hid + h];
      gb += dh[s * hid + h];
      const auto& a = data.a[batch[s]];
      const auto& b = data.b[batch[s]];
      for (std::size_t j = 0; j < da; ++j) w[j] -= c * a[j];
      for (std::size_t j = 0; j < b.size(); ++j) w[da + j] -= c * b[j];
    }
    head.fc_bias()[h] -= lr * gb;
  }
}

}  // namespace

LateFusionHead train_late_fusion(const BranchTrainingSet& data, std::vector<std::string> labels,
                                 const LateFusionConfig& cfg) {
  validate(cfg.train);
  check_branches(data);
  if (labels.size() != data.num_classes)
    fail(ErrorCode::InvalidArgument, "class label count does not match num_classes");
  const std::size_t dim_a = data.a.front().size();
  const std::size_t dim_b = data.b.front().size();
  const std::size_t hidden = cfg.hidden_width ? cfg.hidden_width : dim_a;

  LateFusionHead head(dim_a, dim_b, hidden, std::move(labels));
  Pcg32 rng(cfg.train.seed);
  const double limit = std::sqrt(6.0 / static_cast<double>(dim_a + dim_b + hidden));
  for (double& w : head.fc_weights()) w = rng.uniform(-limit, limit);
  for (double& w : head.output().weights()) w = rng.uniform(-0.01, 0.01);

  std::vector<std::size_t> order(data.labels.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  const double lr = cfg.train.learning_rate;
  for (std::size_t epoch = 0; epoch < cfg.train.epochs; ++epoch) {
    shuffle(std::span(order), rng);
    for (std::size_t start = 0; start < order.size(); start += cfg.train.batch_size) {
      const std::size_t len = std::min(cfg.train.batch_size, order.size() - start);
      sgd_step(head, data, std::span(order).subspan(start, len), lr);
    }
  }
  return head;
}

ScoreMatrix run_identification_late_fusion(const Dataset& branch_a, const Dataset& branch_b,
                                           const Protocol& protocol, const LateFusionConfig& cfg,
                                           LateFusionHead* head_out) {
  const Split sa = split_dataset(branch_a, protocol);
  const Split sb = split_dataset(branch_b, protocol);
  auto same = [](const Sample* x, const Sample* y) {
    return x->record.subject_id == y->record.subject_id && x->record.sample_id == y->record.sample_id;
  };
  bool aligned = sa.subjects == sb.subjects && sa.probes.size() == sb.probes.size();
  for (std::size_t k = 0; aligned && k < sa.gallery.size(); ++k) {
    aligned = sa.gallery[k].size() == sb.gallery[k].size() &&
              std::equal(sa.gallery[k].begin(), sa.gallery[k].end(), sb.gallery[k].begin(), same);
  }
  aligned = aligned && std::equal(sa.probes.begin(), sa.probes.end(), sb.probes.begin(), same);
  if (!aligned)
    fail(ErrorCode::InvalidArgument,
         "late-fusion branches do not split into the same gallery/probe scans");

  BranchTrainingSet train;
  train.num_classes = sa.subjects.size();
  for (std::size_t k = 0; k < sa.gallery.size(); ++k) {
    for (std::size_t j = 0; j < sa.gallery[k].size(); ++j) {
      train.a.push_back(sa.gallery[k][j]->feature.values);
      train.b.push_back(sb.gallery[k][j]->feature.values);
      train.labels.push_back(k);
    }
  }
  LateFusionHead head = train_late_fusion(train, sa.subjects, cfg);

  ScoreMatrix m;
  m.subjects = sa.subjects;
  for (std::size_t p = 0; p < sa.probes.size(); ++p) {
    m.probe_ids.push_back(sa.probes[p]->record.sample_id);
    m.true_column.push_back(sa.probe_subject[p]);
    const auto probs = head.probabilities(sa.probes[p]->feature.values, sb.probes[p]->feature.values);
    m.scores.insert(m.scores.end(), probs.begin(), probs.end());
  }
  if (head_out) *head_out = std::move(head);
  return m;
}

}  // namespace mmw
