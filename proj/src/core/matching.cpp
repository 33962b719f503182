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

#include "mmw/matching.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <string_view>

#include "mmw/error.hpp"
#include "mmw/rng.hpp"
#include "text_util.hpp"

namespace mmw {

double cosine_similarity(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size())
    fail(ErrorCode::DimMismatch, "cosine similarity of vectors with dims " +
                                     std::to_string(a.size()) + " and " + std::to_string(b.size()));
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (!(na > 0.0) || !(nb > 0.0))
    fail(ErrorCode::InvalidArgument, "cosine similarity is undefined for a zero-norm vector");
  const double c = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::clamp(c, -1.0, 1.0);
}

double cosine_similarity(const FeatureVector& a, const FeatureVector& b) {
  return cosine_similarity(a.values, b.values);
}

FeatureVector build_template(std::span<const FeatureVector> features) {
  if (features.empty()) fail(ErrorCode::InvalidArgument, "cannot build a template from zero features");
  const FeatureVector& first = features.front();
  FeatureVector out;
  out.kind = first.kind;
  out.part = first.part;
  out.values.assign(first.dim(), 0.0);
  for (const FeatureVector& f : features) {
    if (f.dim() != first.dim() || f.kind != first.kind)
      fail(ErrorCode::DimMismatch, "template inputs differ in kind or dimension");
    for (std::size_t i = 0; i < f.dim(); ++i) out.values[i] += f.values[i];
  }
  const double n = static_cast<double>(features.size());
  for (double& v : out.values) v /= n;
  return out;
}

const char* to_string(ProtocolKind kind) noexcept {
  return kind == ProtocolKind::FrontalBaseline ? "frontal" : "crosspose";
}

ProtocolKind parse_protocol(std::string_view text) {
  if (text == "frontal") return ProtocolKind::FrontalBaseline;
  if (text == "crosspose" || text == "cross-pose") return ProtocolKind::CrossPose;
  fail(ErrorCode::Parse, "unknown protocol '" + std::string(text) + "'");
}

namespace {

bool by_identity(const Sample* a, const Sample* b) {
  if (a->record.subject_id != b->record.subject_id) return a->record.subject_id < b->record.subject_id;
  return a->record.sample_id < b->record.sample_id;
}

std::vector<const Sample*> draw(std::vector<const Sample*> pool, std::size_t n, Pcg32& rng) {
  shuffle(std::span(pool), rng);
  pool.resize(n);
  std::sort(pool.begin(), pool.end(), by_identity);
  return pool;
}

std::vector<FeatureVector> features_of(const std::vector<const Sample*>& samples) {
  std::vector<FeatureVector> out;
  out.reserve(samples.size());
  for (const Sample* s : samples) out.push_back(s->feature);
  return out;
}

}  // namespace

Split split_dataset(const Dataset& data, const Protocol& protocol) {
  if (data.empty()) fail(ErrorCode::InsufficientSamples, "dataset is empty");
  if (protocol.gallery_count == 0 || protocol.probe_count == 0)
    fail(ErrorCode::InvalidArgument, "protocol gallery and probe counts must be positive");
  const BodyPart part = data.front().record.part;
  const std::size_t dim = data.front().feature.dim();

  // subject -> (frontal pool, lateral pool); std::map keeps subjects sorted.
  std::map<std::string, std::pair<std::vector<const Sample*>, std::vector<const Sample*>>> pools;
  std::set<std::pair<std::string_view, std::string_view>> seen;
  for (const Sample& s : data) {
    if (!seen.emplace(s.record.subject_id, s.record.sample_id).second)
      fail(ErrorCode::InvalidArgument, "sample '" + s.record.sample_id + "' of subject '" + s.record.subject_id +
                                           "' appears twice");
    if (s.record.part != part)
      fail(ErrorCode::InvalidArgument, "dataset mixes body parts; split one part at a time");
    if (s.feature.dim() != dim)
      fail(ErrorCode::DimMismatch, "sample '" + s.record.sample_id + "' has dim " +
                                       std::to_string(s.feature.dim()) + ", expected " +
                                       std::to_string(dim));
    auto& entry = pools[s.record.subject_id];
    if (s.record.occluded && !protocol.include_occluded) continue;
    (s.record.pose == Pose::Frontal ? entry.first : entry.second).push_back(&s);
  }

  Split split;
  Pcg32 rng(protocol.split_seed);
  for (auto& [subject, pool] : pools) {
    auto& [frontal, lateral] = pool;
    std::sort(frontal.begin(), frontal.end(), by_identity);
    std::sort(lateral.begin(), lateral.end(), by_identity);
    const std::size_t subject_index = split.subjects.size();
    split.subjects.push_back(subject);

    std::vector<const Sample*> gallery, probes;
    if (protocol.kind == ProtocolKind::FrontalBaseline) {
      const std::size_t need = protocol.gallery_count + protocol.probe_count;
      if (frontal.size() < need)
        fail(ErrorCode::InsufficientSamples,
             "subject '" + subject + "' has " + std::to_string(frontal.size()) +
                 " eligible frontal samples, the frontal protocol needs " + std::to_string(need));
      shuffle(std::span(frontal), rng);
      gallery.assign(frontal.begin(), frontal.begin() + static_cast<std::ptrdiff_t>(protocol.gallery_count));
      probes.assign(frontal.begin() + static_cast<std::ptrdiff_t>(protocol.gallery_count),
                    frontal.begin() + static_cast<std::ptrdiff_t>(need));
    } else {
      if (frontal.size() < protocol.gallery_count)
        fail(ErrorCode::InsufficientSamples,
             "subject '" + subject + "' has " + std::to_string(frontal.size()) +
                 " eligible frontal samples, the cross-pose gallery needs " +
                 std::to_string(protocol.gallery_count));
      if (lateral.size() < protocol.probe_count)
        fail(ErrorCode::InsufficientSamples,
             "subject '" + subject + "' has " + std::to_string(lateral.size()) +
                 " eligible lateral samples, the cross-pose probe set needs " +
                 std::to_string(protocol.probe_count));
      gallery = draw(frontal, protocol.gallery_count, rng);
      probes = draw(lateral, protocol.probe_count, rng);
    }
    std::sort(gallery.begin(), gallery.end(), by_identity);
    std::sort(probes.begin(), probes.end(), by_identity);
    split.gallery.push_back(std::move(gallery));
    for (const Sample* p : probes) {
      split.probes.push_back(p);
      split.probe_subject.push_back(subject_index);
    }
  }
  return split;
}

std::vector<double> ScoreSet::genuine() const {
  std::vector<double> out;
  for (const auto& c : comparisons)
    if (c.genuine()) out.push_back(c.score);
  return out;
}

std::vector<double> ScoreSet::impostor() const {
  std::vector<double> out;
  for (const auto& c : comparisons)
    if (!c.genuine()) out.push_back(c.score);
  return out;
}

namespace {

std::vector<FeatureVector> templates_of(const Split& split) {
  std::vector<FeatureVector> out;
  out.reserve(split.gallery.size());
  for (const auto& g : split.gallery) {
    const auto feats = features_of(g);
    out.push_back(build_template(feats));
  }
  return out;
}

}  // namespace

ScoreSet run_verification(const Dataset& data, const Protocol& protocol) {
  const Split split = split_dataset(data, protocol);
  const auto templates = templates_of(split);
  ScoreSet out;
  out.comparisons.reserve(split.probes.size() * templates.size());
  for (std::size_t p = 0; p < split.probes.size(); ++p) {
    const Sample& probe = *split.probes[p];
    for (std::size_t t = 0; t < templates.size(); ++t) {
      out.comparisons.push_back({probe.record.sample_id, split.subjects[t], probe.record.subject_id,
                                 cosine_similarity(probe.feature, templates[t])});
    }
  }
  return out;
}

ScoreMatrix run_identification(const Dataset& data, const Protocol& protocol) {
  const Split split = split_dataset(data, protocol);
  const auto templates = templates_of(split);
  ScoreMatrix m;
  m.subjects = split.subjects;
  m.scores.reserve(split.probes.size() * templates.size());
  for (std::size_t p = 0; p < split.probes.size(); ++p) {
    m.probe_ids.push_back(split.probes[p]->record.sample_id);
    m.true_column.push_back(split.probe_subject[p]);
    for (const auto& t : templates) m.scores.push_back(cosine_similarity(split.probes[p]->feature, t));
  }
  return m;
}

ScoreMatrix run_identification_softmax(const Dataset& data, const Protocol& protocol,
                                       const TrainConfig& cfg, SoftmaxModel* model_out) {
  const Split split = split_dataset(data, protocol);
  TrainingSet train;
  train.num_classes = split.subjects.size();
  for (std::size_t k = 0; k < split.gallery.size(); ++k) {
    for (const Sample* s : split.gallery[k]) {
      train.inputs.push_back(s->feature.values);
      train.labels.push_back(k);
    }
  }
  SoftmaxModel model = train_softmax(train, split.subjects, cfg);

  ScoreMatrix m;
  m.subjects = split.subjects;
  for (std::size_t p = 0; p < split.probes.size(); ++p) {
    m.probe_ids.push_back(split.probes[p]->record.sample_id);
    m.true_column.push_back(split.probe_subject[p]);
    const auto probs = softmax_probs(model, split.probes[p]->feature.values);
    m.scores.insert(m.scores.end(), probs.begin(), probs.end());
  }
  if (model_out) *model_out = std::move(model);
  return m;
}

std::string scores_csv(const ScoreSet& scores) {
  std::string out = "probe_id,claimed_subject,true_subject,score,label\n";
  for (const auto& c : scores.comparisons) {
    out += c.probe_id + "," + c.claimed_subject + "," + c.true_subject + "," +
           detail::format_double(c.score) + "," + (c.genuine() ? "genuine" : "impostor") + "\n";
  }
  return out;
}

std::string scores_csv(const ScoreMatrix& m) {
  std::string out = "probe_id,claimed_subject,true_subject,score,label\n";
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::string& truth = m.subjects[m.true_column[r]];
    for (std::size_t c = 0; c < m.cols(); ++c) {
      out += m.probe_ids[r] + "," + m.subjects[c] + "," + truth + "," +
             detail::format_double(m.at(r, c)) + "," +
             (c == m.true_column[r] ? "genuine" : "impostor") + "\n";
    }
  }
  return out;
}

}  // namespace mmw
