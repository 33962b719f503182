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


// extern "C" wrappers over the C++ core. Every entry point converts
// exceptions into status codes and records the message per thread.

#include "mmw/mmw.h"

#include <cstring>
#include <exception>
#include <filesystem>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "../core/text_util.hpp"
#include "mmw/classify.hpp"
#include "mmw/error.hpp"
#include "mmw/evaluation.hpp"
#include "mmw/feature_io.hpp"
#include "mmw/fusion.hpp"
#include "mmw/hog.hpp"
#include "mmw/image.hpp"
#include "mmw/lbp.hpp"
#include "mmw/manifest.hpp"
#include "mmw/matching.hpp"
#include "mmw/pipeline.hpp"
#include "mmw/synth.hpp"

struct mmw_image {
  mmw::GrayImage img;
};
struct mmw_manifest {
  std::vector<mmw::ManifestEntry> entries;
};
struct mmw_featureset {
  mmw::Dataset data;
};
struct mmw_scores {
  mmw::ScoreSet scores;
};
struct mmw_matrix {
  mmw::ScoreMatrix matrix;
};
struct mmw_softmax {
  mmw::SoftmaxModel model;
};

namespace {

thread_local std::string g_last_error;

mmw_status to_status(mmw::ErrorCode code) {
  switch (code) {
    case mmw::ErrorCode::InvalidArgument: return MMW_E_INVALID_ARGUMENT;
    case mmw::ErrorCode::OutOfRange: return MMW_E_OUT_OF_RANGE;
    case mmw::ErrorCode::Io: return MMW_E_IO;
    case mmw::ErrorCode::BadHeader: return MMW_E_BAD_HEADER;
    case mmw::ErrorCode::TruncatedPayload: return MMW_E_TRUNCATED_PAYLOAD;
    case mmw::ErrorCode::DimMismatch: return MMW_E_DIM_MISMATCH;
    case mmw::ErrorCode::NonFinite: return MMW_E_NON_FINITE;
    case mmw::ErrorCode::Parse: return MMW_E_PARSE;
    case mmw::ErrorCode::InsufficientSamples: return MMW_E_INSUFFICIENT_SAMPLES;
    case mmw::ErrorCode::Internal: return MMW_E_INTERNAL;
  }
  return MMW_E_INTERNAL;
}

template <typename Fn>
mmw_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    return MMW_OK;
  } catch (const mmw::Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MMW_E_INTERNAL;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MMW_E_INTERNAL;
  } catch (...) {
    g_last_error = "unknown exception";
    return MMW_E_INTERNAL;
  }
}

template <typename... Ptrs>
void require(const char* what, Ptrs... ptrs) {
  if (((ptrs == nullptr) || ...)) mmw::fail(mmw::ErrorCode::InvalidArgument, std::string("null argument to ") + what);
}

mmw::BodyPart to_part(mmw_part p) {
  if (p < MMW_PART_FACE || p > MMW_PART_WHOLEBODY) mmw::fail(mmw::ErrorCode::InvalidArgument, "unknown body part");
  return static_cast<mmw::BodyPart>(p);
}

mmw::FeatureKind to_kind(mmw_feature_kind k) {
  if (k < MMW_KIND_LBP || k > MMW_KIND_FUSED) mmw::fail(mmw::ErrorCode::InvalidArgument, "unknown feature kind");
  return static_cast<mmw::FeatureKind>(k);
}

mmw::Protocol to_protocol(const mmw_protocol& p) {
  if (p.kind != MMW_PROTOCOL_FRONTAL && p.kind != MMW_PROTOCOL_CROSSPOSE)
    mmw::fail(mmw::ErrorCode::InvalidArgument, "unknown protocol kind");
  mmw::Protocol out;
  out.kind = p.kind == MMW_PROTOCOL_FRONTAL ? mmw::ProtocolKind::FrontalBaseline : mmw::ProtocolKind::CrossPose;
  out.gallery_count = p.gallery_count;
  out.probe_count = p.probe_count;
  out.split_seed = p.split_seed;
  out.include_occluded = p.include_occluded != 0;
  return out;
}

mmw::TrainConfig to_train(const mmw_train_config& c) {
  mmw::TrainConfig out;
  out.batch_size = c.batch_size;
  out.learning_rate = c.learning_rate;
  out.epochs = c.epochs;
  out.seed = c.seed;
  return out;
}

void copy_out(const std::vector<double>& values, double* buffer, size_t* len) {
  if (buffer != nullptr) {
    if (*len < values.size())
      mmw::fail(mmw::ErrorCode::OutOfRange, "buffer holds " + std::to_string(*len) + " values, need " +
                                                std::to_string(values.size()));
    std::memcpy(buffer, values.data(), values.size() * sizeof(double));
  }
  *len = values.size();
}

template <typename Handle, typename Value>
void emit(Handle** out, Value&& v) {
  *out = new Handle{std::forward<Value>(v)};
}

}  // namespace

extern "C" {

const char* mmw_version(void) { return "0.1.0"; }

const char* mmw_status_string(mmw_status status) {
  if (status == MMW_OK) return "ok";
  if (status < MMW_OK || status > MMW_E_INTERNAL) return "unknown status";
  return mmw::to_string(static_cast<mmw::ErrorCode>(status - 1));
}

const char* mmw_last_error(void) { return g_last_error.c_str(); }

const char* mmw_part_name(mmw_part part) {
  if (part < MMW_PART_FACE || part > MMW_PART_WHOLEBODY) return "unknown";
  // to_string returns a view over a string literal, so data() is terminated.
  return mmw::to_string(static_cast<mmw::BodyPart>(part)).data();
}

mmw_status mmw_part_parse(const char* text, mmw_part* out) {
  return guarded([&] {
    require("mmw_part_parse", text, out);
    *out = static_cast<mmw_part>(mmw::parse_body_part(text));
  });
}

mmw_status mmw_part_crop_size(mmw_part part, int* width, int* height) {
  return guarded([&] {
    require("mmw_part_crop_size", width, height);
    const mmw::Size s = mmw::nominal_crop(to_part(part));
    *width = s.width;
    *height = s.height;
  });
}

// ---- images

mmw_status mmw_image_create(int width, int height, const uint8_t* pixels, mmw_image** out) {
  return guarded([&] {
    require("mmw_image_create", pixels, out);
    if (width <= 0 || height <= 0) mmw::fail(mmw::ErrorCode::InvalidArgument, "image size must be positive");
    const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    emit(out, mmw::GrayImage(width, height, std::vector<std::uint8_t>(pixels, pixels + n)));
  });
}

mmw_status mmw_image_read_pgm(const char* path, mmw_image** out) {
  return guarded([&] {
    require("mmw_image_read_pgm", path, out);
    emit(out, mmw::read_pgm(path));
  });
}

mmw_status mmw_image_write_pgm(const mmw_image* img, const char* path) {
  return guarded([&] {
    require("mmw_image_write_pgm", img, path);
    mmw::write_pgm(path, img->img);
  });
}

void mmw_image_free(mmw_image* img) { delete img; }
int mmw_image_width(const mmw_image* img) { return img ? img->img.width() : 0; }
int mmw_image_height(const mmw_image* img) { return img ? img->img.height() : 0; }
const uint8_t* mmw_image_pixels(const mmw_image* img) { return img ? img->img.pixels().data() : nullptr; }

mmw_status mmw_image_crop(const mmw_image* img, int x, int y, int w, int h, mmw_image** out) {
  return guarded([&] {
    require("mmw_image_crop", img, out);
    emit(out, mmw::crop(img->img, mmw::Rect{x, y, w, h}));
  });
}

mmw_status mmw_image_resize(const mmw_image* img, int width, int height, mmw_image** out) {
  return guarded([&] {
    require("mmw_image_resize", img, out);
    emit(out, mmw::resize_bilinear(img->img, width, height));
  });
}

mmw_status mmw_image_equalize(const mmw_image* img, mmw_image** out) {
  return guarded([&] {
    require("mmw_image_equalize", img, out);
    emit(out, mmw::equalize_histogram(img->img));
  });
}

mmw_status mmw_extract_lbp(const mmw_image* img, double* buffer, size_t* len) {
  return guarded([&] {
    require("mmw_extract_lbp", img, len);
    copy_out(mmw::extract_lbp(img->img).values, buffer, len);
  });
}

mmw_status mmw_extract_hog(const mmw_image* img, double* buffer, size_t* len) {
  return guarded([&] {
    require("mmw_extract_hog", img, len);
    copy_out(mmw::extract_hog(img->img).values, buffer, len);
  });
}

// ---- synthetic data

void mmw_synth_config_default(mmw_synth_config* cfg) {
  if (cfg == nullptr) return;
  const mmw::SynthConfig d;
  cfg->subjects = d.subjects;
  cfg->samples_per_pose = d.samples_per_pose;
  cfg->parts = 0;
  for (auto p : d.parts) cfg->parts |= 1u << static_cast<unsigned>(p);
  cfg->intra_noise = d.intra_noise;
  cfg->pose_shift = d.pose_shift;
  cfg->texture_scale = d.texture_scale;
  cfg->identity_signal = d.identity_signal ? 1 : 0;
  cfg->seed = d.seed;
}

mmw_status mmw_synth_write(const mmw_synth_config* cfg, const char* dir) {
  return guarded([&] {
    require("mmw_synth_write", cfg, dir);
    mmw::SynthConfig c;
    c.subjects = cfg->subjects;
    c.samples_per_pose = cfg->samples_per_pose;
    c.parts.clear();
    for (unsigned p = 0; p < 3; ++p)
      if (cfg->parts & (1u << p)) c.parts.push_back(static_cast<mmw::BodyPart>(p));
    if (cfg->parts >> 3) mmw::fail(mmw::ErrorCode::InvalidArgument, "unknown bits in part mask");
    c.intra_noise = cfg->intra_noise;
    c.pose_shift = cfg->pose_shift;
    c.texture_scale = cfg->texture_scale;
    c.identity_signal = cfg->identity_signal != 0;
    c.seed = cfg->seed;
    mmw::write_dataset(mmw::generate(c), dir);
  });
}

// ---- manifests and feature sets

mmw_status mmw_manifest_read(const char* path, mmw_manifest** out) {
  return guarded([&] {
    require("mmw_manifest_read", path, out);
    emit(out, mmw::read_manifest(path));
  });
}

void mmw_manifest_free(mmw_manifest* m) { delete m; }
size_t mmw_manifest_size(const mmw_manifest* m) { return m ? m->entries.size() : 0; }

unsigned mmw_manifest_parts(const mmw_manifest* m) {
  unsigned mask = 0;
  if (m != nullptr)
    for (const auto& e : m->entries) mask |= 1u << static_cast<unsigned>(e.record.part);
  return mask;
}

void mmw_extract_options_default(mmw_extract_options* opts) {
  if (opts == nullptr) return;
  const mmw::ExtractOptions d;
  opts->descriptor = MMW_DESC_LBP;
  for (int p = 0; p < 3; ++p) opts->equalize[p] = d.equalize[static_cast<std::size_t>(p)] ? 1 : 0;
}

mmw_status mmw_extract_manifest(const mmw_manifest* m, const mmw_extract_options* opts, const char* boxes_path,
                                mmw_featureset** out) {
  return guarded([&] {
    require("mmw_extract_manifest", m, opts, out);
    mmw::ExtractOptions o;
    if (opts->descriptor != MMW_DESC_LBP && opts->descriptor != MMW_DESC_HOG)
      mmw::fail(mmw::ErrorCode::InvalidArgument, "unknown descriptor");
    o.descriptor = opts->descriptor == MMW_DESC_LBP ? mmw::Descriptor::Lbp : mmw::Descriptor::Hog;
    for (std::size_t p = 0; p < 3; ++p) o.equalize[p] = opts->equalize[p] != 0;
    std::vector<mmw::BoxAnnotation> boxes;
    if (boxes_path != nullptr) boxes = mmw::read_box_sidecar(boxes_path);
    emit(out, mmw::extract_manifest(m->entries, o, boxes));
  });
}

mmw_status mmw_featureset_create(mmw_featureset** out) {
  return guarded([&] {
    require("mmw_featureset_create", out);
    emit(out, mmw::Dataset{});
  });
}

mmw_status mmw_featureset_read(const char* path, mmw_feature_kind kind, mmw_featureset** out) {
  return guarded([&] {
    require("mmw_featureset_read", path, out);
    emit(out, mmw::load_features(path, to_kind(kind)));
  });
}

mmw_status mmw_featureset_write(const mmw_featureset* fs, const char* path) {
  return guarded([&] {
    require("mmw_featureset_write", fs, path);
    mmw::save_features(path, fs->data);
  });
}

void mmw_featureset_free(mmw_featureset* fs) { delete fs; }

mmw_status mmw_featureset_add(mmw_featureset* fs, const char* subject_id, const char* sample_id, mmw_part part,
                              int lateral, const double* values, size_t dim) {
  return guarded([&] {
    require("mmw_featureset_add", fs, subject_id, sample_id, values);
    mmw::Sample s;
    s.record.subject_id = subject_id;
    s.record.sample_id = sample_id;
    s.record.part = to_part(part);
    s.record.pose = lateral ? mmw::Pose::Lateral : mmw::Pose::Frontal;
    s.feature.kind = mmw::FeatureKind::Embedding;
    s.feature.part = s.record.part;
    s.feature.values.assign(values, values + dim);
    fs->data.push_back(std::move(s));
  });
}

size_t mmw_featureset_size(const mmw_featureset* fs) { return fs ? fs->data.size() : 0; }

size_t mmw_featureset_dim(const mmw_featureset* fs) {
  return fs && !fs->data.empty() ? fs->data.front().feature.dim() : 0;
}

mmw_status mmw_featureset_values(const mmw_featureset* fs, size_t index, double* buffer, size_t* len) {
  return guarded([&] {
    require("mmw_featureset_values", fs, len);
    if (index >= fs->data.size())
      mmw::fail(mmw::ErrorCode::OutOfRange, "record " + std::to_string(index) + " of " +
                                                std::to_string(fs->data.size()));
    copy_out(fs->data[index].feature.values, buffer, len);
  });
}

mmw_status mmw_featureset_select_part(const mmw_featureset* fs, mmw_part part, mmw_featureset** out) {
  return guarded([&] {
    require("mmw_featureset_select_part", fs, out);
    emit(out, mmw::select_part(fs->data, to_part(part)));
  });
}

mmw_status mmw_featureset_annotate(mmw_featureset* fs, const mmw_manifest* m) {
  return guarded([&] {
    require("mmw_featureset_annotate", fs, m);
    mmw::annotate(fs->data, m->entries);
  });
}

mmw_status mmw_featureset_fuse(const mmw_featureset* const* sets, size_t count, mmw_featureset** out) {
  return guarded([&] {
    require("mmw_featureset_fuse", sets, out);
    std::vector<mmw::Dataset> in;
    for (size_t i = 0; i < count; ++i) {
      require("mmw_featureset_fuse", sets[i]);
      in.push_back(sets[i]->data);
    }
    emit(out, mmw::fuse_feature_sets(in));
  });
}

// ---- matching

void mmw_protocol_default(mmw_protocol* p, mmw_protocol_kind kind) {
  if (p == nullptr) return;
  const mmw::Protocol d = kind == MMW_PROTOCOL_CROSSPOSE ? mmw::Protocol::cross_pose() : mmw::Protocol::frontal();
  p->kind = kind;
  p->gallery_count = d.gallery_count;
  p->probe_count = d.probe_count;
  p->split_seed = d.split_seed;
  p->include_occluded = d.include_occluded ? 1 : 0;
}

mmw_status mmw_protocol_parse(const char* text, mmw_protocol_kind* out) {
  return guarded([&] {
    require("mmw_protocol_parse", text, out);
    *out = mmw::parse_protocol(text) == mmw::ProtocolKind::FrontalBaseline ? MMW_PROTOCOL_FRONTAL
                                                                            : MMW_PROTOCOL_CROSSPOSE;
  });
}

void mmw_train_config_default(mmw_train_config* cfg) {
  if (cfg == nullptr) return;
  const mmw::TrainConfig d;
  cfg->batch_size = d.batch_size;
  cfg->learning_rate = d.learning_rate;
  cfg->epochs = d.epochs;
  cfg->seed = d.seed;
}

mmw_status mmw_verify(const mmw_featureset* fs, const mmw_protocol* p, mmw_scores** out) {
  return guarded([&] {
    require("mmw_verify", fs, p, out);
    emit(out, mmw::run_verification(fs->data, to_protocol(*p)));
  });
}

mmw_status mmw_identify(const mmw_featureset* fs, const mmw_protocol* p, mmw_matrix** out) {
  return guarded([&] {
    require("mmw_identify", fs, p, out);
    emit(out, mmw::run_identification(fs->data, to_protocol(*p)));
  });
}

mmw_status mmw_identify_softmax(const mmw_featureset* fs, const mmw_protocol* p, const mmw_train_config* cfg,
                                mmw_matrix** out, mmw_softmax** model_out) {
  return guarded([&] {
    require("mmw_identify_softmax", fs, p, cfg, out);
    mmw::SoftmaxModel model;
    auto matrix = mmw::run_identification_softmax(fs->data, to_protocol(*p), to_train(*cfg), &model);
    if (model_out != nullptr) emit(model_out, std::move(model));
    emit(out, std::move(matrix));
  });
}

mmw_status mmw_identify_late_fusion(const mmw_featureset* a, const mmw_featureset* b, const mmw_protocol* p,
                                    const mmw_train_config* cfg, size_t hidden_width, mmw_matrix** out) {
  return guarded([&] {
    require("mmw_identify_late_fusion", a, b, p, cfg, out);
    mmw::LateFusionConfig lf;
    lf.train = to_train(*cfg);
    lf.hidden_width = hidden_width;
    emit(out, mmw::run_identification_late_fusion(a->data, b->data, to_protocol(*p), lf));
  });
}

void mmw_scores_free(mmw_scores* s) { delete s; }
size_t mmw_scores_genuine_count(const mmw_scores* s) { return s ? s->scores.genuine().size() : 0; }
size_t mmw_scores_impostor_count(const mmw_scores* s) { return s ? s->scores.impostor().size() : 0; }

mmw_status mmw_scores_fuse(const mmw_scores* const* sets, size_t count, mmw_scores** out) {
  return guarded([&] {
    require("mmw_scores_fuse", sets, out);
    std::vector<mmw::ScoreSet> in;
    for (size_t i = 0; i < count; ++i) {
      require("mmw_scores_fuse", sets[i]);
      in.push_back(sets[i]->scores);
    }
    emit(out, mmw::fuse_scores(std::span<const mmw::ScoreSet>(in)));
  });
}

mmw_status mmw_scores_eer(const mmw_scores* s, double* eer, double* threshold) {
  return guarded([&] {
    require("mmw_scores_eer", s, eer);
    const auto r = mmw::compute_eer(s->scores);
    *eer = r.eer;
    if (threshold != nullptr) *threshold = r.threshold;
  });
}

mmw_status mmw_scores_write_csv(const mmw_scores* s, const char* path) {
  return guarded([&] {
    require("mmw_scores_write_csv", s, path);
    mmw::detail::write_file(path, mmw::scores_csv(s->scores));
  });
}

mmw_status mmw_scores_write_det_csv(const mmw_scores* s, const char* path) {
  return guarded([&] {
    require("mmw_scores_write_det_csv", s, path);
    mmw::detail::write_file(path, mmw::det_csv(mmw::det_curve(s->scores)));
  });
}

void mmw_matrix_free(mmw_matrix* m) { delete m; }
size_t mmw_matrix_rows(const mmw_matrix* m) { return m ? m->matrix.rows() : 0; }
size_t mmw_matrix_cols(const mmw_matrix* m) { return m ? m->matrix.cols() : 0; }

mmw_status mmw_matrix_fuse(const mmw_matrix* const* sets, size_t count, mmw_matrix** out) {
  return guarded([&] {
    require("mmw_matrix_fuse", sets, out);
    std::vector<mmw::ScoreMatrix> in;
    for (size_t i = 0; i < count; ++i) {
      require("mmw_matrix_fuse", sets[i]);
      in.push_back(sets[i]->matrix);
    }
    emit(out, mmw::fuse_scores(std::span<const mmw::ScoreMatrix>(in)));
  });
}

mmw_status mmw_matrix_rank_rate(const mmw_matrix* m, size_t k, double* rate) {
  return guarded([&] {
    require("mmw_matrix_rank_rate", m, rate);
    *rate = mmw::rank_k_rate(m->matrix, k);
  });
}

mmw_status mmw_matrix_to_scores(const mmw_matrix* m, mmw_scores** out) {
  return guarded([&] {
    require("mmw_matrix_to_scores", m, out);
    emit(out, mmw::to_score_set(m->matrix));
  });
}

mmw_status mmw_matrix_write_csv(const mmw_matrix* m, const char* path) {
  return guarded([&] {
    require("mmw_matrix_write_csv", m, path);
    mmw::detail::write_file(path, mmw::scores_csv(m->matrix));
  });
}

mmw_status mmw_matrix_write_cmc_csv(const mmw_matrix* m, const char* path) {
  return guarded([&] {
    require("mmw_matrix_write_cmc_csv", m, path);
    mmw::detail::write_file(path, mmw::cmc_csv(mmw::cmc_curve(m->matrix)));
  });
}

mmw_status mmw_softmax_save(const mmw_softmax* model, const char* path) {
  return guarded([&] {
    require("mmw_softmax_save", model, path);
    mmw::save_model(path, model->model);
  });
}

mmw_status mmw_softmax_load(const char* path, mmw_softmax** out) {
  return guarded([&] {
    require("mmw_softmax_load", path, out);
    emit(out, mmw::load_model(path));
  });
}

void mmw_softmax_free(mmw_softmax* model) { delete model; }
size_t mmw_softmax_classes(const mmw_softmax* model) { return model ? model->model.num_classes() : 0; }
size_t mmw_softmax_dim(const mmw_softmax* model) { return model ? model->model.dim() : 0; }

}  // extern "C"
