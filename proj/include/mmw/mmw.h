/*
 * Copyright 2026 The mmwtex Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * mmw.h - C interface to the mmwtex body-texture toolkit.
 *
 * Conventions:
 *   - Every fallible function returns an mmw_status. MMW_OK is zero.
 *   - On failure, mmw_last_error() returns a message for the calling thread.
 *     The pointer stays valid until the next failing call on that thread.
 *   - Objects are opaque handles created by *_create / *_read / result
 *     out-parameters and released with the matching *_free. Passing NULL to
 *     a *_free function is a no-op.
 *   - Output handles are written only on success.
 *   - Buffer queries: pass a NULL buffer to learn the required length in
 *     *len, then call again with a buffer of at least that many elements.
 */

#ifndef MMW_MMW_H
#define MMW_MMW_H

#include <stddef.h>
#include <stdint.h>

#if defined(MMW_BUILDING_LIBRARY)
#define MMW_API __attribute__((visibility("default")))
#else
#define MMW_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mmw_status {
  MMW_OK = 0,
  MMW_E_INVALID_ARGUMENT = 1,
  MMW_E_OUT_OF_RANGE = 2,
  MMW_E_IO = 3,
  MMW_E_BAD_HEADER = 4,
  MMW_E_TRUNCATED_PAYLOAD = 5,
  MMW_E_DIM_MISMATCH = 6,
  MMW_E_NON_FINITE = 7,
  MMW_E_PARSE = 8,
  MMW_E_INSUFFICIENT_SAMPLES = 9,
  MMW_E_INTERNAL = 10
} mmw_status;

typedef enum mmw_part { MMW_PART_FACE = 0, MMW_PART_TORSO = 1, MMW_PART_WHOLEBODY = 2 } mmw_part;
typedef enum mmw_descriptor { MMW_DESC_LBP = 0, MMW_DESC_HOG = 1 } mmw_descriptor;
typedef enum mmw_feature_kind {
  MMW_KIND_LBP = 0,
  MMW_KIND_HOG = 1,
  MMW_KIND_EMBEDDING = 2,
  MMW_KIND_FUSED = 3
} mmw_feature_kind;
typedef enum mmw_protocol_kind { MMW_PROTOCOL_FRONTAL = 0, MMW_PROTOCOL_CROSSPOSE = 1 } mmw_protocol_kind;

typedef struct mmw_image mmw_image;
typedef struct mmw_manifest mmw_manifest;
typedef struct mmw_featureset mmw_featureset;
typedef struct mmw_scores mmw_scores;
typedef struct mmw_matrix mmw_matrix;
typedef struct mmw_softmax mmw_softmax;

/* ---- errors and version ------------------------------------------------ */

MMW_API const char* mmw_version(void);
MMW_API const char* mmw_status_string(mmw_status status);
MMW_API const char* mmw_last_error(void);

MMW_API const char* mmw_part_name(mmw_part part);
MMW_API mmw_status mmw_part_parse(const char* text, mmw_part* out);
/* Native crop size of a body part before resizing. */
MMW_API mmw_status mmw_part_crop_size(mmw_part part, int* width, int* height);

/* ---- images -------------------------------------------------------------- */

/* Copies width*height 8-bit pixels, row-major. */
MMW_API mmw_status mmw_image_create(int width, int height, const uint8_t* pixels, mmw_image** out);
MMW_API mmw_status mmw_image_read_pgm(const char* path, mmw_image** out);
MMW_API mmw_status mmw_image_write_pgm(const mmw_image* img, const char* path);
MMW_API void mmw_image_free(mmw_image* img);
MMW_API int mmw_image_width(const mmw_image* img);
MMW_API int mmw_image_height(const mmw_image* img);
/* Borrowed pointer to width*height pixels, valid while the image lives. */
MMW_API const uint8_t* mmw_image_pixels(const mmw_image* img);

MMW_API mmw_status mmw_image_crop(const mmw_image* img, int x, int y, int w, int h, mmw_image** out);
MMW_API mmw_status mmw_image_resize(const mmw_image* img, int width, int height, mmw_image** out);
MMW_API mmw_status mmw_image_equalize(const mmw_image* img, mmw_image** out);

/* Descriptor of an image that is already 100x150. */
MMW_API mmw_status mmw_extract_lbp(const mmw_image* img, double* buffer, size_t* len);
MMW_API mmw_status mmw_extract_hog(const mmw_image* img, double* buffer, size_t* len);

/* ---- synthetic data ------------------------------------------------------ */

typedef struct mmw_synth_config {
  size_t subjects;
  size_t samples_per_pose;
  /* Bit mask over mmw_part: (1 << MMW_PART_FACE) | ... */
  unsigned parts;
  double intra_noise;
  int pose_shift;
  int texture_scale;
  int identity_signal;
  uint64_t seed;
} mmw_synth_config;

MMW_API void mmw_synth_config_default(mmw_synth_config* cfg);
/* Writes <dir>/<part>/<sample_id>.pgm and <dir>/manifest.csv. */
MMW_API mmw_status mmw_synth_write(const mmw_synth_config* cfg, const char* dir);

/* ---- manifests and feature sets ----------------------------------------- */

MMW_API mmw_status mmw_manifest_read(const char* path, mmw_manifest** out);
MMW_API void mmw_manifest_free(mmw_manifest* m);
MMW_API size_t mmw_manifest_size(const mmw_manifest* m);
/* Distinct parts present, as a bit mask over mmw_part. */
MMW_API unsigned mmw_manifest_parts(const mmw_manifest* m);

typedef struct mmw_extract_options {
  mmw_descriptor descriptor;
  /* Non-zero entries equalize crops of that part (indexed by mmw_part). */
  int equalize[3];
} mmw_extract_options;

MMW_API void mmw_extract_options_default(mmw_extract_options* opts);
/* boxes_path may be NULL; otherwise every image is cropped by its box. */
MMW_API mmw_status mmw_extract_manifest(const mmw_manifest* m, const mmw_extract_options* opts,
                                        const char* boxes_path, mmw_featureset** out);

MMW_API mmw_status mmw_featureset_create(mmw_featureset** out);
MMW_API mmw_status mmw_featureset_read(const char* path, mmw_feature_kind kind, mmw_featureset** out);
MMW_API mmw_status mmw_featureset_write(const mmw_featureset* fs, const char* path);
MMW_API void mmw_featureset_free(mmw_featureset* fs);
MMW_API mmw_status mmw_featureset_add(mmw_featureset* fs, const char* subject_id, const char* sample_id,
                                      mmw_part part, int lateral, const double* values, size_t dim);
MMW_API size_t mmw_featureset_size(const mmw_featureset* fs);
/* Dimension of the first record, 0 when empty. */
MMW_API size_t mmw_featureset_dim(const mmw_featureset* fs);
MMW_API mmw_status mmw_featureset_values(const mmw_featureset* fs, size_t index, double* buffer, size_t* len);
MMW_API mmw_status mmw_featureset_select_part(const mmw_featureset* fs, mmw_part part, mmw_featureset** out);
/* Restores pose and occlusion flags from a manifest. */
MMW_API mmw_status mmw_featureset_annotate(mmw_featureset* fs, const mmw_manifest* m);
/* Concatenates per scan; all sets must hold the same scans. */
MMW_API mmw_status mmw_featureset_fuse(const mmw_featureset* const* sets, size_t count, mmw_featureset** out);

/* ---- matching ------------------------------------------------------------ */

typedef struct mmw_protocol {
  mmw_protocol_kind kind;
  size_t gallery_count;
  size_t probe_count;
  uint64_t split_seed;
  int include_occluded;
} mmw_protocol;

MMW_API void mmw_protocol_default(mmw_protocol* p, mmw_protocol_kind kind);
MMW_API mmw_status mmw_protocol_parse(const char* text, mmw_protocol_kind* out);

typedef struct mmw_train_config {
  size_t batch_size;
  double learning_rate;
  size_t epochs;
  uint64_t seed;
} mmw_train_config;

MMW_API void mmw_train_config_default(mmw_train_config* cfg);

MMW_API mmw_status mmw_verify(const mmw_featureset* fs, const mmw_protocol* p, mmw_scores** out);
MMW_API mmw_status mmw_identify(const mmw_featureset* fs, const mmw_protocol* p, mmw_matrix** out);
/* model_out may be NULL. */
MMW_API mmw_status mmw_identify_softmax(const mmw_featureset* fs, const mmw_protocol* p,
                                        const mmw_train_config* cfg, mmw_matrix** out, mmw_softmax** model_out);
/* hidden_width 0 uses the width of branch a. */
MMW_API mmw_status mmw_identify_late_fusion(const mmw_featureset* a, const mmw_featureset* b,
                                            const mmw_protocol* p, const mmw_train_config* cfg,
                                            size_t hidden_width, mmw_matrix** out);

MMW_API void mmw_scores_free(mmw_scores* s);
MMW_API size_t mmw_scores_genuine_count(const mmw_scores* s);
MMW_API size_t mmw_scores_impostor_count(const mmw_scores* s);
MMW_API mmw_status mmw_scores_fuse(const mmw_scores* const* sets, size_t count, mmw_scores** out);
MMW_API mmw_status mmw_scores_eer(const mmw_scores* s, double* eer, double* threshold);
MMW_API mmw_status mmw_scores_write_csv(const mmw_scores* s, const char* path);
MMW_API mmw_status mmw_scores_write_det_csv(const mmw_scores* s, const char* path);

MMW_API void mmw_matrix_free(mmw_matrix* m);
MMW_API size_t mmw_matrix_rows(const mmw_matrix* m);
MMW_API size_t mmw_matrix_cols(const mmw_matrix* m);
MMW_API mmw_status mmw_matrix_fuse(const mmw_matrix* const* sets, size_t count, mmw_matrix** out);
MMW_API mmw_status mmw_matrix_rank_rate(const mmw_matrix* m, size_t k, double* rate);
/* Flattens to one comparison per cell, as a verification score set. */
MMW_API mmw_status mmw_matrix_to_scores(const mmw_matrix* m, mmw_scores** out);
MMW_API mmw_status mmw_matrix_write_csv(const mmw_matrix* m, const char* path);
MMW_API mmw_status mmw_matrix_write_cmc_csv(const mmw_matrix* m, const char* path);

MMW_API mmw_status mmw_softmax_save(const mmw_softmax* model, const char* path);
MMW_API mmw_status mmw_softmax_load(const char* path, mmw_softmax** out);
MMW_API void mmw_softmax_free(mmw_softmax* model);
MMW_API size_t mmw_softmax_classes(const mmw_softmax* model);
MMW_API size_t mmw_softmax_dim(const mmw_softmax* model);

#ifdef __cplusplus
}
#endif

#endif /* MMW_MMW_H */
