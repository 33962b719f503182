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

#ifndef MMW_EVALUATION_HPP
#define MMW_EVALUATION_HPP

#include <span>
#include <string>
#include <vector>

#include "mmw/matching.hpp"

namespace mmw {

// Scores are similarities throughout: higher means more likely genuine.
// At threshold t, FAR = #{impostor >= t} / #impostor and
// FRR = #{genuine < t} / #genuine.

struct EerResult {
  double eer = 0.0;
  double threshold = 0.0;
};

struct DetPoint {
  double threshold = 0.0;
  double far = 0.0;
  double frr = 0.0;
};

/// Candidate thresholds: one below the lowest score, the midpoint between
/// every pair of adjacent distinct scores, one above the highest score.
/// Every attainable (FAR, FRR) pair is realized by exactly one of them.
std::vector<double> candidate_thresholds(std::span<const double> genuine,
                                         std::span<const double> impostor);

/// EER = (FAR + FRR) / 2 at the candidate threshold minimizing |FAR - FRR|;
/// ties go to the lower threshold. The comparison is done on exact integer
/// counts, so the result is invariant to increasing affine score transforms.
EerResult compute_eer(std::span<const double> genuine, std::span<const double> impostor);
EerResult compute_eer(const ScoreSet& scores);

/// One point per candidate threshold, ascending.
std::vector<DetPoint> det_curve(std::span<const double> genuine, std::span<const double> impostor);
std::vector<DetPoint> det_curve(const ScoreSet& scores);

/// Fraction of probes whose true subject ranks within the top k. Ties are
/// pessimistic: every competitor scoring >= the true subject ranks above it.
double rank_k_rate(const ScoreMatrix& matrix, std::size_t k);

/// rank_k_rate for k = 1..cols.
std::vector<double> cmc_curve(const ScoreMatrix& matrix);

std::string det_csv(const std::vector<DetPoint>& points);
std::string cmc_csv(const std::vector<double>& cmc);

/// Verification view of an identification matrix: the true column of each
/// row is a genuine score, every other column an impostor score.
ScoreSet to_score_set(const ScoreMatrix& matrix);

}  // namespace mmw

#endif  // MMW_EVALUATION_HPP
