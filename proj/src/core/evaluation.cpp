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

#include "mmw/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>

#include "mmw/error.hpp"
#include "text_util.hpp"

namespace mmw {

namespace {

void check_sides(std::span<const double> genuine, std::span<const double> impostor) {
  if (genuine.empty() || impostor.empty())
    fail(ErrorCode::InvalidArgument, "error rates need at least one genuine and one impostor score");
  auto finite = [](double v) { return std::isfinite(v); };
  if (!std::all_of(genuine.begin(), genuine.end(), finite) ||
      !std::all_of(impostor.begin(), impostor.end(), finite))
    fail(ErrorCode::NonFinite, "scores must be finite");
}

std::vector<double> sorted(std::span<const double> v) {
  std::vector<double> out(v.begin(), v.end());
  std::sort(out.begin(), out.end());
  return out;
}

// Visits every candidate threshold in ascending order together with
// the impostor-accept count and the genuine-reject count at that threshold.
template <typename Visit>
void sweep(std::span<const double> genuine, std::span<const double> impostor, Visit&& visit) {
  check_sides(genuine, impostor);
  const auto g = sorted(genuine);
  const auto im = sorted(impostor);
  std::vector<double> all(g);
  all.insert(all.end(), im.begin(), im.end());
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());

  // Below everything: all impostors accepted, no genuine rejected.
  visit(all.front() - 1.0, im.size(), std::size_t{0});
  std::size_t gi = 0, ii = 0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    // Scores <= all[k] fall below every threshold in (all[k], all[k+1]).
    while (gi < g.size() && g[gi] <= all[k]) ++gi;
    while (ii < im.size() && im[ii] <= all[k]) ++ii;
    const double t = k + 1 < all.size() ? all[k] + (all[k + 1] - all[k]) / 2.0 : all[k] + 1.0;
    visit(t, im.size() - ii, gi);
  }
}

}  // namespace

std::vector<double> candidate_thresholds(std::span<const double> genuine,
                                         std::span<const double> impostor) {
  std::vector<double> out;
  sweep(genuine, impostor, [&](double t, std::size_t, std::size_t) { out.push_back(t); });
  return out;
}

EerResult compute_eer(std::span<const double> genuine, std::span<const double> impostor) {
  const auto ng = static_cast<std::uint64_t>(genuine.size());
  const auto ni = static_cast<std::uint64_t>(impostor.size());
  bool have = false;
  std::uint64_t best_gap = 0;
  EerResult best;
  sweep(genuine, impostor, [&](double t, std::size_t accepted, std::size_t rejected) {
    // |FAR - FRR| scaled by ng * ni, exact in integers.
    const std::uint64_t lhs = static_cast<std::uint64_t>(accepted) * ng;
    const std::uint64_t rhs = static_cast<std::uint64_t>(rejected) * ni;
    const std::uint64_t gap = lhs > rhs ? lhs - rhs : rhs - lhs;
    if (!have || gap < best_gap) {
      have = true;
      best_gap = gap;
      const double far = static_cast<double>(accepted) / static_cast<double>(ni);
      const double frr = static_cast<double>(rejected) / static_cast<double>(ng);
      best = {(far + frr) / 2.0, t};
    }
  });
  return best;
}

EerResult compute_eer(const ScoreSet& scores) {
  return compute_eer(scores.genuine(), scores.impostor());
}

std::vector<DetPoint> det_curve(std::span<const double> genuine, std::span<const double> impostor) {
  std::vector<DetPoint> out;
  const auto ng = static_cast<double>(genuine.size());
  const auto ni = static_cast<double>(impostor.size());
  sweep(genuine, impostor, [&](double t, std::size_t accepted, std::size_t rejected) {
    out.push_back({t, static_cast<double>(accepted) / ni, static_cast<double>(rejected) / ng});
  });
  return out;
}

std::vector<DetPoint> det_curve(const ScoreSet& scores) {
  return det_curve(scores.genuine(), scores.impostor());
}

double rank_k_rate(const ScoreMatrix& m, std::size_t k) {
  if (m.rows() == 0 || m.cols() == 0) fail(ErrorCode::InvalidArgument, "empty identification matrix");
  if (k < 1 || k > m.cols())
    fail(ErrorCode::OutOfRange, "rank " + std::to_string(k) + " outside [1, " +
                                    std::to_string(m.cols()) + "]");
  std::size_t hits = 0;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    const std::size_t truth = m.true_column[r];
    const double s = row[truth];
    std::size_t above = 0;
    for (std::size_t c = 0; c < row.size(); ++c)
      if (c != truth && row[c] >= s) ++above;
    if (above + 1 <= k) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(m.rows());
}

std::vector<double> cmc_curve(const ScoreMatrix& m) {
  if (m.rows() == 0 || m.cols() == 0) fail(ErrorCode::InvalidArgument, "empty identification matrix");
  // Histogram of pessimistic ranks, then cumulate.
  std::vector<std::size_t> at_rank(m.cols(), 0);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const auto row = m.row(r);
    const std::size_t truth = m.true_column[r];
    std::size_t above = 0;
    for (std::size_t c = 0; c < row.size(); ++c)
      if (c != truth && row[c] >= row[truth]) ++above;
    ++at_rank[above];
  }
  std::vector<double> out(m.cols());
  std::size_t running = 0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    running += at_rank[k];
    out[k] = static_cast<double>(running) / static_cast<double>(m.rows());
  }
  return out;
}

std::string det_csv(const std::vector<DetPoint>& points) {
  std::string out = "threshold,far,frr\n";
  for (const auto& p : points)
    out += detail::format_double(p.threshold) + "," + detail::format_double(p.far) + "," +
           detail::format_double(p.frr) + "\n";
  return out;
}

std::string cmc_csv(const std::vector<double>& cmc) {
  std::string out = "rank,rate\n";
  for (std::size_t k = 0; k < cmc.size(); ++k)
    out += std::to_string(k + 1) + "," + detail::format_double(cmc[k]) + "\n";
  return out;
}

ScoreSet to_score_set(const ScoreMatrix& m) {
  ScoreSet out;
  out.comparisons.reserve(m.scores.size());
  for (std::size_t r = 0; r < m.rows(); ++r) {
    const std::string& truth = m.subjects[m.true_column[r]];
    for (std::size_t c = 0; c < m.cols(); ++c)
      out.comparisons.push_back({m.probe_ids[r], m.subjects[c], truth, m.at(r, c)});
  }
  return out;
}

}  // namespace mmw
