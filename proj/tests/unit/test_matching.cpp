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

#include <algorithm>
#include <cmath>
#include <set>

#include "doctest.h"
#include "mmw/error.hpp"
#include "mmw/matching.hpp"
#include "test_support.hpp"

using namespace mmw;

namespace {

FeatureVector fv(std::vector<double> v) {
  FeatureVector f;
  f.values = std::move(v);
  return f;
}

// Contains exactly one sample that is a copy of every other sample's feature.
Dataset constant_dataset(std::size_t subjects, std::size_t per_subject) {
  Pcg32 rng(1);
  Dataset d = testing::random_dataset(subjects, per_subject, 0, 5, rng);
  for (auto& s : d) s.feature.values = {1.0, 2.0, 3.0, 4.0, 5.0};
  return d;
}

}  // namespace

TEST_CASE("cosine_similarity") {
  CHECK(cosine_similarity(fv({1, 0}), fv({0, 1})) == 0.0);
  CHECK(cosine_similarity(fv({1, 2, 3}), fv({2, 4, 6})) == doctest::Approx(1.0));
  CHECK(cosine_similarity(fv({1, 0}), fv({-1, 0})) == -1.0);
  CHECK_THROWS_AS(cosine_similarity(fv({0, 0}), fv({1, 1})), Error);
  CHECK_THROWS_AS(cosine_similarity(fv({1, 0}), fv({1, 1, 1})), Error);

  Pcg32 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = testing::random_vector(20, rng), b = testing::random_vector(20, rng);
    const double ab = cosine_similarity(a, b);
    CHECK(ab == cosine_similarity(b, a));
    CHECK(ab >= -1.0);
    CHECK(ab <= 1.0);
    const double s = rng.uniform(0.01, 100.0);
    auto scaled = a;
    for (double& x : scaled) x *= s;
    CHECK(std::abs(cosine_similarity(scaled, b) - ab) < 1e-12);
    CHECK(cosine_similarity(a, a) == doctest::Approx(1.0).epsilon(1e-14));

    const auto p = testing::random_vector(20, rng, 0.0, 1.0), q = testing::random_vector(20, rng, 0.0, 1.0);
    const double pq = cosine_similarity(p, q);
    CHECK(pq >= 0.0);
    CHECK(pq <= 1.0);
  }
}

TEST_CASE("build_template") {
  const std::vector<FeatureVector> two{fv({1, 3}), fv({3, 5})};
  CHECK(build_template(two).values == std::vector<double>{2, 4});
  const std::vector<FeatureVector> one{fv({7, -1})};
  CHECK(build_template(one).values == std::vector<double>{7, -1});
  CHECK_THROWS_AS(build_template(std::vector<FeatureVector>{}), Error);
  CHECK_THROWS_AS(build_template(std::vector<FeatureVector>{fv({1}), fv({1, 2})}), Error);

  Pcg32 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<FeatureVector> five;
    for (int i = 0; i < 5; ++i) five.push_back(fv(testing::random_vector(9, rng)));
    const auto t = build_template(five);
    for (std::size_t j = 0; j < 9; ++j) {
      double sum = 0.0;
      for (const auto& f : five) sum += f.values[j];
      CHECK(t.values[j] == doctest::Approx(sum / 5.0).epsilon(1e-14));
    }
  }
}

TEST_CASE("split_dataset") {
  Pcg32 rng(21);
  const Dataset data = testing::random_dataset(6, 4, 2, 3, rng);

  SUBCASE("frontal baseline draws disjoint frontal samples") {
    const Split s = split_dataset(data, Protocol::frontal(5));
    REQUIRE(s.subjects.size() == 6);
    CHECK(std::is_sorted(s.subjects.begin(), s.subjects.end()));
    CHECK(s.probes.size() == 12);
    for (std::size_t i = 0; i < 6; ++i) {
      REQUIRE(s.gallery[i].size() == 2);
      for (const Sample* g : s.gallery[i]) {
        CHECK(g->record.subject_id == s.subjects[i]);
        CHECK(g->record.pose == Pose::Frontal);
      }
    }
    std::set<const Sample*> used;
    for (const auto& g : s.gallery) used.insert(g.begin(), g.end());
    for (std::size_t p = 0; p < s.probes.size(); ++p) {
      CHECK(s.probes[p]->record.pose == Pose::Frontal);
      CHECK(s.probes[p]->record.subject_id == s.subjects[s.probe_subject[p]]);
      CHECK(used.insert(s.probes[p]).second);
    }
  }

  SUBCASE("cross-pose probes are lateral") {
    const Split s = split_dataset(data, Protocol::cross_pose(5));
    CHECK(s.probes.size() == 12);
    for (const Sample* p : s.probes) CHECK(p->record.pose == Pose::Lateral);
    for (const auto& g : s.gallery)
      for (const Sample* x : g) CHECK(x->record.pose == Pose::Frontal);
  }

  SUBCASE("deterministic under seed, different across seeds") {
    const auto a = split_dataset(data, Protocol::frontal(1));
    const auto b = split_dataset(data, Protocol::frontal(1));
    CHECK(a.probes == b.probes);
    CHECK(a.gallery == b.gallery);
    bool differs = false;
    for (std::uint64_t seed = 2; seed < 10 && !differs; ++seed)
      differs = split_dataset(data, Protocol::frontal(seed)).probes != a.probes;
    CHECK(differs);
  }

  SUBCASE("insufficient samples names the subject") {
    Dataset short_data = data;
    std::erase_if(short_data, [](const Sample& s) { return s.record.sample_id == "subj103_0"; });
    try {
      split_dataset(short_data, Protocol::frontal());
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InsufficientSamples);
      CHECK(std::string(e.what()).find("subj103") != std::string::npos);
    }
    Dataset no_lateral = testing::random_dataset(3, 4, 0, 3, rng);
    CHECK_THROWS_AS(split_dataset(no_lateral, Protocol::cross_pose()), Error);
  }

  SUBCASE("duplicate scans are rejected") {
    Dataset dup = data;
    dup.push_back(data[3]);
    CHECK_THROWS_AS(split_dataset(dup, Protocol::frontal()), Error);
  }

  SUBCASE("occluded samples are skipped unless requested") {
    Dataset occ = data;
    for (auto& s : occ)
      if (s.record.sample_id.ends_with("_0")) s.record.occluded = true;
    CHECK_THROWS_AS(split_dataset(occ, Protocol::frontal()), Error);
    Protocol p = Protocol::frontal();
    p.include_occluded = true;
    CHECK(split_dataset(occ, p).probes.size() == 12);
  }
}

TEST_CASE("run_verification") {
  SUBCASE("50 subjects give 100 genuine and 4900 impostor scores") {
    Pcg32 rng(0);
    const Dataset data = testing::random_dataset(50, 4, 0, 16, rng);
    const ScoreSet s = run_verification(data, Protocol::frontal());
    CHECK(s.comparisons.size() == 5000);
    CHECK(s.genuine().size() == 100);
    CHECK(s.impostor().size() == 4900);
    for (const auto& c : s.comparisons) {
      CHECK(c.score >= 0.0);
      CHECK(c.score <= 1.0);
    }
  }

  SUBCASE("a single subject yields only genuine scores") {
    Pcg32 rng(3);
    const ScoreSet s = run_verification(testing::random_dataset(1, 4, 0, 4, rng), Protocol::frontal());
    CHECK(s.genuine().size() == 2);
    CHECK(s.impostor().empty());
  }

  SUBCASE("identical features give identical scores") {
    const ScoreSet s = run_verification(constant_dataset(3, 4), Protocol::frontal());
    REQUIRE(s.comparisons.size() == 18);
    for (const auto& c : s.comparisons) CHECK(c.score == doctest::Approx(1.0).epsilon(1e-15));
  }

  SUBCASE("rejects zero vectors and mixed parts") {
    Dataset d = constant_dataset(2, 4);
    d[0].feature.values.assign(5, 0.0);
    Protocol p = Protocol::frontal();
    bool threw = false;
    // The zero vector may land in either the gallery or the probe set; both are rejected.
    try {
      run_verification(d, p);
    } catch (const Error&) {
      threw = true;
    }
    CHECK(threw);
    Dataset mixed = constant_dataset(2, 4);
    mixed[1].record.part = BodyPart::Face;
    mixed[1].feature.part = BodyPart::Face;
    CHECK_THROWS_AS(run_verification(mixed, p), Error);
  }
}

TEST_CASE("run_identification") {
  Pcg32 rng(8);
  const Dataset data = testing::random_dataset(50, 4, 0, 10, rng);
  const ScoreMatrix m = run_identification(data, Protocol::frontal(3));
  CHECK(m.rows() == 100);
  CHECK(m.cols() == 50);
  CHECK(m.scores.size() == 5000);
  const ScoreSet v = run_verification(data, Protocol::frontal(3));
  REQUIRE(v.comparisons.size() == m.scores.size());
  for (std::size_t i = 0; i < m.scores.size(); ++i) CHECK(v.comparisons[i].score == m.scores[i]);

  SUBCASE("probe equal to its own template wins its row") {
    Dataset d = testing::random_dataset(5, 4, 0, 6, rng);
    const Split s = split_dataset(d, Protocol::frontal());
    Dataset copy = d;
    // Collapse each subject to one shared vector so the template equals every probe.
    for (auto& x : copy)
      for (const auto& y : d)
        if (y.record.subject_id == x.record.subject_id) {
          x.feature.values = y.feature.values;
          break;
        }
    const ScoreMatrix mm = run_identification(copy, Protocol::frontal());
    for (std::size_t r = 0; r < mm.rows(); ++r) {
      const auto row = mm.row(r);
      const auto best = std::max_element(row.begin(), row.end()) - row.begin();
      CHECK(static_cast<std::size_t>(best) == mm.true_column[r]);
    }
    CHECK(s.probes.size() == 10);
  }

  SUBCASE("csv has a header and one row per comparison") {
    const std::string csv = scores_csv(m);
    CHECK(csv.rfind("probe_id,claimed_subject,true_subject,score,label\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5001);
  }
}

TEST_CASE("run_identification_softmax") {
  Pcg32 rng(12);
  Dataset data = testing::random_dataset(4, 4, 0, 3, rng);
  // Give each subject a distinct dominant axis so the classifier can separate them.
  for (auto& s : data) {
    const std::size_t k = static_cast<std::size_t>(s.record.subject_id.back() - '0');
    s.feature.values.assign(4, 0.05);
    s.feature.values[k] = 1.0;
  }
  TrainConfig cfg;
  cfg.learning_rate = 0.5;
  cfg.epochs = 200;
  cfg.batch_size = 4;
  SoftmaxModel model;
  const ScoreMatrix m = run_identification_softmax(data, Protocol::frontal(), cfg, &model);
  CHECK(model.num_classes() == 4);
  CHECK(m.rows() == 8);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    double sum = 0.0;
    for (double p : m.row(r)) sum += p;
    CHECK(std::abs(sum - 1.0) < 1e-12);
    const auto row = m.row(r);
    CHECK(static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin()) == m.true_column[r]);
  }
}

TEST_CASE("protocol names") {
  CHECK(parse_protocol("frontal") == ProtocolKind::FrontalBaseline);
  CHECK(parse_protocol("crosspose") == ProtocolKind::CrossPose);
  CHECK(std::string(to_string(ProtocolKind::CrossPose)) == "crosspose");
  CHECK_THROWS_AS(parse_protocol("sideways"), Error);
}
