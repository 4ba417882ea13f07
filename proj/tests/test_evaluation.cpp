// Copyright (c) 2026 The uavgeo authors.
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

#include "uavgeo/evaluation.hpp"

#include <cmath>

#include <doctest.h>

#include "oracles/detection_oracle.hpp"
#include "uavgeo/errors.hpp"
#include "uavgeo/frames.hpp"
#include "uavgeo/rng.hpp"

using namespace uavgeo;

namespace {

GeoPose PoseAt(double e, double n, double up, const Eigen::Matrix3d& rot) {
  GeoPose pose;
  pose.zone = 34;
  pose.pose.center = {e, n, up};
  pose.pose.rotation = rot;
  return pose;
}

// Conversion helpers between the library types and the oracle's flat types.
struct DetFixture {
  DetectionFile gt;
  DetectionFile preds;
  std::vector<test::OGt> ogt;
  std::vector<test::OPred> opreds;

  void AddGt(const std::string& image, const std::string& cls, double x0, double y0, double x1,
             double y1) {
    ImageDetections* img = nullptr;
    for (auto& i : gt.images) {
      if (i.image_name == image) img = &i;
    }
    if (img == nullptr) {
      gt.images.push_back({image, {}});
      img = &gt.images.back();
    }
    img->detections.push_back({cls, 1.0, {x0, y0, x1, y1}});
    ogt.push_back({image, cls, {x0, y0, x1, y1}});
  }

  void AddPred(const std::string& image, const std::string& cls, double conf, double x0,
               double y0, double x1, double y1) {
    ImageDetections* img = nullptr;
    for (auto& i : preds.images) {
      if (i.image_name == image) img = &i;
    }
    if (img == nullptr) {
      preds.images.push_back({image, {}});
      img = &preds.images.back();
    }
    img->detections.push_back({cls, conf, {x0, y0, x1, y1}});
    opreds.push_back({image, cls, conf, {x0, y0, x1, y1}, opreds.size()});
  }
};

}  // namespace

TEST_CASE("pose errors: identity, pythagoras, and axis rotation") {
  const Eigen::Matrix3d identity = Eigen::Matrix3d::Identity();
  const GeoPose a = PoseAt(100, 200, 50, identity);
  const auto [t0, r0] = PoseErrors(a, a);
  CHECK(t0 == 0.0);
  CHECK(r0 == 0.0);

  const GeoPose b = PoseAt(103, 204, 50, identity);
  CHECK(PoseErrors(a, b).first == doctest::Approx(5.0).epsilon(1e-12));

  for (const auto& axis : {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0),
                           Eigen::Vector3d(0.6, 0.8, 0).normalized()}) {
    const Eigen::Matrix3d rot =
        Eigen::AngleAxisd(10.0 * M_PI / 180.0, axis).toRotationMatrix() * identity;
    const GeoPose c = PoseAt(100, 200, 50, rot);
    CHECK(PoseErrors(c, a).second == doctest::Approx(10.0).epsilon(1e-9));
  }

  GeoPose other_zone = a;
  other_zone.zone = 35;
  CHECK_THROWS_AS(PoseErrors(a, other_zone), DomainError);
}

TEST_CASE("summaries use population statistics") {
  const ErrorSummary single = Summarize({3.5});
  CHECK(single.mean == 3.5);
  CHECK(single.std_dev == 0.0);

  const ErrorSummary pair = Summarize({1.0, 3.0});
  CHECK(pair.mean == 2.0);
  CHECK(pair.std_dev == 1.0);  // population, not sample

  CHECK_THROWS_AS(Summarize({}), DomainError);
}

TEST_CASE("cdf is a right-continuous step ending at one") {
  const auto single = Cdf({2.5});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == std::pair<double, double>(2.5, 1.0));

  const auto cdf = Cdf({3.0, 1.0, 2.0, 2.0});
  REQUIRE(cdf.size() == 3);
  CHECK(cdf[0] == std::pair<double, double>(1.0, 0.25));
  CHECK(cdf[1] == std::pair<double, double>(2.0, 0.75));
  CHECK(cdf[2] == std::pair<double, double>(3.0, 1.0));
  for (size_t i = 1; i < cdf.size(); ++i) {
    CHECK(cdf[i].second > cdf[i - 1].second);
  }
  CHECK(cdf.back().second == 1.0);
}

TEST_CASE("threshold recall bands: joint and marginal") {
  Trajectory est, gt;
  est.frame = gt.frame = TrajectoryFrame::kUtm;
  est.zone = gt.zone = 34;
  auto add = [&](const std::string& name, double offset_m, double angle_deg, bool failed) {
    TrajectoryEntry e;
    e.image_name = name;
    if (!failed) {
      e.pose.center = {offset_m, 0, 0};
      e.pose.rotation =
          Eigen::AngleAxisd(angle_deg * M_PI / 180.0, Eigen::Vector3d::UnitZ()).toRotationMatrix();
      e.registered = true;
    } else {
      e.has_pose = false;
    }
    est.entries.push_back(e);
    TrajectoryEntry g;
    g.image_name = name;
    g.pose = RigidPose{};
    g.registered = true;
    gt.entries.push_back(g);
  };
  add("q1", 0.0, 0.0, true);   // failed: counts against every band
  add("q2", 0.3, 1.0, false);  // (0.3 m, 1 deg)
  add("q3", 0.1, 0.5, false);  // (0.1 m, 0.5 deg)

  const LocalizationReport report = BuildLocalizationReport(est, gt);
  CHECK(report.total == 3);
  CHECK(report.failed == 1);
  REQUIRE(report.recalls.size() == 3);
  // Bands: (0.25, 2): only q3 -> 1/3. (0.5, 5): q2+q3 -> 2/3. (5, 10): 2/3.
  CHECK(report.recalls[0].joint == doctest::Approx(1.0 / 3.0));
  CHECK(report.recalls[1].joint == doctest::Approx(2.0 / 3.0));
  CHECK(report.recalls[2].joint == doctest::Approx(2.0 / 3.0));
  // Monotone in the band.
  CHECK(report.recalls[0].joint <= report.recalls[1].joint);
  CHECK(report.recalls[1].joint <= report.recalls[2].joint);

  SUBCASE("all zero errors recall (1,1,1)") {
    Trajectory perfect = gt;
    const LocalizationReport r = BuildLocalizationReport(perfect, gt);
    for (const auto& band : r.recalls) {
      CHECK(band.joint == 1.0);
    }
  }
}

TEST_CASE("report table renders the published layout") {
  ErrorSummary translation{3.69, 1.79, 125};
  ErrorSummary orientation{1.77, 0.77, 125};
  const std::string table = RenderLocalizationTable(translation, orientation);
  CHECK(table.find("Summary Statistics for Translation and Orientation Localization Errors") !=
        std::string::npos);
  CHECK(table.find("Mean Translation Error (m)") != std::string::npos);
  CHECK(table.find("3.69") != std::string::npos);
  CHECK(table.find("Standard Deviation Translation Error (m)") != std::string::npos);
  CHECK(table.find("1.79") != std::string::npos);
  CHECK(table.find("Mean Orientation Error (deg)") != std::string::npos);
  CHECK(table.find("1.77") != std::string::npos);
  CHECK(table.find("Standard Deviation Orientation Error (deg)") != std::string::npos);
  CHECK(table.find("0.77") != std::string::npos);
}

TEST_CASE("iou basics and hand computation") {
  const BoundingBox a{0, 0, 2, 2};
  CHECK(Iou(a, a) == 1.0);
  CHECK(Iou(a, {5, 5, 6, 6}) == 0.0);
  CHECK(Iou(a, {1, 0, 3, 2}) == doctest::Approx(2.0 / 6.0));
  CHECK(Iou(a, {2, 0, 4, 2}) == 0.0);  // touching edges do not overlap
}

TEST_CASE("perfect predictions give AP 1 and F1 1") {
  DetFixture f;
  f.AddGt("i1", "car", 0, 0, 10, 10);
  f.AddGt("i1", "truck", 20, 20, 40, 40);
  f.AddGt("i2", "car", 5, 5, 15, 15);
  for (const auto& g : f.ogt) {
    f.AddPred(g.image, g.cls, 1.0, g.box.x0, g.box.y0, g.box.x1, g.box.y1);
  }
  CHECK(AveragePrecision(f.gt, f.preds, "car", 0.5) == doctest::Approx(1.0));
  CHECK(AveragePrecision(f.gt, f.preds, "truck", 0.5) == doctest::Approx(1.0));

  const DetectionReport report = MapSuite(f.gt, f.preds);
  CHECK(report.map50 == doctest::Approx(1.0));
  CHECK(report.map5095 == doctest::Approx(1.0));
  CHECK(report.precision == doctest::Approx(1.0));
  CHECK(report.recall == doctest::Approx(1.0));
  CHECK(report.f1.best_f1 == doctest::Approx(1.0));
  // F1 is 1 at every threshold not above the minimum confidence.
  CHECK(report.f1.mean_f1.front() == doctest::Approx(1.0));
}

TEST_CASE("no predictions gives AP 0") {
  DetFixture f;
  f.AddGt("i1", "car", 0, 0, 10, 10);
  CHECK(AveragePrecision(f.gt, f.preds, "car", 0.5) == 0.0);
}

TEST_CASE("AP of a class absent from ground truth is undefined") {
  DetFixture f;
  f.AddGt("i1", "car", 0, 0, 10, 10);
  f.AddPred("i1", "ghost", 0.9, 0, 0, 10, 10);
  CHECK_THROWS_AS(AveragePrecision(f.gt, f.preds, "ghost", 0.5), DomainError);
  // And the suite simply excludes it from the mean.
  const DetectionReport report = MapSuite(f.gt, f.preds);
  CHECK(report.per_class.size() == 1);
  CHECK(report.per_class[0].class_label == "car");
}

TEST_CASE("crafted 6-gt/8-pred fixture equals the brute-force oracle") {
  DetFixture f;
  // Two images, six ground-truth cars.
  f.AddGt("a", "car", 0, 0, 10, 10);
  f.AddGt("a", "car", 20, 0, 30, 10);
  f.AddGt("a", "car", 40, 0, 50, 10);
  f.AddGt("b", "car", 0, 20, 10, 30);
  f.AddGt("b", "car", 20, 20, 30, 30);
  f.AddGt("b", "car", 40, 20, 50, 30);
  // Eight predictions: good, duplicate, shifted, and spurious ones.
  f.AddPred("a", "car", 0.95, 0.5, 0.5, 10.5, 10.5);   // TP
  f.AddPred("a", "car", 0.90, 0, 0, 10, 10);           // duplicate -> FP
  f.AddPred("a", "car", 0.85, 21, 1, 31, 11);          // TP (shifted)
  f.AddPred("a", "car", 0.80, 70, 70, 80, 80);         // FP (nothing there)
  f.AddPred("b", "car", 0.75, 0, 20, 10, 30);          // TP
  f.AddPred("b", "car", 0.70, 25, 25, 35, 35);         // low IoU -> FP at 0.5
  f.AddPred("b", "car", 0.65, 40.2, 20.2, 50.2, 30.2); // TP
  f.AddPred("b", "car", 0.60, 90, 90, 99, 99);         // FP

  for (const double thresh : {0.5, 0.6, 0.75}) {
    const double lib = AveragePrecision(f.gt, f.preds, "car", thresh);
    const double oracle = test::OracleAveragePrecision(f.ogt, f.opreds, "car", thresh);
    CHECK(lib == doctest::Approx(oracle).epsilon(1e-12));
  }
}

TEST_CASE("AP is invariant under positive monotone confidence transforms") {
  DetFixture f;
  f.AddGt("a", "car", 0, 0, 10, 10);
  f.AddGt("a", "car", 20, 0, 30, 10);
  f.AddPred("a", "car", 0.9, 0, 0, 10, 10);
  f.AddPred("a", "car", 0.4, 21, 1, 31, 11);
  f.AddPred("a", "car", 0.2, 50, 50, 60, 60);
  const double base = AveragePrecision(f.gt, f.preds, "car", 0.5);

  DetFixture squashed = f;
  for (auto& image : squashed.preds.images) {
    for (auto& det : image.detections) {
      det.confidence = det.confidence * det.confidence;  // monotone on [0,1]
    }
  }
  CHECK(AveragePrecision(squashed.gt, squashed.preds, "car", 0.5) == doctest::Approx(base));
}

TEST_CASE("random small instances match the oracle exactly") {
  Rng rng(555);
  for (int instance = 0; instance < 60; ++instance) {
    DetFixture f;
    const char* classes[] = {"car", "truck", "human"};
    const int n_gt = static_cast<int>(rng.UniformInt(1, 6));
    const int n_pred = static_cast<int>(rng.UniformInt(0, 8));
    for (int g = 0; g < n_gt; ++g) {
      const double x0 = rng.Uniform(0, 80);
      const double y0 = rng.Uniform(0, 80);
      f.AddGt(rng.Uniform() < 0.5 ? "i1" : "i2", classes[rng.UniformInt(0, 2)], x0, y0,
              x0 + rng.Uniform(4, 20), y0 + rng.Uniform(4, 20));
    }
    for (int p = 0; p < n_pred; ++p) {
      // Half the predictions perturb a ground-truth box, half are random.
      if (!f.ogt.empty() && rng.Uniform() < 0.5) {
        const auto& g = f.ogt[rng.UniformIndex(f.ogt.size())];
        const double dx = rng.Uniform(-4, 4), dy = rng.Uniform(-4, 4);
        f.AddPred(g.image, g.cls, rng.Uniform(0.05, 1.0), g.box.x0 + dx, g.box.y0 + dy,
                  g.box.x1 + dx, g.box.y1 + dy);
      } else {
        const double x0 = rng.Uniform(0, 80);
        const double y0 = rng.Uniform(0, 80);
        f.AddPred(rng.Uniform() < 0.5 ? "i1" : "i2", classes[rng.UniformInt(0, 2)],
                  rng.Uniform(0.05, 1.0), x0, y0, x0 + rng.Uniform(4, 20),
                  y0 + rng.Uniform(4, 20));
      }
    }

    std::set<std::string> gt_classes;
    for (const auto& g : f.ogt) gt_classes.insert(g.cls);
    for (const auto& cls : gt_classes) {
      for (const double thresh : {0.5, 0.75}) {
        CHECK(AveragePrecision(f.gt, f.preds, cls, thresh) ==
              doctest::Approx(test::OracleAveragePrecision(f.ogt, f.opreds, cls, thresh))
                  .epsilon(1e-12));
      }
    }

    // F1 curve spot checks at five thresholds.
    const F1Curve curve = F1Confidence(f.gt, f.preds, 0.25);
    for (size_t t = 0; t < curve.thresholds.size(); ++t) {
      CHECK(curve.mean_f1[t] ==
            doctest::Approx(test::OracleMeanF1(f.ogt, f.opreds, curve.thresholds[t]))
                .epsilon(1e-12));
    }

    // Confusion matrix equality.
    const ConfusionMatrix cm = BuildConfusionMatrix(f.gt, f.preds, 0.45, 0.25);
    const auto oracle_counts = test::OracleConfusion(f.ogt, f.opreds, 0.45, 0.25);
    const size_t bg = cm.classes.size();
    auto index_of = [&](const std::string& label) -> size_t {
      if (label == "?") return bg;
      for (size_t i = 0; i < cm.classes.size(); ++i) {
        if (cm.classes[i] == label) return i;
      }
      REQUIRE(false);
      return 0;
    };
    double oracle_total = 0.0;
    for (const auto& [key, count] : oracle_counts) {
      CHECK(cm.counts(index_of(key.first), index_of(key.second)) == count);
      oracle_total += count;
    }
    CHECK(cm.counts.sum() == oracle_total);
  }
}

TEST_CASE("empty predictions give F1 0 everywhere") {
  DetFixture f;
  f.AddGt("a", "car", 0, 0, 10, 10);
  const F1Curve curve = F1Confidence(f.gt, f.preds, 0.5);
  for (const double v : curve.mean_f1) {
    CHECK(v == 0.0);
  }
  CHECK(curve.best_f1 == 0.0);
  CHECK(curve.best_threshold == 0.0);  // lowest threshold on ties
}

TEST_CASE("confusion matrix fixtures") {
  SUBCASE("perfect single class") {
    DetFixture f;
    f.AddGt("a", "car", 0, 0, 10, 10);
    f.AddPred("a", "car", 0.9, 0, 0, 10, 10);
    const ConfusionMatrix cm = BuildConfusionMatrix(f.gt, f.preds);
    REQUIRE(cm.classes == std::vector<std::string>{"car"});
    CHECK(cm.counts(0, 0) == 1.0);
    CHECK(cm.counts(1, 0) == 0.0);
    CHECK(cm.counts(0, 1) == 0.0);
    const Eigen::MatrixXd norm = cm.Normalized();
    CHECK(norm(0, 0) == 1.0);
  }
  SUBCASE("missed ground truth lands in the background row") {
    DetFixture f;
    f.AddGt("a", "car", 0, 0, 10, 10);
    const ConfusionMatrix cm = BuildConfusionMatrix(f.gt, f.preds);
    CHECK(cm.counts(1, 0) == 1.0);  // (background, car)
    CHECK(cm.Normalized()(1, 0) == 1.0);
  }
  SUBCASE("class crossover shows as an off-diagonal one") {
    DetFixture f;
    f.AddGt("a", "A", 0, 0, 10, 10);
    f.AddPred("a", "B", 0.9, 0, 0, 10, 10);  // right place, wrong class
    const ConfusionMatrix cm = BuildConfusionMatrix(f.gt, f.preds);
    REQUIRE(cm.classes == std::vector<std::string>{"A", "B"});
    const Eigen::MatrixXd norm = cm.Normalized();
    // Column of true class A: predicted B with probability 1.
    CHECK(norm(1, 0) == 1.0);
    CHECK(cm.counts(1, 0) == 1.0);
  }
  SUBCASE("columns of the normalized matrix sum to one") {
    DetFixture f;
    f.AddGt("a", "A", 0, 0, 10, 10);
    f.AddGt("a", "B", 20, 20, 30, 30);
    f.AddGt("b", "A", 0, 0, 10, 10);
    f.AddPred("a", "A", 0.9, 0.2, 0, 10, 10);
    f.AddPred("a", "A", 0.8, 20, 20, 30, 30);  // wrong class match
    f.AddPred("b", "B", 0.7, 50, 50, 60, 60);  // spurious
    const ConfusionMatrix cm = BuildConfusionMatrix(f.gt, f.preds);
    const Eigen::MatrixXd norm = cm.Normalized();
    for (Eigen::Index c = 0; c < norm.cols(); ++c) {
      const double raw = cm.counts.col(c).sum();
      if (raw > 0.0) {
        CHECK(norm.col(c).sum() == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
    CHECK((cm.counts.array() >= 0.0).all());
  }
}

TEST_CASE("best threshold ties resolve to the lowest threshold") {
  DetFixture f;
  f.AddGt("a", "car", 0, 0, 10, 10);
  f.AddPred("a", "car", 0.5, 0, 0, 10, 10);
  const F1Curve curve = F1Confidence(f.gt, f.preds, 0.1);
  // F1 = 1 for every threshold <= 0.5, so the argmax is threshold 0.
  CHECK(curve.best_f1 == doctest::Approx(1.0));
  CHECK(curve.best_threshold == 0.0);
}
