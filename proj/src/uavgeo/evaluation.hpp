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

#pragma once

#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "uavgeo/alignment.hpp"
#include "uavgeo/camera.hpp"
#include "uavgeo/io/records.hpp"
#include "uavgeo/types.hpp"

namespace uavgeo {

// ------------------------------------------------------------- localization

// Euclidean center distance (m) and geodesic rotation angle (deg), clamped to
// [0, 180]. Poses must share a UTM zone.
std::pair<double, double> PoseErrors(const GeoPose& est, const GeoPose& gt);

struct ThresholdBand {
  double translation_m = 0.0;
  double orientation_deg = 0.0;
};

// The benchmark's precision bands.
inline std::vector<ThresholdBand> DefaultBands() {
  return {{0.25, 2.0}, {0.5, 5.0}, {5.0, 10.0}};
}

struct RecallPoint {
  ThresholdBand band;
  double joint = 0.0;             // translation AND orientation within band
  double translation_only = 0.0;  // marginal recalls (banding ambiguity in
  double orientation_only = 0.0;  // published numbers; both are reported)
};

struct ErrorSummary {
  double mean = 0.0;
  double std_dev = 0.0;  // population (divide by N)
  size_t count = 0;
};

// Population statistics; throws DomainError on empty input.
ErrorSummary Summarize(const std::vector<double>& errors);

// Right-continuous CDF sampled at each distinct error value, ending at 1.0.
std::vector<std::pair<double, double>> Cdf(const std::vector<double>& errors);

enum class QueryStatus { kRegistered, kAnchored, kFailed };

std::string QueryStatusName(QueryStatus status);

struct QueryError {
  std::string name;
  QueryStatus status = QueryStatus::kFailed;
  double translation_m = 0.0;    // valid unless failed
  double orientation_deg = 0.0;  // valid unless failed
};

struct LocalizationReport {
  std::vector<QueryError> per_query;  // one entry per query, failures included
  ErrorSummary translation;           // over localized queries
  ErrorSummary orientation;
  std::vector<RecallPoint> recalls;   // failed queries count as non-localized
  std::vector<std::pair<double, double>> cdf_translation;
  std::vector<std::pair<double, double>> cdf_orientation;
  size_t total = 0;
  size_t registered = 0;
  size_t anchored = 0;
  size_t failed = 0;
};

// Compares an estimated trajectory against ground-truth poses matched by
// image name (every estimated query needs a ground-truth row).
LocalizationReport BuildLocalizationReport(const Trajectory& estimated,
                                           const Trajectory& ground_truth,
                                           const std::vector<ThresholdBand>& bands = DefaultBands());

// Fixed-layout summary table (the benchmark's reporting format).
std::string RenderLocalizationTable(const ErrorSummary& translation,
                                    const ErrorSummary& orientation);

std::string RenderLocalizationReport(const LocalizationReport& report);

// ---------------------------------------------------------------- detection

// Intersection over union of two boxes; 0 when disjoint or either is empty.
double Iou(const BoundingBox& a, const BoundingBox& b);

struct DetEvalOptions {
  double operating_conf = 0.25;     // precision/recall operating point
  double f1_grid_step = 0.001;
  double confusion_iou = 0.45;
  double confusion_conf = 0.25;
};

// 101-point interpolated average precision for one class at one IoU
// threshold, greedy confidence-ordered matching. Returns 0 for a class with
// ground truth but no predictions; classes absent from the ground truth have
// no defined AP and are excluded from means.
double AveragePrecision(const DetectionFile& gt, const DetectionFile& preds,
                        const std::string& class_label, double iou_thresh);

struct ClassAp {
  std::string class_label;
  double ap50 = 0.0;
  double ap5095 = 0.0;
};

struct F1Curve {
  std::vector<double> thresholds;
  std::vector<double> mean_f1;                          // unweighted class mean
  std::map<std::string, std::vector<double>> per_class;
  double best_threshold = 0.0;  // lowest threshold on ties
  double best_f1 = 0.0;
};

F1Curve F1Confidence(const DetectionFile& gt, const DetectionFile& preds,
                     double grid_step = 0.001);

// Rows are predicted classes, columns are true classes, background last on
// both axes. Matching ignores class (detector-style confusion accounting).
struct ConfusionMatrix {
  std::vector<std::string> classes;  // background is implicit index classes.size()
  Eigen::MatrixXd counts;            // (C+1) x (C+1)

  // Each non-empty column scaled to sum 1.
  Eigen::MatrixXd Normalized() const;
};

ConfusionMatrix BuildConfusionMatrix(const DetectionFile& gt, const DetectionFile& preds,
                                     double iou_thresh = 0.45, double conf_thresh = 0.25);

struct DetectionReport {
  std::vector<ClassAp> per_class;
  double map50 = 0.0;
  double map5095 = 0.0;
  double precision = 0.0;  // micro-averaged at the operating confidence
  double recall = 0.0;
  F1Curve f1;
  ConfusionMatrix confusion;
};

DetectionReport MapSuite(const DetectionFile& gt, const DetectionFile& preds,
                         const DetEvalOptions& options = {});

std::string RenderDetectionReport(const DetectionReport& report);

}  // namespace uavgeo
