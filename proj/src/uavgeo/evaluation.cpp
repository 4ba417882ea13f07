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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <set>
#include <sstream>

#include "uavgeo/errors.hpp"

namespace uavgeo {

std::pair<double, double> PoseErrors(const GeoPose& est, const GeoPose& gt) {
  if (est.zone != gt.zone || est.hemisphere != gt.hemisphere) {
    throw DomainError("pose error comparison across UTM zones");
  }
  const double translation = (est.pose.center - gt.pose.center).norm();
  const double cos_angle =
      ((est.pose.rotation.transpose() * gt.pose.rotation).trace() - 1.0) / 2.0;
  const double orientation =
      std::acos(std::clamp(cos_angle, -1.0, 1.0)) * 180.0 / M_PI;
  return {translation, orientation};
}

ErrorSummary Summarize(const std::vector<double>& errors) {
  if (errors.empty()) {
    throw DomainError("cannot summarize an empty error set");
  }
  ErrorSummary s;
  s.count = errors.size();
  s.mean = std::accumulate(errors.begin(), errors.end(), 0.0) / errors.size();
  double var = 0.0;
  for (const double e : errors) {
    var += (e - s.mean) * (e - s.mean);
  }
  s.std_dev = std::sqrt(var / errors.size());
  return s;
}

std::vector<std::pair<double, double>> Cdf(const std::vector<double>& errors) {
  if (errors.empty()) {
    throw DomainError("cannot build a CDF from an empty error set");
  }
  std::vector<double> sorted = errors;
  std::sort(sorted.begin(), sorted.end());
  std::vector<std::pair<double, double>> cdf;
  const double n = static_cast<double>(sorted.size());
  for (size_t i = 0; i < sorted.size(); ++i) {
    if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;
    cdf.emplace_back(sorted[i], static_cast<double>(i + 1) / n);
  }
  return cdf;
}

std::string QueryStatusName(QueryStatus status) {
  switch (status) {
    case QueryStatus::kRegistered: return "registered";
    case QueryStatus::kAnchored: return "anchored";
    case QueryStatus::kFailed: return "failed";
  }
  return "unknown";
}

LocalizationReport BuildLocalizationReport(const Trajectory& estimated,
                                           const Trajectory& ground_truth,
                                           const std::vector<ThresholdBand>& bands) {
  LocalizationReport report;
  report.total = estimated.entries.size();

  std::vector<double> t_errors, r_errors;
  for (const auto& entry : estimated.entries) {
    QueryError qe;
    qe.name = entry.image_name;
    if (!entry.has_pose) {
      qe.status = QueryStatus::kFailed;
      qe.translation_m = std::nan("");
      qe.orientation_deg = std::nan("");
      ++report.failed;
      report.per_query.push_back(std::move(qe));
      continue;
    }
    const TrajectoryEntry* gt = ground_truth.Find(entry.image_name);
    if (gt == nullptr || !gt->has_pose) {
      throw ValidationError("no ground-truth pose for query '" + entry.image_name + "'");
    }
    GeoPose est_pose{entry.pose, estimated.zone, estimated.hemisphere};
    GeoPose gt_pose{gt->pose, estimated.zone, estimated.hemisphere};
    const auto [t_err, r_err] = PoseErrors(est_pose, gt_pose);
    qe.translation_m = t_err;
    qe.orientation_deg = r_err;
    qe.status = entry.anchored ? QueryStatus::kAnchored : QueryStatus::kRegistered;
    (entry.anchored ? report.anchored : report.registered) += 1;
    t_errors.push_back(t_err);
    r_errors.push_back(r_err);
    report.per_query.push_back(std::move(qe));
  }

  if (!t_errors.empty()) {
    report.translation = Summarize(t_errors);
    report.orientation = Summarize(r_errors);
    report.cdf_translation = Cdf(t_errors);
    report.cdf_orientation = Cdf(r_errors);
  }

  const double denom = report.total > 0 ? static_cast<double>(report.total) : 1.0;
  for (const auto& band : bands) {
    RecallPoint point;
    point.band = band;
    size_t joint = 0, t_only = 0, r_only = 0;
    for (size_t i = 0; i < t_errors.size(); ++i) {
      const bool t_ok = t_errors[i] <= band.translation_m;
      const bool r_ok = r_errors[i] <= band.orientation_deg;
      joint += t_ok && r_ok;
      t_only += t_ok;
      r_only += r_ok;
    }
    point.joint = joint / denom;
    point.translation_only = t_only / denom;
    point.orientation_only = r_only / denom;
    report.recalls.push_back(point);
  }
  return report;
}

namespace {

std::string FormatRow(const std::string& label, double value) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%-44s| %8.2f\n", label.c_str(), value);
  return buf;
}

}  // namespace

std::string RenderLocalizationTable(const ErrorSummary& translation,
                                    const ErrorSummary& orientation) {
  const std::string rule(55, '-');
  std::ostringstream out;
  out << "Summary Statistics for Translation and Orientation Localization Errors\n";
  out << rule << "\n";
  char header[96];
  std::snprintf(header, sizeof(header), "%-44s| %8s\n", "Metric", "Value");
  out << header << rule << "\n";
  out << FormatRow("Mean Translation Error (m)", translation.mean);
  out << FormatRow("Standard Deviation Translation Error (m)", translation.std_dev);
  out << FormatRow("Mean Orientation Error (deg)", orientation.mean);
  out << FormatRow("Standard Deviation Orientation Error (deg)", orientation.std_dev);
  out << rule << "\n";
  return out.str();
}

std::string RenderLocalizationReport(const LocalizationReport& report) {
  std::ostringstream out;
  out << RenderLocalizationTable(report.translation, report.orientation);
  out << "Queries: " << report.total << " total, " << report.registered << " registered, "
      << report.anchored << " anchored, " << report.failed << " failed\n";
  for (const auto& r : report.recalls) {
    char line[160];
    std::snprintf(line, sizeof(line),
                  "within %.2f m / %.0f deg: %5.1f%% joint, %5.1f%% translation, "
                  "%5.1f%% orientation\n",
                  r.band.translation_m, r.band.orientation_deg, 100.0 * r.joint,
                  100.0 * r.translation_only, 100.0 * r.orientation_only);
    out << line;
  }
  return out.str();
}

// ---------------------------------------------------------------- detection

double Iou(const BoundingBox& a, const BoundingBox& b) {
  if (!a.Valid() || !b.Valid()) return 0.0;
  const double ix = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
  const double iy = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
  if (ix <= 0.0 || iy <= 0.0) return 0.0;
  const double inter = ix * iy;
  return inter / (a.Area() + b.Area() - inter);
}

namespace {

struct FlatPred {
  size_t image_idx;  // index into preds.images
  size_t det_idx;
  double conf;
};

// Predictions of one class in descending confidence, ties by input order.
std::vector<FlatPred> SortedClassPreds(const DetectionFile& preds,
                                       const std::string& class_label, double min_conf) {
  std::vector<FlatPred> flat;
  for (size_t i = 0; i < preds.images.size(); ++i) {
    const auto& dets = preds.images[i].detections;
    for (size_t j = 0; j < dets.size(); ++j) {
      if (dets[j].class_label == class_label && dets[j].confidence >= min_conf) {
        flat.push_back({i, j, dets[j].confidence});
      }
    }
  }
  std::stable_sort(flat.begin(), flat.end(),
                   [](const FlatPred& a, const FlatPred& b) { return a.conf > b.conf; });
  return flat;
}

std::vector<std::string> ClassesInGt(const DetectionFile& gt) {
  std::set<std::string> classes;
  for (const auto& image : gt.images) {
    for (const auto& det : image.detections) {
      classes.insert(det.class_label);
    }
  }
  return {classes.begin(), classes.end()};
}

struct MatchCounts {
  size_t tp = 0;
  size_t fp = 0;
  size_t total_gt = 0;
};

// Greedy confidence-ordered matching of one class across the image set.
// When `tp_flags` is given it receives one entry per sorted prediction.
MatchCounts MatchClass(const DetectionFile& gt, const DetectionFile& preds,
                       const std::string& class_label, double iou_thresh, double min_conf,
                       std::vector<bool>* tp_flags = nullptr) {
  MatchCounts counts;

  // gt boxes of this class, keyed by image name.
  std::map<std::string, std::vector<const Detection*>> gt_boxes;
  for (const auto& image : gt.images) {
    auto& list = gt_boxes[image.image_name];
    for (const auto& det : image.detections) {
      if (det.class_label == class_label) {
        list.push_back(&det);
        ++counts.total_gt;
      }
    }
  }
  std::map<std::string, std::vector<bool>> matched;
  for (const auto& [name, list] : gt_boxes) {
    matched[name].assign(list.size(), false);
  }

  const auto flat = SortedClassPreds(preds, class_label, min_conf);
  if (tp_flags != nullptr) {
    tp_flags->assign(flat.size(), false);
  }
  for (size_t p = 0; p < flat.size(); ++p) {
    const auto& image = preds.images[flat[p].image_idx];
    const Detection& det = image.detections[flat[p].det_idx];
    const auto it = gt_boxes.find(image.image_name);
    double best_iou = 0.0;
    int best_idx = -1;
    if (it != gt_boxes.end()) {
      auto& flags = matched[image.image_name];
      for (size_t g = 0; g < it->second.size(); ++g) {
        if (flags[g]) continue;
        const double overlap = Iou(det.box, it->second[g]->box);
        if (overlap > best_iou) {
          best_iou = overlap;
          best_idx = static_cast<int>(g);
        }
      }
    }
    if (best_idx >= 0 && best_iou >= iou_thresh) {
      matched[image.image_name][best_idx] = true;
      ++counts.tp;
      if (tp_flags != nullptr) (*tp_flags)[p] = true;
    } else {
      ++counts.fp;
    }
  }
  return counts;
}

}  // namespace

double AveragePrecision(const DetectionFile& gt, const DetectionFile& preds,
                        const std::string& class_label, double iou_thresh) {
  std::vector<bool> tp_flags;
  const MatchCounts counts =
      MatchClass(gt, preds, class_label, iou_thresh, /*min_conf=*/0.0, &tp_flags);
  if (counts.total_gt == 0) {
    throw DomainError("average precision undefined: class '" + class_label +
                      "' absent from ground truth");
  }
  if (tp_flags.empty()) {
    return 0.0;
  }

  // Precision/recall along the confidence-ordered prediction list.
  std::vector<double> precision(tp_flags.size());
  std::vector<double> recall(tp_flags.size());
  size_t cum_tp = 0;
  for (size_t i = 0; i < tp_flags.size(); ++i) {
    cum_tp += tp_flags[i] ? 1 : 0;
    precision[i] = static_cast<double>(cum_tp) / static_cast<double>(i + 1);
    recall[i] = static_cast<double>(cum_tp) / static_cast<double>(counts.total_gt);
  }

  // 101-point interpolation: mean over r in {0, 0.01, .., 1} of the maximum
  // precision at recall >= r.
  double ap = 0.0;
  for (int r = 0; r <= 100; ++r) {
    const double target = r / 100.0;
    double best = 0.0;
    for (size_t i = 0; i < precision.size(); ++i) {
      if (recall[i] >= target - 1e-12) {
        best = std::max(best, *std::max_element(precision.begin() + i, precision.end()));
        break;
      }
    }
    ap += best;
  }
  return ap / 101.0;
}

F1Curve F1Confidence(const DetectionFile& gt, const DetectionFile& preds, double grid_step) {
  if (grid_step <= 0.0 || grid_step > 1.0) {
    throw DomainError("F1 grid step must lie in (0, 1]");
  }
  const auto classes = ClassesInGt(gt);
  F1Curve curve;
  const int steps = static_cast<int>(std::round(1.0 / grid_step));
  for (int s = 0; s <= steps; ++s) {
    curve.thresholds.push_back(s * grid_step);
  }
  for (const auto& c : classes) {
    curve.per_class[c].resize(curve.thresholds.size());
  }
  curve.mean_f1.resize(curve.thresholds.size());

  for (size_t t = 0; t < curve.thresholds.size(); ++t) {
    const double thresh = curve.thresholds[t];
    double sum_f1 = 0.0;
    for (const auto& c : classes) {
      const MatchCounts counts = MatchClass(gt, preds, c, /*iou_thresh=*/0.5, thresh);
      const size_t preds_kept = counts.tp + counts.fp;
      const double precision =
          preds_kept > 0 ? static_cast<double>(counts.tp) / preds_kept : 0.0;
      const double recall =
          counts.total_gt > 0 ? static_cast<double>(counts.tp) / counts.total_gt : 0.0;
      const double f1 =
          precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
      curve.per_class[c][t] = f1;
      sum_f1 += f1;
    }
    curve.mean_f1[t] = classes.empty() ? 0.0 : sum_f1 / classes.size();
  }

  size_t best = 0;
  for (size_t t = 1; t < curve.mean_f1.size(); ++t) {
    if (curve.mean_f1[t] > curve.mean_f1[best]) {
      best = t;  // strict improvement keeps the lowest threshold on ties
    }
  }
  curve.best_threshold = curve.thresholds[best];
  curve.best_f1 = curve.mean_f1.empty() ? 0.0 : curve.mean_f1[best];
  return curve;
}

Eigen::MatrixXd ConfusionMatrix::Normalized() const {
  Eigen::MatrixXd out = counts;
  for (Eigen::Index col = 0; col < out.cols(); ++col) {
    const double sum = out.col(col).sum();
    if (sum > 0.0) {
      out.col(col) /= sum;
    }
  }
  return out;
}

ConfusionMatrix BuildConfusionMatrix(const DetectionFile& gt, const DetectionFile& preds,
                                     double iou_thresh, double conf_thresh) {
  std::set<std::string> class_set;
  for (const auto& image : gt.images) {
    for (const auto& det : image.detections) class_set.insert(det.class_label);
  }
  for (const auto& image : preds.images) {
    for (const auto& det : image.detections) {
      if (det.confidence >= conf_thresh) class_set.insert(det.class_label);
    }
  }

  ConfusionMatrix cm;
  cm.classes.assign(class_set.begin(), class_set.end());
  const size_t bg = cm.classes.size();  // background index
  cm.counts = Eigen::MatrixXd::Zero(bg + 1, bg + 1);
  auto class_index = [&](const std::string& label) {
    return static_cast<size_t>(
        std::lower_bound(cm.classes.begin(), cm.classes.end(), label) - cm.classes.begin());
  };

  // Union of image names so predictions without ground truth still count.
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& image : gt.images) {
    if (seen.insert(image.image_name).second) names.push_back(image.image_name);
  }
  for (const auto& image : preds.images) {
    if (seen.insert(image.image_name).second) names.push_back(image.image_name);
  }

  for (const auto& name : names) {
    const ImageDetections* gt_image = gt.Find(name);
    const ImageDetections* pred_image = preds.Find(name);

    std::vector<const Detection*> gts;
    if (gt_image != nullptr) {
      for (const auto& det : gt_image->detections) gts.push_back(&det);
    }
    std::vector<const Detection*> kept;
    if (pred_image != nullptr) {
      for (const auto& det : pred_image->detections) {
        if (det.confidence >= conf_thresh) kept.push_back(&det);
      }
    }

    // Class-agnostic greedy matching by IoU, best overlaps first.
    struct Pair {
      double iou;
      size_t pred;
      size_t gt;
    };
    std::vector<Pair> pairs;
    for (size_t p = 0; p < kept.size(); ++p) {
      for (size_t g = 0; g < gts.size(); ++g) {
        const double overlap = Iou(kept[p]->box, gts[g]->box);
        if (overlap >= iou_thresh) {
          pairs.push_back({overlap, p, g});
        }
      }
    }
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
      if (a.iou != b.iou) return a.iou > b.iou;
      if (a.pred != b.pred) return a.pred < b.pred;
      return a.gt < b.gt;
    });
    std::vector<bool> pred_used(kept.size(), false);
    std::vector<bool> gt_used(gts.size(), false);
    for (const auto& pair : pairs) {
      if (pred_used[pair.pred] || gt_used[pair.gt]) continue;
      pred_used[pair.pred] = true;
      gt_used[pair.gt] = true;
      cm.counts(class_index(kept[pair.pred]->class_label),
                class_index(gts[pair.gt]->class_label)) += 1.0;
    }
    for (size_t g = 0; g < gts.size(); ++g) {
      if (!gt_used[g]) {
        cm.counts(bg, class_index(gts[g]->class_label)) += 1.0;  // missed
      }
    }
    for (size_t p = 0; p < kept.size(); ++p) {
      if (!pred_used[p]) {
        cm.counts(class_index(kept[p]->class_label), bg) += 1.0;  // spurious
      }
    }
  }
  return cm;
}

DetectionReport MapSuite(const DetectionFile& gt, const DetectionFile& preds,
                         const DetEvalOptions& options) {
  DetectionReport report;
  const auto classes = ClassesInGt(gt);

  double sum50 = 0.0, sum5095 = 0.0;
  for (const auto& c : classes) {
    ClassAp entry;
    entry.class_label = c;
    entry.ap50 = AveragePrecision(gt, preds, c, 0.5);
    double sum = 0.0;
    for (int i = 0; i < 10; ++i) {
      sum += AveragePrecision(gt, preds, c, 0.5 + 0.05 * i);
    }
    entry.ap5095 = sum / 10.0;
    sum50 += entry.ap50;
    sum5095 += entry.ap5095;
    report.per_class.push_back(std::move(entry));
  }
  if (!classes.empty()) {
    report.map50 = sum50 / classes.size();
    report.map5095 = sum5095 / classes.size();
  }

  // Micro precision/recall at the operating confidence.
  size_t tp = 0, fp = 0, total_gt = 0;
  for (const auto& c : classes) {
    const MatchCounts counts = MatchClass(gt, preds, c, 0.5, options.operating_conf);
    tp += counts.tp;
    fp += counts.fp;
    total_gt += counts.total_gt;
  }
  // Predictions of classes with no ground truth anywhere are false positives.
  std::set<std::string> gt_classes(classes.begin(), classes.end());
  for (const auto& image : preds.images) {
    for (const auto& det : image.detections) {
      if (det.confidence >= options.operating_conf &&
          gt_classes.find(det.class_label) == gt_classes.end()) {
        ++fp;
      }
    }
  }
  report.precision = tp + fp > 0 ? static_cast<double>(tp) / (tp + fp) : 0.0;
  report.recall = total_gt > 0 ? static_cast<double>(tp) / total_gt : 0.0;

  report.f1 = F1Confidence(gt, preds, options.f1_grid_step);
  report.confusion =
      BuildConfusionMatrix(gt, preds, options.confusion_iou, options.confusion_conf);
  return report;
}

std::string RenderDetectionReport(const DetectionReport& report) {
  std::ostringstream out;
  char line[160];
  std::snprintf(line, sizeof(line), "%-16s %8s %12s\n", "class", "AP@0.5", "AP@0.5:0.95");
  out << line;
  for (const auto& c : report.per_class) {
    std::snprintf(line, sizeof(line), "%-16s %8.3f %12.3f\n", c.class_label.c_str(), c.ap50,
                  c.ap5095);
    out << line;
  }
  std::snprintf(line, sizeof(line), "%-16s %8.3f %12.3f\n", "mean", report.map50,
                report.map5095);
  out << line;
  std::snprintf(line, sizeof(line),
                "precision %.3f, recall %.3f at operating confidence\n"
                "best mean F1 %.3f at confidence %.3f\n",
                report.precision, report.recall, report.f1.best_f1, report.f1.best_threshold);
  out << line;

  const Eigen::MatrixXd norm = report.confusion.Normalized();
  out << "normalized confusion (rows predicted, columns true, background last):\n";
  std::vector<std::string> labels = report.confusion.classes;
  labels.push_back("background");
  std::snprintf(line, sizeof(line), "%-14s", "");
  out << line;
  for (const auto& l : labels) {
    std::snprintf(line, sizeof(line), " %10.10s", l.c_str());
    out << line;
  }
  out << "\n";
  for (Eigen::Index r = 0; r < norm.rows(); ++r) {
    std::snprintf(line, sizeof(line), "%-14.14s", labels[r].c_str());
    out << line;
    for (Eigen::Index c = 0; c < norm.cols(); ++c) {
      std::snprintf(line, sizeof(line), " %10.3f", norm(r, c));
      out << line;
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace uavgeo
