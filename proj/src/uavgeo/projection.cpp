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

#include "uavgeo/projection.hpp"

#include <cmath>
#include <limits>

#include "uavgeo/errors.hpp"

namespace uavgeo {

std::vector<ProjectedPoint> ProjectCloud(const PointCloud& cloud, const GeoPose& pose,
                                         const Intrinsics& k) {
  if (cloud.frame != CloudFrame::kUtm) {
    throw DomainError("cloud is not geo-referenced (frame tag is local)");
  }
  if (cloud.zone != pose.zone || cloud.hemisphere != pose.hemisphere) {
    throw DomainError("cloud UTM zone " + std::to_string(cloud.zone) +
                      HemisphereName(cloud.hemisphere) + " does not match pose zone " +
                      std::to_string(pose.zone) + HemisphereName(pose.hemisphere));
  }

  std::vector<ProjectedPoint> visible;
  const Eigen::Matrix3d& rot = pose.pose.rotation;
  const Eigen::Vector3d& center = pose.pose.center;
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    const Eigen::Vector3d x_cam = rot * (cloud.points[i] - center);
    if (!(x_cam.z() > 0.0)) continue;
    const double u = k.fx * x_cam.x() / x_cam.z() + k.cx;
    const double v = k.fy * x_cam.y() / x_cam.z() + k.cy;
    if (!k.InBounds(u, v)) continue;
    visible.push_back({i, u, v, x_cam.z()});
  }
  return visible;
}

PositionOutcome PositionDetection(const Detection& detection,
                                  const std::vector<ProjectedPoint>& projected,
                                  const PointCloud& cloud, const GeoPose& pose,
                                  const std::string& source_image, double depth_band_m) {
  PositionOutcome outcome;
  outcome.object.class_label = detection.class_label;
  outcome.object.confidence = detection.confidence;
  outcome.object.source_image = source_image;
  outcome.object.source_box = detection.box;

  if (!detection.box.Valid()) {
    throw DomainError("invalid detection box");
  }

  double min_depth = std::numeric_limits<double>::infinity();
  for (const auto& p : projected) {
    if (detection.box.ContainsStrict(p.u, p.v) && p.depth < min_depth) {
      min_depth = p.depth;
    }
  }
  if (!std::isfinite(min_depth)) {
    outcome.localized = false;
    outcome.reason = "no projected cloud point inside box";
    return outcome;
  }

  // Foreground cluster: everything within the depth band of the nearest
  // in-box point; background seen "through" the object stays out.
  Eigen::Vector3d sum = Eigen::Vector3d::Zero();
  int count = 0;
  for (const auto& p : projected) {
    if (!detection.box.ContainsStrict(p.u, p.v)) continue;
    if (p.depth > min_depth + depth_band_m) continue;
    sum += cloud.points[p.point_index];
    ++count;
  }

  const Eigen::Vector3d centroid = sum / static_cast<double>(count);
  outcome.localized = true;
  outcome.object.position.easting = centroid.x();
  outcome.object.position.northing = centroid.y();
  outcome.object.position.up = centroid.z();
  outcome.object.position.zone = pose.zone;
  outcome.object.position.hemisphere = pose.hemisphere;
  outcome.object.support_count = count;
  return outcome;
}

LocalizeDetectionsResult LocalizeDetections(const std::vector<Detection>& detections,
                                            const PointCloud& cloud, const GeoPose& pose,
                                            const Intrinsics& k,
                                            const std::string& source_image,
                                            double depth_band_m) {
  LocalizeDetectionsResult result;
  if (detections.empty()) return result;

  const std::vector<ProjectedPoint> projected = ProjectCloud(cloud, pose, k);
  for (const auto& detection : detections) {
    PositionOutcome outcome =
        PositionDetection(detection, projected, cloud, pose, source_image, depth_band_m);
    if (outcome.localized) {
      result.objects.push_back(std::move(outcome.object));
    } else {
      result.unlocalized.push_back(std::move(outcome));
    }
  }
  return result;
}

}  // namespace uavgeo
