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
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "uavgeo/camera.hpp"
#include "uavgeo/io/records.hpp"
#include "uavgeo/io/sparse_model.hpp"

namespace uavgeo {

// Similarity map x' = scale * rotation * x + translation.
struct SimilarityTransform {
  double scale = 1.0;
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static SimilarityTransform Identity() { return {}; }
  SimilarityTransform Inverse() const;
};

enum class TrajectoryFrame { kLocal, kUtm };

struct TrajectoryEntry {
  std::string image_name;
  RigidPose pose;
  bool has_pose = true;
  bool registered = false;  // pose obtained by direct registration (PnP)
  bool anchored = false;    // pose obtained through the similarity fallback
};

struct Trajectory {
  std::vector<TrajectoryEntry> entries;
  TrajectoryFrame frame = TrajectoryFrame::kLocal;
  int zone = 0;
  Hemisphere hemisphere = Hemisphere::kNorth;

  const TrajectoryEntry* Find(const std::string& image_name) const;
};

// Closed-form least-squares similarity (Umeyama): minimizes
// sum_i ||dst_i - (s R src_i + t)||^2, reflection-corrected so det(R) = +1.
// with_scale = false fixes s = 1. Throws DomainError for fewer than 3 pairs
// or a collinear/coincident source set.
SimilarityTransform Umeyama(const std::vector<Eigen::Vector3d>& src,
                            const std::vector<Eigen::Vector3d>& dst, bool with_scale = true);

Eigen::Vector3d ApplySimilarity(const SimilarityTransform& t, const Eigen::Vector3d& x);

// Re-expresses a camera pose after the world frame is remapped by `t`.
RigidPose ApplyToPose(const SimilarityTransform& t, const RigidPose& pose);

SimilarityTransform Compose(const SimilarityTransform& outer, const SimilarityTransform& inner);

struct GeoRegistration {
  SparseModel model;  // in UTM frame
  SimilarityTransform transform;
  int zone = 0;
  Hemisphere hemisphere = Hemisphere::kNorth;
  std::vector<std::pair<std::string, double>> residuals_m;  // per matched image
  double rms_residual_m = 0.0;
};

// Aligns a local-frame sparse model to GNSS positions: Umeyama over camera
// centers matched by image name against the sidecar, applied to every pose
// and 3D point. `trim_fraction` > 0 drops that share of the worst residuals
// and re-fits once (PnP outliers can leak into the fit).
GeoRegistration GeoRegisterModel(const SparseModel& model, const PoseSidecar& sidecar,
                                 std::optional<int> forced_zone = std::nullopt,
                                 double trim_fraction = 0.0);

struct AnchorResult {
  bool success = false;
  Trajectory trajectory;  // UTM frame when success
  SimilarityTransform transform;
  double rms_residual_m = 0.0;   // over the shared (registered) frames
  size_t shared_count = 0;
};

// Anchors an unreferenced local trajectory to the global frame using the
// subset of frames that were registered directly. Frames missing from
// `registered_global` come out marked anchored. Fewer than 3 shared frames
// is an anchoring-failed outcome (success = false), not an exception.
AnchorResult AnchorQueryTrajectory(const Trajectory& local,
                                   const std::map<std::string, RigidPose>& registered_global,
                                   double trim_fraction = 0.0);

}  // namespace uavgeo
