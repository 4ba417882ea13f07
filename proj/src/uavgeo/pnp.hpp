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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "uavgeo/camera.hpp"
#include "uavgeo/errors.hpp"
#include "uavgeo/io/records.hpp"
#include "uavgeo/io/sparse_model.hpp"

namespace uavgeo {

// One 2D-3D correspondence: a query pixel observing a world point.
struct Correspondence {
  Eigen::Vector2d pixel = Eigen::Vector2d::Zero();
  Eigen::Vector3d point = Eigen::Vector3d::Zero();
  int64_t point3d_id = -1;  // optional provenance
};

// Direct linear transform for [R|t] with known intrinsics, on
// Hartley-normalized coordinates; the rotation is re-orthonormalized through
// SVD and cheirality (majority of points in front) is enforced. Needs >= 6
// non-coplanar points. Exact on clean data; noise-amplifying on quasi-planar
// scenes, which is why RANSAC hypothesizes with P3P instead.
RigidPose PnpDlt(const std::vector<Correspondence>& correspondences, const Intrinsics& k);

// Grunert three-point solve: up to four candidate poses for 3 bearing/point
// pairs. No planarity degeneracy, which matters for nadir aerial scenes where
// the terrain is near-flat. Collinear points raise DegenerateError.
std::vector<RigidPose> P3pSolve(const std::array<Correspondence, 3>& sample,
                                const Intrinsics& k);

struct PnpParams {
  double inlier_px = 4.0;
  double confidence = 0.999;
  int max_iters = 10000;
  int min_inliers = 12;
  uint64_t seed = 0;
};

struct PnpResult {
  RigidPose pose;
  std::vector<bool> inlier_mask;
  double rmse_px = 0.0;  // over inliers
  int iterations = 0;
};

// Registration failure (too few inliers) is an expected outcome — it is what
// triggers the SfM fallback — so it is a value, not an exception.
struct PnpOutcome {
  bool success = false;
  PnpResult result;
  int best_inlier_count = 0;
  std::string failure_reason;
};

// RANSAC over P3P minimal samples with adaptive iteration count, followed by
// Gauss-Newton refinement over the consensus set. Deterministic given
// params.seed. Throws DegenerateError only when every sampled minimal set is
// degenerate.
PnpOutcome PnpRansac(const std::vector<Correspondence>& correspondences, const Intrinsics& k,
                     const PnpParams& params = {});

struct RefineResult {
  RigidPose pose;
  double rmse_px = 0.0;
  bool converged = false;
  int iterations = 0;
};

// Gauss-Newton on 6 pose parameters (rotation increment + center) minimizing
// squared reprojection error. Backtracking keeps the cost non-increasing;
// singular normal equations return the input pose with converged = false.
RefineResult RefinePose(const RigidPose& pose, const std::vector<Correspondence>& inliers,
                        const Intrinsics& k, int max_iters = 100,
                        double relative_cost_tol = 1e-10);

// Reprojection RMSE of `pose` over `correspondences`; infinity when any point
// lands behind the camera.
double ReprojectionRmse(const RigidPose& pose, const std::vector<Correspondence>& correspondences,
                        const Intrinsics& k);

// Residual vector (2 per correspondence) and its analytic Jacobian with
// respect to [rotation increment, center]; exposed for the finite-difference
// gradient check.
Eigen::VectorXd RefineResiduals(const RigidPose& pose,
                                const std::vector<Correspondence>& correspondences,
                                const Intrinsics& k);
Eigen::MatrixXd RefineJacobian(const RigidPose& pose,
                               const std::vector<Correspondence>& correspondences,
                               const Intrinsics& k);

// Resolves match records against the sparse model: keeps matches whose
// database keypoint has a triangulated point, deduplicates repeated
// (pixel, point) pairs. Dangling references are errors.
std::vector<Correspondence> GatherCorrespondences(const std::vector<MatchRecord>& matches,
                                                  const SparseModel& model);

}  // namespace uavgeo
