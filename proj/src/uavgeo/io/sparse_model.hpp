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
#include <map>
#include <string>
#include <vector>

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "uavgeo/camera.hpp"

namespace uavgeo {

// Sparse reconstruction in COLMAP's public model layout: three files
// (cameras, images, points3D), text or little-endian binary. Only
// pinhole-equivalent camera records are accepted; records with nonzero
// distortion terms are rejected loudly.

struct SparseCamera {
  uint32_t camera_id = 0;
  std::string model_name;       // raw model name as stored (PINHOLE, ...)
  std::vector<double> params;   // raw parameter vector as stored
  Intrinsics intrinsics;        // pinhole-equivalent view of `params`
};

struct SparseKeypoint {
  double x = 0.0;
  double y = 0.0;
  int64_t point3d_id = -1;  // -1: keypoint has no triangulated point
};

struct SparseImage {
  uint32_t image_id = 0;
  std::string name;
  // COLMAP convention: x_cam = R(q) * x_world + t.
  Eigen::Quaterniond cam_from_world = Eigen::Quaterniond::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();
  uint32_t camera_id = 0;
  std::vector<SparseKeypoint> keypoints;

  Eigen::Vector3d Center() const {
    return -(cam_from_world.toRotationMatrix().transpose() * translation);
  }

  RigidPose Pose() const { return {cam_from_world.toRotationMatrix(), Center()}; }

  // Rebuilds q, t from a RigidPose.
  void SetPose(const RigidPose& pose) {
    cam_from_world = Eigen::Quaterniond(pose.rotation);
    cam_from_world.normalize();
    translation = -(pose.rotation * pose.center);
  }
};

struct SparseTrackElement {
  uint32_t image_id = 0;
  uint32_t point2d_index = 0;
};

struct SparsePoint {
  Eigen::Vector3d xyz = Eigen::Vector3d::Zero();
  std::array<uint8_t, 3> rgb = {0, 0, 0};
  double error = 0.0;
  std::vector<SparseTrackElement> track;
};

struct SparseModel {
  std::map<uint32_t, SparseCamera> cameras;
  std::map<uint32_t, SparseImage> images;
  std::map<uint64_t, SparsePoint> points;

  const SparseImage* FindImageByName(const std::string& name) const;

  // Enforces referential integrity: camera references resolve, keypoint
  // point ids resolve, tracks point back at keypoints naming the same point
  // (bidirectional consistency), quaternions unit within 1e-6.
  // Throws ValidationError; `context` names the model in messages.
  void Validate(const std::string& context) const;
};

enum class ModelVariant { kText, kBinary, kAuto };

// Reads `dir`/cameras.* , images.*, points3D.* in the requested variant.
// kAuto picks binary when cameras.bin exists, else text.
SparseModel ReadSparseModel(const std::string& dir, ModelVariant variant = ModelVariant::kAuto);

void WriteSparseModel(const SparseModel& model, const std::string& dir, ModelVariant variant);

}  // namespace uavgeo
