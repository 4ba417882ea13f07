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

#include <Eigen/Core>
#include <Eigen/Geometry>

#include "uavgeo/geodesy.hpp"

namespace uavgeo {

// Pinhole intrinsics. Pixel convention: (0, 0) is the center of the top-left
// pixel, u grows rightward, v downward; the sensor area spans
// [-0.5, width - 0.5) x [-0.5, height - 0.5).
struct Intrinsics {
  double fx = 0.0;
  double fy = 0.0;
  double cx = 0.0;
  double cy = 0.0;
  int width = 0;
  int height = 0;

  bool Valid() const {
    return fx > 0.0 && fy > 0.0 && width > 0 && height > 0 && cx > 0.0 &&
           cx < width && cy > 0.0 && cy < height;
  }

  bool InBounds(double u, double v) const {
    return u >= -0.5 && u < width - 0.5 && v >= -0.5 && v < height - 0.5;
  }
};

// Rigid camera pose: `rotation` maps world to camera, `center` is the camera
// center expressed in the world frame.
struct RigidPose {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d center = Eigen::Vector3d::Zero();
};

// RigidPose whose world frame is UTM-ENU (x east, y north, z up).
struct GeoPose {
  RigidPose pose;
  int zone = 0;
  Hemisphere hemisphere = Hemisphere::kNorth;
};

struct PixelDepth {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

inline Eigen::Vector3d WorldToCamera(const RigidPose& pose, const Eigen::Vector3d& x_world) {
  return pose.rotation * (x_world - pose.center);
}

inline Eigen::Vector3d CameraToWorld(const RigidPose& pose, const Eigen::Vector3d& x_cam) {
  return pose.rotation.transpose() * x_cam + pose.center;
}

// Pinhole projection of a camera-frame point. Throws DomainError when the
// point is not strictly in front of the camera. No bounds check: callers cull.
PixelDepth Project(const Intrinsics& k, const Eigen::Vector3d& x_cam);

// Camera-frame point at pixel (u, v) and depth d > 0.
Eigen::Vector3d Backproject(const Intrinsics& k, double u, double v, double depth);

}  // namespace uavgeo
