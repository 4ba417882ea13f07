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

#include "uavgeo/camera.hpp"

#include "uavgeo/errors.hpp"

namespace uavgeo {

PixelDepth Project(const Intrinsics& k, const Eigen::Vector3d& x_cam) {
  if (!(x_cam.z() > 0.0)) {
    throw DomainError("point behind camera (z = " + std::to_string(x_cam.z()) + ")");
  }
  PixelDepth p;
  p.u = k.fx * x_cam.x() / x_cam.z() + k.cx;
  p.v = k.fy * x_cam.y() / x_cam.z() + k.cy;
  p.depth = x_cam.z();
  return p;
}

Eigen::Vector3d Backproject(const Intrinsics& k, double u, double v, double depth) {
  if (!(depth > 0.0)) {
    throw DomainError("backprojection requires positive depth");
  }
  return {(u - k.cx) / k.fx * depth, (v - k.cy) / k.fy * depth, depth};
}

}  // namespace uavgeo
