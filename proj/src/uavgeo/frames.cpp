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

#include "uavgeo/frames.hpp"

#include <cmath>

#include <Eigen/LU>

namespace uavgeo {
namespace {

constexpr double kDeg2Rad = M_PI / 180.0;

double WrapDeg180(double deg) {  // to (-180, 180]
  double w = std::fmod(deg, 360.0);
  if (w <= -180.0) w += 360.0;
  if (w > 180.0) w -= 360.0;
  return w;
}

}  // namespace

EulerNed NormalizeEuler(const EulerNed& e) {
  double roll = WrapDeg180(e.roll_deg);
  double pitch = WrapDeg180(e.pitch_deg);
  double yaw = WrapDeg180(e.yaw_deg);
  if (pitch > 90.0 || pitch < -90.0) {
    pitch = (pitch > 0.0 ? 180.0 : -180.0) - pitch;
    roll = WrapDeg180(roll + 180.0);
    yaw = WrapDeg180(yaw + 180.0);
  }
  return {roll, pitch, yaw};
}

bool IsRotationMatrix(const Eigen::Matrix3d& m, double tol) {
  const Eigen::Matrix3d gram = m.transpose() * m;
  return (gram - Eigen::Matrix3d::Identity()).cwiseAbs().maxCoeff() <= tol &&
         std::fabs(m.determinant() - 1.0) <= tol;
}

Eigen::Matrix3d RotationX(double a) {
  Eigen::Matrix3d r;
  r << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
  return r;
}

Eigen::Matrix3d RotationY(double a) {
  Eigen::Matrix3d r;
  r << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
  return r;
}

Eigen::Matrix3d RotationZ(double a) {
  Eigen::Matrix3d r;
  r << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
  return r;
}

Eigen::Matrix3d RotationEnuFromNed() {
  Eigen::Matrix3d r;
  r << 0, 1, 0, 1, 0, 0, 0, 0, -1;
  return r;
}

Eigen::Matrix3d RotationNedFromBody(const EulerNed& e) {
  return RotationZ(e.yaw_deg * kDeg2Rad) * RotationY(e.pitch_deg * kDeg2Rad) *
         RotationX(e.roll_deg * kDeg2Rad);
}

Eigen::Matrix3d RotationNedFromCamera() {
  Eigen::Matrix3d r;
  r << 0, 0, 1, 1, 0, 0, 0, 1, 0;
  return r;
}

Eigen::Matrix3d RotationEnuFromCamera(const EulerNed& e) {
  return RotationEnuFromNed() * RotationNedFromBody(e) * RotationNedFromCamera();
}

}  // namespace uavgeo
