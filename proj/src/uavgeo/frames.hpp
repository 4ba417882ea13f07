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

namespace uavgeo {

// Aircraft/gimbal attitude in the NED frame, degrees. Interfaces use degrees
// because that is what UAV metadata carries; everything internal is radians.
struct EulerNed {
  double roll_deg = 0.0;
  double pitch_deg = 0.0;
  double yaw_deg = 0.0;
};

// Wraps to roll, yaw in (-180, 180] and pitch in [-90, 90] without changing
// the encoded rotation (gimbal-flip rewrite when |pitch| > 90).
EulerNed NormalizeEuler(const EulerNed& e);

bool IsRotationMatrix(const Eigen::Matrix3d& m, double tol = 1e-9);

Eigen::Matrix3d RotationX(double angle_rad);
Eigen::Matrix3d RotationY(double angle_rad);
Eigen::Matrix3d RotationZ(double angle_rad);

// Axis permutation NED <-> ENU. Involutory.
Eigen::Matrix3d RotationEnuFromNed();

// Body -> NED from intrinsic Z-Y-X (yaw-pitch-roll) Euler angles, the
// aerospace convention: Rz(yaw) * Ry(pitch) * Rx(roll).
Eigen::Matrix3d RotationNedFromBody(const EulerNed& e);

// Remaps camera axes (X right, Y down, Z forward) into NED axes:
// cam-x -> east, cam-y -> down, cam-z -> north.
Eigen::Matrix3d RotationNedFromCamera();

// Full camera -> ENU chain: ENU<-NED * NED<-body(e) * body<-camera.
Eigen::Matrix3d RotationEnuFromCamera(const EulerNed& e);

}  // namespace uavgeo
