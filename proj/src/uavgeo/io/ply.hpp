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

#include "uavgeo/geodesy.hpp"

namespace uavgeo {

enum class CloudFrame { kLocal, kUtm };

// Point cloud with an explicit coordinate-frame tag. The tag rides along in a
// PLY comment ("comment frame utm <zone> <north|south>") so geo-referenced
// clouds survive a round trip; files without the comment load as local.
struct PointCloud {
  std::vector<Eigen::Vector3d> points;
  std::vector<std::array<uint8_t, 3>> colors;  // empty, or one entry per point
  CloudFrame frame = CloudFrame::kLocal;
  int zone = 0;
  Hemisphere hemisphere = Hemisphere::kNorth;

  bool HasColors() const { return !colors.empty(); }
};

enum class PlyVariant { kAscii, kBinaryLittleEndian };

// Accepts float32/float64 x, y, z and optional uchar red/green/blue (r/g/b
// also recognized). Any other element, property, or type is a parse error.
PointCloud ReadPly(const std::string& path);

// Coordinates are written as float64 so UTM-scale values survive bit-exactly.
void WritePly(const PointCloud& cloud, const std::string& path, PlyVariant variant);

}  // namespace uavgeo
