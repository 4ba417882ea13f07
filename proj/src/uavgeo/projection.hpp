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

#include <optional>
#include <string>
#include <vector>

#include "uavgeo/camera.hpp"
#include "uavgeo/io/ply.hpp"
#include "uavgeo/types.hpp"

namespace uavgeo {

// A cloud point visible in a posed image.
struct ProjectedPoint {
  size_t point_index = 0;
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

// Projects a UTM cloud into the image: keeps exactly the points with positive
// depth and in-bounds pixel, in input order. Cloud and pose must share a zone.
std::vector<ProjectedPoint> ProjectCloud(const PointCloud& cloud, const GeoPose& pose,
                                         const Intrinsics& k);

// A detection with no cloud support is a reported outcome, not an error.
struct PositionOutcome {
  bool localized = false;
  GeoObject object;
  std::string reason;
};

// Assigns a 3D position to one detection: cloud points strictly inside the
// box, cut to the foreground depth band [d_min, d_min + depth_band_m] (the
// occlusion heuristic for sparse clouds -- no z-buffer), centroid of the
// surviving UTM coordinates.
PositionOutcome PositionDetection(const Detection& detection,
                                  const std::vector<ProjectedPoint>& projected,
                                  const PointCloud& cloud, const GeoPose& pose,
                                  const std::string& source_image,
                                  double depth_band_m = 2.0);

struct LocalizeDetectionsResult {
  std::vector<GeoObject> objects;             // in detection order
  std::vector<PositionOutcome> unlocalized;   // detections with no support
};

// One projection pass shared by all boxes of the image.
LocalizeDetectionsResult LocalizeDetections(const std::vector<Detection>& detections,
                                            const PointCloud& cloud, const GeoPose& pose,
                                            const Intrinsics& k,
                                            const std::string& source_image,
                                            double depth_band_m = 2.0);

}  // namespace uavgeo
