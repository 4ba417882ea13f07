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

#include <string>
#include <vector>

#include <Eigen/Core>

#include "uavgeo/camera.hpp"
#include "uavgeo/frames.hpp"
#include "uavgeo/geodesy.hpp"
#include "uavgeo/types.hpp"

namespace uavgeo {

// One row of the pose-metadata sidecar: the camera's geolocation, NED
// attitude, and intrinsics for a named image.
struct SidecarRecord {
  std::string image_name;
  GeoPosition position;
  EulerNed attitude;  // normalized on ingestion
  Intrinsics intrinsics;
};

struct PoseSidecar {
  std::vector<SidecarRecord> records;

  const SidecarRecord* Find(const std::string& image_name) const;
};

// CSV with the fixed header:
// image,lat_deg,lon_deg,alt_m,roll_deg,pitch_deg,yaw_deg,fx,fy,cx,cy,width,height
PoseSidecar ReadPoseSidecar(const std::string& path);
void WritePoseSidecar(const PoseSidecar& sidecar, const std::string& path);

struct ImageDetections {
  std::string image_name;
  std::vector<Detection> detections;
};

struct DetectionFile {
  std::vector<ImageDetections> images;

  const ImageDetections* Find(const std::string& image_name) const;
};

// JSON: {"images":[{"name":str,"detections":[{"class":str,"conf":float,
// "box":[x0,y0,x1,y1]}]}]}. Unknown class labels pass through verbatim.
DetectionFile ReadDetections(const std::string& path);
void WriteDetections(const DetectionFile& file, const std::string& path);

struct MatchRecord {
  std::string db_image;
  Eigen::Vector2d query_px = Eigen::Vector2d::Zero();
  uint32_t db_keypoint = 0;
};

// Feature matches for one query image against database images.
// JSON: {"query":str,"matches":[{"db_image":str,"query_px":[u,v],"db_keypoint":int}]}
struct MatchFile {
  std::string query;
  std::vector<MatchRecord> matches;
};

MatchFile ReadMatchFile(const std::string& path);
void WriteMatchFile(const MatchFile& file, const std::string& path);

}  // namespace uavgeo
