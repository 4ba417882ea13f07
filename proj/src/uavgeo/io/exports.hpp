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

#include "uavgeo/alignment.hpp"
#include "uavgeo/types.hpp"

namespace uavgeo {

enum class ExportFormat { kGeoJson, kCsv };

// Writes localized objects, ordered by source image then original box order.
// GeoJSON: RFC 7946 FeatureCollection of WGS84 points. CSV columns:
// class,conf,lat,lon,easting,northing,up,zone,source_image.
// Objects spanning several UTM zones are re-projected into `forced_zone`
// when given; mixed zones without it are an error.
void ExportGeoObjects(const std::vector<GeoObject>& objects, const std::string& path,
                      ExportFormat format,
                      std::optional<int> forced_zone = std::nullopt);

// Reads the CSV produced by ExportGeoObjects.
std::vector<GeoObject> ReadGeoObjectsCsv(const std::string& path);

// Trajectory CSV: image,easting,northing,up,qw,qx,qy,qz,registered,anchored.
// The quaternion rotates world (UTM-ENU) into camera. Frames with no pose
// (status failed) carry nan pose fields and 0/0 flags.
void WriteTrajectoryCsv(const Trajectory& trajectory, const std::string& path);
Trajectory ReadTrajectoryCsv(const std::string& path);

}  // namespace uavgeo
