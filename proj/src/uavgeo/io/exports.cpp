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

#include "uavgeo/io/exports.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include <json.hpp>

#include "uavgeo/errors.hpp"
#include "uavgeo/io/text.hpp"

namespace uavgeo {
namespace {

using nlohmann::json;

// Re-expresses an object in `zone` via the geodetic round trip.
UtmCoord ForceZone(const UtmCoord& c, int zone) {
  if (c.zone == zone) return c;
  return Wgs84ToUtm(UtmToWgs84(c), zone);
}

std::vector<GeoObject> SortedForExport(const std::vector<GeoObject>& objects,
                                       std::optional<int> forced_zone) {
  std::vector<GeoObject> sorted = objects;
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const GeoObject& a, const GeoObject& b) {
                     return a.source_image < b.source_image;
                   });
  std::set<int> zones;
  for (const auto& o : sorted) {
    zones.insert(o.position.zone);
  }
  if (forced_zone) {
    for (auto& o : sorted) {
      o.position = ForceZone(o.position, *forced_zone);
    }
  } else if (zones.size() > 1) {
    throw ValidationError("objects span multiple UTM zones; supply a forced zone");
  }
  return sorted;
}

}  // namespace

void ExportGeoObjects(const std::vector<GeoObject>& objects, const std::string& path,
                      ExportFormat format, std::optional<int> forced_zone) {
  const std::vector<GeoObject> sorted = SortedForExport(objects, forced_zone);

  if (format == ExportFormat::kGeoJson) {
    json features = json::array();
    for (const auto& o : sorted) {
      const GeoPosition wgs = UtmToWgs84(o.position);
      features.push_back(
          {{"type", "Feature"},
           {"geometry",
            {{"type", "Point"}, {"coordinates", {wgs.longitude_deg, wgs.latitude_deg}}}},
           {"properties",
            {{"class", o.class_label},
             {"confidence", o.confidence},
             {"easting", o.position.easting},
             {"northing", o.position.northing},
             {"up", o.position.up},
             {"support", o.support_count},
             {"source_image", o.source_image}}}});
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << json{{"type", "FeatureCollection"}, {"features", std::move(features)}}.dump(2)
        << "\n";
    if (!out) throw IoError("write failed: " + path);
    return;
  }

  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "class,conf,lat,lon,easting,northing,up,zone,source_image\n";
  for (const auto& o : sorted) {
    const GeoPosition wgs = UtmToWgs84(o.position);
    out << o.class_label << "," << FormatDouble(o.confidence) << ","
        << FormatDouble(wgs.latitude_deg) << "," << FormatDouble(wgs.longitude_deg) << ","
        << FormatDouble(o.position.easting) << "," << FormatDouble(o.position.northing) << ","
        << FormatDouble(o.position.up) << "," << o.position.zone << "," << o.source_image
        << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

std::vector<GeoObject> ReadGeoObjectsCsv(const std::string& path) {
  TextLineReader reader(path);
  std::string line;
  if (!reader.NextRawLine(&line) ||
      TrimWhitespace(line) != "class,conf,lat,lon,easting,northing,up,zone,source_image") {
    throw ParseError(path, "bad objects CSV header", 1);
  }
  std::vector<GeoObject> objects;
  while (reader.NextRawLine(&line)) {
    if (TrimWhitespace(line).empty()) continue;
    const size_t ln = reader.line_number();
    const auto fields = SplitChar(line, ',');
    if (fields.size() != 9) {
      throw ParseError(path, "expected 9 fields", ln);
    }
    GeoObject o;
    o.class_label = fields[0];
    o.confidence = ParseField<double>(path, ln, fields[1], "conf");
    o.position.easting = ParseField<double>(path, ln, fields[4], "easting");
    o.position.northing = ParseField<double>(path, ln, fields[5], "northing");
    o.position.up = ParseField<double>(path, ln, fields[6], "up");
    o.position.zone = ParseField<int>(path, ln, fields[7], "zone");
    o.position.hemisphere =
        ParseField<double>(path, ln, fields[2], "lat") >= 0.0 ? Hemisphere::kNorth
                                                              : Hemisphere::kSouth;
    o.support_count = 1;
    o.source_image = fields[8];
    objects.push_back(std::move(o));
  }
  return objects;
}

void WriteTrajectoryCsv(const Trajectory& trajectory, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "image,easting,northing,up,qw,qx,qy,qz,registered,anchored\n";
  for (const auto& e : trajectory.entries) {
    out << e.image_name << ",";
    if (e.has_pose) {
      const Eigen::Quaterniond q(e.pose.rotation);
      out << FormatDouble(e.pose.center.x()) << "," << FormatDouble(e.pose.center.y()) << ","
          << FormatDouble(e.pose.center.z()) << "," << FormatDouble(q.w()) << ","
          << FormatDouble(q.x()) << "," << FormatDouble(q.y()) << "," << FormatDouble(q.z());
    } else {
      out << "nan,nan,nan,nan,nan,nan,nan";
    }
    out << "," << (e.registered ? 1 : 0) << "," << (e.anchored ? 1 : 0) << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

Trajectory ReadTrajectoryCsv(const std::string& path) {
  TextLineReader reader(path);
  std::string line;
  if (!reader.NextRawLine(&line) ||
      TrimWhitespace(line) != "image,easting,northing,up,qw,qx,qy,qz,registered,anchored") {
    throw ParseError(path, "bad trajectory CSV header", 1);
  }
  Trajectory trajectory;
  std::set<std::string> seen;
  while (reader.NextRawLine(&line)) {
    if (TrimWhitespace(line).empty()) continue;
    const size_t ln = reader.line_number();
    const auto fields = SplitChar(line, ',');
    if (fields.size() != 10) {
      throw ParseError(path, "expected 10 fields", ln);
    }
    TrajectoryEntry e;
    e.image_name = TrimWhitespace(fields[0]);
    if (e.image_name.empty() || !seen.insert(e.image_name).second) {
      throw ValidationError(path + ":" + std::to_string(ln) + ": empty or duplicate image name");
    }
    double values[7];
    for (int i = 0; i < 7; ++i) {
      values[i] = ParseField<double>(path, ln, TrimWhitespace(fields[1 + i]), "pose value");
    }
    e.registered = ParseField<int>(path, ln, TrimWhitespace(fields[8]), "registered") != 0;
    e.anchored = ParseField<int>(path, ln, TrimWhitespace(fields[9]), "anchored") != 0;
    e.has_pose = std::isfinite(values[0]);
    if (e.has_pose) {
      e.pose.center = {values[0], values[1], values[2]};
      Eigen::Quaterniond q(values[3], values[4], values[5], values[6]);
      if (std::fabs(q.norm() - 1.0) > 1e-6) {
        throw ValidationError(path + ":" + std::to_string(ln) + ": quaternion not unit norm");
      }
      q.normalize();
      e.pose.rotation = q.toRotationMatrix();
    }
    trajectory.entries.push_back(std::move(e));
  }
  trajectory.frame = TrajectoryFrame::kUtm;
  return trajectory;
}

}  // namespace uavgeo
