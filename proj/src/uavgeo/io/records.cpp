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

#include "uavgeo/io/records.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

#include "uavgeo/errors.hpp"
#include "uavgeo/io/text.hpp"

namespace uavgeo {
namespace {

using nlohmann::json;

constexpr const char* kSidecarHeader =
    "image,lat_deg,lon_deg,alt_m,roll_deg,pitch_deg,yaw_deg,fx,fy,cx,cy,width,height";

json LoadJson(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path, e.what(), std::nullopt, e.byte);
  }
}

void DumpJson(const json& j, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out << j.dump(2) << "\n";
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace

const SidecarRecord* PoseSidecar::Find(const std::string& image_name) const {
  for (const auto& r : records) {
    if (r.image_name == image_name) return &r;
  }
  return nullptr;
}

PoseSidecar ReadPoseSidecar(const std::string& path) {
  TextLineReader reader(path);
  std::string line;
  if (!reader.NextRawLine(&line)) {
    throw ParseError(path, "empty sidecar file", 1);
  }
  if (TrimWhitespace(line) != kSidecarHeader) {
    throw ParseError(path, std::string("sidecar header must be exactly '") + kSidecarHeader +
                               "'",
                     1);
  }

  PoseSidecar sidecar;
  std::set<std::string> seen;
  while (reader.NextRawLine(&line)) {
    if (TrimWhitespace(line).empty()) continue;
    const size_t ln = reader.line_number();
    const auto fields = SplitChar(line, ',');
    if (fields.size() != 13) {
      throw ParseError(path, "expected 13 fields, got " + std::to_string(fields.size()), ln);
    }
    SidecarRecord rec;
    rec.image_name = TrimWhitespace(fields[0]);
    if (rec.image_name.empty()) {
      throw ParseError(path, "empty image name", ln);
    }
    if (!seen.insert(rec.image_name).second) {
      throw ValidationError(path + ":" + std::to_string(ln) + ": duplicate image name '" +
                            rec.image_name + "'");
    }
    auto num = [&](int i, const char* what) {
      return ParseField<double>(path, ln, TrimWhitespace(fields[i]), what);
    };
    rec.position.latitude_deg = num(1, "lat_deg");
    rec.position.longitude_deg = num(2, "lon_deg");
    rec.position.altitude_m = num(3, "alt_m");
    if (rec.position.latitude_deg < -90.0 || rec.position.latitude_deg > 90.0 ||
        rec.position.longitude_deg < -180.0 || rec.position.longitude_deg > 180.0) {
      throw ValidationError(path + ":" + std::to_string(ln) + ": lat/lon out of range");
    }
    rec.attitude = NormalizeEuler({num(4, "roll_deg"), num(5, "pitch_deg"), num(6, "yaw_deg")});
    rec.intrinsics.fx = num(7, "fx");
    rec.intrinsics.fy = num(8, "fy");
    rec.intrinsics.cx = num(9, "cx");
    rec.intrinsics.cy = num(10, "cy");
    rec.intrinsics.width = ParseField<int>(path, ln, TrimWhitespace(fields[11]), "width");
    rec.intrinsics.height = ParseField<int>(path, ln, TrimWhitespace(fields[12]), "height");
    if (!rec.intrinsics.Valid()) {
      throw ValidationError(path + ":" + std::to_string(ln) + ": invalid intrinsics for '" +
                            rec.image_name + "'");
    }
    sidecar.records.push_back(std::move(rec));
  }
  return sidecar;
}

void WritePoseSidecar(const PoseSidecar& sidecar, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out << kSidecarHeader << "\n";
  for (const auto& r : sidecar.records) {
    out << r.image_name << "," << FormatDouble(r.position.latitude_deg) << ","
        << FormatDouble(r.position.longitude_deg) << "," << FormatDouble(r.position.altitude_m)
        << "," << FormatDouble(r.attitude.roll_deg) << "," << FormatDouble(r.attitude.pitch_deg)
        << "," << FormatDouble(r.attitude.yaw_deg) << "," << FormatDouble(r.intrinsics.fx) << ","
        << FormatDouble(r.intrinsics.fy) << "," << FormatDouble(r.intrinsics.cx) << ","
        << FormatDouble(r.intrinsics.cy) << "," << r.intrinsics.width << ","
        << r.intrinsics.height << "\n";
  }
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

const ImageDetections* DetectionFile::Find(const std::string& image_name) const {
  for (const auto& img : images) {
    if (img.image_name == image_name) return &img;
  }
  return nullptr;
}

DetectionFile ReadDetections(const std::string& path) {
  const json root = LoadJson(path);
  if (!root.is_object() || !root.contains("images") || !root["images"].is_array()) {
    throw ParseError(path, "top level must be an object with an 'images' array");
  }
  DetectionFile file;
  std::set<std::string> seen;
  for (const auto& image : root["images"]) {
    if (!image.contains("name") || !image["name"].is_string()) {
      throw ParseError(path, "image entry missing string 'name'");
    }
    ImageDetections entry;
    entry.image_name = image["name"].get<std::string>();
    if (!seen.insert(entry.image_name).second) {
      throw ValidationError(path + ": duplicate image name '" + entry.image_name + "'");
    }
    if (image.contains("detections")) {
      if (!image["detections"].is_array()) {
        throw ParseError(path, "'detections' must be an array for image " + entry.image_name);
      }
      for (const auto& det : image["detections"]) {
        Detection d;
        if (!det.contains("class") || !det["class"].is_string() || !det.contains("conf") ||
            !det["conf"].is_number() || !det.contains("box") || !det["box"].is_array() ||
            det["box"].size() != 4) {
          throw ParseError(path, "detection entry needs class, conf, box[4] (image " +
                                     entry.image_name + ")");
        }
        d.class_label = det["class"].get<std::string>();
        d.confidence = det["conf"].get<double>();
        if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
          throw ValidationError(path + ": confidence " + std::to_string(d.confidence) +
                                " outside [0, 1] for image " + entry.image_name);
        }
        d.box.x_min = det["box"][0].get<double>();
        d.box.y_min = det["box"][1].get<double>();
        d.box.x_max = det["box"][2].get<double>();
        d.box.y_max = det["box"][3].get<double>();
        if (!d.box.Valid()) {
          throw ValidationError(path + ": inverted or empty box for image " + entry.image_name);
        }
        entry.detections.push_back(std::move(d));
      }
    }
    file.images.push_back(std::move(entry));
  }
  return file;
}

void WriteDetections(const DetectionFile& file, const std::string& path) {
  json images = json::array();
  for (const auto& image : file.images) {
    json dets = json::array();
    for (const auto& d : image.detections) {
      dets.push_back({{"class", d.class_label},
                      {"conf", d.confidence},
                      {"box", {d.box.x_min, d.box.y_min, d.box.x_max, d.box.y_max}}});
    }
    images.push_back({{"name", image.image_name}, {"detections", std::move(dets)}});
  }
  DumpJson(json{{"images", std::move(images)}}, path);
}

MatchFile ReadMatchFile(const std::string& path) {
  const json root = LoadJson(path);
  if (!root.is_object() || !root.contains("query") || !root["query"].is_string() ||
      !root.contains("matches") || !root["matches"].is_array()) {
    throw ParseError(path, "match file needs 'query' string and 'matches' array");
  }
  MatchFile file;
  file.query = root["query"].get<std::string>();
  for (const auto& m : root["matches"]) {
    if (!m.contains("db_image") || !m["db_image"].is_string() || !m.contains("query_px") ||
        !m["query_px"].is_array() || m["query_px"].size() != 2 || !m.contains("db_keypoint") ||
        !m["db_keypoint"].is_number_integer()) {
      throw ParseError(path, "match entry needs db_image, query_px[2], db_keypoint");
    }
    MatchRecord rec;
    rec.db_image = m["db_image"].get<std::string>();
    rec.query_px = {m["query_px"][0].get<double>(), m["query_px"][1].get<double>()};
    const int64_t kp = m["db_keypoint"].get<int64_t>();
    if (kp < 0) {
      throw ValidationError(path + ": negative db_keypoint index");
    }
    rec.db_keypoint = static_cast<uint32_t>(kp);
    file.matches.push_back(std::move(rec));
  }
  return file;
}

void WriteMatchFile(const MatchFile& file, const std::string& path) {
  json matches = json::array();
  for (const auto& m : file.matches) {
    matches.push_back({{"db_image", m.db_image},
                       {"query_px", {m.query_px.x(), m.query_px.y()}},
                       {"db_keypoint", m.db_keypoint}});
  }
  DumpJson(json{{"query", file.query}, {"matches", std::move(matches)}}, path);
}

}  // namespace uavgeo
