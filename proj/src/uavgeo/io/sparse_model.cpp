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

#include "uavgeo/io/sparse_model.hpp"

#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "uavgeo/errors.hpp"
#include "uavgeo/io/binary.hpp"
#include "uavgeo/io/text.hpp"

namespace uavgeo {
namespace {

namespace fs = std::filesystem;

constexpr uint64_t kInvalidPoint3dBinary = std::numeric_limits<uint64_t>::max();

struct CameraModelSpec {
  const char* name;
  int model_id;
  int num_params;
};

// The external tool's camera model table. We parse all of them so that byte
// layouts stay in sync, but only pinhole-equivalent records are accepted.
constexpr CameraModelSpec kCameraModels[] = {
    {"SIMPLE_PINHOLE", 0, 3},        {"PINHOLE", 1, 4},
    {"SIMPLE_RADIAL", 2, 4},         {"RADIAL", 3, 5},
    {"OPENCV", 4, 8},                {"OPENCV_FISHEYE", 5, 8},
    {"FULL_OPENCV", 6, 12},          {"FOV", 7, 5},
    {"SIMPLE_RADIAL_FISHEYE", 8, 4}, {"RADIAL_FISHEYE", 9, 5},
    {"THIN_PRISM_FISHEYE", 10, 12},
};

const CameraModelSpec* FindModelByName(const std::string& name) {
  for (const auto& spec : kCameraModels) {
    if (name == spec.name) return &spec;
  }
  return nullptr;
}

const CameraModelSpec* FindModelById(int model_id) {
  for (const auto& spec : kCameraModels) {
    if (model_id == spec.model_id) return &spec;
  }
  return nullptr;
}

// Maps a raw camera record to pinhole intrinsics, rejecting every model whose
// distortion terms are not identically zero.
Intrinsics PinholeFromParams(const std::string& path, const CameraModelSpec& spec,
                             const std::vector<double>& params, int width, int height) {
  const auto reject = [&](const std::string& why) {
    throw ParseError(path, "camera model " + std::string(spec.name) + " " + why);
  };
  auto all_zero = [&](size_t first) {
    for (size_t i = first; i < params.size(); ++i) {
      if (params[i] != 0.0) return false;
    }
    return true;
  };

  Intrinsics k;
  k.width = width;
  k.height = height;
  switch (spec.model_id) {
    case 0:  // SIMPLE_PINHOLE: f cx cy
      k.fx = k.fy = params[0], k.cx = params[1], k.cy = params[2];
      break;
    case 1:  // PINHOLE: fx fy cx cy
      k.fx = params[0], k.fy = params[1], k.cx = params[2], k.cy = params[3];
      break;
    case 2:  // SIMPLE_RADIAL: f cx cy k
    case 3:  // RADIAL: f cx cy k1 k2
      if (!all_zero(3)) reject("has nonzero radial distortion; only pinhole-equivalent records are supported");
      k.fx = k.fy = params[0], k.cx = params[1], k.cy = params[2];
      break;
    case 4:  // OPENCV: fx fy cx cy k1 k2 p1 p2
      if (!all_zero(4)) reject("has nonzero distortion; only pinhole-equivalent records are supported");
      k.fx = params[0], k.fy = params[1], k.cx = params[2], k.cy = params[3];
      break;
    default:
      reject("is not pinhole-equivalent");
  }
  if (!k.Valid()) {
    throw ParseError(path, "camera record maps to invalid pinhole intrinsics");
  }
  return k;
}

// ---------------------------------------------------------------- text read

SparseCamera ParseCameraLine(const std::string& path, size_t line_no,
                             const std::vector<std::string>& tokens) {
  if (tokens.size() < 4) {
    throw ParseError(path, "camera record needs at least 4 fields", line_no);
  }
  SparseCamera cam;
  cam.camera_id = ParseField<uint32_t>(path, line_no, tokens[0], "camera id");
  cam.model_name = tokens[1];
  const CameraModelSpec* spec = FindModelByName(cam.model_name);
  if (spec == nullptr) {
    throw ParseError(path, "unknown camera model '" + cam.model_name + "'", line_no);
  }
  const int width = ParseField<int>(path, line_no, tokens[2], "width");
  const int height = ParseField<int>(path, line_no, tokens[3], "height");
  if (tokens.size() != 4 + static_cast<size_t>(spec->num_params)) {
    throw ParseError(path,
                     "camera model " + cam.model_name + " expects " +
                         std::to_string(spec->num_params) + " parameters, got " +
                         std::to_string(tokens.size() - 4),
                     line_no);
  }
  for (size_t i = 4; i < tokens.size(); ++i) {
    cam.params.push_back(ParseField<double>(path, line_no, tokens[i], "camera parameter"));
  }
  cam.intrinsics = PinholeFromParams(path, *spec, cam.params, width, height);
  return cam;
}

std::map<uint32_t, SparseCamera> ReadCamerasText(const std::string& path) {
  TextLineReader reader(path);
  std::map<uint32_t, SparseCamera> cameras;
  std::string line;
  while (reader.NextContentLine(&line)) {
    SparseCamera cam = ParseCameraLine(path, reader.line_number(), SplitWhitespace(line));
    const uint32_t id = cam.camera_id;
    if (!cameras.emplace(id, std::move(cam)).second) {
      throw ParseError(path, "duplicate camera id " + std::to_string(id), reader.line_number());
    }
  }
  return cameras;
}

std::map<uint32_t, SparseImage> ReadImagesText(const std::string& path) {
  TextLineReader reader(path);
  std::map<uint32_t, SparseImage> images;
  std::string line;
  while (reader.NextContentLine(&line)) {
    const auto tokens = SplitWhitespace(line);
    if (tokens.size() < 10) {
      throw ParseError(path, "image header needs 10 fields", reader.line_number());
    }
    SparseImage image;
    image.image_id = ParseField<uint32_t>(path, reader.line_number(), tokens[0], "image id");
    double q[4];
    for (int i = 0; i < 4; ++i) {
      q[i] = ParseField<double>(path, reader.line_number(), tokens[1 + i], "quaternion");
    }
    image.cam_from_world = Eigen::Quaterniond(q[0], q[1], q[2], q[3]);
    for (int i = 0; i < 3; ++i) {
      image.translation[i] =
          ParseField<double>(path, reader.line_number(), tokens[5 + i], "translation");
    }
    image.camera_id = ParseField<uint32_t>(path, reader.line_number(), tokens[8], "camera id");
    image.name = tokens[9];
    for (size_t i = 10; i < tokens.size(); ++i) {
      image.name += " " + tokens[i];  // names may contain spaces
    }

    // Second line: triplets "x y point3d_id", possibly empty.
    std::string points_line;
    if (!reader.NextRawLine(&points_line)) {
      throw ParseError(path, "missing keypoint line for image " + image.name,
                       reader.line_number());
    }
    const auto kp_tokens = SplitWhitespace(points_line);
    if (kp_tokens.size() % 3 != 0) {
      throw ParseError(path, "keypoint line must hold (x, y, point3d_id) triplets",
                       reader.line_number());
    }
    image.keypoints.reserve(kp_tokens.size() / 3);
    for (size_t i = 0; i < kp_tokens.size(); i += 3) {
      SparseKeypoint kp;
      kp.x = ParseField<double>(path, reader.line_number(), kp_tokens[i], "keypoint x");
      kp.y = ParseField<double>(path, reader.line_number(), kp_tokens[i + 1], "keypoint y");
      kp.point3d_id =
          ParseField<int64_t>(path, reader.line_number(), kp_tokens[i + 2], "point3d id");
      image.keypoints.push_back(kp);
    }

    const uint32_t id = image.image_id;
    const size_t header_line = reader.line_number() - 1;
    if (!images.emplace(id, std::move(image)).second) {
      throw ParseError(path, "duplicate image id " + std::to_string(id), header_line);
    }
  }
  return images;
}

std::map<uint64_t, SparsePoint> ReadPointsText(const std::string& path) {
  TextLineReader reader(path);
  std::map<uint64_t, SparsePoint> points;
  std::string line;
  while (reader.NextContentLine(&line)) {
    const auto tokens = SplitWhitespace(line);
    if (tokens.size() < 8 || (tokens.size() - 8) % 2 != 0) {
      throw ParseError(path, "point record needs 8 fields plus (image_id, point2d_idx) pairs",
                       reader.line_number());
    }
    const uint64_t id = ParseField<uint64_t>(path, reader.line_number(), tokens[0], "point id");
    SparsePoint point;
    for (int i = 0; i < 3; ++i) {
      point.xyz[i] =
          ParseField<double>(path, reader.line_number(), tokens[1 + i], "coordinate");
    }
    for (int i = 0; i < 3; ++i) {
      const int channel =
          ParseField<int>(path, reader.line_number(), tokens[4 + i], "color channel");
      if (channel < 0 || channel > 255) {
        throw ParseError(path, "color channel outside [0, 255]", reader.line_number());
      }
      point.rgb[i] = static_cast<uint8_t>(channel);
    }
    point.error = ParseField<double>(path, reader.line_number(), tokens[7], "error");
    for (size_t i = 8; i < tokens.size(); i += 2) {
      SparseTrackElement el;
      el.image_id = ParseField<uint32_t>(path, reader.line_number(), tokens[i], "track image id");
      el.point2d_index =
          ParseField<uint32_t>(path, reader.line_number(), tokens[i + 1], "track keypoint index");
      point.track.push_back(el);
    }
    if (!points.emplace(id, std::move(point)).second) {
      throw ParseError(path, "duplicate point id " + std::to_string(id), reader.line_number());
    }
  }
  return points;
}

// -------------------------------------------------------------- binary read

std::map<uint32_t, SparseCamera> ReadCamerasBinary(const std::string& path) {
  BinaryReader in(path);
  const uint64_t count = in.ReadU64();
  in.CheckCountPlausible(count, 44, "camera");  // id+model+dims+3 params minimum
  std::map<uint32_t, SparseCamera> cameras;
  for (uint64_t i = 0; i < count; ++i) {
    SparseCamera cam;
    cam.camera_id = in.ReadU32();
    const int model_id = static_cast<int>(in.ReadI32());
    const CameraModelSpec* spec = FindModelById(model_id);
    if (spec == nullptr) {
      throw ParseError(path, "unknown camera model id " + std::to_string(model_id),
                       std::nullopt, in.offset());
    }
    cam.model_name = spec->name;
    const auto width = static_cast<int>(in.ReadU64());
    const auto height = static_cast<int>(in.ReadU64());
    cam.params.resize(spec->num_params);
    for (double& p : cam.params) {
      p = in.ReadF64();
    }
    cam.intrinsics = PinholeFromParams(path, *spec, cam.params, width, height);
    const uint32_t id = cam.camera_id;
    if (!cameras.emplace(id, std::move(cam)).second) {
      throw ParseError(path, "duplicate camera id " + std::to_string(id), std::nullopt,
                       in.offset());
    }
  }
  return cameras;
}

std::map<uint32_t, SparseImage> ReadImagesBinary(const std::string& path) {
  BinaryReader in(path);
  const uint64_t count = in.ReadU64();
  in.CheckCountPlausible(count, 77, "image");  // fixed fields + empty name
  std::map<uint32_t, SparseImage> images;
  for (uint64_t i = 0; i < count; ++i) {
    SparseImage image;
    image.image_id = in.ReadU32();
    const double qw = in.ReadF64(), qx = in.ReadF64(), qy = in.ReadF64(), qz = in.ReadF64();
    image.cam_from_world = Eigen::Quaterniond(qw, qx, qy, qz);
    for (int j = 0; j < 3; ++j) {
      image.translation[j] = in.ReadF64();
    }
    image.camera_id = in.ReadU32();
    image.name = in.ReadCString();
    const uint64_t num_keypoints = in.ReadU64();
    in.CheckCountPlausible(num_keypoints, 24, "keypoint");
    image.keypoints.reserve(num_keypoints);
    for (uint64_t j = 0; j < num_keypoints; ++j) {
      SparseKeypoint kp;
      kp.x = in.ReadF64();
      kp.y = in.ReadF64();
      const uint64_t pid = in.ReadU64();
      kp.point3d_id = pid == kInvalidPoint3dBinary ? -1 : static_cast<int64_t>(pid);
      image.keypoints.push_back(kp);
    }
    const uint32_t id = image.image_id;
    if (!images.emplace(id, std::move(image)).second) {
      throw ParseError(path, "duplicate image id " + std::to_string(id), std::nullopt,
                       in.offset());
    }
  }
  return images;
}

std::map<uint64_t, SparsePoint> ReadPointsBinary(const std::string& path) {
  BinaryReader in(path);
  const uint64_t count = in.ReadU64();
  in.CheckCountPlausible(count, 51, "point");
  std::map<uint64_t, SparsePoint> points;
  for (uint64_t i = 0; i < count; ++i) {
    const uint64_t id = in.ReadU64();
    SparsePoint point;
    for (int j = 0; j < 3; ++j) {
      point.xyz[j] = in.ReadF64();
    }
    for (int j = 0; j < 3; ++j) {
      point.rgb[j] = in.ReadU8();
    }
    point.error = in.ReadF64();
    const uint64_t track_len = in.ReadU64();
    in.CheckCountPlausible(track_len, 8, "track element");
    point.track.reserve(track_len);
    for (uint64_t j = 0; j < track_len; ++j) {
      SparseTrackElement el;
      el.image_id = in.ReadU32();
      el.point2d_index = in.ReadU32();
      point.track.push_back(el);
    }
    if (!points.emplace(id, std::move(point)).second) {
      throw ParseError(path, "duplicate point id " + std::to_string(id), std::nullopt,
                       in.offset());
    }
  }
  return points;
}

// ------------------------------------------------------------------- write

void WriteCamerasText(const SparseModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "# Camera list with one line of data per camera:\n"
      << "#   CAMERA_ID, MODEL, WIDTH, HEIGHT, PARAMS[]\n"
      << "# Number of cameras: " << model.cameras.size() << "\n";
  for (const auto& [id, cam] : model.cameras) {
    out << id << " " << cam.model_name << " " << cam.intrinsics.width << " "
        << cam.intrinsics.height;
    for (const double p : cam.params) {
      out << " " << FormatDouble(p);
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void WriteImagesText(const SparseModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "# Image list with two lines of data per image:\n"
      << "#   IMAGE_ID, QW, QX, QY, QZ, TX, TY, TZ, CAMERA_ID, NAME\n"
      << "#   POINTS2D[] as (X, Y, POINT3D_ID)\n"
      << "# Number of images: " << model.images.size() << "\n";
  for (const auto& [id, image] : model.images) {
    const auto& q = image.cam_from_world;
    out << id << " " << FormatDouble(q.w()) << " " << FormatDouble(q.x()) << " "
        << FormatDouble(q.y()) << " " << FormatDouble(q.z());
    for (int i = 0; i < 3; ++i) {
      out << " " << FormatDouble(image.translation[i]);
    }
    out << " " << image.camera_id << " " << image.name << "\n";
    bool first = true;
    for (const auto& kp : image.keypoints) {
      out << (first ? "" : " ") << FormatDouble(kp.x) << " " << FormatDouble(kp.y) << " "
          << kp.point3d_id;
      first = false;
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void WritePointsText(const SparseModel& model, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << "# 3D point list with one line of data per point:\n"
      << "#   POINT3D_ID, X, Y, Z, R, G, B, ERROR, TRACK[] as (IMAGE_ID, POINT2D_IDX)\n"
      << "# Number of points: " << model.points.size() << "\n";
  for (const auto& [id, point] : model.points) {
    out << id << " " << FormatDouble(point.xyz.x()) << " " << FormatDouble(point.xyz.y())
        << " " << FormatDouble(point.xyz.z()) << " " << int(point.rgb[0]) << " "
        << int(point.rgb[1]) << " " << int(point.rgb[2]) << " " << FormatDouble(point.error);
    for (const auto& el : point.track) {
      out << " " << el.image_id << " " << el.point2d_index;
    }
    out << "\n";
  }
  if (!out) throw IoError("write failed: " + path);
}

void WriteCamerasBinary(const SparseModel& model, const std::string& path) {
  BinaryWriter out(path);
  out.WriteU64(model.cameras.size());
  for (const auto& [id, cam] : model.cameras) {
    const CameraModelSpec* spec = FindModelByName(cam.model_name);
    if (spec == nullptr) {
      throw ValidationError("camera " + std::to_string(id) + " has unknown model '" +
                            cam.model_name + "'");
    }
    out.WriteU32(id);
    out.WriteI32(spec->model_id);
    out.WriteU64(static_cast<uint64_t>(cam.intrinsics.width));
    out.WriteU64(static_cast<uint64_t>(cam.intrinsics.height));
    for (const double p : cam.params) {
      out.WriteF64(p);
    }
  }
}

void WriteImagesBinary(const SparseModel& model, const std::string& path) {
  BinaryWriter out(path);
  out.WriteU64(model.images.size());
  for (const auto& [id, image] : model.images) {
    out.WriteU32(id);
    const auto& q = image.cam_from_world;
    out.WriteF64(q.w());
    out.WriteF64(q.x());
    out.WriteF64(q.y());
    out.WriteF64(q.z());
    for (int i = 0; i < 3; ++i) {
      out.WriteF64(image.translation[i]);
    }
    out.WriteU32(image.camera_id);
    out.WriteCString(image.name);
    out.WriteU64(image.keypoints.size());
    for (const auto& kp : image.keypoints) {
      out.WriteF64(kp.x);
      out.WriteF64(kp.y);
      out.WriteU64(kp.point3d_id < 0 ? kInvalidPoint3dBinary
                                     : static_cast<uint64_t>(kp.point3d_id));
    }
  }
}

void WritePointsBinary(const SparseModel& model, const std::string& path) {
  BinaryWriter out(path);
  out.WriteU64(model.points.size());
  for (const auto& [id, point] : model.points) {
    out.WriteU64(id);
    for (int i = 0; i < 3; ++i) {
      out.WriteF64(point.xyz[i]);
    }
    for (int i = 0; i < 3; ++i) {
      out.WriteU8(point.rgb[i]);
    }
    out.WriteF64(point.error);
    out.WriteU64(point.track.size());
    for (const auto& el : point.track) {
      out.WriteU32(el.image_id);
      out.WriteU32(el.point2d_index);
    }
  }
}

ModelVariant DetectVariant(const std::string& dir) {
  if (fs::exists(fs::path(dir) / "cameras.bin")) return ModelVariant::kBinary;
  if (fs::exists(fs::path(dir) / "cameras.txt")) return ModelVariant::kText;
  throw ConfigError("no sparse model (cameras.bin or cameras.txt) found in " + dir);
}

}  // namespace

const SparseImage* SparseModel::FindImageByName(const std::string& name) const {
  for (const auto& [id, image] : images) {
    if (image.name == name) return &image;
  }
  return nullptr;
}

void SparseModel::Validate(const std::string& context) const {
  for (const auto& [id, image] : images) {
    if (cameras.find(image.camera_id) == cameras.end()) {
      throw ValidationError(context + ": image " + image.name + " references missing camera " +
                            std::to_string(image.camera_id));
    }
    if (std::fabs(image.cam_from_world.norm() - 1.0) > 1e-6) {
      throw ValidationError(context + ": image " + image.name +
                            " quaternion is not unit norm");
    }
    for (size_t i = 0; i < image.keypoints.size(); ++i) {
      const int64_t pid = image.keypoints[i].point3d_id;
      if (pid < -1) {
        throw ValidationError(context + ": image " + image.name +
                              " keypoint has invalid point id " + std::to_string(pid));
      }
      if (pid >= 0) {
        const auto it = points.find(static_cast<uint64_t>(pid));
        if (it == points.end()) {
          throw ValidationError(context + ": image " + image.name + " keypoint " +
                                std::to_string(i) + " references missing point " +
                                std::to_string(pid));
        }
        // The referenced point must list this observation in its track.
        bool found = false;
        for (const auto& el : it->second.track) {
          if (el.image_id == id && el.point2d_index == i) {
            found = true;
            break;
          }
        }
        if (!found) {
          throw ValidationError(context + ": point " + std::to_string(pid) +
                                " track does not list observation (" + image.name + ", " +
                                std::to_string(i) + ")");
        }
      }
    }
  }
  for (const auto& [pid, point] : points) {
    if (!point.xyz.allFinite()) {
      throw ValidationError(context + ": point " + std::to_string(pid) +
                            " has non-finite coordinates");
    }
    for (const auto& el : point.track) {
      const auto it = images.find(el.image_id);
      if (it == images.end()) {
        throw ValidationError(context + ": point " + std::to_string(pid) +
                              " track references missing image " + std::to_string(el.image_id));
      }
      if (el.point2d_index >= it->second.keypoints.size()) {
        throw ValidationError(context + ": point " + std::to_string(pid) +
                              " track references out-of-range keypoint " +
                              std::to_string(el.point2d_index) + " in image " +
                              it->second.name);
      }
      if (it->second.keypoints[el.point2d_index].point3d_id != static_cast<int64_t>(pid)) {
        throw ValidationError(context + ": keypoint " + std::to_string(el.point2d_index) +
                              " of image " + it->second.name + " does not point back at " +
                              std::to_string(pid));
      }
    }
  }
}

SparseModel ReadSparseModel(const std::string& dir, ModelVariant variant) {
  if (variant == ModelVariant::kAuto) {
    variant = DetectVariant(dir);
  }
  const fs::path base(dir);
  SparseModel model;
  if (variant == ModelVariant::kBinary) {
    model.cameras = ReadCamerasBinary((base / "cameras.bin").string());
    model.images = ReadImagesBinary((base / "images.bin").string());
    model.points = ReadPointsBinary((base / "points3D.bin").string());
  } else {
    model.cameras = ReadCamerasText((base / "cameras.txt").string());
    model.images = ReadImagesText((base / "images.txt").string());
    model.points = ReadPointsText((base / "points3D.txt").string());
  }
  model.Validate(dir);
  return model;
}

void WriteSparseModel(const SparseModel& model, const std::string& dir, ModelVariant variant) {
  if (variant == ModelVariant::kAuto) {
    throw ConfigError("WriteSparseModel requires an explicit variant");
  }
  fs::create_directories(dir);
  const fs::path base(dir);
  if (variant == ModelVariant::kBinary) {
    WriteCamerasBinary(model, (base / "cameras.bin").string());
    WriteImagesBinary(model, (base / "images.bin").string());
    WritePointsBinary(model, (base / "points3D.bin").string());
  } else {
    WriteCamerasText(model, (base / "cameras.txt").string());
    WriteImagesText(model, (base / "images.txt").string());
    WritePointsText(model, (base / "points3D.txt").string());
  }
}

}  // namespace uavgeo
