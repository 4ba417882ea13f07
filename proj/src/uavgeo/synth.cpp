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

#include "uavgeo/synth.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>

#include <json.hpp>

#include "uavgeo/errors.hpp"
#include "uavgeo/frames.hpp"
#include "uavgeo/io/exports.hpp"
#include "uavgeo/projection.hpp"
#include "uavgeo/rng.hpp"

namespace uavgeo {
namespace {

namespace fs = std::filesystem;

// The eight mining classes the detector is trained on.
const char* kClasses[] = {"bulldozer", "car",   "driller", "dump truck",
                          "excavator", "grader", "human",   "truck"};

struct Heightfield {
  struct Wave {
    double amplitude;
    double kx, ky;  // spatial frequency, rad/m
    double phase;
  };
  std::vector<Wave> waves;
  double scale = 1.0;

  double At(double x, double y) const {
    double h = 0.0;
    for (const auto& w : waves) {
      h += w.amplitude * std::sin(w.kx * x + w.ky * y + w.phase);
    }
    return h * scale;
  }
};

Heightfield MakeHeightfield(double extent, double amplitude, Rng& rng) {
  Heightfield field;
  double total = 0.0;
  for (int i = 0; i < 6; ++i) {
    Heightfield::Wave w;
    w.amplitude = rng.Uniform(0.4, 1.0);
    const double wavelength = extent / rng.Uniform(1.2, 4.0);
    const double theta = rng.Uniform(0.0, 2.0 * M_PI);
    w.kx = 2.0 * M_PI / wavelength * std::cos(theta);
    w.ky = 2.0 * M_PI / wavelength * std::sin(theta);
    w.phase = rng.Uniform(0.0, 2.0 * M_PI);
    total += w.amplitude;
    field.waves.push_back(w);
  }
  field.scale = total > 0.0 ? amplitude / total : 0.0;
  return field;
}

GeoPose MakeGeoPose(const SceneParams& params, const Eigen::Vector3d& center,
                    const EulerNed& attitude) {
  GeoPose pose;
  pose.zone = params.zone;
  pose.hemisphere = params.hemisphere;
  pose.pose.center = center;
  pose.pose.rotation = RotationEnuFromCamera(attitude).transpose();
  return pose;
}

ScenePose MakeScenePose(const SceneParams& params, const std::string& name,
                        const Eigen::Vector3d& center, const EulerNed& attitude) {
  ScenePose sp;
  sp.name = name;
  sp.attitude = NormalizeEuler(attitude);
  sp.pose = MakeGeoPose(params, center, sp.attitude);
  sp.geo = UtmToWgs84(
      {center.x(), center.y(), center.z(), params.zone, params.hemisphere});
  return sp;
}

// Serpentine (lawnmower) waypoints over the interior of the field.
std::vector<Eigen::Vector2d> SerpentineXy(double x0, double x1, double y0, double y1, int count,
                                          Rng& rng) {
  std::vector<Eigen::Vector2d> out;
  const int rows = std::max(2, static_cast<int>(std::round(std::sqrt(count / 2.0))));
  const int per_row = (count + rows - 1) / rows;
  for (int r = 0; r < rows && static_cast<int>(out.size()) < count; ++r) {
    const double y = y0 + (y1 - y0) * (rows == 1 ? 0.5 : double(r) / (rows - 1));
    for (int c = 0; c < per_row && static_cast<int>(out.size()) < count; ++c) {
      double t = per_row == 1 ? 0.5 : double(c) / (per_row - 1);
      if (r % 2 == 1) t = 1.0 - t;
      const double x = x0 + (x1 - x0) * t;
      out.emplace_back(x + rng.Uniform(-1.0, 1.0), y + rng.Uniform(-1.0, 1.0));
    }
  }
  return out;
}

std::string PoseName(const char* prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s_%04d.png", prefix, index);
  return buf;
}

}  // namespace

const ScenePose* SyntheticScene::FindPose(const std::string& name) const {
  for (const auto& p : db) {
    if (p.name == name) return &p;
  }
  for (const auto& p : query) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

SyntheticScene GenerateScene(const SceneParams& params) {
  if (params.grid_nx < 2 || params.grid_ny < 2 || params.spacing_m <= 0.0 ||
      params.n_db < 1 || params.n_query < 1 || params.n_objects < 0 ||
      params.height_amplitude_m < 0.0 || params.altitude_m <= 0.0 ||
      !params.intrinsics.Valid()) {
    throw DomainError("degenerate scene parameters");
  }

  SyntheticScene scene;
  scene.params = params;
  Rng rng(params.seed);

  const double extent_x = (params.grid_nx - 1) * params.spacing_m;
  const double extent_y = (params.grid_ny - 1) * params.spacing_m;
  const Heightfield field =
      MakeHeightfield(std::max(extent_x, extent_y), params.height_amplitude_m, rng);

  // Terrain grid, row-major (j * nx + i).
  scene.terrain.frame = CloudFrame::kUtm;
  scene.terrain.zone = params.zone;
  scene.terrain.hemisphere = params.hemisphere;
  scene.terrain.points.reserve(static_cast<size_t>(params.grid_nx) * params.grid_ny);
  double mean_height = 0.0;
  for (int j = 0; j < params.grid_ny; ++j) {
    for (int i = 0; i < params.grid_nx; ++i) {
      const double x = params.anchor_easting + i * params.spacing_m;
      const double y = params.anchor_northing + j * params.spacing_m;
      const double z = params.base_up_m + field.At(i * params.spacing_m, j * params.spacing_m);
      scene.terrain.points.emplace_back(x, y, z);
      mean_height += z;
    }
  }
  mean_height /= static_cast<double>(scene.terrain.points.size());
  double min_z = mean_height, max_z = mean_height;
  for (const auto& p : scene.terrain.points) {
    min_z = std::min(min_z, p.z());
    max_z = std::max(max_z, p.z());
  }
  scene.terrain.colors.reserve(scene.terrain.points.size());
  for (const auto& p : scene.terrain.points) {
    const double t = max_z > min_z ? (p.z() - min_z) / (max_z - min_z) : 0.5;
    const auto g = static_cast<uint8_t>(std::lround(40.0 + 180.0 * t));
    scene.terrain.colors.push_back({g, g, g});
  }

  // Camera trajectories: nadir-ish, inside a 15% margin.
  const double mx = 0.15 * extent_x, my = 0.15 * extent_y;
  const double x0 = params.anchor_easting + mx, x1 = params.anchor_easting + extent_x - mx;
  const double y0 = params.anchor_northing + my, y1 = params.anchor_northing + extent_y - my;

  auto make_trajectory = [&](const char* prefix, int count, std::vector<ScenePose>* out) {
    const auto waypoints = SerpentineXy(x0, x1, y0, y1, count, rng);
    for (int i = 0; i < count; ++i) {
      const double up = mean_height + params.altitude_m + rng.Uniform(-2.0, 2.0);
      EulerNed attitude;
      attitude.roll_deg = rng.Uniform(-3.0, 3.0);
      attitude.pitch_deg = -90.0 + rng.Uniform(-4.0, 4.0);
      attitude.yaw_deg = rng.Uniform(-6.0, 6.0);
      out->push_back(MakeScenePose(params, PoseName(prefix, i),
                                   {waypoints[i].x(), waypoints[i].y(), up}, attitude));
    }
  };
  make_trajectory("db", params.n_db, &scene.db);
  make_trajectory("query", params.n_query, &scene.query);

  // Object markers on the surface, under query coverage so each is seen.
  for (int m = 0; m < params.n_objects; ++m) {
    const ScenePose& q = scene.query[m % params.n_query];
    const double jitter = 0.1 * params.altitude_m;
    double x = q.pose.pose.center.x() + rng.Uniform(-jitter, jitter);
    double y = q.pose.pose.center.y() + rng.Uniform(-jitter, jitter);
    int i = static_cast<int>(std::lround((x - params.anchor_easting) / params.spacing_m));
    int j = static_cast<int>(std::lround((y - params.anchor_northing) / params.spacing_m));
    i = std::clamp(i, 1, params.grid_nx - 2);
    j = std::clamp(j, 1, params.grid_ny - 2);
    ObjectMarker marker;
    marker.class_label = kClasses[m % 8];
    marker.position = scene.terrain.points[static_cast<size_t>(j) * params.grid_nx + i];
    marker.radius_m = rng.Uniform(3.0, 5.0);
    scene.objects.push_back(std::move(marker));
  }

  // Every pose must see enough terrain; every marker must be visible from at
  // least one query.
  auto visible_count = [&](const GeoPose& pose) {
    return ProjectCloud(scene.terrain, pose, params.intrinsics).size();
  };
  for (const auto& p : scene.db) {
    if (visible_count(p.pose) < 100) {
      throw ProcessingError("database pose " + p.name + " sees fewer than 100 terrain points");
    }
  }
  for (const auto& p : scene.query) {
    if (visible_count(p.pose) < 100) {
      throw ProcessingError("query pose " + p.name + " sees fewer than 100 terrain points");
    }
  }
  for (size_t m = 0; m < scene.objects.size(); ++m) {
    bool seen = false;
    for (const auto& q : scene.query) {
      const Eigen::Vector3d x_cam = WorldToCamera(q.pose.pose, scene.objects[m].position);
      if (x_cam.z() <= 0.0) continue;
      const double u = params.intrinsics.fx * x_cam.x() / x_cam.z() + params.intrinsics.cx;
      const double v = params.intrinsics.fy * x_cam.y() / x_cam.z() + params.intrinsics.cy;
      if (params.intrinsics.InBounds(u, v)) {
        seen = true;
        break;
      }
    }
    if (!seen) {
      throw ProcessingError("object marker " + std::to_string(m) +
                            " is not visible from any query pose");
    }
  }
  return scene;
}

RenderedCorrespondences RenderCorrespondences(const SyntheticScene& scene,
                                              const std::string& image_name, double noise_px,
                                              double outlier_fraction, uint64_t seed,
                                              size_t max_points) {
  const ScenePose* pose = scene.FindPose(image_name);
  if (pose == nullptr) {
    throw DomainError("unknown scene image '" + image_name + "'");
  }
  const Intrinsics& k = scene.params.intrinsics;
  const auto visible = ProjectCloud(scene.terrain, pose->pose, k);
  if (visible.empty()) {
    throw ProcessingError("no terrain points visible from '" + image_name + "'");
  }
  if (max_points > visible.size()) {
    throw DomainError("requested " + std::to_string(max_points) + " points, only " +
                      std::to_string(visible.size()) + " visible");
  }

  Rng rng(seed);
  std::vector<size_t> order(visible.size());
  std::iota(order.begin(), order.end(), 0);
  rng.Shuffle(order);
  const size_t n = max_points == 0 ? visible.size() : max_points;

  RenderedCorrespondences out;
  out.correspondences.reserve(n);
  for (size_t i = 0; i < n; ++i) {
    const auto& vp = visible[order[i]];
    Correspondence c;
    c.point = scene.terrain.points[vp.point_index];
    c.point3d_id = static_cast<int64_t>(vp.point_index);
    c.pixel = {vp.u + noise_px * rng.Gaussian(), vp.v + noise_px * rng.Gaussian()};
    c.pixel.x() = std::clamp(c.pixel.x(), -0.49, k.width - 0.51);
    c.pixel.y() = std::clamp(c.pixel.y(), -0.49, k.height - 0.51);
    out.correspondences.push_back(c);
  }

  out.inlier_labels.assign(n, true);
  const auto n_outliers = static_cast<size_t>(std::llround(outlier_fraction * n));
  std::vector<size_t> outlier_order(n);
  std::iota(outlier_order.begin(), outlier_order.end(), 0);
  rng.Shuffle(outlier_order);
  for (size_t i = 0; i < n_outliers; ++i) {
    const size_t idx = outlier_order[i];
    out.correspondences[idx].pixel = {rng.Uniform(0.0, k.width - 1.0),
                                      rng.Uniform(0.0, k.height - 1.0)};
    out.inlier_labels[idx] = false;
  }
  return out;
}

RenderedDetections RenderDetections(const SyntheticScene& scene, const std::string& image_name) {
  const ScenePose* pose = scene.FindPose(image_name);
  if (pose == nullptr) {
    throw DomainError("unknown scene image '" + image_name + "'");
  }
  const Intrinsics& k = scene.params.intrinsics;
  RenderedDetections out;
  out.detections.image_name = image_name;
  for (size_t m = 0; m < scene.objects.size(); ++m) {
    const auto& marker = scene.objects[m];
    const Eigen::Vector3d x_cam = WorldToCamera(pose->pose.pose, marker.position);
    if (x_cam.z() <= 0.0) continue;
    const double u = k.fx * x_cam.x() / x_cam.z() + k.cx;
    const double v = k.fy * x_cam.y() / x_cam.z() + k.cy;
    if (!k.InBounds(u, v)) continue;

    Detection det;
    det.class_label = marker.class_label;
    det.confidence =
        0.6 + 0.4 * (static_cast<double>(DeriveSeed(m, image_name) % 10000) / 10000.0);
    const double hu = k.fx * marker.radius_m / x_cam.z();
    const double hv = k.fy * marker.radius_m / x_cam.z();
    det.box = {u - hu, v - hv, u + hu, v + hv};

    GeoObject gt;
    gt.class_label = marker.class_label;
    gt.confidence = det.confidence;
    gt.position = {marker.position.x(), marker.position.y(), marker.position.z(),
                   scene.params.zone, scene.params.hemisphere};
    gt.support_count = 1;
    gt.source_image = image_name;
    gt.source_box = det.box;

    out.detections.detections.push_back(std::move(det));
    out.ground_truth.push_back(std::move(gt));
  }
  return out;
}

GrayImage RenderPseudoImage(const SyntheticScene& scene, const GeoPose& pose,
                            const Intrinsics& k) {
  constexpr int kSide = 64;
  Intrinsics small;
  small.width = kSide;
  small.height = kSide;
  small.fx = k.fx * kSide / k.width;
  small.fy = k.fy * kSide / k.height;
  small.cx = k.cx * kSide / k.width;
  small.cy = k.cy * kSide / k.height;

  double min_z = scene.terrain.points.front().z(), max_z = min_z;
  for (const auto& p : scene.terrain.points) {
    min_z = std::min(min_z, p.z());
    max_z = std::max(max_z, p.z());
  }
  const double span = std::max(1e-9, max_z - min_z);

  // Bilinear splat of height-shaded terrain points; the cloud is sparser
  // than the pixel grid, so single-cell splats would decorrelate under small
  // pose shifts.
  GrayImage accum = GrayImage::Create(kSide, kSide, 0.0f);
  std::vector<float> weight(static_cast<size_t>(kSide) * kSide, 0.0f);
  for (const auto& point : scene.terrain.points) {
    const Eigen::Vector3d x_cam = WorldToCamera(pose.pose, point);
    if (x_cam.z() <= 0.0) continue;
    const double u = small.fx * x_cam.x() / x_cam.z() + small.cx;
    const double v = small.fy * x_cam.y() / x_cam.z() + small.cy;
    if (u < -1.0 || u > kSide || v < -1.0 || v > kSide) continue;
    const double intensity = 30.0 + 220.0 * (point.z() - min_z) / span;
    const int x0 = static_cast<int>(std::floor(u));
    const int y0 = static_cast<int>(std::floor(v));
    for (int dy = 0; dy <= 1; ++dy) {
      for (int dx = 0; dx <= 1; ++dx) {
        const int x = x0 + dx, y = y0 + dy;
        if (x < 0 || x >= kSide || y < 0 || y >= kSide) continue;
        const double w = (1.0 - std::fabs(u - x)) * (1.0 - std::fabs(v - y));
        if (w <= 0.0) continue;
        accum.At(x, y) += static_cast<float>(w * intensity);
        weight[static_cast<size_t>(y) * kSide + x] += static_cast<float>(w);
      }
    }
  }
  double mean = 0.0;
  size_t filled = 0;
  for (size_t i = 0; i < accum.pixels.size(); ++i) {
    if (weight[i] > 0.0f) {
      accum.pixels[i] /= weight[i];
      mean += accum.pixels[i];
      ++filled;
    }
  }
  mean = filled > 0 ? mean / static_cast<double>(filled) : 0.0;
  for (size_t i = 0; i < accum.pixels.size(); ++i) {
    if (weight[i] == 0.0f) {
      accum.pixels[i] = static_cast<float>(mean);
    }
  }

  // Two 3x3 box blurs smooth the splats into a field that varies gently with
  // the camera pose.
  GrayImage blurred = accum;
  for (int pass = 0; pass < 2; ++pass) {
    GrayImage next = blurred;
    for (int y = 0; y < kSide; ++y) {
      for (int x = 0; x < kSide; ++x) {
        float sum = 0.0f;
        int count = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int xx = x + dx, yy = y + dy;
            if (xx < 0 || xx >= kSide || yy < 0 || yy >= kSide) continue;
            sum += blurred.At(xx, yy);
            ++count;
          }
        }
        next.At(x, y) = sum / static_cast<float>(count);
      }
    }
    blurred = std::move(next);
  }
  return blurred;
}

SparseModel BuildDatabaseModel(const SyntheticScene& scene) {
  const Intrinsics& k = scene.params.intrinsics;
  SparseModel model;

  SparseCamera camera;
  camera.camera_id = 1;
  camera.model_name = "PINHOLE";
  camera.params = {k.fx, k.fy, k.cx, k.cy};
  camera.intrinsics = k;
  model.cameras[1] = camera;

  for (size_t d = 0; d < scene.db.size(); ++d) {
    const ScenePose& sp = scene.db[d];
    SparseImage image;
    image.image_id = static_cast<uint32_t>(d + 1);
    image.name = sp.name;
    image.camera_id = 1;
    image.SetPose(sp.pose.pose);

    const auto visible = ProjectCloud(scene.terrain, sp.pose, k);
    image.keypoints.reserve(visible.size());
    for (const auto& vp : visible) {
      const auto point_id = static_cast<uint64_t>(vp.point_index + 1);  // ids are 1-based
      SparseKeypoint kp;
      kp.x = vp.u;
      kp.y = vp.v;
      kp.point3d_id = static_cast<int64_t>(point_id);
      const auto kp_index = static_cast<uint32_t>(image.keypoints.size());
      image.keypoints.push_back(kp);

      auto& point = model.points[point_id];
      point.xyz = scene.terrain.points[vp.point_index];
      point.rgb = scene.terrain.colors.empty() ? std::array<uint8_t, 3>{128, 128, 128}
                                               : scene.terrain.colors[vp.point_index];
      point.error = 0.5;
      point.track.push_back({image.image_id, kp_index});
    }
    model.images[image.image_id] = std::move(image);
  }
  return model;
}

std::pair<SparseModel, SimilarityTransform> BuildQueryLocalModel(const SyntheticScene& scene,
                                                                 uint64_t seed) {
  Rng rng(seed);
  // Ground-truth local -> UTM similarity; the local model lives in its inverse.
  SimilarityTransform to_utm;
  to_utm.scale = rng.Uniform(0.4, 2.5);
  Eigen::Quaterniond q(rng.Gaussian(), rng.Gaussian(), rng.Gaussian(), rng.Gaussian());
  q.normalize();
  to_utm.rotation = q.toRotationMatrix();
  to_utm.translation = {rng.Uniform(-400.0, 400.0), rng.Uniform(-400.0, 400.0),
                        rng.Uniform(-400.0, 400.0)};
  const SimilarityTransform to_local = to_utm.Inverse();

  const Intrinsics& k = scene.params.intrinsics;
  SparseModel model;
  SparseCamera camera;
  camera.camera_id = 1;
  camera.model_name = "PINHOLE";
  camera.params = {k.fx, k.fy, k.cx, k.cy};
  camera.intrinsics = k;
  model.cameras[1] = camera;

  for (size_t i = 0; i < scene.query.size(); ++i) {
    const ScenePose& sp = scene.query[i];
    SparseImage image;
    image.image_id = static_cast<uint32_t>(i + 1);
    image.name = sp.name;
    image.camera_id = 1;
    image.SetPose(ApplyToPose(to_local, sp.pose.pose));

    // Projections are similarity-invariant, so keypoints equal the UTM ones.
    const auto visible = ProjectCloud(scene.terrain, sp.pose, k);
    image.keypoints.reserve(visible.size());
    for (const auto& vp : visible) {
      const auto point_id = static_cast<uint64_t>(vp.point_index + 1);
      SparseKeypoint kp;
      kp.x = vp.u;
      kp.y = vp.v;
      kp.point3d_id = static_cast<int64_t>(point_id);
      const auto kp_index = static_cast<uint32_t>(image.keypoints.size());
      image.keypoints.push_back(kp);

      auto& point = model.points[point_id];
      point.xyz = ApplySimilarity(to_local, scene.terrain.points[vp.point_index]);
      point.rgb = {100, 100, 100};
      point.error = 0.7;
      point.track.push_back({image.image_id, kp_index});
    }
    model.images[image.image_id] = std::move(image);
  }
  return {std::move(model), to_utm};
}

void WriteMission(const SyntheticScene& scene, const std::string& dir,
                  const MissionOptions& options) {
  fs::create_directories(dir);
  fs::create_directories(fs::path(dir) / "matches");
  const fs::path base(dir);
  const Intrinsics& k = scene.params.intrinsics;

  WritePly(scene.terrain, (base / "cloud.ply").string(), PlyVariant::kBinaryLittleEndian);

  auto sidecar_for = [&](const std::vector<ScenePose>& poses) {
    PoseSidecar sidecar;
    for (const auto& p : poses) {
      sidecar.records.push_back({p.name, p.geo, p.attitude, k});
    }
    return sidecar;
  };
  WritePoseSidecar(sidecar_for(scene.db), (base / "db_sidecar.csv").string());
  WritePoseSidecar(sidecar_for(scene.query), (base / "query_sidecar.csv").string());

  const SparseModel db_model = BuildDatabaseModel(scene);
  WriteSparseModel(db_model, (base / "model").string(), options.model_variant);

  SimilarityTransform local_to_utm;
  if (options.write_query_local_model) {
    auto [query_model, transform] = BuildQueryLocalModel(scene, scene.params.seed + 7);
    local_to_utm = transform;
    WriteSparseModel(query_model, (base / "query_model").string(), options.model_variant);
  }

  // Point id -> (db image, keypoint) observations, nearest-first per query.
  std::map<uint64_t, std::vector<SparseTrackElement>> observations;
  for (const auto& [pid, point] : db_model.points) {
    observations[pid] = point.track;
  }

  for (const auto& q : scene.query) {
    const auto visible = ProjectCloud(scene.terrain, q.pose, k);
    Rng rng(DeriveSeed(scene.params.seed, q.name));

    // Database images ordered by proximity to this query.
    std::vector<std::pair<double, uint32_t>> db_order;
    for (const auto& [id, image] : db_model.images) {
      db_order.emplace_back((image.Center() - q.pose.pose.center).norm(), id);
    }
    std::sort(db_order.begin(), db_order.end());
    std::map<uint32_t, size_t> db_rank;
    for (size_t r = 0; r < db_order.size(); ++r) {
      db_rank[db_order[r].second] = r;
    }

    std::vector<size_t> order(visible.size());
    std::iota(order.begin(), order.end(), 0);
    rng.Shuffle(order);
    const size_t n_matches = std::min(options.max_matches_per_query, visible.size());

    MatchFile file;
    file.query = q.name;
    for (size_t i = 0; i < n_matches; ++i) {
      const auto& vp = visible[order[i]];
      const auto pid = static_cast<uint64_t>(vp.point_index + 1);
      const auto obs_it = observations.find(pid);
      if (obs_it == observations.end() || obs_it->second.empty()) continue;
      // Prefer the closest database image observing this point.
      const SparseTrackElement* best = &obs_it->second.front();
      size_t best_rank = db_rank[best->image_id];
      for (const auto& el : obs_it->second) {
        const size_t rank = db_rank[el.image_id];
        if (rank < best_rank) {
          best = &el;
          best_rank = rank;
        }
      }
      MatchRecord rec;
      rec.db_image = db_model.images.at(best->image_id).name;
      rec.db_keypoint = best->point2d_index;
      rec.query_px = {vp.u + options.match_noise_px * rng.Gaussian(),
                      vp.v + options.match_noise_px * rng.Gaussian()};
      rec.query_px.x() = std::clamp(rec.query_px.x(), -0.49, k.width - 0.51);
      rec.query_px.y() = std::clamp(rec.query_px.y(), -0.49, k.height - 0.51);
      file.matches.push_back(std::move(rec));
    }
    const auto n_outliers =
        static_cast<size_t>(std::llround(options.match_outlier_fraction * file.matches.size()));
    std::vector<size_t> outlier_order(file.matches.size());
    std::iota(outlier_order.begin(), outlier_order.end(), 0);
    rng.Shuffle(outlier_order);
    for (size_t i = 0; i < n_outliers; ++i) {
      file.matches[outlier_order[i]].query_px = {rng.Uniform(0.0, k.width - 1.0),
                                                 rng.Uniform(0.0, k.height - 1.0)};
    }
    WriteMatchFile(file, (base / "matches" / (q.name + ".json")).string());
  }

  // Detections and object ground truth.
  DetectionFile detections;
  std::vector<GeoObject> gt_objects;
  for (size_t m = 0; m < scene.objects.size(); ++m) {
    const auto& marker = scene.objects[m];
    GeoObject gt;
    gt.class_label = marker.class_label;
    gt.confidence = 1.0;
    gt.position = {marker.position.x(), marker.position.y(), marker.position.z(),
                   scene.params.zone, scene.params.hemisphere};
    gt.support_count = 1;
    gt.source_image = "object_" + std::to_string(m);
    gt.source_box = {0.0, 0.0, 1.0, 1.0};
    gt_objects.push_back(std::move(gt));
  }
  for (const auto& q : scene.query) {
    detections.images.push_back(RenderDetections(scene, q.name).detections);
  }
  WriteDetections(detections, (base / "detections.json").string());
  ExportGeoObjects(gt_objects, (base / "gt_objects.csv").string(), ExportFormat::kCsv);

  // Descriptors from pose-indexed pseudo-images.
  DescriptorIndex db_index, query_index;
  for (const auto& p : scene.db) {
    db_index.Add(p.name, ThumbnailDescriptor(RenderPseudoImage(scene, p.pose, k)));
  }
  for (const auto& p : scene.query) {
    query_index.Add(p.name, ThumbnailDescriptor(RenderPseudoImage(scene, p.pose, k)));
  }
  SaveDescriptors(db_index, (base / "descriptors_db.gdsc").string());
  SaveDescriptors(query_index, (base / "descriptors_query.gdsc").string());

  // Ground-truth trajectory for evaluation.
  Trajectory gt_trajectory;
  gt_trajectory.frame = TrajectoryFrame::kUtm;
  gt_trajectory.zone = scene.params.zone;
  gt_trajectory.hemisphere = scene.params.hemisphere;
  for (const auto& qp : scene.query) {
    TrajectoryEntry entry;
    entry.image_name = qp.name;
    entry.pose = qp.pose.pose;
    entry.has_pose = true;
    entry.registered = true;
    gt_trajectory.entries.push_back(std::move(entry));
  }
  WriteTrajectoryCsv(gt_trajectory, (base / "gt_trajectory.csv").string());

  // Machine-readable ground truth for everything else.
  nlohmann::json gt;
  gt["zone"] = scene.params.zone;
  gt["hemisphere"] = HemisphereName(scene.params.hemisphere);
  gt["seed"] = scene.params.seed;
  nlohmann::json queries = nlohmann::json::array();
  for (const auto& qp : scene.query) {
    const Eigen::Quaterniond q(qp.pose.pose.rotation);
    queries.push_back({{"name", qp.name},
                       {"center", {qp.pose.pose.center.x(), qp.pose.pose.center.y(),
                                   qp.pose.pose.center.z()}},
                       {"quat_wxyz", {q.w(), q.x(), q.y(), q.z()}}});
  }
  gt["queries"] = std::move(queries);
  nlohmann::json objects = nlohmann::json::array();
  for (const auto& marker : scene.objects) {
    objects.push_back({{"class", marker.class_label},
                       {"position", {marker.position.x(), marker.position.y(),
                                     marker.position.z()}},
                       {"radius_m", marker.radius_m}});
  }
  gt["objects"] = std::move(objects);
  if (options.write_query_local_model) {
    gt["query_local_to_utm"] = {{"scale", local_to_utm.scale},
                                {"translation",
                                 {local_to_utm.translation.x(), local_to_utm.translation.y(),
                                  local_to_utm.translation.z()}}};
  }
  std::ofstream gt_out((base / "gt.json").string(), std::ios::trunc);
  gt_out << gt.dump(2) << "\n";
  if (!gt_out) {
    throw IoError("write failed: " + (base / "gt.json").string());
  }

  // Ready-to-run configuration.
  std::ofstream cfg((base / "mission.cfg").string(), std::ios::trunc);
  cfg << "# synthetic mission configuration\n"
      << "model_dir = " << (base / "model").string() << "\n"
      << "query_model_dir = " << (base / "query_model").string() << "\n"
      << "cloud = " << (base / "cloud.ply").string() << "\n"
      << "db_sidecar = " << (base / "db_sidecar.csv").string() << "\n"
      << "query_sidecar = " << (base / "query_sidecar.csv").string() << "\n"
      << "db_descriptors = " << (base / "descriptors_db.gdsc").string() << "\n"
      << "query_descriptors = " << (base / "descriptors_query.gdsc").string() << "\n"
      << "matches_dir = " << (base / "matches").string() << "\n"
      << "detections = " << (base / "detections.json").string() << "\n"
      << "gt_trajectory = " << (base / "gt_trajectory.csv").string() << "\n"
      << "zone = " << scene.params.zone << "\n"
      << "hemisphere = " << HemisphereName(scene.params.hemisphere) << "\n"
      << "seed = " << scene.params.seed << "\n";
  if (!cfg) {
    throw IoError("write failed: " + (base / "mission.cfg").string());
  }
}

}  // namespace uavgeo
