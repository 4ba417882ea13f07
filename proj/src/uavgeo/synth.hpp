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

#include <cstdint>
#include <string>
#include <vector>

#include "uavgeo/alignment.hpp"
#include "uavgeo/camera.hpp"
#include "uavgeo/io/ply.hpp"
#include "uavgeo/io/records.hpp"
#include "uavgeo/io/sparse_model.hpp"
#include "uavgeo/pnp.hpp"
#include "uavgeo/retrieval.hpp"
#include "uavgeo/types.hpp"

namespace uavgeo {

// Desk-scale mission generator: smooth heightfield terrain in UTM, nadir-ish
// database and query trajectories, object markers on the surface. Everything
// is reproducible bit-exactly from the seed, so the scene doubles as the
// ground-truth reference for every pipeline stage.

struct SceneParams {
  int grid_nx = 120;
  int grid_ny = 120;
  double spacing_m = 2.0;
  double height_amplitude_m = 10.0;
  int n_db = 24;
  int n_query = 8;
  int n_objects = 5;
  double altitude_m = 60.0;  // above mean terrain
  uint64_t seed = 1;
  int zone = 34;
  Hemisphere hemisphere = Hemisphere::kNorth;
  double anchor_easting = 555000.0;
  double anchor_northing = 4255000.0;
  double base_up_m = 80.0;
  Intrinsics intrinsics{600.0, 600.0, 320.0, 256.0, 640, 512};
};

struct ObjectMarker {
  std::string class_label;
  Eigen::Vector3d position;  // UTM, on the terrain surface
  double radius_m = 4.0;
};

struct ScenePose {
  std::string name;
  GeoPose pose;          // ground truth, camera-from-world
  EulerNed attitude;     // the metadata that would ride in EXIF
  GeoPosition geo;       // ditto
};

struct SyntheticScene {
  SceneParams params;
  PointCloud terrain;  // UTM frame
  std::vector<ObjectMarker> objects;
  std::vector<ScenePose> db;
  std::vector<ScenePose> query;

  const ScenePose* FindPose(const std::string& name) const;
};

// Throws DomainError for degenerate parameters (counts < 1, non-positive
// spacing) and ProcessingError when some pose sees fewer than 100 points.
SyntheticScene GenerateScene(const SceneParams& params);

struct RenderedCorrespondences {
  std::vector<Correspondence> correspondences;
  std::vector<bool> inlier_labels;  // ground truth
};

// Visible terrain points projected into `image_name`, Gaussian pixel noise
// added, then round(outlier_fraction * N) pixels replaced with uniform
// in-bounds pixels. `max_points` = 0 keeps every visible point; otherwise a
// seeded subset of exactly max_points (error when fewer are visible).
RenderedCorrespondences RenderCorrespondences(const SyntheticScene& scene,
                                              const std::string& image_name, double noise_px,
                                              double outlier_fraction, uint64_t seed,
                                              size_t max_points = 0);

struct RenderedDetections {
  ImageDetections detections;        // bounding squares of visible markers
  std::vector<GeoObject> ground_truth;  // marker positions, same order
};

RenderedDetections RenderDetections(const SyntheticScene& scene, const std::string& image_name);

// 64x64 intensity rendering of the terrain from a pose (height-shaded point
// splats). Pose-indexed stand-in for real pixels: nearby poses see similar
// patterns, which is all retrieval needs.
GrayImage RenderPseudoImage(const SyntheticScene& scene, const GeoPose& pose,
                            const Intrinsics& k);

// Builds the geo-referenced sparse model a reconstruction tool would produce
// for the database images: exact keypoints with point links, UTM frame.
SparseModel BuildDatabaseModel(const SyntheticScene& scene);

// Query-sequence model in an arbitrary similarity-displaced local frame (the
// unreferenced secondary reconstruction). Returns the model and the ground
// truth local->UTM transform.
std::pair<SparseModel, SimilarityTransform> BuildQueryLocalModel(const SyntheticScene& scene,
                                                                 uint64_t seed);

struct MissionOptions {
  double match_noise_px = 0.5;
  double match_outlier_fraction = 0.0;
  size_t max_matches_per_query = 300;
  ModelVariant model_variant = ModelVariant::kBinary;
  bool write_query_local_model = true;
};

// Writes a complete mission directory: cloud.ply, db_sidecar.csv,
// query_sidecar.csv, sparse model, query_model, matches/<query>.json,
// detections.json, descriptors (db + query), gt_trajectory.csv,
// gt_objects.csv, gt.json, and a ready-to-run mission.cfg.
void WriteMission(const SyntheticScene& scene, const std::string& dir,
                  const MissionOptions& options = {});

}  // namespace uavgeo
