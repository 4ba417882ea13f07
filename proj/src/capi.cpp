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

#include "uavgeo.h"

#include <cstring>
#include <string>

#include "uavgeo/alignment.hpp"
#include "uavgeo/errors.hpp"
#include "uavgeo/evaluation.hpp"
#include "uavgeo/geodesy.hpp"
#include "uavgeo/pipeline.hpp"

namespace {

thread_local std::string g_last_error = "";

ug_status StatusFromError(const uavgeo::Error& e) {
  switch (e.kind()) {
    case uavgeo::ErrorKind::kConfig: return UG_ERROR_CONFIG;
    case uavgeo::ErrorKind::kFormat: return UG_ERROR_FORMAT;
    case uavgeo::ErrorKind::kProcessing: return UG_ERROR_PROCESSING;
  }
  return UG_ERROR_PROCESSING;
}

template <typename Fn>
ug_status Guard(Fn&& fn) {
  try {
    fn();
    return UG_OK;
  } catch (const uavgeo::Error& e) {
    g_last_error = e.what();
    return StatusFromError(e);
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return UG_ERROR_PROCESSING;
  } catch (...) {
    g_last_error = "unknown error";
    return UG_ERROR_PROCESSING;
  }
}

}  // namespace

struct ug_config {
  uavgeo::PipelineConfig config;
};

struct ug_report {
  std::string json;
  std::string text;
};

extern "C" {

const char* ug_version(void) { return "0.1.0"; }

const char* ug_last_error(void) { return g_last_error.c_str(); }

ug_config* ug_config_new(void) { return new ug_config(); }

void ug_config_free(ug_config* config) { delete config; }

ug_status ug_config_load_file(ug_config* config, const char* path) {
  if (config == nullptr || path == nullptr) {
    g_last_error = "null argument";
    return UG_ERROR_CONFIG;
  }
  return Guard([&] {
    const uavgeo::PipelineConfig loaded = uavgeo::PipelineConfig::FromFile(path);
    for (const auto& [key, value] : loaded.values()) {
      config->config.Set(key, value);
    }
  });
}

ug_status ug_config_set(ug_config* config, const char* key, const char* value) {
  if (config == nullptr || key == nullptr || value == nullptr) {
    g_last_error = "null argument";
    return UG_ERROR_CONFIG;
  }
  config->config.Set(key, value);
  return UG_OK;
}

const char* ug_config_get(const ug_config* config, const char* key) {
  if (config == nullptr || key == nullptr) return nullptr;
  const auto it = config->config.values().find(key);
  return it == config->config.values().end() ? nullptr : it->second.c_str();
}

void ug_report_free(ug_report* report) { delete report; }

const char* ug_report_json(const ug_report* report) {
  return report == nullptr ? "" : report->json.c_str();
}

const char* ug_report_text(const ug_report* report) {
  return report == nullptr ? "" : report->text.c_str();
}

namespace {
using RunFn = uavgeo::RunSummary (*)(const uavgeo::PipelineConfig&);

ug_status RunThrough(RunFn run, const ug_config* config, ug_report** report) {
  if (config == nullptr) {
    g_last_error = "null config";
    return UG_ERROR_CONFIG;
  }
  return Guard([&] {
    const uavgeo::RunSummary summary = run(config->config);
    if (report != nullptr) {
      *report = new ug_report{summary.json, summary.text};
    }
  });
}
}  // namespace

ug_status ug_run_localize(const ug_config* config, ug_report** report) {
  return RunThrough(&uavgeo::RunLocalize, config, report);
}
ug_status ug_run_project(const ug_config* config, ug_report** report) {
  return RunThrough(&uavgeo::RunProject, config, report);
}
ug_status ug_run_align_model(const ug_config* config, ug_report** report) {
  return RunThrough(&uavgeo::RunAlignModel, config, report);
}
ug_status ug_run_eval_loc(const ug_config* config, ug_report** report) {
  return RunThrough(&uavgeo::RunEvalLoc, config, report);
}
ug_status ug_run_eval_det(const ug_config* config, ug_report** report) {
  return RunThrough(&uavgeo::RunEvalDet, config, report);
}
ug_status ug_run_tile(const ug_config* config, ug_report** report) {
  return RunThrough(&uavgeo::RunTile, config, report);
}
ug_status ug_run_synth(const ug_config* config, ug_report** report) {
  return RunThrough(&uavgeo::RunSynth, config, report);
}
ug_status ug_run_export(const ug_config* config, ug_report** report) {
  return RunThrough(&uavgeo::RunExport, config, report);
}

ug_status ug_wgs84_to_utm(double lat_deg, double lon_deg, double alt_m, int forced_zone,
                          double* easting, double* northing, double* up, int* zone,
                          int* is_north) {
  return Guard([&] {
    const uavgeo::UtmCoord c = uavgeo::Wgs84ToUtm(
        {lat_deg, lon_deg, alt_m},
        forced_zone > 0 ? std::optional<int>(forced_zone) : std::nullopt);
    if (easting != nullptr) *easting = c.easting;
    if (northing != nullptr) *northing = c.northing;
    if (up != nullptr) *up = c.up;
    if (zone != nullptr) *zone = c.zone;
    if (is_north != nullptr) *is_north = c.hemisphere == uavgeo::Hemisphere::kNorth ? 1 : 0;
  });
}

ug_status ug_utm_to_wgs84(double easting, double northing, double up, int zone, int is_north,
                          double* lat_deg, double* lon_deg, double* alt_m) {
  return Guard([&] {
    const uavgeo::GeoPosition p = uavgeo::UtmToWgs84(
        {easting, northing, up, zone,
         is_north != 0 ? uavgeo::Hemisphere::kNorth : uavgeo::Hemisphere::kSouth});
    if (lat_deg != nullptr) *lat_deg = p.latitude_deg;
    if (lon_deg != nullptr) *lon_deg = p.longitude_deg;
    if (alt_m != nullptr) *alt_m = p.altitude_m;
  });
}

ug_status ug_umeyama(const double* src_xyz, const double* dst_xyz, size_t n, int with_scale,
                     double* scale, double* rotation3x3, double* translation3) {
  if (src_xyz == nullptr || dst_xyz == nullptr) {
    g_last_error = "null point array";
    return UG_ERROR_CONFIG;
  }
  return Guard([&] {
    std::vector<Eigen::Vector3d> src(n), dst(n);
    for (size_t i = 0; i < n; ++i) {
      src[i] = {src_xyz[3 * i], src_xyz[3 * i + 1], src_xyz[3 * i + 2]};
      dst[i] = {dst_xyz[3 * i], dst_xyz[3 * i + 1], dst_xyz[3 * i + 2]};
    }
    const uavgeo::SimilarityTransform t = uavgeo::Umeyama(src, dst, with_scale != 0);
    if (scale != nullptr) *scale = t.scale;
    if (rotation3x3 != nullptr) {
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          rotation3x3[3 * r + c] = t.rotation(r, c);
        }
      }
    }
    if (translation3 != nullptr) {
      for (int i = 0; i < 3; ++i) {
        translation3[i] = t.translation[i];
      }
    }
  });
}

double ug_box_iou(const double box_a[4], const double box_b[4]) {
  if (box_a == nullptr || box_b == nullptr) return 0.0;
  return uavgeo::Iou({box_a[0], box_a[1], box_a[2], box_a[3]},
                     {box_b[0], box_b[1], box_b[2], box_b[3]});
}

ug_status ug_pose_error(const double rotation_est[9], const double center_est[3],
                        const double rotation_gt[9], const double center_gt[3],
                        double* translation_m, double* orientation_deg) {
  if (rotation_est == nullptr || center_est == nullptr || rotation_gt == nullptr ||
      center_gt == nullptr) {
    g_last_error = "null pose argument";
    return UG_ERROR_CONFIG;
  }
  return Guard([&] {
    uavgeo::GeoPose est, gt;
    est.zone = gt.zone = 1;
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 3; ++c) {
        est.pose.rotation(r, c) = rotation_est[3 * r + c];
        gt.pose.rotation(r, c) = rotation_gt[3 * r + c];
      }
      est.pose.center[r] = center_est[r];
      gt.pose.center[r] = center_gt[r];
    }
    const auto [t, o] = uavgeo::PoseErrors(est, gt);
    if (translation_m != nullptr) *translation_m = t;
    if (orientation_deg != nullptr) *orientation_deg = o;
  });
}

}  // extern "C"
