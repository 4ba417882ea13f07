/*
 * Copyright (c) 2026 The uavgeo authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C API of the uavgeo toolkit: batch geo-referencing of UAV imagery,
 * GNSS-denied 6-DoF localization with an SfM similarity-alignment fallback,
 * detection-to-point-cloud projection, and metric evaluation.
 *
 * All state lives behind opaque handles; every fallible call returns a
 * ug_status whose value doubles as the CLI exit code. The message for the
 * last failure on the calling thread is available via ug_last_error().
 */

#ifndef UAVGEO_H
#define UAVGEO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define UG_API __declspec(dllexport)
#else
#define UG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ug_status {
  UG_OK = 0,
  UG_ERROR_CONFIG = 1,     /* bad usage, missing paths, invalid parameters */
  UG_ERROR_FORMAT = 2,     /* malformed or invalid input data */
  UG_ERROR_PROCESSING = 3, /* valid inputs, failed computation */
} ug_status;

UG_API const char* ug_version(void);

/* Message for the most recent failing call on this thread; never NULL. */
UG_API const char* ug_last_error(void);

/* ----------------------------------------------------------- configuration */

typedef struct ug_config ug_config; /* opaque */

UG_API ug_config* ug_config_new(void);
UG_API void ug_config_free(ug_config* config);

/* Loads "key = value" lines; later calls override earlier values. */
UG_API ug_status ug_config_load_file(ug_config* config, const char* path);
UG_API ug_status ug_config_set(ug_config* config, const char* key, const char* value);

/* Returns NULL when the key is unset. The pointer stays valid until the next
 * mutation of the config. */
UG_API const char* ug_config_get(const ug_config* config, const char* key);

/* ------------------------------------------------------------------- runs */

typedef struct ug_report ug_report; /* opaque result of one pipeline run */

UG_API void ug_report_free(ug_report* report);
/* JSON machine summary; valid until ug_report_free. */
UG_API const char* ug_report_json(const ug_report* report);
/* Human-readable rendering. */
UG_API const char* ug_report_text(const ug_report* report);

/* Each run reads its inputs from the config, writes artifacts under the
 * config's `out` directory, and returns a report through *report (pass NULL
 * to discard). */
UG_API ug_status ug_run_localize(const ug_config* config, ug_report** report);
UG_API ug_status ug_run_project(const ug_config* config, ug_report** report);
UG_API ug_status ug_run_align_model(const ug_config* config, ug_report** report);
UG_API ug_status ug_run_eval_loc(const ug_config* config, ug_report** report);
UG_API ug_status ug_run_eval_det(const ug_config* config, ug_report** report);
UG_API ug_status ug_run_tile(const ug_config* config, ug_report** report);
UG_API ug_status ug_run_synth(const ug_config* config, ug_report** report);
UG_API ug_status ug_run_export(const ug_config* config, ug_report** report);

/* ---------------------------------------------------- value-level helpers */

/* WGS84 -> UTM. forced_zone 0 picks the natural zone. is_north: 1 north.  */
UG_API ug_status ug_wgs84_to_utm(double lat_deg, double lon_deg, double alt_m,
                                 int forced_zone, double* easting, double* northing,
                                 double* up, int* zone, int* is_north);

UG_API ug_status ug_utm_to_wgs84(double easting, double northing, double up, int zone,
                                 int is_north, double* lat_deg, double* lon_deg,
                                 double* alt_m);

/* Least-squares similarity src -> dst over n 3D points (xyz interleaved).
 * rotation3x3 is written row-major. with_scale 0 fixes scale = 1. */
UG_API ug_status ug_umeyama(const double* src_xyz, const double* dst_xyz, size_t n,
                            int with_scale, double* scale, double* rotation3x3,
                            double* translation3);

/* Intersection over union of two [x0, y0, x1, y1] boxes. */
UG_API double ug_box_iou(const double box_a[4], const double box_b[4]);

/* Translation (m) and geodesic orientation error (deg) between two camera
 * poses given as row-major world-to-camera rotations and camera centers. */
UG_API ug_status ug_pose_error(const double rotation_est[9], const double center_est[3],
                               const double rotation_gt[9], const double center_gt[3],
                               double* translation_m, double* orientation_deg);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* UAVGEO_H */
