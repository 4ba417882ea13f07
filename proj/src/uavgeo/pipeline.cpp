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

#include "uavgeo/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <thread>

#include <json.hpp>

#include "uavgeo/alignment.hpp"
#include "uavgeo/dataset.hpp"
#include "uavgeo/errors.hpp"
#include "uavgeo/evaluation.hpp"
#include "uavgeo/frames.hpp"
#include "uavgeo/io/exports.hpp"
#include "uavgeo/io/ply.hpp"
#include "uavgeo/io/records.hpp"
#include "uavgeo/io/sparse_model.hpp"
#include "uavgeo/io/text.hpp"
#include "uavgeo/pnp.hpp"
#include "uavgeo/projection.hpp"
#include "uavgeo/retrieval.hpp"
#include "uavgeo/rng.hpp"
#include "uavgeo/synth.hpp"
#include "uavgeo/threading.hpp"

namespace uavgeo {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

void WriteJsonFile(const std::string& path, const json& j) {
  WriteTextFile(path, j.dump(2) + "\n");
}

std::string EnsureOutDir(const PipelineConfig& config) {
  const std::string out = config.GetString("out");
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) {
    throw ConfigError("cannot create output directory " + out + ": " + ec.message());
  }
  return out;
}

int ThreadCount(const PipelineConfig& config) {
  const int hw = std::max(1u, std::thread::hardware_concurrency());
  const int threads = config.GetInt("threads", hw);
  if (threads < 1) {
    throw ConfigError("threads must be >= 1");
  }
  return threads;
}

ModelVariant ParseVariant(const std::string& name) {
  if (name == "text") return ModelVariant::kText;
  if (name == "binary") return ModelVariant::kBinary;
  if (name == "auto") return ModelVariant::kAuto;
  throw ConfigError("unknown model variant '" + name + "' (text|binary|auto)");
}

Intrinsics IntrinsicsFromConfig(const PipelineConfig& config) {
  const std::string spec = config.GetString("intrinsics");
  const auto parts = SplitChar(spec, ',');
  if (parts.size() != 6) {
    throw ConfigError("intrinsics must be 'fx,fy,cx,cy,width,height'");
  }
  Intrinsics k;
  try {
    k.fx = std::stod(parts[0]);
    k.fy = std::stod(parts[1]);
    k.cx = std::stod(parts[2]);
    k.cy = std::stod(parts[3]);
    k.width = std::stoi(parts[4]);
    k.height = std::stoi(parts[5]);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse intrinsics '" + spec + "'");
  }
  if (!k.Valid()) {
    throw ConfigError("invalid intrinsics '" + spec + "'");
  }
  return k;
}

json RecallsToJson(const LocalizationReport& report) {
  json recalls = json::array();
  for (const auto& r : report.recalls) {
    recalls.push_back({{"translation_m", r.band.translation_m},
                       {"orientation_deg", r.band.orientation_deg},
                       {"joint", r.joint},
                       {"translation_only", r.translation_only},
                       {"orientation_only", r.orientation_only}});
  }
  return recalls;
}

json LocalizationReportToJson(const LocalizationReport& report) {
  json per_query = json::array();
  for (const auto& q : report.per_query) {
    json entry = {{"name", q.name}, {"status", QueryStatusName(q.status)}};
    if (q.status != QueryStatus::kFailed) {
      entry["translation_m"] = q.translation_m;
      entry["orientation_deg"] = q.orientation_deg;
    }
    per_query.push_back(std::move(entry));
  }
  json summary = {{"total", report.total},
                  {"registered", report.registered},
                  {"anchored", report.anchored},
                  {"failed", report.failed}};
  if (report.translation.count > 0) {
    summary["translation_mean_m"] = report.translation.mean;
    summary["translation_std_m"] = report.translation.std_dev;
    summary["orientation_mean_deg"] = report.orientation.mean;
    summary["orientation_std_deg"] = report.orientation.std_dev;
  }
  return {{"per_query", std::move(per_query)},
          {"summary", std::move(summary)},
          {"recalls", RecallsToJson(report)}};
}

void WriteCdfCsv(const std::vector<std::pair<double, double>>& cdf, const std::string& path) {
  std::string body = "error,fraction\n";
  for (const auto& [error, fraction] : cdf) {
    body += FormatDouble(error) + "," + FormatDouble(fraction) + "\n";
  }
  WriteTextFile(path, body);
}

void WriteLocalizationArtifacts(const LocalizationReport& report, const std::string& out) {
  WriteJsonFile((fs::path(out) / "localization_report.json").string(),
                LocalizationReportToJson(report));
  WriteTextFile((fs::path(out) / "localization_report.txt").string(),
                RenderLocalizationReport(report));
  if (!report.cdf_translation.empty()) {
    WriteCdfCsv(report.cdf_translation, (fs::path(out) / "cdf_translation.csv").string());
    WriteCdfCsv(report.cdf_orientation, (fs::path(out) / "cdf_orientation.csv").string());
  }
}

}  // namespace

PipelineConfig PipelineConfig::FromFile(const std::string& path) {
  TextLineReader reader(path);
  PipelineConfig config;
  std::string line;
  while (reader.NextContentLine(&line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(reader.line_number()) +
                        ": expected 'key = value'");
    }
    const std::string key = TrimWhitespace(line.substr(0, eq));
    const std::string value = TrimWhitespace(line.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError(path + ":" + std::to_string(reader.line_number()) + ": empty key");
    }
    config.values_[key] = value;
  }
  return config;
}

std::string PipelineConfig::GetString(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) {
    throw ConfigError("missing required config key '" + key + "'");
  }
  return it->second;
}

std::string PipelineConfig::GetString(const std::string& key, const std::string& def) const {
  const auto it = values_.find(key);
  return it == values_.end() || it->second.empty() ? def : it->second;
}

double PipelineConfig::GetDouble(const std::string& key, double def) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return def;
  try {
    return std::stod(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not a number: '" + it->second + "'");
  }
}

int PipelineConfig::GetInt(const std::string& key, int def) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return def;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not an integer: '" + it->second + "'");
  }
}

uint64_t PipelineConfig::GetU64(const std::string& key, uint64_t def) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return def;
  try {
    return std::stoull(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not an integer: '" + it->second + "'");
  }
}

bool PipelineConfig::GetBool(const std::string& key, bool def) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return def;
  if (it->second == "true" || it->second == "1" || it->second == "yes") return true;
  if (it->second == "false" || it->second == "0" || it->second == "no") return false;
  throw ConfigError("config key '" + key + "' is not a boolean: '" + it->second + "'");
}

std::optional<int> PipelineConfig::GetOptionalInt(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end() || it->second.empty()) return std::nullopt;
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "' is not an integer: '" + it->second + "'");
  }
}

std::string PipelineConfig::GetExistingPath(const std::string& key) const {
  const std::string path = GetString(key);
  if (!fs::exists(path)) {
    throw ConfigError("config key '" + key + "' points at missing path: " + path);
  }
  return path;
}

// ------------------------------------------------------------------ localize

RunSummary RunLocalize(const PipelineConfig& config) {
  const std::string out = EnsureOutDir(config);
  const std::string model_dir = config.GetExistingPath("model_dir");
  const std::string matches_dir = config.GetExistingPath("matches_dir");
  const std::string db_desc_path = config.GetExistingPath("db_descriptors");
  const std::string query_desc_path = config.GetExistingPath("query_descriptors");

  const SparseModel model = ReadSparseModel(model_dir, ParseVariant(config.GetString(
                                                           "model_variant", "auto")));
  const DescriptorIndex db_index = LoadExternalDescriptors(db_desc_path);
  const DescriptorIndex query_index = LoadExternalDescriptors(query_desc_path);

  int zone = config.GetInt("zone", 0);
  Hemisphere hemisphere = ParseHemisphere(config.GetString("hemisphere", "north"));
  if (config.Has("cloud")) {
    const PointCloud cloud = ReadPly(config.GetExistingPath("cloud"));
    if (cloud.frame == CloudFrame::kUtm) {
      if (zone != 0 && zone != cloud.zone) {
        throw ValidationError("config zone does not match cloud zone");
      }
      zone = cloud.zone;
      hemisphere = cloud.hemisphere;
    }
  }
  if (zone == 0) {
    throw ConfigError("localize needs a UTM zone (config 'zone' or a geo-referenced cloud)");
  }

  PnpParams pnp;
  pnp.inlier_px = config.GetDouble("inlier_px", 4.0);
  pnp.confidence = config.GetDouble("confidence", 0.999);
  pnp.max_iters = config.GetInt("max_iters", 10000);
  pnp.min_inliers = config.GetInt("min_inliers", 12);
  const auto retrieval_k = static_cast<size_t>(config.GetInt("retrieval_k", 5));
  const uint64_t master_seed = config.GetU64("seed", 0);
  const int threads = ThreadCount(config);

  // Query intrinsics: explicit config wins, then the sidecar's per-image
  // record, then a single-camera model. A multi-camera model without either
  // source is ambiguous.
  std::optional<Intrinsics> config_intrinsics;
  if (config.Has("intrinsics")) {
    config_intrinsics = IntrinsicsFromConfig(config);
  }
  std::optional<PoseSidecar> query_sidecar;
  if (config.Has("query_sidecar")) {
    query_sidecar = ReadPoseSidecar(config.GetExistingPath("query_sidecar"));
  }
  auto intrinsics_for = [&](const std::string& name) -> Intrinsics {
    if (config_intrinsics) return *config_intrinsics;
    if (query_sidecar) {
      const SidecarRecord* rec = query_sidecar->Find(name);
      if (rec != nullptr) return rec->intrinsics;
    }
    if (model.cameras.size() == 1) return model.cameras.begin()->second.intrinsics;
    throw ConfigError("no intrinsics for query '" + name +
                      "': supply 'intrinsics', a query sidecar record, or a single-camera "
                      "model");
  };

  std::vector<std::string> query_names;
  for (const auto& e : query_index.entries) {
    query_names.push_back(e.name);
  }
  std::sort(query_names.begin(), query_names.end());

  struct QueryResult {
    bool registered = false;
    RigidPose pose;
    int inliers = 0;
    double rmse_px = 0.0;
    std::string note;
  };
  std::vector<QueryResult> results(query_names.size());

  ParallelFor(query_names.size(), threads, [&](size_t qi) {
    const std::string& name = query_names[qi];
    QueryResult& res = results[qi];

    const std::string match_path = (fs::path(matches_dir) / (name + ".json")).string();
    if (!fs::exists(match_path)) {
      res.note = "no match file";
      return;
    }
    const MatchFile match_file = ReadMatchFile(match_path);
    if (match_file.query != name) {
      throw ValidationError(match_path + ": query field '" + match_file.query +
                            "' does not match file name");
    }

    const auto hits = QueryTopK(db_index, query_index.Find(name)->descriptor, retrieval_k);
    std::set<std::string> retrieved;
    for (const auto& h : hits) {
      retrieved.insert(h.name);
    }

    std::vector<MatchRecord> filtered;
    for (const auto& m : match_file.matches) {
      if (retrieved.count(m.db_image) > 0) {
        filtered.push_back(m);
      }
    }
    const auto corrs = GatherCorrespondences(filtered, model);
    if (corrs.size() < 6) {
      res.note = "only " + std::to_string(corrs.size()) + " correspondences after retrieval";
      return;
    }

    PnpParams local = pnp;
    local.seed = DeriveSeed(master_seed, name);
    PnpOutcome outcome;
    try {
      outcome = PnpRansac(corrs, intrinsics_for(name), local);
    } catch (const DegenerateError& e) {
      res.note = e.what();
      return;
    }
    if (!outcome.success) {
      res.note = outcome.failure_reason;
      return;
    }
    res.registered = true;
    res.pose = outcome.result.pose;
    res.inliers = outcome.best_inlier_count;
    res.rmse_px = outcome.result.rmse_px;
  });

  std::map<std::string, RigidPose> registered;
  for (size_t i = 0; i < query_names.size(); ++i) {
    if (results[i].registered) {
      registered[query_names[i]] = results[i].pose;
    }
  }

  // Fallback: anchor the query-sequence reconstruction when registration
  // failed somewhere and enough frames succeeded.
  bool anchoring_used = false;
  SimilarityTransform anchor_transform;
  std::map<std::string, RigidPose> anchored_poses;
  if (registered.size() < query_names.size() && config.Has("query_model_dir") &&
      registered.size() >= 3) {
    const SparseModel query_model = ReadSparseModel(
        config.GetExistingPath("query_model_dir"),
        ParseVariant(config.GetString("model_variant", "auto")));
    Trajectory local;
    local.frame = TrajectoryFrame::kLocal;
    for (const auto& name : query_names) {
      const SparseImage* image = query_model.FindImageByName(name);
      if (image == nullptr) continue;
      TrajectoryEntry entry;
      entry.image_name = name;
      entry.pose = image->Pose();
      entry.has_pose = true;
      local.entries.push_back(std::move(entry));
    }
    const AnchorResult anchor =
        AnchorQueryTrajectory(local, registered, config.GetDouble("anchor_trim", 0.0));
    if (anchor.success) {
      anchoring_used = true;
      anchor_transform = anchor.transform;
      for (const auto& entry : anchor.trajectory.entries) {
        if (entry.anchored) {
          anchored_poses[entry.image_name] = entry.pose;
        }
      }
    }
  }

  Trajectory trajectory;
  trajectory.frame = TrajectoryFrame::kUtm;
  trajectory.zone = zone;
  trajectory.hemisphere = hemisphere;
  size_t n_registered = 0, n_anchored = 0, n_failed = 0;
  for (size_t i = 0; i < query_names.size(); ++i) {
    TrajectoryEntry entry;
    entry.image_name = query_names[i];
    if (results[i].registered) {
      entry.pose = results[i].pose;
      entry.has_pose = true;
      entry.registered = true;
      ++n_registered;
    } else if (anchored_poses.count(query_names[i]) > 0) {
      entry.pose = anchored_poses[query_names[i]];
      entry.has_pose = true;
      entry.anchored = true;
      ++n_anchored;
    } else {
      entry.has_pose = false;
      ++n_failed;
    }
    trajectory.entries.push_back(std::move(entry));
  }
  if (n_registered + n_anchored == 0) {
    throw ProcessingError("no query image could be geo-referenced");
  }

  WriteTrajectoryCsv(trajectory, (fs::path(out) / "trajectory.csv").string());

  json per_query = json::array();
  for (size_t i = 0; i < query_names.size(); ++i) {
    json entry = {{"name", query_names[i]}};
    if (results[i].registered) {
      entry["status"] = "registered";
      entry["inliers"] = results[i].inliers;
      entry["rmse_px"] = results[i].rmse_px;
    } else if (anchored_poses.count(query_names[i]) > 0) {
      entry["status"] = "anchored";
      entry["note"] = results[i].note;
    } else {
      entry["status"] = "failed";
      entry["note"] = results[i].note;
    }
    per_query.push_back(std::move(entry));
  }

  json summary = {{"queries", query_names.size()},
                  {"registered", n_registered},
                  {"anchored", n_anchored},
                  {"failed", n_failed},
                  {"anchoring_used", anchoring_used},
                  {"trajectory", (fs::path(out) / "trajectory.csv").string()},
                  {"per_query", std::move(per_query)}};
  if (anchoring_used) {
    summary["anchor_scale"] = anchor_transform.scale;
  }

  std::string text = "localize: " + std::to_string(n_registered) + " registered, " +
                     std::to_string(n_anchored) + " anchored, " + std::to_string(n_failed) +
                     " failed of " + std::to_string(query_names.size()) + " queries\n";

  if (config.Has("gt_trajectory")) {
    const Trajectory gt = ReadTrajectoryCsv(config.GetExistingPath("gt_trajectory"));
    const LocalizationReport report = BuildLocalizationReport(trajectory, gt);
    WriteLocalizationArtifacts(report, out);
    summary["report"] = LocalizationReportToJson(report);
    text += RenderLocalizationReport(report);
  }

  return {json(summary).dump(2), text};
}

// ------------------------------------------------------------------- project

RunSummary RunProject(const PipelineConfig& config) {
  const std::string out = EnsureOutDir(config);
  const PointCloud cloud = ReadPly(config.GetExistingPath("cloud"));
  if (cloud.frame != CloudFrame::kUtm) {
    throw ValidationError("cloud is not geo-referenced; projection needs a UTM cloud");
  }
  const DetectionFile detections = ReadDetections(config.GetExistingPath("detections"));
  const double depth_band = config.GetDouble("depth_band_m", 2.0);
  const int threads = ThreadCount(config);

  // Pose source: estimated trajectory or GNSS metadata sidecar.
  std::optional<Trajectory> trajectory;
  std::optional<PoseSidecar> sidecar;
  if (config.Has("trajectory")) {
    trajectory = ReadTrajectoryCsv(config.GetExistingPath("trajectory"));
    const int zone = config.GetInt("zone", cloud.zone);
    if (zone != cloud.zone) {
      throw ValidationError("trajectory zone " + std::to_string(zone) +
                            " does not match cloud zone " + std::to_string(cloud.zone));
    }
  }
  if (config.Has("query_sidecar")) {
    sidecar = ReadPoseSidecar(config.GetExistingPath("query_sidecar"));
  }
  if (!trajectory && !sidecar) {
    throw ConfigError("project needs 'trajectory' and/or 'query_sidecar' for poses");
  }
  std::optional<Intrinsics> config_intrinsics;
  if (config.Has("intrinsics")) {
    config_intrinsics = IntrinsicsFromConfig(config);
  }

  struct ImageTask {
    std::string name;
    const std::vector<Detection>* detections;
  };
  std::vector<ImageTask> tasks;
  for (const auto& image : detections.images) {
    tasks.push_back({image.image_name, &image.detections});
  }
  std::sort(tasks.begin(), tasks.end(),
            [](const ImageTask& a, const ImageTask& b) { return a.name < b.name; });

  struct ImageOutput {
    std::vector<GeoObject> objects;
    std::vector<std::pair<Detection, std::string>> unlocalized;  // detection, reason
  };
  std::vector<ImageOutput> outputs(tasks.size());

  ParallelFor(tasks.size(), threads, [&](size_t ti) {
    const ImageTask& task = tasks[ti];
    ImageOutput& output = outputs[ti];

    // Resolve a pose for this image.
    std::optional<GeoPose> pose;
    std::optional<Intrinsics> k = config_intrinsics;
    if (trajectory) {
      const TrajectoryEntry* entry = trajectory->Find(task.name);
      if (entry != nullptr && entry->has_pose) {
        pose = GeoPose{entry->pose, cloud.zone, cloud.hemisphere};
      }
    }
    if (sidecar) {
      const SidecarRecord* rec = sidecar->Find(task.name);
      if (rec != nullptr) {
        if (!k) k = rec->intrinsics;
        if (!pose) {
          UtmCoord utm;
          try {
            utm = Wgs84ToUtm(rec->position, cloud.zone);
          } catch (const DomainError& e) {
            throw ValidationError(std::string("sidecar/cloud zone mismatch: ") + e.what());
          }
          GeoPose gp;
          gp.zone = utm.zone;
          gp.hemisphere = utm.hemisphere;
          if (gp.hemisphere != cloud.hemisphere) {
            throw ValidationError("sidecar hemisphere does not match cloud");
          }
          gp.pose.center = {utm.easting, utm.northing, utm.up};
          gp.pose.rotation = RotationEnuFromCamera(rec->attitude).transpose();
          pose = gp;
        }
      }
    }
    if (!pose) {
      for (const auto& det : *task.detections) {
        output.unlocalized.emplace_back(det, "no pose for image");
      }
      return;
    }
    if (!k) {
      throw ConfigError("no intrinsics for image '" + task.name +
                        "' (supply 'intrinsics' or a sidecar)");
    }

    const LocalizeDetectionsResult result =
        LocalizeDetections(*task.detections, cloud, *pose, *k, task.name, depth_band);
    output.objects = result.objects;
    for (const auto& u : result.unlocalized) {
      Detection det;
      det.class_label = u.object.class_label;
      det.confidence = u.object.confidence;
      det.box = u.object.source_box;
      output.unlocalized.emplace_back(det, u.reason);
    }
  });

  std::vector<GeoObject> all_objects;
  json unlocalized = json::array();
  for (size_t i = 0; i < tasks.size(); ++i) {
    for (const auto& o : outputs[i].objects) {
      all_objects.push_back(o);
    }
    for (const auto& [det, reason] : outputs[i].unlocalized) {
      unlocalized.push_back({{"image", tasks[i].name},
                             {"class", det.class_label},
                             {"conf", det.confidence},
                             {"box", {det.box.x_min, det.box.y_min, det.box.x_max,
                                      det.box.y_max}},
                             {"reason", reason}});
    }
  }

  const auto forced_zone = config.GetOptionalInt("forced_zone");
  ExportGeoObjects(all_objects, (fs::path(out) / "objects.geojson").string(),
                   ExportFormat::kGeoJson, forced_zone);
  ExportGeoObjects(all_objects, (fs::path(out) / "objects.csv").string(), ExportFormat::kCsv,
                   forced_zone);
  WriteJsonFile((fs::path(out) / "unlocalized.json").string(),
                json{{"unlocalized", unlocalized}});

  json summary = {{"images", tasks.size()},
                  {"objects", all_objects.size()},
                  {"unlocalized", unlocalized.size()},
                  {"geojson", (fs::path(out) / "objects.geojson").string()},
                  {"csv", (fs::path(out) / "objects.csv").string()}};
  const std::string text = "project: " + std::to_string(all_objects.size()) +
                           " objects localized, " + std::to_string(unlocalized.size()) +
                           " unlocalized, over " + std::to_string(tasks.size()) + " images\n";
  return {summary.dump(2), text};
}

// --------------------------------------------------------------- align-model

RunSummary RunAlignModel(const PipelineConfig& config) {
  const std::string out = EnsureOutDir(config);
  const SparseModel model = ReadSparseModel(
      config.GetExistingPath("model_dir"),
      ParseVariant(config.GetString("model_variant", "auto")));
  const PoseSidecar sidecar = ReadPoseSidecar(config.GetExistingPath("db_sidecar"));

  const GeoRegistration reg =
      GeoRegisterModel(model, sidecar, config.GetOptionalInt("forced_zone"),
                       config.GetDouble("align_trim", 0.0));

  const std::string aligned_dir = (fs::path(out) / "aligned_model").string();
  WriteSparseModel(reg.model, aligned_dir,
                   ParseVariant(config.GetString("out_variant", "binary")));

  json residuals = json::array();
  for (const auto& [name, r] : reg.residuals_m) {
    residuals.push_back({{"image", name}, {"residual_m", r}});
  }
  const Eigen::Quaterniond q(reg.transform.rotation);
  json summary = {{"scale", reg.transform.scale},
                  {"rotation_wxyz", {q.w(), q.x(), q.y(), q.z()}},
                  {"translation",
                   {reg.transform.translation.x(), reg.transform.translation.y(),
                    reg.transform.translation.z()}},
                  {"zone", reg.zone},
                  {"hemisphere", HemisphereName(reg.hemisphere)},
                  {"rms_residual_m", reg.rms_residual_m},
                  {"matched_images", reg.residuals_m.size()},
                  {"aligned_model", aligned_dir},
                  {"residuals", std::move(residuals)}};
  WriteJsonFile((fs::path(out) / "alignment.json").string(), summary);

  char text[160];
  std::snprintf(text, sizeof(text),
                "align-model: %zu images matched, scale %.6f, rms residual %.4f m\n",
                reg.residuals_m.size(), reg.transform.scale, reg.rms_residual_m);
  return {summary.dump(2), text};
}

// ---------------------------------------------------------------- evaluation

RunSummary RunEvalLoc(const PipelineConfig& config) {
  const std::string out = EnsureOutDir(config);
  const Trajectory est = ReadTrajectoryCsv(config.GetExistingPath("trajectory"));
  const Trajectory gt = ReadTrajectoryCsv(config.GetExistingPath("gt_trajectory"));
  const LocalizationReport report = BuildLocalizationReport(est, gt);
  WriteLocalizationArtifacts(report, out);
  return {LocalizationReportToJson(report).dump(2), RenderLocalizationReport(report)};
}

RunSummary RunEvalDet(const PipelineConfig& config) {
  const std::string out = EnsureOutDir(config);
  const DetectionFile gt = ReadDetections(config.GetExistingPath("gt_detections"));
  const DetectionFile preds = ReadDetections(config.GetExistingPath("detections"));

  DetEvalOptions options;
  options.operating_conf = config.GetDouble("operating_conf", 0.25);
  options.f1_grid_step = config.GetDouble("f1_grid_step", 0.001);
  options.confusion_iou = config.GetDouble("confusion_iou", 0.45);
  options.confusion_conf = config.GetDouble("confusion_conf", 0.25);
  const DetectionReport report = MapSuite(gt, preds, options);

  json per_class = json::array();
  for (const auto& c : report.per_class) {
    per_class.push_back(
        {{"class", c.class_label}, {"ap50", c.ap50}, {"ap50_95", c.ap5095}});
  }
  const Eigen::MatrixXd norm = report.confusion.Normalized();
  json matrix = json::array();
  for (Eigen::Index r = 0; r < norm.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < norm.cols(); ++c) {
      row.push_back(norm(r, c));
    }
    matrix.push_back(std::move(row));
  }
  json summary = {{"map50", report.map50},
                  {"map50_95", report.map5095},
                  {"precision", report.precision},
                  {"recall", report.recall},
                  {"best_f1", report.f1.best_f1},
                  {"best_f1_threshold", report.f1.best_threshold},
                  {"per_class", std::move(per_class)},
                  {"confusion_classes", report.confusion.classes},
                  {"confusion_normalized", std::move(matrix)}};

  WriteJsonFile((fs::path(out) / "detection_report.json").string(), summary);
  WriteTextFile((fs::path(out) / "detection_report.txt").string(),
                RenderDetectionReport(report));

  std::string curve = "threshold,mean_f1\n";
  for (size_t i = 0; i < report.f1.thresholds.size(); ++i) {
    curve += FormatDouble(report.f1.thresholds[i]) + "," + FormatDouble(report.f1.mean_f1[i]) +
             "\n";
  }
  WriteTextFile((fs::path(out) / "f1_curve.csv").string(), curve);

  return {summary.dump(2), RenderDetectionReport(report)};
}

// ---------------------------------------------------------------------- tile

RunSummary RunTile(const PipelineConfig& config) {
  const std::string out = EnsureOutDir(config);
  const auto manifest = ReadManifest(config.GetExistingPath("manifest"));
  const double min_area_keep = config.GetDouble("min_area_keep", 0.10);

  std::optional<DetectionFile> annotations;
  if (config.Has("annotations")) {
    annotations = ReadDetections(config.GetExistingPath("annotations"));
  }

  DetectionFile tiled_annotations;
  size_t tiles_written = 0;
  for (const auto& path : manifest) {
    const fs::path p(path);
    if (!fs::exists(p)) {
      throw ConfigError("manifest entry does not exist: " + path);
    }
    AnnotatedImage annotated;
    annotated.image = ReadPnm(path);
    if (annotations) {
      const ImageDetections* image_ann = annotations->Find(p.filename().string());
      if (image_ann != nullptr) {
        for (const auto& det : image_ann->detections) {
          annotated.annotations.push_back({det.class_label, det.box});
        }
      }
    }
    const auto tiles = Tile2x2(annotated, min_area_keep);
    for (int t = 0; t < 4; ++t) {
      const std::string tile_name =
          p.stem().string() + "_t" + std::to_string(t) + p.extension().string();
      WritePnm(tiles[t].image, (fs::path(out) / tile_name).string());
      ++tiles_written;
      if (annotations) {
        ImageDetections entry;
        entry.image_name = tile_name;
        for (const auto& ann : tiles[t].annotations) {
          entry.detections.push_back({ann.class_label, 1.0, ann.box});
        }
        tiled_annotations.images.push_back(std::move(entry));
      }
    }
  }
  if (annotations) {
    WriteDetections(tiled_annotations,
                    (fs::path(out) / "tiled_annotations.json").string());
  }

  json summary = {{"images", manifest.size()}, {"tiles", tiles_written}};
  return {summary.dump(2), "tile: " + std::to_string(manifest.size()) + " images -> " +
                               std::to_string(tiles_written) + " tiles\n"};
}

// --------------------------------------------------------------------- synth

RunSummary RunSynth(const PipelineConfig& config) {
  const std::string out = EnsureOutDir(config);
  SceneParams params;
  params.grid_nx = config.GetInt("grid_nx", params.grid_nx);
  params.grid_ny = config.GetInt("grid_ny", params.grid_ny);
  params.spacing_m = config.GetDouble("spacing_m", params.spacing_m);
  params.height_amplitude_m = config.GetDouble("height_amplitude_m", params.height_amplitude_m);
  params.n_db = config.GetInt("n_db", params.n_db);
  params.n_query = config.GetInt("n_query", params.n_query);
  params.n_objects = config.GetInt("n_objects", params.n_objects);
  params.altitude_m = config.GetDouble("altitude_m", params.altitude_m);
  params.seed = config.GetU64("seed", params.seed);
  params.zone = config.GetInt("zone", params.zone);
  params.hemisphere = ParseHemisphere(config.GetString("hemisphere", "north"));

  MissionOptions options;
  options.match_noise_px = config.GetDouble("match_noise_px", options.match_noise_px);
  options.match_outlier_fraction =
      config.GetDouble("match_outlier_fraction", options.match_outlier_fraction);
  options.max_matches_per_query = static_cast<size_t>(
      config.GetInt("max_matches_per_query", static_cast<int>(options.max_matches_per_query)));
  options.model_variant = ParseVariant(config.GetString("model_variant", "binary"));
  if (options.model_variant == ModelVariant::kAuto) {
    throw ConfigError("synth model_variant must be text or binary");
  }
  options.write_query_local_model = config.GetBool("write_query_local_model", true);

  const SyntheticScene scene = GenerateScene(params);
  WriteMission(scene, out, options);

  json summary = {{"out", out},
                  {"terrain_points", scene.terrain.points.size()},
                  {"db_images", scene.db.size()},
                  {"query_images", scene.query.size()},
                  {"objects", scene.objects.size()},
                  {"seed", params.seed}};
  const std::string text = "synth: mission with " +
                           std::to_string(scene.terrain.points.size()) + " points, " +
                           std::to_string(scene.db.size()) + " db / " +
                           std::to_string(scene.query.size()) + " query images, " +
                           std::to_string(scene.objects.size()) + " objects -> " + out + "\n";
  return {summary.dump(2), text};
}

// -------------------------------------------------------------------- export

RunSummary RunExport(const PipelineConfig& config) {
  const std::string out = EnsureOutDir(config);
  json summary;
  std::string text;

  if (config.Has("objects_csv")) {
    const auto objects = ReadGeoObjectsCsv(config.GetExistingPath("objects_csv"));
    const std::string format = config.GetString("format", "geojson");
    const auto forced_zone = config.GetOptionalInt("forced_zone");
    std::string path;
    if (format == "geojson") {
      path = (fs::path(out) / "objects.geojson").string();
      ExportGeoObjects(objects, path, ExportFormat::kGeoJson, forced_zone);
    } else if (format == "csv") {
      path = (fs::path(out) / "objects.csv").string();
      ExportGeoObjects(objects, path, ExportFormat::kCsv, forced_zone);
    } else {
      throw ConfigError("unknown export format '" + format + "' (geojson|csv)");
    }
    summary = {{"objects", objects.size()}, {"out", path}};
    text = "export: " + std::to_string(objects.size()) + " objects -> " + path + "\n";
  } else if (config.Has("cloud")) {
    const PointCloud cloud = ReadPly(config.GetExistingPath("cloud"));
    const std::string variant = config.GetString("ply_variant", "binary");
    const std::string path = (fs::path(out) / "cloud.ply").string();
    if (variant == "ascii") {
      WritePly(cloud, path, PlyVariant::kAscii);
    } else if (variant == "binary") {
      WritePly(cloud, path, PlyVariant::kBinaryLittleEndian);
    } else {
      throw ConfigError("unknown ply variant '" + variant + "' (ascii|binary)");
    }
    summary = {{"points", cloud.points.size()}, {"out", path}};
    text = "export: " + std::to_string(cloud.points.size()) + " points -> " + path + "\n";
  } else {
    throw ConfigError("export needs 'objects_csv' or 'cloud'");
  }
  return {summary.dump(2), text};
}

}  // namespace uavgeo
