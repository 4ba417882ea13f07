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

// Command-line front end. Deliberately a pure client of the shared-library
// C API: everything it can do, any binding can do.

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "uavgeo.h"

namespace {

struct ConfigDeleter {
  void operator()(ug_config* c) const { ug_config_free(c); }
};
using ConfigPtr = std::unique_ptr<ug_config, ConfigDeleter>;

struct SubcommandState {
  std::string config_path;
  std::vector<std::string> sets;  // key=value overrides
  std::string out;
  std::string seed;
  std::string threads;
  bool json_output = false;
};

// Flags shared by every subcommand; each one overrides its config-file key.
void AddCommonOptions(CLI::App* cmd, SubcommandState* state) {
  cmd->add_option("--config", state->config_path, "configuration file (key = value lines)");
  cmd->add_option("--set", state->sets, "override a config key, e.g. --set inlier_px=3.0")
      ->take_all();
  cmd->add_option("--out", state->out, "output directory");
  cmd->add_option("--seed", state->seed, "master seed");
  cmd->add_option("--threads", state->threads, "worker thread count");
  cmd->add_flag("--json", state->json_output, "print the JSON summary instead of text");
}

// Convenience flags that map straight onto config keys.
void AddKeyOption(CLI::App* cmd, SubcommandState* state, const char* flag, const char* key,
                  const char* help) {
  cmd->add_option_function<std::string>(
      flag,
      [state, key](const std::string& value) { state->sets.push_back(std::string(key) + "=" + value); },
      help);
}

int Fail(ug_status status, const char* stage) {
  std::fprintf(stderr, "uavgeo: %s: %s\n", stage, ug_last_error());
  return static_cast<int>(status);
}

int RunStage(ug_status (*run)(const ug_config*, ug_report**), const SubcommandState& state) {
  ConfigPtr config(ug_config_new());
  if (!state.config_path.empty()) {
    const ug_status status = ug_config_load_file(config.get(), state.config_path.c_str());
    if (status != UG_OK) return Fail(status, "config");
  }
  for (const auto& kv : state.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "uavgeo: --set expects key=value, got '%s'\n", kv.c_str());
      return static_cast<int>(UG_ERROR_CONFIG);
    }
    ug_config_set(config.get(), kv.substr(0, eq).c_str(), kv.substr(eq + 1).c_str());
  }
  if (!state.out.empty()) ug_config_set(config.get(), "out", state.out.c_str());
  if (!state.seed.empty()) ug_config_set(config.get(), "seed", state.seed.c_str());
  if (!state.threads.empty()) ug_config_set(config.get(), "threads", state.threads.c_str());

  ug_report* report = nullptr;
  const ug_status status = run(config.get(), &report);
  if (status != UG_OK) return Fail(status, "run");
  std::printf("%s", state.json_output ? ug_report_json(report) : ug_report_text(report));
  if (state.json_output) std::printf("\n");
  ug_report_free(report);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uavgeo - UAV imagery geo-referencing, GNSS-denied localization, and "
               "detection positioning toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", ug_version());

  SubcommandState localize, project, align, eval_loc, eval_det, tile, synth, export_state;

  CLI::App* cmd_localize =
      app.add_subcommand("localize", "recover query poses: retrieval + PnP with SfM fallback");
  AddCommonOptions(cmd_localize, &localize);
  AddKeyOption(cmd_localize, &localize, "--model", "model_dir", "sparse model directory");
  AddKeyOption(cmd_localize, &localize, "--matches", "matches_dir", "match files directory");
  AddKeyOption(cmd_localize, &localize, "--db-descriptors", "db_descriptors",
               "database descriptor file");
  AddKeyOption(cmd_localize, &localize, "--query-descriptors", "query_descriptors",
               "query descriptor file");
  AddKeyOption(cmd_localize, &localize, "--query-model", "query_model_dir",
               "query-sequence model for the fallback");
  AddKeyOption(cmd_localize, &localize, "--gt", "gt_trajectory",
               "ground-truth trajectory CSV (enables the report)");

  CLI::App* cmd_project =
      app.add_subcommand("project", "project 2D detections onto the geo-referenced cloud");
  AddCommonOptions(cmd_project, &project);
  AddKeyOption(cmd_project, &project, "--cloud", "cloud", "point cloud PLY");
  AddKeyOption(cmd_project, &project, "--detections", "detections", "detections JSON");
  AddKeyOption(cmd_project, &project, "--trajectory", "trajectory", "estimated trajectory CSV");
  AddKeyOption(cmd_project, &project, "--sidecar", "query_sidecar", "pose-metadata sidecar CSV");

  CLI::App* cmd_align =
      app.add_subcommand("align-model", "geo-register a sparse model against GNSS metadata");
  AddCommonOptions(cmd_align, &align);
  AddKeyOption(cmd_align, &align, "--model", "model_dir", "sparse model directory");
  AddKeyOption(cmd_align, &align, "--sidecar", "db_sidecar", "pose-metadata sidecar CSV");

  CLI::App* cmd_eval = app.add_subcommand("eval", "evaluate localization or detections");
  cmd_eval->require_subcommand(1);
  CLI::App* cmd_eval_loc = cmd_eval->add_subcommand("loc", "6-DoF localization benchmark");
  AddCommonOptions(cmd_eval_loc, &eval_loc);
  AddKeyOption(cmd_eval_loc, &eval_loc, "--trajectory", "trajectory", "estimated trajectory CSV");
  AddKeyOption(cmd_eval_loc, &eval_loc, "--gt", "gt_trajectory", "ground-truth trajectory CSV");
  CLI::App* cmd_eval_det = cmd_eval->add_subcommand("det", "detection metric suite");
  AddCommonOptions(cmd_eval_det, &eval_det);
  AddKeyOption(cmd_eval_det, &eval_det, "--detections", "detections", "predictions JSON");
  AddKeyOption(cmd_eval_det, &eval_det, "--gt", "gt_detections", "ground-truth JSON");

  CLI::App* cmd_tile = app.add_subcommand("tile", "2x2 tiling with annotation remap");
  AddCommonOptions(cmd_tile, &tile);
  AddKeyOption(cmd_tile, &tile, "--manifest", "manifest", "image manifest (one path per line)");
  AddKeyOption(cmd_tile, &tile, "--annotations", "annotations", "annotations JSON");

  CLI::App* cmd_synth = app.add_subcommand("synth", "generate a synthetic ground-truth mission");
  AddCommonOptions(cmd_synth, &synth);

  CLI::App* cmd_export = app.add_subcommand("export", "re-export objects or convert clouds");
  AddCommonOptions(cmd_export, &export_state);
  AddKeyOption(cmd_export, &export_state, "--objects-csv", "objects_csv", "objects CSV input");
  AddKeyOption(cmd_export, &export_state, "--format", "format", "geojson|csv");
  AddKeyOption(cmd_export, &export_state, "--cloud", "cloud", "PLY input");
  AddKeyOption(cmd_export, &export_state, "--ply-variant", "ply_variant", "ascii|binary");

  CLI11_PARSE(app, argc, argv);

  if (cmd_localize->parsed()) return RunStage(&ug_run_localize, localize);
  if (cmd_project->parsed()) return RunStage(&ug_run_project, project);
  if (cmd_align->parsed()) return RunStage(&ug_run_align_model, align);
  if (cmd_eval->parsed()) {
    if (cmd_eval_loc->parsed()) return RunStage(&ug_run_eval_loc, eval_loc);
    if (cmd_eval_det->parsed()) return RunStage(&ug_run_eval_det, eval_det);
  }
  if (cmd_tile->parsed()) return RunStage(&ug_run_tile, tile);
  if (cmd_synth->parsed()) return RunStage(&ug_run_synth, synth);
  if (cmd_export->parsed()) return RunStage(&ug_run_export, export_state);
  return static_cast<int>(UG_ERROR_CONFIG);
}
