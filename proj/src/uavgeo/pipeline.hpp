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

#include <map>
#include <optional>
#include <string>

namespace uavgeo {

// Flat key = value configuration; every CLI flag overrides its file key.
// Documented keys live in the README.
class PipelineConfig {
 public:
  PipelineConfig() = default;

  static PipelineConfig FromFile(const std::string& path);

  void Set(const std::string& key, const std::string& value) { values_[key] = value; }

  // Empty values count as unset, so an override can clear a file key.
  bool Has(const std::string& key) const {
    const auto it = values_.find(key);
    return it != values_.end() && !it->second.empty();
  }

  std::string GetString(const std::string& key) const;                       // required
  std::string GetString(const std::string& key, const std::string& def) const;
  double GetDouble(const std::string& key, double def) const;
  int GetInt(const std::string& key, int def) const;
  uint64_t GetU64(const std::string& key, uint64_t def) const;
  bool GetBool(const std::string& key, bool def) const;
  std::optional<int> GetOptionalInt(const std::string& key) const;

  // Path value that must exist on disk.
  std::string GetExistingPath(const std::string& key) const;

  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

struct RunSummary {
  std::string json;  // machine-readable summary
  std::string text;  // human-readable summary
};

// Batch stages; each writes its outputs under the `out` directory and returns
// a summary. Errors are typed (ConfigError 1, format errors 2, processing 3).
RunSummary RunLocalize(const PipelineConfig& config);
RunSummary RunProject(const PipelineConfig& config);
RunSummary RunAlignModel(const PipelineConfig& config);
RunSummary RunEvalLoc(const PipelineConfig& config);
RunSummary RunEvalDet(const PipelineConfig& config);
RunSummary RunTile(const PipelineConfig& config);
RunSummary RunSynth(const PipelineConfig& config);
RunSummary RunExport(const PipelineConfig& config);

}  // namespace uavgeo
