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

#include <string>
#include <vector>

#include <Eigen/Core>

#include "uavgeo/image.hpp"

namespace uavgeo {

// Global-descriptor index for visual place recognition. The pipeline is
// descriptor-agnostic: the built-in thumbnail descriptor works from pixels,
// and externally computed (e.g. learned) descriptors load from file.
struct DescriptorEntry {
  std::string name;
  Eigen::VectorXf descriptor;  // unit L2 norm
};

struct DescriptorIndex {
  std::vector<DescriptorEntry> entries;
  int dim = 0;

  void Add(const std::string& name, const Eigen::VectorXf& descriptor);
  const DescriptorEntry* Find(const std::string& name) const;
};

inline constexpr int kThumbnailSide = 32;

// Area-averaged 32x32 thumbnail, mean-subtracted, L2-normalized (1024-dim).
// Requires width, height >= 32; a constant image has no direction and raises
// a degenerate-descriptor error.
Eigen::VectorXf ThumbnailDescriptor(const GrayImage& image);

// Binary descriptor file: magic "GDSC", u32 count, u32 dim, then per entry
// {u16 name length, name bytes, dim * f32 little-endian}. Descriptors within
// 1e-3 of unit norm are re-normalized; anything else is rejected.
DescriptorIndex LoadExternalDescriptors(const std::string& path);
void SaveDescriptors(const DescriptorIndex& index, const std::string& path);

struct RetrievalHit {
  std::string name;
  double similarity = 0.0;  // cosine
};

// Top-k by cosine similarity, descending; ties broken by ascending name.
// Throws DomainError on an empty index or a dimension mismatch.
std::vector<RetrievalHit> QueryTopK(const DescriptorIndex& index, const Eigen::VectorXf& query,
                                    size_t k);

}  // namespace uavgeo
