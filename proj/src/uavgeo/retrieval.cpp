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

#include "uavgeo/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "uavgeo/errors.hpp"
#include "uavgeo/io/binary.hpp"

namespace uavgeo {

void DescriptorIndex::Add(const std::string& name, const Eigen::VectorXf& descriptor) {
  if (dim == 0) {
    dim = static_cast<int>(descriptor.size());
  } else if (descriptor.size() != dim) {
    throw ValidationError("descriptor dimension mismatch: index holds " + std::to_string(dim) +
                          ", got " + std::to_string(descriptor.size()));
  }
  if (Find(name) != nullptr) {
    throw ValidationError("duplicate descriptor name '" + name + "'");
  }
  entries.push_back({name, descriptor});
}

const DescriptorEntry* DescriptorIndex::Find(const std::string& name) const {
  for (const auto& e : entries) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

Eigen::VectorXf ThumbnailDescriptor(const GrayImage& image) {
  if (image.width < kThumbnailSide || image.height < kThumbnailSide) {
    throw DomainError("thumbnail descriptor needs at least a 32x32 image");
  }

  // Exact area averaging: output cell (i, j) integrates the source rectangle
  // [j*W/32, (j+1)*W/32) x [i*H/32, (i+1)*H/32) with fractional edge weights.
  Eigen::VectorXf desc(kThumbnailSide * kThumbnailSide);
  const double sx = static_cast<double>(image.width) / kThumbnailSide;
  const double sy = static_cast<double>(image.height) / kThumbnailSide;
  for (int ty = 0; ty < kThumbnailSide; ++ty) {
    const double y0 = ty * sy, y1 = (ty + 1) * sy;
    for (int tx = 0; tx < kThumbnailSide; ++tx) {
      const double x0 = tx * sx, x1 = (tx + 1) * sx;
      double sum = 0.0;
      for (int y = static_cast<int>(std::floor(y0)); y < static_cast<int>(std::ceil(y1)); ++y) {
        const double wy =
            std::min<double>(y + 1, y1) - std::max<double>(y, y0);
        for (int x = static_cast<int>(std::floor(x0)); x < static_cast<int>(std::ceil(x1));
             ++x) {
          const double wx = std::min<double>(x + 1, x1) - std::max<double>(x, x0);
          sum += wx * wy * image.At(std::min(x, image.width - 1), std::min(y, image.height - 1));
        }
      }
      desc[ty * kThumbnailSide + tx] = static_cast<float>(sum / (sx * sy));
    }
  }

  desc.array() -= desc.mean();
  const float norm = desc.norm();
  if (!(norm > 1e-6f)) {
    throw DomainError("degenerate descriptor: image is constant");
  }
  return desc / norm;
}

DescriptorIndex LoadExternalDescriptors(const std::string& path) {
  BinaryReader in(path);
  char magic[4];
  in.ReadBytes(magic, 4);
  if (std::string_view(magic, 4) != "GDSC") {
    throw ParseError(path, "bad magic (want GDSC)", std::nullopt, 0);
  }
  const uint32_t count = in.ReadU32();
  const uint32_t dim = in.ReadU32();
  if (dim == 0) {
    throw ParseError(path, "descriptor dimension must be positive", std::nullopt, in.offset());
  }
  in.CheckCountPlausible(dim, 4, "dimension");
  in.CheckCountPlausible(count, 2 + static_cast<size_t>(dim) * 4, "descriptor");
  DescriptorIndex index;
  index.dim = static_cast<int>(dim);
  std::set<std::string> seen;
  for (uint32_t i = 0; i < count; ++i) {
    const uint16_t name_len = in.ReadU16();
    std::string name(name_len, '\0');
    in.ReadBytes(name.data(), name_len);
    if (!seen.insert(name).second) {
      throw ValidationError(path + ": duplicate descriptor name '" + name + "'");
    }
    Eigen::VectorXf d(dim);
    for (uint32_t j = 0; j < dim; ++j) {
      d[j] = in.ReadF32();
    }
    if (!d.allFinite()) {
      throw ValidationError(path + ": non-finite descriptor component in '" + name + "'");
    }
    const float norm = d.norm();
    if (std::fabs(norm - 1.0f) > 1e-3f) {
      throw ValidationError(path + ": descriptor '" + name + "' has norm " +
                            std::to_string(norm) + ", more than 1e-3 from unit");
    }
    index.entries.push_back({std::move(name), d / norm});
  }
  if (!in.AtEof()) {
    throw ParseError(path, "trailing bytes after last descriptor", std::nullopt, in.offset());
  }
  return index;
}

void SaveDescriptors(const DescriptorIndex& index, const std::string& path) {
  BinaryWriter out(path);
  out.WriteBytes("GDSC", 4);
  out.WriteU32(static_cast<uint32_t>(index.entries.size()));
  out.WriteU32(static_cast<uint32_t>(index.dim));
  for (const auto& e : index.entries) {
    if (e.name.size() > 0xffff) {
      throw ValidationError("descriptor name too long: " + e.name);
    }
    out.WriteU16(static_cast<uint16_t>(e.name.size()));
    out.WriteBytes(e.name.data(), e.name.size());
    for (int j = 0; j < e.descriptor.size(); ++j) {
      out.WriteF32(e.descriptor[j]);
    }
  }
}

std::vector<RetrievalHit> QueryTopK(const DescriptorIndex& index, const Eigen::VectorXf& query,
                                    size_t k) {
  if (index.entries.empty()) {
    throw DomainError("query against empty descriptor index");
  }
  if (query.size() != index.dim) {
    throw DomainError("query dimension " + std::to_string(query.size()) +
                      " does not match index dimension " + std::to_string(index.dim));
  }
  const float qnorm = query.norm();
  if (!(qnorm > 0.0f)) {
    throw DomainError("zero query descriptor");
  }

  std::vector<RetrievalHit> hits;
  hits.reserve(index.entries.size());
  for (const auto& e : index.entries) {
    hits.push_back({e.name, static_cast<double>(query.dot(e.descriptor) / qnorm)});
  }
  std::sort(hits.begin(), hits.end(), [](const RetrievalHit& a, const RetrievalHit& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.name < b.name;
  });
  hits.resize(std::min(k, hits.size()));
  return hits;
}

}  // namespace uavgeo
