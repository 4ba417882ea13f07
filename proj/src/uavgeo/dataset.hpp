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

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "uavgeo/image.hpp"
#include "uavgeo/types.hpp"

namespace uavgeo {

struct Annotation {
  std::string class_label;
  BoundingBox box;
};

struct AnnotatedImage {
  Image image;
  std::vector<Annotation> annotations;
};

// Quadrant tiling with annotation remap. Odd dimensions give the extra pixel
// to the right/bottom tiles. A box clipped by a tile survives there only if
// the clipped area is at least `min_area_keep` of the original area, so
// seam slivers do not poison training sets. Tile order: TL, TR, BL, BR.
std::array<AnnotatedImage, 4> Tile2x2(const AnnotatedImage& input, double min_area_keep = 0.10);

// Box remap used by Tile2x2; exposed for annotation-only workflows (tiling a
// manifest of boxes without decoding pixels).
std::array<std::vector<Annotation>, 4> TileAnnotations(int width, int height,
                                                       const std::vector<Annotation>& annotations,
                                                       double min_area_keep = 0.10);

// Luma grayscale (0.299 R + 0.587 G + 0.114 B replicated to channels) applied
// to a seeded selection of round(fraction * N) images. Returns the selected
// indices, sorted. Annotations are untouched.
std::vector<size_t> GrayscaleFraction(std::vector<AnnotatedImage>& dataset, double fraction,
                                      uint64_t seed);

Image GrayscaleLuma(const Image& image);

// Counter-clockwise rotation by 90 * turns degrees; boxes remapped with it.
// Four turns compose to the identity.
AnnotatedImage Rotate90(const AnnotatedImage& input, int turns);
BoundingBox RotateBox90(const BoundingBox& box, int width, int height, int turns);

struct SplitResult {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
};

// Defaults reproduce the published 4752/516/324 partition of a 5592-item set.
struct SplitRatios {
  double train = 4752.0 / 5592.0;
  double val = 516.0 / 5592.0;
  double test = 324.0 / 5592.0;
};

// Seeded shuffle, then prefix partition with val/test targets rounded to
// nearest and the remainder assigned to train. Disjoint and exhaustive.
SplitResult SplitDataset(const std::vector<std::string>& items, const SplitRatios& ratios,
                         uint64_t seed);

// One path per line; blank lines and '#' comments skipped.
std::vector<std::string> ReadManifest(const std::string& path);

}  // namespace uavgeo
