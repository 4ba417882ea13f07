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

#include "uavgeo/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "uavgeo/errors.hpp"
#include "uavgeo/io/text.hpp"
#include "uavgeo/rng.hpp"

namespace uavgeo {
namespace {

BoundingBox IntersectBox(const BoundingBox& a, const BoundingBox& b) {
  return {std::max(a.x_min, b.x_min), std::max(a.y_min, b.y_min), std::min(a.x_max, b.x_max),
          std::min(a.y_max, b.y_max)};
}

Image CropImage(const Image& src, int x0, int y0, int w, int h) {
  Image out = Image::Create(w, h, src.channels);
  for (int y = 0; y < h; ++y) {
    const uint8_t* row = &src.data[(static_cast<size_t>(y0 + y) * src.width + x0) * src.channels];
    std::copy(row, row + static_cast<size_t>(w) * src.channels,
              &out.data[static_cast<size_t>(y) * w * src.channels]);
  }
  return out;
}

}  // namespace

std::array<std::vector<Annotation>, 4> TileAnnotations(int width, int height,
                                                       const std::vector<Annotation>& annotations,
                                                       double min_area_keep) {
  if (width < 2 || height < 2) {
    throw DomainError("tiling needs at least a 2x2 image");
  }
  const int w0 = width / 2;
  const int h0 = height / 2;
  const BoundingBox tiles[4] = {
      {0.0, 0.0, double(w0), double(h0)},                          // TL
      {double(w0), 0.0, double(width), double(h0)},                // TR
      {0.0, double(h0), double(w0), double(height)},               // BL
      {double(w0), double(h0), double(width), double(height)},     // BR
  };

  std::array<std::vector<Annotation>, 4> out;
  for (const auto& ann : annotations) {
    const double original_area = ann.box.Area();
    if (original_area <= 0.0) continue;
    for (int t = 0; t < 4; ++t) {
      const BoundingBox clipped = IntersectBox(ann.box, tiles[t]);
      if (!clipped.Valid()) continue;
      if (clipped.Area() < min_area_keep * original_area) continue;
      Annotation remapped;
      remapped.class_label = ann.class_label;
      remapped.box = {clipped.x_min - tiles[t].x_min, clipped.y_min - tiles[t].y_min,
                      clipped.x_max - tiles[t].x_min, clipped.y_max - tiles[t].y_min};
      out[t].push_back(std::move(remapped));
    }
  }
  return out;
}

std::array<AnnotatedImage, 4> Tile2x2(const AnnotatedImage& input, double min_area_keep) {
  const int width = input.image.width;
  const int height = input.image.height;
  auto annotations = TileAnnotations(width, height, input.annotations, min_area_keep);

  const int w0 = width / 2;
  const int h0 = height / 2;
  std::array<AnnotatedImage, 4> tiles;
  tiles[0].image = CropImage(input.image, 0, 0, w0, h0);
  tiles[1].image = CropImage(input.image, w0, 0, width - w0, h0);
  tiles[2].image = CropImage(input.image, 0, h0, w0, height - h0);
  tiles[3].image = CropImage(input.image, w0, h0, width - w0, height - h0);
  for (int t = 0; t < 4; ++t) {
    tiles[t].annotations = std::move(annotations[t]);
  }
  return tiles;
}

Image GrayscaleLuma(const Image& image) {
  Image out = image;
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      double luma = 0.0;
      if (image.channels == 1) {
        luma = image.At(x, y, 0);
      } else {
        luma = 0.299 * image.At(x, y, 0) + 0.587 * image.At(x, y, 1) +
               0.114 * image.At(x, y, 2);
      }
      const auto v = static_cast<uint8_t>(std::lround(std::min(255.0, std::max(0.0, luma))));
      for (int c = 0; c < image.channels; ++c) {
        out.At(x, y, c) = v;
      }
    }
  }
  return out;
}

std::vector<size_t> GrayscaleFraction(std::vector<AnnotatedImage>& dataset, double fraction,
                                      uint64_t seed) {
  if (fraction < 0.0 || fraction > 1.0) {
    throw DomainError("grayscale fraction must lie in [0, 1]");
  }
  const size_t n = dataset.size();
  const auto count = static_cast<size_t>(std::llround(fraction * static_cast<double>(n)));

  std::vector<size_t> indices(n);
  std::iota(indices.begin(), indices.end(), 0);
  Rng rng(seed);
  rng.Shuffle(indices);
  indices.resize(count);
  std::sort(indices.begin(), indices.end());

  for (const size_t i : indices) {
    dataset[i].image = GrayscaleLuma(dataset[i].image);
  }
  return indices;
}

BoundingBox RotateBox90(const BoundingBox& box, int width, int height, int turns) {
  BoundingBox b = box;
  int w = width;
  int h = height;
  turns = ((turns % 4) + 4) % 4;
  // One CCW turn maps (x0, y0, x1, y1) in a WxH image to (y0, W-x1, y1, W-x0).
  for (int i = 0; i < turns; ++i) {
    b = {b.y_min, w - b.x_max, b.y_max, w - b.x_min};
    std::swap(w, h);
  }
  return b;
}

AnnotatedImage Rotate90(const AnnotatedImage& input, int turns) {
  turns = ((turns % 4) + 4) % 4;
  AnnotatedImage out = input;
  for (int i = 0; i < turns; ++i) {
    const Image& src = out.image;
    Image rotated = Image::Create(src.height, src.width, src.channels);
    // CCW: source pixel (x, y) lands at (y, W-1-x).
    for (int y = 0; y < src.height; ++y) {
      for (int x = 0; x < src.width; ++x) {
        for (int c = 0; c < src.channels; ++c) {
          rotated.At(y, src.width - 1 - x, c) = src.At(x, y, c);
        }
      }
    }
    out.image = std::move(rotated);
  }
  for (auto& ann : out.annotations) {
    ann.box = RotateBox90(ann.box, input.image.width, input.image.height, turns);
  }
  return out;
}

SplitResult SplitDataset(const std::vector<std::string>& items, const SplitRatios& ratios,
                         uint64_t seed) {
  if (items.empty()) {
    throw DomainError("cannot split an empty dataset");
  }
  const double sum = ratios.train + ratios.val + ratios.test;
  if (std::fabs(sum - 1.0) > 1e-9) {
    throw DomainError("split ratios must sum to 1, got " + std::to_string(sum));
  }
  if (ratios.train < 0.0 || ratios.val < 0.0 || ratios.test < 0.0) {
    throw DomainError("split ratios must be non-negative");
  }

  const size_t n = items.size();
  // Val/test get rounded targets; train absorbs the remainder.
  size_t n_val = static_cast<size_t>(std::llround(ratios.val * static_cast<double>(n)));
  size_t n_test = static_cast<size_t>(std::llround(ratios.test * static_cast<double>(n)));
  if (n_val + n_test > n) {
    throw DomainError("split ratios leave no room for the training set");
  }
  const size_t n_train = n - n_val - n_test;

  std::vector<std::string> shuffled = items;
  Rng rng(seed);
  rng.Shuffle(shuffled);

  SplitResult result;
  result.train.assign(shuffled.begin(), shuffled.begin() + n_train);
  result.val.assign(shuffled.begin() + n_train, shuffled.begin() + n_train + n_val);
  result.test.assign(shuffled.begin() + n_train + n_val, shuffled.end());
  return result;
}

std::vector<std::string> ReadManifest(const std::string& path) {
  TextLineReader reader(path);
  std::vector<std::string> items;
  std::string line;
  while (reader.NextContentLine(&line)) {
    items.push_back(line);
  }
  return items;
}

}  // namespace uavgeo
