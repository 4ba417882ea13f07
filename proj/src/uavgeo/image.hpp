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

namespace uavgeo {

// Interleaved 8-bit image, 1 (gray) or 3 (RGB) channels.
struct Image {
  int width = 0;
  int height = 0;
  int channels = 0;
  std::vector<uint8_t> data;

  static Image Create(int width, int height, int channels, uint8_t fill = 0);

  uint8_t& At(int x, int y, int c) {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
  uint8_t At(int x, int y, int c) const {
    return data[(static_cast<size_t>(y) * width + x) * channels + c];
  }
};

// Grayscale intensities as floats; the retrieval descriptor input.
struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<float> pixels;  // row-major

  static GrayImage Create(int width, int height, float fill = 0.0f);

  float& At(int x, int y) { return pixels[static_cast<size_t>(y) * width + x]; }
  float At(int x, int y) const { return pixels[static_cast<size_t>(y) * width + x]; }
};

GrayImage ToGray(const Image& image);

// Binary netpbm: P5 (gray) and P6 (RGB), maxval 255. The toolkit's image
// interchange format for dataset preprocessing.
Image ReadPnm(const std::string& path);
void WritePnm(const Image& image, const std::string& path);

}  // namespace uavgeo
