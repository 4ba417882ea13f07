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

#include "uavgeo/image.hpp"

#include <fstream>

#include "uavgeo/errors.hpp"

namespace uavgeo {

Image Image::Create(int width, int height, int channels, uint8_t fill) {
  if (width <= 0 || height <= 0 || (channels != 1 && channels != 3)) {
    throw DomainError("invalid image dimensions");
  }
  Image img;
  img.width = width;
  img.height = height;
  img.channels = channels;
  img.data.assign(static_cast<size_t>(width) * height * channels, fill);
  return img;
}

GrayImage GrayImage::Create(int width, int height, float fill) {
  if (width <= 0 || height <= 0) {
    throw DomainError("invalid image dimensions");
  }
  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<size_t>(width) * height, fill);
  return img;
}

GrayImage ToGray(const Image& image) {
  GrayImage gray = GrayImage::Create(image.width, image.height);
  for (int y = 0; y < image.height; ++y) {
    for (int x = 0; x < image.width; ++x) {
      if (image.channels == 1) {
        gray.At(x, y) = image.At(x, y, 0);
      } else {
        gray.At(x, y) = 0.299f * image.At(x, y, 0) + 0.587f * image.At(x, y, 1) +
                        0.114f * image.At(x, y, 2);
      }
    }
  }
  return gray;
}

namespace {

// Reads one header token, skipping whitespace and '#' comments.
std::string NextPnmToken(std::istream& in, const std::string& path) {
  std::string token;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!token.empty()) return token;
      continue;
    }
    token.push_back(static_cast<char>(c));
  }
  if (token.empty()) {
    throw ParseError(path, "truncated header");
  }
  return token;
}

}  // namespace

Image ReadPnm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open " + path);
  }
  const std::string magic = NextPnmToken(in, path);
  int channels = 0;
  if (magic == "P5") {
    channels = 1;
  } else if (magic == "P6") {
    channels = 3;
  } else {
    throw ParseError(path, "unsupported magic '" + magic + "' (want P5 or P6)");
  }
  const int width = std::stoi(NextPnmToken(in, path));
  const int height = std::stoi(NextPnmToken(in, path));
  const int maxval = std::stoi(NextPnmToken(in, path));
  if (width <= 0 || height <= 0) {
    throw ParseError(path, "invalid dimensions");
  }
  if (maxval != 255) {
    throw ParseError(path, "only maxval 255 is supported");
  }
  Image img = Image::Create(width, height, channels);
  in.read(reinterpret_cast<char*>(img.data.data()),
          static_cast<std::streamsize>(img.data.size()));
  if (static_cast<size_t>(in.gcount()) != img.data.size()) {
    throw ParseError(path, "pixel data truncated");
  }
  return img;
}

void WritePnm(const Image& image, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out << (image.channels == 1 ? "P5" : "P6") << "\n"
      << image.width << " " << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace uavgeo
