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

#include "uavgeo/geodesy.hpp"

namespace uavgeo {

// Axis-aligned pixel box, continuous coordinates, x_min < x_max, y_min < y_max.
struct BoundingBox {
  double x_min = 0.0;
  double y_min = 0.0;
  double x_max = 0.0;
  double y_max = 0.0;

  bool Valid() const { return x_min < x_max && y_min < y_max; }
  double Width() const { return x_max - x_min; }
  double Height() const { return y_max - y_min; }
  double Area() const { return Valid() ? Width() * Height() : 0.0; }

  bool ContainsStrict(double u, double v) const {
    return u > x_min && u < x_max && v > y_min && v < y_max;
  }
};

// A 2D class-labeled detection in one image.
struct Detection {
  std::string class_label;
  double confidence = 1.0;
  BoundingBox box;
};

// A detection lifted to a 3D geographic position.
struct GeoObject {
  std::string class_label;
  double confidence = 1.0;
  UtmCoord position;
  int support_count = 0;  // cloud points backing the position
  std::string source_image;
  BoundingBox source_box;
};

}  // namespace uavgeo
