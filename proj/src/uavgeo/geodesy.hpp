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

#include <optional>
#include <string>

namespace uavgeo {

enum class Hemisphere { kNorth, kSouth };

std::string HemisphereName(Hemisphere h);
Hemisphere ParseHemisphere(const std::string& name);

// WGS84 geodetic position. Altitude is treated as an opaque "up" value above
// the UTM reference plane; no geoid model is applied.
struct GeoPosition {
  double latitude_deg = 0.0;   // [-90, 90]
  double longitude_deg = 0.0;  // [-180, 180]
  double altitude_m = 0.0;
};

// Projected UTM coordinate. Easting/northing in meters within `zone`.
struct UtmCoord {
  double easting = 0.0;
  double northing = 0.0;
  double up = 0.0;
  int zone = 0;  // 1..60
  Hemisphere hemisphere = Hemisphere::kNorth;
};

// Zone containing `longitude_deg` (1..60).
int UtmNaturalZone(double longitude_deg);

// Central meridian of a zone, degrees east.
double UtmCentralMeridianDeg(int zone);

// WGS84 -> UTM using the 6th-order Krueger series (sub-mm accuracy within a
// zone). `forced_zone`, when set, must lie within one zone of the natural
// zone; it keeps mission-wide point sets in a single projection.
//
// Throws DomainError for |lat| > 84 (UTM undefined), invalid lon, a forced
// zone out of range, or a result falling outside projection validity.
UtmCoord Wgs84ToUtm(const GeoPosition& p, std::optional<int> forced_zone = std::nullopt);

// Inverse of Wgs84ToUtm (round-trip below 1e-9 degrees over the zone
// interior). Throws DomainError for invalid zone or out-of-validity input.
GeoPosition UtmToWgs84(const UtmCoord& c);

}  // namespace uavgeo
