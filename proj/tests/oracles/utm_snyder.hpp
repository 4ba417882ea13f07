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

// Independent UTM forward projection used as a test oracle: the classic
// truncated Snyder/USGS transverse Mercator series (Snyder 1987, eqs. 8-9..
// 8-15). Deliberately a different derivation from the Krueger series in the
// library so the two can cross-check each other to sub-millimeter agreement
// within a zone. Test-only code; never include from src/.

#pragma once

#include <cmath>

namespace uavgeo::test {

struct SnyderUtm {
  double easting = 0.0;
  double northing = 0.0;
  int zone = 0;
  bool is_north = true;
};

inline SnyderUtm SnyderWgs84ToUtm(double lat_deg, double lon_deg, int forced_zone = 0) {
  constexpr double a = 6378137.0;
  constexpr double f = 1.0 / 298.257223563;
  constexpr double e2 = 2.0 * f - f * f;
  constexpr double ep2 = e2 / (1.0 - e2);
  constexpr double k0 = 0.9996;
  const double deg2rad = M_PI / 180.0;

  const int zone =
      forced_zone > 0 ? forced_zone
                      : static_cast<int>(std::floor((lon_deg + 180.0) / 6.0)) % 60 + 1;
  const double lon0 = ((zone - 1) * 6.0 - 180.0 + 3.0) * deg2rad;

  const double lat = lat_deg * deg2rad;
  const double lon = lon_deg * deg2rad;

  const double sin_lat = std::sin(lat);
  const double cos_lat = std::cos(lat);
  const double tan_lat = std::tan(lat);

  const double nu = a / std::sqrt(1.0 - e2 * sin_lat * sin_lat);
  const double t = tan_lat * tan_lat;
  const double c = ep2 * cos_lat * cos_lat;
  const double aa = cos_lat * (lon - lon0);

  const double m =
      a * ((1.0 - e2 / 4.0 - 3.0 * e2 * e2 / 64.0 - 5.0 * e2 * e2 * e2 / 256.0) * lat -
           (3.0 * e2 / 8.0 + 3.0 * e2 * e2 / 32.0 + 45.0 * e2 * e2 * e2 / 1024.0) *
               std::sin(2.0 * lat) +
           (15.0 * e2 * e2 / 256.0 + 45.0 * e2 * e2 * e2 / 1024.0) * std::sin(4.0 * lat) -
           (35.0 * e2 * e2 * e2 / 3072.0) * std::sin(6.0 * lat));

  const double aa2 = aa * aa, aa3 = aa2 * aa, aa4 = aa3 * aa, aa5 = aa4 * aa, aa6 = aa5 * aa;

  SnyderUtm out;
  out.zone = zone;
  out.is_north = lat_deg >= 0.0;
  out.easting = k0 * nu *
                    (aa + (1.0 - t + c) * aa3 / 6.0 +
                     (5.0 - 18.0 * t + t * t + 72.0 * c - 58.0 * ep2) * aa5 / 120.0) +
                500000.0;
  out.northing = k0 * (m + nu * tan_lat *
                               (aa2 / 2.0 + (5.0 - t + 9.0 * c + 4.0 * c * c) * aa4 / 24.0 +
                                (61.0 - 58.0 * t + t * t + 600.0 * c - 330.0 * ep2) * aa6 / 720.0));
  if (!out.is_north) {
    out.northing += 10000000.0;
  }
  return out;
}

}  // namespace uavgeo::test
