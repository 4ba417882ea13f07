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

#include "uavgeo/geodesy.hpp"

#include <cmath>

#include <doctest.h>

#include "oracles/utm_snyder.hpp"
#include "uavgeo/errors.hpp"
#include "uavgeo/rng.hpp"

using namespace uavgeo;

TEST_CASE("central meridian point maps to false easting") {
  const UtmCoord c = Wgs84ToUtm({0.0, 3.0, 0.0}, 31);
  CHECK(c.zone == 31);
  CHECK(c.hemisphere == Hemisphere::kNorth);
  CHECK(c.easting == doctest::Approx(500000.0).epsilon(1e-12));
  CHECK(c.northing == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
  CHECK(c.up == 0.0);
}

TEST_CASE("inverse of the definition case") {
  const GeoPosition p = UtmToWgs84({500000.0, 0.0, 0.0, 31, Hemisphere::kNorth});
  CHECK(p.latitude_deg == doctest::Approx(0.0).scale(1.0).epsilon(1e-12));
  CHECK(p.longitude_deg == doctest::Approx(3.0).epsilon(1e-12));
}

// Frozen from the independent Snyder oracle, itself cross-checked against a
// production UTM implementation before this module was built.
TEST_CASE("reference point agrees with the independent oracle") {
  const UtmCoord c = Wgs84ToUtm({38.5, 23.5, 120.0});
  CHECK(c.zone == 34);
  CHECK(std::fabs(c.easting - 718010.402835) < 1e-3);
  CHECK(std::fabs(c.northing - 4264255.315661) < 1e-3);
  CHECK(c.up == 120.0);

  const auto oracle = test::SnyderWgs84ToUtm(38.5, 23.5);
  CHECK(std::fabs(c.easting - oracle.easting) < 1e-3);
  CHECK(std::fabs(c.northing - oracle.northing) < 1e-3);
}

TEST_CASE("round trip is identity to 1e-9 degrees over 1000 random points") {
  Rng rng(42);
  for (int i = 0; i < 1000; ++i) {
    GeoPosition p;
    p.latitude_deg = rng.Uniform(-84.0, 84.0);
    const int zone = static_cast<int>(rng.UniformInt(1, 60));
    p.longitude_deg = UtmCentralMeridianDeg(zone) + rng.Uniform(-2.5, 2.5);
    p.altitude_m = rng.Uniform(-100.0, 3000.0);
    const GeoPosition back = UtmToWgs84(Wgs84ToUtm(p));
    CHECK(std::fabs(back.latitude_deg - p.latitude_deg) < 1e-9);
    CHECK(std::fabs(back.longitude_deg - p.longitude_deg) < 1e-9);
    CHECK(back.altitude_m == p.altitude_m);
  }
}

TEST_CASE("oracle agreement within 1e-3 m across the domain") {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    const double lat = rng.Uniform(-84.0, 84.0);
    const int zone = static_cast<int>(rng.UniformInt(1, 60));
    const double lon = UtmCentralMeridianDeg(zone) + rng.Uniform(-2.9, 2.9);
    const UtmCoord lib = Wgs84ToUtm({lat, lon, 0.0});
    const auto orc = test::SnyderWgs84ToUtm(lat, lon);
    REQUIRE(lib.zone == orc.zone);
    CHECK(std::fabs(lib.easting - orc.easting) < 1e-3);
    CHECK(std::fabs(lib.northing - orc.northing) < 1e-3);
  }
}

TEST_CASE("southern hemisphere applies the false northing") {
  const UtmCoord c = Wgs84ToUtm({-33.9, 18.5, 0.0});
  CHECK(c.hemisphere == Hemisphere::kSouth);
  CHECK(c.northing > 6000000.0);
  const GeoPosition back = UtmToWgs84(c);
  CHECK(back.latitude_deg == doctest::Approx(-33.9).epsilon(1e-9));
  CHECK(back.longitude_deg == doctest::Approx(18.5).epsilon(1e-9));
}

TEST_CASE("latitude outside the UTM domain is rejected") {
  CHECK_THROWS_AS(Wgs84ToUtm({85.0, 10.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Wgs84ToUtm({-84.5, 10.0, 0.0}), DomainError);
  CHECK_THROWS_AS(Wgs84ToUtm({91.0, 10.0, 0.0}), DomainError);
}

TEST_CASE("invalid zones are rejected") {
  CHECK_THROWS_AS(UtmToWgs84({500000.0, 0.0, 0.0, 0, Hemisphere::kNorth}), DomainError);
  CHECK_THROWS_AS(UtmToWgs84({500000.0, 0.0, 0.0, 61, Hemisphere::kNorth}), DomainError);
  CHECK_THROWS_AS(Wgs84ToUtm({10.0, 10.0, 0.0}, 0), DomainError);
}

TEST_CASE("forced zone must neighbor the natural zone") {
  // 23.5 E sits in zone 34; zone 35 keeps the easting in range.
  CHECK_NOTHROW(Wgs84ToUtm({38.5, 23.5, 0.0}, 35));
  CHECK_THROWS_AS(Wgs84ToUtm({38.5, 23.5, 0.0}, 37), DomainError);
  // A neighboring zone is allowed, but a point too deep inside its own zone
  // still falls outside the neighbor's projection validity.
  CHECK_THROWS_AS(Wgs84ToUtm({38.5, 23.5, 0.0}, 33), DomainError);
  // Wrap-around at the antimeridian.
  CHECK_NOTHROW(Wgs84ToUtm({10.0, 179.9, 0.0}, 1));
}

TEST_CASE("forced zone keeps neighboring points in one frame") {
  // Two points straddling the zone 33/34 boundary (18 deg E).
  const UtmCoord a = Wgs84ToUtm({38.0, 17.9, 0.0}, 34);
  const UtmCoord b = Wgs84ToUtm({38.0, 18.1, 0.0}, 34);
  CHECK(a.zone == 34);
  CHECK(b.zone == 34);
  // ~0.2 degrees of longitude at 38N is ~17.5 km.
  CHECK(std::fabs(b.easting - a.easting) < 20000.0);
  CHECK(std::fabs(b.easting - a.easting) > 15000.0);
}

TEST_CASE("easting outside validity is rejected") {
  CHECK_THROWS_AS(UtmToWgs84({90000.0, 0.0, 0.0, 31, Hemisphere::kNorth}), DomainError);
  CHECK_THROWS_AS(UtmToWgs84({950000.0, 0.0, 0.0, 31, Hemisphere::kNorth}), DomainError);
}

TEST_CASE("altitude passes through untouched") {
  const UtmCoord c = Wgs84ToUtm({45.0, 8.0, 1234.56789});
  CHECK(c.up == 1234.56789);
  CHECK(UtmToWgs84(c).altitude_m == 1234.56789);
}
