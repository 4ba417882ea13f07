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

#include "uavgeo/errors.hpp"

namespace uavgeo {
namespace {

constexpr double kDeg2Rad = M_PI / 180.0;
constexpr double kRad2Deg = 180.0 / M_PI;

// WGS84 ellipsoid.
constexpr double kSemiMajorAxis = 6378137.0;
constexpr double kFlattening = 1.0 / 298.257223563;

constexpr double kScale = 0.9996;
constexpr double kFalseEasting = 500000.0;
constexpr double kFalseNorthingSouth = 10000000.0;

// Krueger series in the third flattening n, truncated at n^6
// (Karney 2011). alpha: geodetic -> transverse Mercator, beta: inverse.
struct KruegerSeries {
  double n;
  double e;   // first eccentricity
  double a_hat;  // rectifying radius * (series correction)
  double alpha[6];
  double beta[6];

  KruegerSeries() {
    const double f = kFlattening;
    n = f / (2.0 - f);
    e = std::sqrt(f * (2.0 - f));
    const double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
    a_hat = kSemiMajorAxis / (1.0 + n) * (1.0 + n2 / 4.0 + n4 / 64.0 + n6 / 256.0);

    alpha[0] = n / 2.0 - 2.0 / 3.0 * n2 + 5.0 / 16.0 * n3 + 41.0 / 180.0 * n4 -
               127.0 / 288.0 * n5 + 7891.0 / 37800.0 * n6;
    alpha[1] = 13.0 / 48.0 * n2 - 3.0 / 5.0 * n3 + 557.0 / 1440.0 * n4 +
               281.0 / 630.0 * n5 - 1983433.0 / 1935360.0 * n6;
    alpha[2] = 61.0 / 240.0 * n3 - 103.0 / 140.0 * n4 + 15061.0 / 26880.0 * n5 +
               167603.0 / 181440.0 * n6;
    alpha[3] = 49561.0 / 161280.0 * n4 - 179.0 / 168.0 * n5 +
               6601661.0 / 7257600.0 * n6;
    alpha[4] = 34729.0 / 80640.0 * n5 - 3418889.0 / 1995840.0 * n6;
    alpha[5] = 212378941.0 / 319334400.0 * n6;

    beta[0] = n / 2.0 - 2.0 / 3.0 * n2 + 37.0 / 96.0 * n3 - 1.0 / 360.0 * n4 -
              81.0 / 512.0 * n5 + 96199.0 / 604800.0 * n6;
    beta[1] = 1.0 / 48.0 * n2 + 1.0 / 15.0 * n3 - 437.0 / 1440.0 * n4 +
              46.0 / 105.0 * n5 - 1118711.0 / 3870720.0 * n6;
    beta[2] = 17.0 / 480.0 * n3 - 37.0 / 840.0 * n4 - 209.0 / 4480.0 * n5 +
              5569.0 / 90720.0 * n6;
    beta[3] = 4397.0 / 161280.0 * n4 - 11.0 / 504.0 * n5 -
              830251.0 / 7257600.0 * n6;
    beta[4] = 4583.0 / 161280.0 * n5 - 108847.0 / 3991680.0 * n6;
    beta[5] = 20648693.0 / 638668800.0 * n6;
  }
};

const KruegerSeries& Series() {
  static const KruegerSeries series;
  return series;
}

// tan(conformal latitude) from tan(geodetic latitude).
double TauPrime(double tau, double e) {
  const double sigma = std::sinh(e * std::atanh(e * tau / std::sqrt(1.0 + tau * tau)));
  return tau * std::sqrt(1.0 + sigma * sigma) - sigma * std::sqrt(1.0 + tau * tau);
}

// Newton inversion of TauPrime; converges in a handful of iterations.
double TauFromTauPrime(double tau_prime, double e) {
  const double e2 = e * e;
  double tau = tau_prime / std::sqrt(1.0 - e2);
  const double stol = 1e-14 * std::max(1.0, std::fabs(tau_prime));
  for (int i = 0; i < 10; ++i) {
    const double sigma = std::sinh(e * std::atanh(e * tau / std::sqrt(1.0 + tau * tau)));
    const double tau_prime_i =
        tau * std::sqrt(1.0 + sigma * sigma) - sigma * std::sqrt(1.0 + tau * tau);
    const double dtau =
        (tau_prime - tau_prime_i) * (1.0 + (1.0 - e2) * tau * tau) /
        ((1.0 - e2) * std::sqrt((1.0 + tau_prime_i * tau_prime_i) * (1.0 + tau * tau)));
    tau += dtau;
    if (std::fabs(dtau) < stol) {
      break;
    }
  }
  return tau;
}

void CheckZone(int zone) {
  if (zone < 1 || zone > 60) {
    throw DomainError("UTM zone " + std::to_string(zone) + " outside [1, 60]");
  }
}

}  // namespace

std::string HemisphereName(Hemisphere h) {
  return h == Hemisphere::kNorth ? "north" : "south";
}

Hemisphere ParseHemisphere(const std::string& name) {
  if (name == "north" || name == "N" || name == "n") return Hemisphere::kNorth;
  if (name == "south" || name == "S" || name == "s") return Hemisphere::kSouth;
  throw DomainError("unknown hemisphere '" + name + "'");
}

int UtmNaturalZone(double longitude_deg) {
  const int zone = static_cast<int>(std::floor((longitude_deg + 180.0) / 6.0)) % 60 + 1;
  return zone < 1 ? zone + 60 : zone;
}

double UtmCentralMeridianDeg(int zone) { return (zone - 1) * 6.0 - 180.0 + 3.0; }

UtmCoord Wgs84ToUtm(const GeoPosition& p, std::optional<int> forced_zone) {
  if (!(p.latitude_deg >= -90.0 && p.latitude_deg <= 90.0) ||
      !(p.longitude_deg >= -180.0 && p.longitude_deg <= 180.0) ||
      !std::isfinite(p.altitude_m)) {
    throw DomainError("invalid WGS84 position");
  }
  if (std::fabs(p.latitude_deg) > 84.0) {
    throw DomainError("latitude " + std::to_string(p.latitude_deg) +
                      " outside UTM domain [-84, 84]");
  }

  const int natural_zone = UtmNaturalZone(p.longitude_deg);
  int zone = natural_zone;
  if (forced_zone) {
    CheckZone(*forced_zone);
    const int diff = std::abs(*forced_zone - natural_zone);
    if (std::min(diff, 60 - diff) > 1) {
      throw DomainError("forced zone " + std::to_string(*forced_zone) +
                        " more than one zone from natural zone " +
                        std::to_string(natural_zone));
    }
    zone = *forced_zone;
  }

  const KruegerSeries& s = Series();
  const double lat = p.latitude_deg * kDeg2Rad;
  double dlon = p.longitude_deg - UtmCentralMeridianDeg(zone);
  if (dlon > 180.0) dlon -= 360.0;
  if (dlon < -180.0) dlon += 360.0;
  const double lon = dlon * kDeg2Rad;

  const double tau = std::tan(lat);
  const double tau_p = TauPrime(tau, s.e);
  const double xi_p = std::atan2(tau_p, std::cos(lon));
  const double eta_p = std::asinh(std::sin(lon) / std::hypot(tau_p, std::cos(lon)));

  double xi = xi_p;
  double eta = eta_p;
  for (int j = 1; j <= 6; ++j) {
    xi += s.alpha[j - 1] * std::sin(2.0 * j * xi_p) * std::cosh(2.0 * j * eta_p);
    eta += s.alpha[j - 1] * std::cos(2.0 * j * xi_p) * std::sinh(2.0 * j * eta_p);
  }

  UtmCoord out;
  out.zone = zone;
  out.hemisphere = p.latitude_deg >= 0.0 ? Hemisphere::kNorth : Hemisphere::kSouth;
  out.easting = kFalseEasting + kScale * s.a_hat * eta;
  out.northing = kScale * s.a_hat * xi +
                 (out.hemisphere == Hemisphere::kSouth ? kFalseNorthingSouth : 0.0);
  out.up = p.altitude_m;

  if (out.easting <= 100000.0 || out.easting >= 900000.0) {
    throw DomainError("projected easting " + std::to_string(out.easting) +
                      " outside validity range (100000, 900000) for zone " +
                      std::to_string(zone));
  }
  return out;
}

GeoPosition UtmToWgs84(const UtmCoord& c) {
  CheckZone(c.zone);
  if (c.easting <= 100000.0 || c.easting >= 900000.0 || !std::isfinite(c.northing) ||
      c.northing < -1000.0 || c.northing > 10000000.0 + 1000.0) {
    throw DomainError("UTM coordinate outside projection validity");
  }

  const KruegerSeries& s = Series();
  const double northing =
      c.hemisphere == Hemisphere::kSouth ? c.northing - kFalseNorthingSouth : c.northing;
  const double xi = northing / (kScale * s.a_hat);
  const double eta = (c.easting - kFalseEasting) / (kScale * s.a_hat);

  double xi_p = xi;
  double eta_p = eta;
  for (int j = 1; j <= 6; ++j) {
    xi_p -= s.beta[j - 1] * std::sin(2.0 * j * xi) * std::cosh(2.0 * j * eta);
    eta_p -= s.beta[j - 1] * std::cos(2.0 * j * xi) * std::sinh(2.0 * j * eta);
  }

  const double tau_p = std::sin(xi_p) / std::hypot(std::sinh(eta_p), std::cos(xi_p));
  const double tau = TauFromTauPrime(tau_p, s.e);

  GeoPosition out;
  out.latitude_deg = std::atan(tau) * kRad2Deg;
  double lon = UtmCentralMeridianDeg(c.zone) +
               std::atan2(std::sinh(eta_p), std::cos(xi_p)) * kRad2Deg;
  if (lon > 180.0) lon -= 360.0;
  if (lon < -180.0) lon += 360.0;
  out.longitude_deg = lon;
  out.altitude_m = c.up;
  return out;
}

}  // namespace uavgeo
