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

#include "uavgeo/alignment.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/SVD>

#include "uavgeo/errors.hpp"

namespace uavgeo {

SimilarityTransform SimilarityTransform::Inverse() const {
  SimilarityTransform inv;
  inv.scale = 1.0 / scale;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation) / scale;
  return inv;
}

const TrajectoryEntry* Trajectory::Find(const std::string& image_name) const {
  for (const auto& e : entries) {
    if (e.image_name == image_name) return &e;
  }
  return nullptr;
}

SimilarityTransform Umeyama(const std::vector<Eigen::Vector3d>& src,
                            const std::vector<Eigen::Vector3d>& dst, bool with_scale) {
  if (src.size() != dst.size()) {
    throw DomainError("umeyama: source and destination counts differ");
  }
  const size_t n = src.size();
  if (n < 3) {
    throw DomainError("umeyama needs at least 3 point pairs, got " + std::to_string(n));
  }

  Eigen::Vector3d mean_src = Eigen::Vector3d::Zero();
  Eigen::Vector3d mean_dst = Eigen::Vector3d::Zero();
  for (size_t i = 0; i < n; ++i) {
    mean_src += src[i];
    mean_dst += dst[i];
  }
  mean_src /= static_cast<double>(n);
  mean_dst /= static_cast<double>(n);

  Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
  double var_src = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d ds = src[i] - mean_src;
    const Eigen::Vector3d dd = dst[i] - mean_dst;
    cov += dd * ds.transpose();
    var_src += ds.squaredNorm();
  }
  cov /= static_cast<double>(n);
  var_src /= static_cast<double>(n);

  // Spread of the source set: coincident or collinear sources leave the
  // rotation underdetermined.
  Eigen::Matrix3d src_scatter = Eigen::Matrix3d::Zero();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector3d ds = src[i] - mean_src;
    src_scatter += ds * ds.transpose();
  }
  const Eigen::JacobiSVD<Eigen::Matrix3d> scatter_svd(src_scatter);
  const double spread0 = scatter_svd.singularValues()(0);
  const double spread1 = scatter_svd.singularValues()(1);
  if (spread0 <= 0.0 || spread1 <= 1e-12 * spread0) {
    throw DegenerateError("umeyama: source points are coincident or collinear");
  }

  Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::Vector3d s_diag = Eigen::Vector3d::Ones();
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) {
    s_diag(2) = -1.0;
  }

  SimilarityTransform t;
  t.rotation = svd.matrixU() * s_diag.asDiagonal() * svd.matrixV().transpose();
  t.scale = with_scale ? svd.singularValues().dot(s_diag) / var_src : 1.0;
  if (!(t.scale > 0.0) || !std::isfinite(t.scale)) {
    throw DomainError("umeyama: degenerate scale estimate");
  }
  t.translation = mean_dst - t.scale * (t.rotation * mean_src);
  return t;
}

Eigen::Vector3d ApplySimilarity(const SimilarityTransform& t, const Eigen::Vector3d& x) {
  return t.scale * (t.rotation * x) + t.translation;
}

RigidPose ApplyToPose(const SimilarityTransform& t, const RigidPose& pose) {
  RigidPose out;
  out.center = ApplySimilarity(t, pose.center);
  out.rotation = pose.rotation * t.rotation.transpose();
  return out;
}

SimilarityTransform Compose(const SimilarityTransform& outer, const SimilarityTransform& inner) {
  SimilarityTransform out;
  out.scale = outer.scale * inner.scale;
  out.rotation = outer.rotation * inner.rotation;
  out.translation = outer.scale * (outer.rotation * inner.translation) + outer.translation;
  return out;
}

namespace {

struct NamedPair {
  std::string name;
  Eigen::Vector3d src;
  Eigen::Vector3d dst;
};

SimilarityTransform FitPairs(const std::vector<NamedPair>& pairs, bool with_scale,
                             double trim_fraction,
                             std::vector<std::pair<std::string, double>>* residuals,
                             double* rms) {
  std::vector<Eigen::Vector3d> src, dst;
  src.reserve(pairs.size());
  dst.reserve(pairs.size());
  for (const auto& p : pairs) {
    src.push_back(p.src);
    dst.push_back(p.dst);
  }
  SimilarityTransform t = Umeyama(src, dst, with_scale);

  if (trim_fraction > 0.0 && pairs.size() > 3) {
    // Drop the worst residuals once and re-fit.
    std::vector<std::pair<double, size_t>> errs(pairs.size());
    for (size_t i = 0; i < pairs.size(); ++i) {
      errs[i] = {(ApplySimilarity(t, pairs[i].src) - pairs[i].dst).norm(), i};
    }
    std::sort(errs.begin(), errs.end());
    const size_t keep = std::max<size_t>(3, pairs.size() - static_cast<size_t>(std::floor(
                                                trim_fraction * pairs.size())));
    std::vector<Eigen::Vector3d> src2, dst2;
    for (size_t i = 0; i < keep; ++i) {
      src2.push_back(pairs[errs[i].second].src);
      dst2.push_back(pairs[errs[i].second].dst);
    }
    t = Umeyama(src2, dst2, with_scale);
  }

  double sum_sq = 0.0;
  if (residuals != nullptr) residuals->clear();
  for (const auto& p : pairs) {
    const double e = (ApplySimilarity(t, p.src) - p.dst).norm();
    sum_sq += e * e;
    if (residuals != nullptr) residuals->emplace_back(p.name, e);
  }
  if (rms != nullptr) {
    *rms = pairs.empty() ? 0.0 : std::sqrt(sum_sq / static_cast<double>(pairs.size()));
  }
  return t;
}

}  // namespace

GeoRegistration GeoRegisterModel(const SparseModel& model, const PoseSidecar& sidecar,
                                 std::optional<int> forced_zone, double trim_fraction) {
  // Pick the mission zone from the first matched record so all positions land
  // in one projection.
  std::optional<int> zone = forced_zone;
  std::optional<Hemisphere> hemisphere;
  std::vector<NamedPair> pairs;
  for (const auto& [id, image] : model.images) {
    const SidecarRecord* rec = sidecar.Find(image.name);
    if (rec == nullptr) continue;
    const UtmCoord utm = Wgs84ToUtm(rec->position, zone);
    if (!zone) zone = utm.zone;
    if (!hemisphere) {
      hemisphere = utm.hemisphere;
    } else if (*hemisphere != utm.hemisphere) {
      throw DomainError("geo-registration spans both hemispheres");
    }
    pairs.push_back({image.name, image.Center(), {utm.easting, utm.northing, utm.up}});
  }
  if (pairs.size() < 3) {
    throw DomainError("geo-registration needs at least 3 images matched by name, found " +
                      std::to_string(pairs.size()));
  }

  GeoRegistration out;
  out.transform =
      FitPairs(pairs, /*with_scale=*/true, trim_fraction, &out.residuals_m, &out.rms_residual_m);
  out.zone = *zone;
  out.hemisphere = *hemisphere;

  out.model = model;
  for (auto& [id, image] : out.model.images) {
    image.SetPose(ApplyToPose(out.transform, image.Pose()));
  }
  for (auto& [pid, point] : out.model.points) {
    point.xyz = ApplySimilarity(out.transform, point.xyz);
  }
  return out;
}

AnchorResult AnchorQueryTrajectory(const Trajectory& local,
                                   const std::map<std::string, RigidPose>& registered_global,
                                   double trim_fraction) {
  AnchorResult result;
  std::vector<NamedPair> pairs;
  for (const auto& entry : local.entries) {
    if (!entry.has_pose) continue;
    const auto it = registered_global.find(entry.image_name);
    if (it == registered_global.end()) continue;
    pairs.push_back({entry.image_name, entry.pose.center, it->second.center});
  }
  result.shared_count = pairs.size();
  if (pairs.size() < 3) {
    return result;  // anchoring failed; sequence stays unreferenced
  }

  result.transform =
      FitPairs(pairs, /*with_scale=*/true, trim_fraction, nullptr, &result.rms_residual_m);

  result.trajectory = local;
  result.trajectory.frame = TrajectoryFrame::kUtm;
  for (auto& entry : result.trajectory.entries) {
    if (!entry.has_pose) continue;
    entry.pose = ApplyToPose(result.transform, entry.pose);
    const bool was_registered = registered_global.count(entry.image_name) > 0;
    entry.registered = was_registered;
    entry.anchored = !was_registered;
  }
  result.success = true;
  return result;
}

}  // namespace uavgeo
