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

#include "uavgeo/pnp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "uavgeo/rng.hpp"

namespace uavgeo {
namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

Eigen::Matrix3d Skew(const Eigen::Vector3d& v) {
  Eigen::Matrix3d m;
  m << 0, -v.z(), v.y(), v.z(), 0, -v.x(), -v.y(), v.x(), 0;
  return m;
}

// Rodrigues formula.
Eigen::Matrix3d ExpSo3(const Eigen::Vector3d& omega) {
  const double theta = omega.norm();
  if (theta < 1e-12) {
    return Eigen::Matrix3d::Identity() + Skew(omega);
  }
  const Eigen::Vector3d axis = omega / theta;
  const Eigen::Matrix3d k = Skew(axis);
  return Eigen::Matrix3d::Identity() + std::sin(theta) * k +
         (1.0 - std::cos(theta)) * k * k;
}

// Throws when the 3D points span less than two dimensions (rotation is then
// unrecoverable no matter the solver).
void CheckSpatialSpread(const std::vector<Correspondence>& corrs) {
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& c : corrs) mean += c.point;
  mean /= static_cast<double>(corrs.size());
  Eigen::Matrix3d scatter = Eigen::Matrix3d::Zero();
  for (const auto& c : corrs) {
    const Eigen::Vector3d d = c.point - mean;
    scatter += d * d.transpose();
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(scatter);
  const double largest = eig.eigenvalues()(2);
  if (largest <= 0.0 || eig.eigenvalues()(1) <= 1e-12 * largest) {
    throw DegenerateError("3D points are collinear or coincident");
  }
}

}  // namespace

RigidPose PnpDlt(const std::vector<Correspondence>& corrs, const Intrinsics& k) {
  const size_t n = corrs.size();
  if (n < 6) {
    throw DomainError("PnP DLT needs at least 6 correspondences, got " + std::to_string(n));
  }
  CheckSpatialSpread(corrs);

  // Intrinsics removed up front: work in ideal (normalized) image coordinates.
  std::vector<Eigen::Vector2d> ideal(n);
  for (size_t i = 0; i < n; ++i) {
    ideal[i] = {(corrs[i].pixel.x() - k.cx) / k.fx, (corrs[i].pixel.y() - k.cy) / k.fy};
  }

  // Hartley normalization of both point sets.
  Eigen::Vector2d mean2 = Eigen::Vector2d::Zero();
  Eigen::Vector3d mean3 = Eigen::Vector3d::Zero();
  for (size_t i = 0; i < n; ++i) {
    mean2 += ideal[i];
    mean3 += corrs[i].point;
  }
  mean2 /= static_cast<double>(n);
  mean3 /= static_cast<double>(n);
  double dist2 = 0.0, dist3 = 0.0;
  for (size_t i = 0; i < n; ++i) {
    dist2 += (ideal[i] - mean2).norm();
    dist3 += (corrs[i].point - mean3).norm();
  }
  dist2 /= static_cast<double>(n);
  dist3 /= static_cast<double>(n);
  const double s2 = dist2 > 1e-15 ? std::sqrt(2.0) / dist2 : 1.0;
  const double s3 = dist3 > 1e-15 ? std::sqrt(3.0) / dist3 : 1.0;

  Eigen::MatrixXd a(2 * n, 12);
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d u = s2 * (ideal[i] - mean2);
    const Eigen::Vector3d x = s3 * (corrs[i].point - mean3);
    const Eigen::Vector4d xh(x.x(), x.y(), x.z(), 1.0);
    a.row(2 * i) << xh.transpose(), Eigen::RowVector4d::Zero(), -u.x() * xh.transpose();
    a.row(2 * i + 1) << Eigen::RowVector4d::Zero(), xh.transpose(), -u.y() * xh.transpose();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinV);
  const auto& sing = svd.singularValues();
  // A unique (up to scale) solution needs rank 11: a second vanishing
  // singular value marks a coplanar/collinear configuration.
  if (sing(0) <= 0.0 || sing(10) <= 1e-10 * sing(0)) {
    throw DegenerateError("rank-deficient DLT design matrix (coplanar points?)");
  }
  const Eigen::VectorXd m_vec = svd.matrixV().col(11);
  Eigen::Matrix<double, 3, 4> m_norm;
  m_norm.row(0) = m_vec.segment<4>(0);
  m_norm.row(1) = m_vec.segment<4>(4);
  m_norm.row(2) = m_vec.segment<4>(8);

  // Undo normalization: M = T2^-1 * M_norm * T3, with
  // T2 = [s2*I, -s2*mean2; 0, 1], T3 = [s3*I, -s3*mean3; 0, 1].
  Eigen::Matrix<double, 3, 4> t3;
  t3.setZero();
  t3.block<3, 3>(0, 0) = s3 * Eigen::Matrix3d::Identity();
  t3.col(3) = -s3 * mean3;
  Eigen::Matrix4d t3h = Eigen::Matrix4d::Identity();
  t3h.block<3, 4>(0, 0) = t3;
  Eigen::Matrix3d t2_inv = Eigen::Matrix3d::Identity();
  t2_inv(0, 0) = 1.0 / s2;
  t2_inv(1, 1) = 1.0 / s2;
  t2_inv(0, 2) = mean2.x();
  t2_inv(1, 2) = mean2.y();
  Eigen::Matrix<double, 3, 4> m = t2_inv * m_norm * t3h;

  // M = lambda [R | t]; fix the sign so lambda > 0, then factor.
  if (m.block<3, 3>(0, 0).determinant() < 0.0) {
    m = -m;
  }
  Eigen::JacobiSVD<Eigen::Matrix3d> rot_svd(m.block<3, 3>(0, 0),
                                            Eigen::ComputeFullU | Eigen::ComputeFullV);
  const double lambda = rot_svd.singularValues().mean();
  if (!(lambda > 0.0) || !std::isfinite(lambda)) {
    throw DegenerateError("degenerate DLT scale");
  }
  Eigen::Matrix3d rotation = rot_svd.matrixU() * rot_svd.matrixV().transpose();
  if (rotation.determinant() < 0.0) {
    Eigen::Matrix3d u = rot_svd.matrixU();
    u.col(2) *= -1.0;
    rotation = u * rot_svd.matrixV().transpose();
  }
  const Eigen::Vector3d translation = m.col(3) / lambda;

  // Cheirality: the solution must place the points in front of the camera.
  size_t in_front = 0;
  for (const auto& c : corrs) {
    if ((rotation * c.point + translation).z() > 0.0) {
      ++in_front;
    }
  }
  if (2 * in_front < n) {
    throw DegenerateError("cheirality check failed: most points behind camera");
  }

  RigidPose pose;
  pose.rotation = rotation;
  pose.center = -(rotation.transpose() * translation);
  return pose;
}

double ReprojectionRmse(const RigidPose& pose, const std::vector<Correspondence>& corrs,
                        const Intrinsics& k) {
  if (corrs.empty()) return 0.0;
  double sum_sq = 0.0;
  for (const auto& c : corrs) {
    const Eigen::Vector3d x_cam = WorldToCamera(pose, c.point);
    if (!(x_cam.z() > 0.0)) return kInfinity;
    const double du = k.fx * x_cam.x() / x_cam.z() + k.cx - c.pixel.x();
    const double dv = k.fy * x_cam.y() / x_cam.z() + k.cy - c.pixel.y();
    sum_sq += du * du + dv * dv;
  }
  return std::sqrt(sum_sq / static_cast<double>(corrs.size()));
}

namespace {

// Squared reprojection error of one correspondence, infinity behind camera.
double SquaredError(const RigidPose& pose, const Correspondence& c, const Intrinsics& k) {
  const Eigen::Vector3d x_cam = WorldToCamera(pose, c.point);
  if (!(x_cam.z() > 0.0)) return kInfinity;
  const double du = k.fx * x_cam.x() / x_cam.z() + k.cx - c.pixel.x();
  const double dv = k.fy * x_cam.y() / x_cam.z() + k.cy - c.pixel.y();
  return du * du + dv * dv;
}

double TotalCost(const RigidPose& pose, const std::vector<Correspondence>& corrs,
                 const Intrinsics& k) {
  double cost = 0.0;
  for (const auto& c : corrs) {
    const double e = SquaredError(pose, c, k);
    if (e == kInfinity) return kInfinity;
    cost += e;
  }
  return cost;
}

}  // namespace

std::vector<RigidPose> P3pSolve(const std::array<Correspondence, 3>& sample,
                                const Intrinsics& k) {
  // Grunert's formulation: unknown distances s1, s2, s3 along three bearing
  // rays, reduced with s2 = u*s1, s3 = v*s1 to a quartic in v. The quartic's
  // coefficients are recovered by evaluating the defining rational identity
  // at five nodes and interpolating, which avoids hand-expanded algebra.
  Eigen::Vector3d rays[3];
  Eigen::Vector3d points[3];
  for (int i = 0; i < 3; ++i) {
    rays[i] = Eigen::Vector3d((sample[i].pixel.x() - k.cx) / k.fx,
                              (sample[i].pixel.y() - k.cy) / k.fy, 1.0)
                  .normalized();
    points[i] = sample[i].point;
  }
  const double a = (points[1] - points[2]).norm();
  const double b = (points[0] - points[2]).norm();
  const double c = (points[0] - points[1]).norm();
  if (a <= 0.0 || b <= 0.0 || c <= 0.0) {
    throw DegenerateError("P3P sample has coincident points");
  }
  const Eigen::Vector3d cross = (points[1] - points[0]).cross(points[2] - points[0]);
  if (cross.norm() <= 1e-12 * b * c) {
    throw DegenerateError("P3P sample is collinear");
  }
  const double cos_alpha = rays[1].dot(rays[2]);
  const double cos_beta = rays[0].dot(rays[2]);
  const double cos_gamma = rays[0].dot(rays[1]);
  const double ratio_a = (a * a) / (b * b);
  const double ratio_c = (c * c) / (b * b);

  // u expressed from the difference of the two ratio equations.
  const auto u_of_v = [&](double v) {
    const double numer = (ratio_a - ratio_c) * (1.0 + v * v - 2.0 * v * cos_beta) + 1.0 - v * v;
    const double denom = 2.0 * (cos_gamma - v * cos_alpha);
    return numer / denom;
  };
  // g(v) = (resid of the second ratio equation) * denom(v)^2, a quartic.
  const auto g_of_v = [&](double v) {
    const double denom = 2.0 * (cos_gamma - v * cos_alpha);
    const double numer =
        (ratio_a - ratio_c) * (1.0 + v * v - 2.0 * v * cos_beta) + 1.0 - v * v;
    const double u_num = numer;  // u = u_num / denom
    const double lhs = u_num * u_num - 2.0 * u_num * denom * cos_gamma +
                       denom * denom * (1.0 - ratio_c * (1.0 + v * v - 2.0 * v * cos_beta));
    return lhs;
  };
  // Interpolate the quartic through five nodes.
  Eigen::Matrix<double, 5, 5> vander;
  Eigen::Matrix<double, 5, 1> values;
  const double nodes[5] = {-2.0, -1.0, 0.0, 1.0, 2.0};
  for (int i = 0; i < 5; ++i) {
    double pow_v = 1.0;
    for (int j = 0; j < 5; ++j) {
      vander(i, j) = pow_v;
      pow_v *= nodes[i];
    }
    values(i) = g_of_v(nodes[i]);
  }
  const Eigen::Matrix<double, 5, 1> coeffs = vander.fullPivLu().solve(values);

  // Real roots via the companion matrix (degree may drop below 4).
  int degree = 4;
  while (degree > 0 && std::fabs(coeffs(degree)) < 1e-14 * coeffs.cwiseAbs().maxCoeff()) {
    --degree;
  }
  if (degree < 1) {
    throw DegenerateError("P3P quartic degenerated");
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(degree, degree);
  for (int i = 0; i < degree; ++i) {
    companion(0, i) = -coeffs(degree - 1 - i) / coeffs(degree);
    if (i + 1 < degree) {
      companion(i + 1, i) = 1.0;
    }
  }
  const Eigen::EigenSolver<Eigen::MatrixXd> eigen(companion, /*computeEigenvectors=*/false);

  std::vector<RigidPose> poses;
  for (int r = 0; r < degree; ++r) {
    const std::complex<double> root = eigen.eigenvalues()(r);
    if (std::fabs(root.imag()) > 1e-8 * (1.0 + std::fabs(root.real()))) continue;
    const double v = root.real();
    if (!(v > 0.0)) continue;
    const double denom = 2.0 * (cos_gamma - v * cos_alpha);
    if (std::fabs(denom) < 1e-12) continue;
    const double u = u_of_v(v);
    if (!(u > 0.0)) continue;
    const double s1_sq = (b * b) / (1.0 + v * v - 2.0 * v * cos_beta);
    if (!(s1_sq > 0.0)) continue;
    const double s1 = std::sqrt(s1_sq);
    const double s2 = u * s1;
    const double s3 = v * s1;

    // Rigid transform world -> camera from the three recovered camera-frame
    // points (scale fixed at 1).
    std::vector<Eigen::Vector3d> world = {points[0], points[1], points[2]};
    std::vector<Eigen::Vector3d> cam = {s1 * rays[0], s2 * rays[1], s3 * rays[2]};
    Eigen::Vector3d mean_world = (world[0] + world[1] + world[2]) / 3.0;
    Eigen::Vector3d mean_cam = (cam[0] + cam[1] + cam[2]) / 3.0;
    Eigen::Matrix3d cov = Eigen::Matrix3d::Zero();
    for (int i = 0; i < 3; ++i) {
      cov += (cam[i] - mean_cam) * (world[i] - mean_world).transpose();
    }
    Eigen::JacobiSVD<Eigen::Matrix3d> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::Vector3d diag = Eigen::Vector3d::Ones();
    if (svd.matrixU().determinant() * svd.matrixV().determinant() < 0.0) {
      diag(2) = -1.0;
    }
    const Eigen::Matrix3d rotation =
        svd.matrixU() * diag.asDiagonal() * svd.matrixV().transpose();
    const Eigen::Vector3d translation = mean_cam - rotation * mean_world;

    RigidPose pose;
    pose.rotation = rotation;
    pose.center = -(rotation.transpose() * translation);
    poses.push_back(pose);
  }
  return poses;
}

Eigen::VectorXd RefineResiduals(const RigidPose& pose,
                                const std::vector<Correspondence>& corrs, const Intrinsics& k) {
  Eigen::VectorXd r(2 * corrs.size());
  for (size_t i = 0; i < corrs.size(); ++i) {
    const Eigen::Vector3d x_cam = WorldToCamera(pose, corrs[i].point);
    r(2 * i) = k.fx * x_cam.x() / x_cam.z() + k.cx - corrs[i].pixel.x();
    r(2 * i + 1) = k.fy * x_cam.y() / x_cam.z() + k.cy - corrs[i].pixel.y();
  }
  return r;
}

Eigen::MatrixXd RefineJacobian(const RigidPose& pose,
                               const std::vector<Correspondence>& corrs, const Intrinsics& k) {
  // Parameters: [omega, delta_center]; rotation update R <- exp([omega]x) R.
  Eigen::MatrixXd jac(2 * corrs.size(), 6);
  for (size_t i = 0; i < corrs.size(); ++i) {
    const Eigen::Vector3d x_cam = WorldToCamera(pose, corrs[i].point);
    const double z = x_cam.z();
    Eigen::Matrix<double, 2, 3> proj;
    proj << k.fx / z, 0.0, -k.fx * x_cam.x() / (z * z), 0.0, k.fy / z,
        -k.fy * x_cam.y() / (z * z);
    jac.block<2, 3>(2 * i, 0) = proj * (-Skew(x_cam));
    jac.block<2, 3>(2 * i, 3) = proj * (-pose.rotation);
  }
  return jac;
}

RefineResult RefinePose(const RigidPose& pose, const std::vector<Correspondence>& inliers,
                        const Intrinsics& k, int max_iters, double relative_cost_tol) {
  if (inliers.size() < 6) {
    throw DomainError("pose refinement needs at least 6 correspondences");
  }
  RefineResult result;
  result.pose = pose;

  double cost = TotalCost(result.pose, inliers, k);
  if (cost == kInfinity) {
    // Refinement assumes a pose that sees its inliers.
    result.converged = false;
    result.rmse_px = kInfinity;
    return result;
  }

  for (int iter = 0; iter < max_iters; ++iter) {
    result.iterations = iter + 1;
    const Eigen::VectorXd r = RefineResiduals(result.pose, inliers, k);
    const Eigen::MatrixXd jac = RefineJacobian(result.pose, inliers, k);
    const Eigen::Matrix<double, 6, 6> jtj = jac.transpose() * jac;
    const Eigen::Matrix<double, 6, 1> jtr = jac.transpose() * r;

    const Eigen::LDLT<Eigen::Matrix<double, 6, 6>> ldlt(jtj);
    if (ldlt.info() != Eigen::Success) {
      result.converged = false;
      result.rmse_px = std::sqrt(cost / static_cast<double>(inliers.size()));
      return result;
    }
    Eigen::Matrix<double, 6, 1> step = ldlt.solve(-jtr);
    if (!step.allFinite()) {
      result.converged = false;
      result.rmse_px = std::sqrt(cost / static_cast<double>(inliers.size()));
      return result;
    }

    // Backtracking keeps the cost monotone.
    double alpha = 1.0;
    double new_cost = kInfinity;
    RigidPose candidate;
    bool accepted = false;
    for (int halving = 0; halving < 24; ++halving) {
      candidate.rotation = ExpSo3(alpha * step.head<3>()) * result.pose.rotation;
      candidate.center = result.pose.center + alpha * step.tail<3>();
      new_cost = TotalCost(candidate, inliers, k);
      if (new_cost <= cost) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      break;  // no descent direction left; current pose is the minimum found
    }
    result.pose = candidate;
    const double drop = cost - new_cost;
    cost = new_cost;
    if (drop <= relative_cost_tol * std::max(cost, 1e-300)) {
      break;
    }
  }

  result.converged = true;
  result.rmse_px = std::sqrt(cost / static_cast<double>(inliers.size()));
  return result;
}

PnpOutcome PnpRansac(const std::vector<Correspondence>& corrs, const Intrinsics& k,
                     const PnpParams& params) {
  const size_t n = corrs.size();
  if (n < 6) {
    throw DomainError("PnP RANSAC needs at least 6 correspondences, got " + std::to_string(n));
  }

  Rng rng(params.seed);
  PnpOutcome outcome;

  RigidPose best_pose;
  std::vector<bool> best_mask;
  int best_count = 0;
  double best_rmse = kInfinity;
  bool any_model = false;
  size_t degenerate_samples = 0;

  const double thresh_sq = params.inlier_px * params.inlier_px;
  int needed_iters = params.max_iters;
  int iter = 0;

  for (; iter < params.max_iters && iter < needed_iters; ++iter) {
    // Three distinct indices for the P3P sample.
    std::set<size_t> picked;
    while (picked.size() < 3) {
      picked.insert(static_cast<size_t>(rng.UniformIndex(n)));
    }
    std::array<Correspondence, 3> minimal;
    std::transform(picked.begin(), picked.end(), minimal.begin(),
                   [&](size_t idx) { return corrs[idx]; });

    std::vector<RigidPose> candidates;
    try {
      candidates = P3pSolve(minimal, k);
    } catch (const DegenerateError&) {
      ++degenerate_samples;
      continue;
    }
    if (candidates.empty()) {
      ++degenerate_samples;
      continue;
    }
    any_model = true;

    for (const RigidPose& pose : candidates) {
      std::vector<bool> mask(n, false);
      int count = 0;
      double sum_sq = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double e = SquaredError(pose, corrs[i], k);
        if (e <= thresh_sq) {
          mask[i] = true;
          ++count;
          sum_sq += e;
        }
      }
      const double rmse = count > 0 ? std::sqrt(sum_sq / count) : kInfinity;
      if (count > best_count || (count == best_count && rmse < best_rmse)) {
        best_count = count;
        best_rmse = rmse;
        best_pose = pose;
        best_mask = std::move(mask);

        // Adaptive stop from the inlier ratio.
        const double w = static_cast<double>(count) / static_cast<double>(n);
        const double p_all_inliers = w * w * w;
        if (p_all_inliers >= 1.0 - 1e-12) {
          needed_iters = iter + 1;
        } else if (p_all_inliers > 0.0) {
          const double denom = std::log(1.0 - p_all_inliers);
          needed_iters = std::min<double>(
              params.max_iters, std::ceil(std::log(1.0 - params.confidence) / denom));
        }
      }
    }
  }
  outcome.result.iterations = iter;
  outcome.best_inlier_count = best_count;

  if (!any_model) {
    throw DegenerateError("every RANSAC sample was degenerate (" +
                          std::to_string(degenerate_samples) + " of " + std::to_string(iter) +
                          ")");
  }
  if (best_count < params.min_inliers) {
    outcome.success = false;
    outcome.failure_reason = "registration failed: best consensus " +
                             std::to_string(best_count) + " inliers, need " +
                             std::to_string(params.min_inliers);
    return outcome;
  }

  // Consensus-set refit: Gauss-Newton on all inliers from the best hypothesis.
  std::vector<Correspondence> inliers;
  inliers.reserve(best_count);
  for (size_t i = 0; i < n; ++i) {
    if (best_mask[i]) inliers.push_back(corrs[i]);
  }
  const RefineResult refined = RefinePose(best_pose, inliers, k);

  // Final consensus against the refined pose.
  std::vector<bool> final_mask(n, false);
  int final_count = 0;
  double final_sum_sq = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double e = SquaredError(refined.pose, corrs[i], k);
    if (e <= thresh_sq) {
      final_mask[i] = true;
      ++final_count;
      final_sum_sq += e;
    }
  }
  if (final_count < params.min_inliers) {
    outcome.success = false;
    outcome.best_inlier_count = final_count;
    outcome.failure_reason = "registration failed after refinement: " +
                             std::to_string(final_count) + " inliers, need " +
                             std::to_string(params.min_inliers);
    return outcome;
  }

  outcome.success = true;
  outcome.best_inlier_count = final_count;
  outcome.result.pose = refined.pose;
  outcome.result.inlier_mask = std::move(final_mask);
  outcome.result.rmse_px = std::sqrt(final_sum_sq / final_count);
  return outcome;
}

std::vector<Correspondence> GatherCorrespondences(const std::vector<MatchRecord>& matches,
                                                  const SparseModel& model) {
  std::vector<Correspondence> corrs;
  std::set<std::tuple<double, double, int64_t>> seen;
  for (const auto& match : matches) {
    const SparseImage* image = model.FindImageByName(match.db_image);
    if (image == nullptr) {
      throw ValidationError("match references unknown database image '" + match.db_image + "'");
    }
    if (match.db_keypoint >= image->keypoints.size()) {
      throw ValidationError("match references keypoint " + std::to_string(match.db_keypoint) +
                            " out of range for image '" + match.db_image + "'");
    }
    const int64_t pid = image->keypoints[match.db_keypoint].point3d_id;
    if (pid < 0) {
      continue;  // keypoint has no triangulated point
    }
    if (!seen.insert({match.query_px.x(), match.query_px.y(), pid}).second) {
      continue;  // duplicate (pixel, point) pair
    }
    Correspondence c;
    c.pixel = match.query_px;
    c.point = model.points.at(static_cast<uint64_t>(pid)).xyz;
    c.point3d_id = pid;
    corrs.push_back(c);
  }
  return corrs;
}

}  // namespace uavgeo
