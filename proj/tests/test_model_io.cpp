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

#include <filesystem>
#include <functional>

#include <doctest.h>

#include "test_util.hpp"
#include "uavgeo/errors.hpp"
#include "uavgeo/io/exports.hpp"
#include "uavgeo/io/ply.hpp"
#include "uavgeo/io/records.hpp"
#include "uavgeo/io/sparse_model.hpp"
#include "uavgeo/retrieval.hpp"
#include "uavgeo/rng.hpp"

namespace fs = std::filesystem;

using namespace uavgeo;
using uavgeo::test::TempDir;
using uavgeo::test::ReadFile;
using uavgeo::test::WriteFile;

namespace {

// Hand-built 1-camera / 1-image / 1-point model; values fixed in the fixture.
constexpr const char* kCamerasTxt =
    "# Camera list\n"
    "1 PINHOLE 640 480 1000.5 999.5 320.25 239.75\n";
constexpr const char* kImagesTxt =
    "# Image list\n"
    "7 1 0 0 0 0.5 -1.25 10 1 frame_000.png\n"
    "100.5 200.25 42 12.5 13.5 -1\n";
constexpr const char* kPointsTxt =
    "# Points\n"
    "42 1.5 -2.5 30 200 100 50 0.75 7 0\n";

void WriteTextFixture(const std::string& dir) {
  WriteFile(dir + "/cameras.txt", kCamerasTxt);
  WriteFile(dir + "/images.txt", kImagesTxt);
  WriteFile(dir + "/points3D.txt", kPointsTxt);
}

SparseModel RandomModel(uint64_t seed, size_t n_images = 4, size_t n_points = 30) {
  Rng rng(seed);
  SparseModel model;
  SparseCamera cam;
  cam.camera_id = 1;
  cam.model_name = "PINHOLE";
  cam.params = {900.0, 901.0, 400.0, 300.0};
  cam.intrinsics = {900.0, 901.0, 400.0, 300.0, 800, 600};
  model.cameras[1] = cam;

  for (size_t i = 1; i <= n_points; ++i) {
    SparsePoint p;
    p.xyz = {rng.Uniform(-50, 50), rng.Uniform(-50, 50), rng.Uniform(-50, 50)};
    p.rgb = {static_cast<uint8_t>(rng.UniformInt(0, 255)),
             static_cast<uint8_t>(rng.UniformInt(0, 255)),
             static_cast<uint8_t>(rng.UniformInt(0, 255))};
    p.error = rng.Uniform(0.0, 2.0);
    model.points[i] = p;
  }
  for (size_t i = 1; i <= n_images; ++i) {
    SparseImage image;
    image.image_id = static_cast<uint32_t>(i);
    image.name = "img_" + std::to_string(i) + ".png";
    image.camera_id = 1;
    Eigen::Quaterniond q(rng.Gaussian(), rng.Gaussian(), rng.Gaussian(), rng.Gaussian());
    q.normalize();
    image.cam_from_world = q;
    image.translation = {rng.Uniform(-5, 5), rng.Uniform(-5, 5), rng.Uniform(-5, 5)};
    // Every point observed by every image keeps the fixture simple.
    for (size_t p = 1; p <= n_points; ++p) {
      SparseKeypoint kp;
      kp.x = rng.Uniform(0.0, 800.0);
      kp.y = rng.Uniform(0.0, 600.0);
      kp.point3d_id = static_cast<int64_t>(p);
      model.points[p].track.push_back(
          {image.image_id, static_cast<uint32_t>(image.keypoints.size())});
      image.keypoints.push_back(kp);
    }
    // And one unmatched keypoint.
    image.keypoints.push_back({1.0, 2.0, -1});
    model.images[image.image_id] = std::move(image);
  }
  return model;
}

void CheckModelsEqual(const SparseModel& a, const SparseModel& b) {
  REQUIRE(a.cameras.size() == b.cameras.size());
  REQUIRE(a.images.size() == b.images.size());
  REQUIRE(a.points.size() == b.points.size());
  for (const auto& [id, cam] : a.cameras) {
    const auto& other = b.cameras.at(id);
    CHECK(cam.model_name == other.model_name);
    CHECK(cam.params == other.params);
    CHECK(cam.intrinsics.width == other.intrinsics.width);
  }
  for (const auto& [id, image] : a.images) {
    const auto& other = b.images.at(id);
    CHECK(image.name == other.name);
    CHECK(image.camera_id == other.camera_id);
    CHECK((image.cam_from_world.coeffs() - other.cam_from_world.coeffs()).norm() == 0.0);
    CHECK((image.translation - other.translation).norm() == 0.0);
    REQUIRE(image.keypoints.size() == other.keypoints.size());
    for (size_t i = 0; i < image.keypoints.size(); ++i) {
      CHECK(image.keypoints[i].x == other.keypoints[i].x);
      CHECK(image.keypoints[i].y == other.keypoints[i].y);
      CHECK(image.keypoints[i].point3d_id == other.keypoints[i].point3d_id);
    }
  }
  for (const auto& [id, point] : a.points) {
    const auto& other = b.points.at(id);
    CHECK((point.xyz - other.xyz).norm() == 0.0);
    CHECK(point.rgb == other.rgb);
    CHECK(point.error == other.error);
    REQUIRE(point.track.size() == other.track.size());
    for (size_t i = 0; i < point.track.size(); ++i) {
      CHECK(point.track[i].image_id == other.track[i].image_id);
      CHECK(point.track[i].point2d_index == other.track[i].point2d_index);
    }
  }
}

}  // namespace

TEST_CASE("hand-built text fixture parses to known values") {
  TempDir dir("sparse_text");
  WriteTextFixture(dir.Path());
  const SparseModel model = ReadSparseModel(dir.Path(), ModelVariant::kText);

  REQUIRE(model.cameras.size() == 1);
  const SparseCamera& cam = model.cameras.at(1);
  CHECK(cam.model_name == "PINHOLE");
  CHECK(cam.intrinsics.fx == 1000.5);
  CHECK(cam.intrinsics.fy == 999.5);
  CHECK(cam.intrinsics.cx == 320.25);
  CHECK(cam.intrinsics.cy == 239.75);
  CHECK(cam.intrinsics.width == 640);
  CHECK(cam.intrinsics.height == 480);

  REQUIRE(model.images.size() == 1);
  const SparseImage& image = model.images.at(7);
  CHECK(image.name == "frame_000.png");
  CHECK(image.cam_from_world.w() == 1.0);
  CHECK(image.translation == Eigen::Vector3d(0.5, -1.25, 10.0));
  REQUIRE(image.keypoints.size() == 2);
  CHECK(image.keypoints[0].x == 100.5);
  CHECK(image.keypoints[0].y == 200.25);
  CHECK(image.keypoints[0].point3d_id == 42);
  CHECK(image.keypoints[1].point3d_id == -1);
  // Center is -R^T t with identity rotation.
  CHECK((image.Center() - Eigen::Vector3d(-0.5, 1.25, -10.0)).norm() < 1e-15);

  REQUIRE(model.points.size() == 1);
  const SparsePoint& point = model.points.at(42);
  CHECK(point.xyz == Eigen::Vector3d(1.5, -2.5, 30.0));
  CHECK(point.rgb == std::array<uint8_t, 3>{200, 100, 50});
  CHECK(point.error == 0.75);
  REQUIRE(point.track.size() == 1);
  CHECK(point.track[0].image_id == 7);
  CHECK(point.track[0].point2d_index == 0);
}

TEST_CASE("simple pinhole and zero-distortion records are accepted") {
  TempDir dir("sparse_models");
  WriteFile(dir.Path("cameras.txt"),
            "1 SIMPLE_PINHOLE 640 480 1000 320 240\n"
            "2 SIMPLE_RADIAL 640 480 1000 320 240 0\n"
            "3 OPENCV 640 480 1000 1000 320 240 0 0 0 0\n");
  WriteFile(dir.Path("images.txt"), "");
  WriteFile(dir.Path("points3D.txt"), "");
  const SparseModel model = ReadSparseModel(dir.Path(), ModelVariant::kText);
  CHECK(model.cameras.size() == 3);
  CHECK(model.cameras.at(1).intrinsics.fx == 1000.0);
  CHECK(model.cameras.at(2).intrinsics.fy == 1000.0);
}

TEST_CASE("nonzero distortion is rejected loudly") {
  TempDir dir("sparse_distortion");
  WriteFile(dir.Path("cameras.txt"), "1 SIMPLE_RADIAL 640 480 1000 320 240 0.02\n");
  WriteFile(dir.Path("images.txt"), "");
  WriteFile(dir.Path("points3D.txt"), "");
  CHECK_THROWS_AS(ReadSparseModel(dir.Path(), ModelVariant::kText), ParseError);
}

TEST_CASE("fisheye models are rejected") {
  TempDir dir("sparse_fisheye");
  WriteFile(dir.Path("cameras.txt"), "1 OPENCV_FISHEYE 640 480 1000 1000 320 240 0 0 0 0\n");
  WriteFile(dir.Path("images.txt"), "");
  WriteFile(dir.Path("points3D.txt"), "");
  CHECK_THROWS_AS(ReadSparseModel(dir.Path(), ModelVariant::kText), ParseError);
}

TEST_CASE("round trip is semantic identity for text and binary") {
  const SparseModel model = RandomModel(99);
  TempDir dir("sparse_roundtrip");

  WriteSparseModel(model, dir.Path("text"), ModelVariant::kText);
  CheckModelsEqual(model, ReadSparseModel(dir.Path("text"), ModelVariant::kText));

  WriteSparseModel(model, dir.Path("bin"), ModelVariant::kBinary);
  CheckModelsEqual(model, ReadSparseModel(dir.Path("bin"), ModelVariant::kBinary));

  // Binary re-write is bit-exact.
  const SparseModel reread = ReadSparseModel(dir.Path("bin"), ModelVariant::kAuto);
  WriteSparseModel(reread, dir.Path("bin2"), ModelVariant::kBinary);
  for (const char* name : {"cameras.bin", "images.bin", "points3D.bin"}) {
    CHECK(ReadFile(dir.Path("bin") + "/" + name) == ReadFile(dir.Path("bin2") + "/" + name));
  }
}

TEST_CASE("truncated binary points file reports the byte offset") {
  const SparseModel model = RandomModel(7);
  TempDir dir("sparse_truncated");
  WriteSparseModel(model, dir.Path(), ModelVariant::kBinary);
  const std::string points_path = dir.Path("points3D.bin");
  std::string bytes = ReadFile(points_path);
  bytes.resize(bytes.size() / 2);
  WriteFile(points_path, bytes);
  try {
    ReadSparseModel(dir.Path(), ModelVariant::kBinary);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.path() == points_path);
    CHECK(e.byte_offset().has_value());
    CHECK(*e.byte_offset() <= bytes.size());
  }
}

TEST_CASE("dangling keypoint reference fails validation") {
  TempDir dir("sparse_dangling");
  WriteFile(dir.Path("cameras.txt"), kCamerasTxt);
  WriteFile(dir.Path("images.txt"),
            "7 1 0 0 0 0 0 10 1 frame_000.png\n"
            "100 200 43\n");  // point 43 does not exist
  WriteFile(dir.Path("points3D.txt"), kPointsTxt);
  CHECK_THROWS_AS(ReadSparseModel(dir.Path(), ModelVariant::kText), ValidationError);
}

TEST_CASE("track must point back at the keypoint") {
  TempDir dir("sparse_backlink");
  WriteFile(dir.Path("cameras.txt"), kCamerasTxt);
  WriteFile(dir.Path("images.txt"),
            "7 1 0 0 0 0 0 10 1 frame_000.png\n"
            "100 200 42 150 250 -1\n");
  // Track claims keypoint 1, but keypoint 1 has no point.
  WriteFile(dir.Path("points3D.txt"), "42 1 2 3 0 0 0 0.5 7 1\n");
  CHECK_THROWS_AS(ReadSparseModel(dir.Path(), ModelVariant::kText), ValidationError);
}

TEST_CASE("non-unit quaternion fails validation") {
  TempDir dir("sparse_quat");
  WriteFile(dir.Path("cameras.txt"), kCamerasTxt);
  WriteFile(dir.Path("images.txt"),
            "7 2 0 0 0 0 0 10 1 frame_000.png\n"
            "\n");
  WriteFile(dir.Path("points3D.txt"), "");
  CHECK_THROWS_AS(ReadSparseModel(dir.Path(), ModelVariant::kText), ValidationError);
}

TEST_CASE("malformed text records name file and line") {
  TempDir dir("sparse_malformed");
  WriteFile(dir.Path("cameras.txt"), "# header\n1 PINHOLE 640 480 oops 999 320 240\n");
  WriteFile(dir.Path("images.txt"), "");
  WriteFile(dir.Path("points3D.txt"), "");
  try {
    ReadSparseModel(dir.Path(), ModelVariant::kText);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("cameras.txt") != std::string::npos);
  }
}

TEST_CASE("corrupted binary inputs raise typed errors, never crash") {
  const SparseModel model = RandomModel(424242);
  TempDir dir("fuzz");
  WriteSparseModel(model, dir.Path("clean"), ModelVariant::kBinary);

  PointCloud cloud;
  cloud.frame = CloudFrame::kUtm;
  cloud.zone = 34;
  Rng cloud_rng(3);
  for (int i = 0; i < 50; ++i) {
    cloud.points.emplace_back(cloud_rng.Uniform(0, 10), cloud_rng.Uniform(0, 10),
                              cloud_rng.Uniform(0, 10));
  }
  WritePly(cloud, dir.Path("clean.ply"), PlyVariant::kBinaryLittleEndian);

  DescriptorIndex index;
  Eigen::VectorXf d = Eigen::VectorXf::Ones(64).normalized();
  index.Add("a", d);
  index.Add("b", d);
  SaveDescriptors(index, dir.Path("clean.gdsc"));

  Rng rng(99);
  size_t attempts = 0, typed_errors = 0;
  auto sweep = [&](const std::string& original, const std::function<void()>& read_mutated,
                   const std::string& mutated_path) {
    const std::string bytes = ReadFile(original);
    REQUIRE(bytes.size() > 16);
    for (int trial = 0; trial < 24; ++trial) {
      std::string mutated = bytes;
      if (trial % 3 == 0) {  // truncation
        mutated.resize(rng.UniformIndex(mutated.size()));
      } else if (trial % 3 == 1) {  // stomp 8 bytes with 0xFF (count fields blow up)
        const size_t at = rng.UniformIndex(mutated.size());
        for (size_t i = at; i < std::min(mutated.size(), at + 8); ++i) {
          mutated[i] = static_cast<char>(0xFF);
        }
      } else {  // random byte flips
        for (int flips = 0; flips < 4; ++flips) {
          mutated[rng.UniformIndex(mutated.size())] =
              static_cast<char>(rng.UniformInt(0, 255));
        }
      }
      WriteFile(mutated_path, mutated);
      ++attempts;
      try {
        read_mutated();
      } catch (const Error&) {
        ++typed_errors;  // typed failure is the contract
      }
      // Anything else (std::bad_alloc, segfault, std::exception) fails the
      // test by escaping the catch or killing the process.
    }
  };

  for (const char* name : {"cameras.bin", "images.bin", "points3D.bin"}) {
    for (const char* other : {"cameras.bin", "images.bin", "points3D.bin"}) {
      fs::create_directories(dir.Path("mut"));
      fs::copy_file(dir.Path("clean") + "/" + other, dir.Path("mut") + "/" + other,
                    fs::copy_options::overwrite_existing);
    }
    sweep(dir.Path("clean") + "/" + name,
          [&] { ReadSparseModel(dir.Path("mut"), ModelVariant::kBinary); },
          dir.Path("mut") + "/" + name);
  }
  sweep(dir.Path("clean.ply"), [&] { ReadPly(dir.Path("mut.ply")); }, dir.Path("mut.ply"));
  sweep(dir.Path("clean.gdsc"), [&] { LoadExternalDescriptors(dir.Path("mut.gdsc")); },
        dir.Path("mut.gdsc"));

  CHECK(attempts == 120);
  // The vast majority of mutations must be detected; a few byte flips can
  // land in payload values and legitimately parse.
  CHECK(typed_errors >= attempts * 2 / 3);
}

// --------------------------------------------------------------------- PLY

TEST_CASE("3-point ascii PLY fixture parses exactly") {
  TempDir dir("ply_ascii");
  WriteFile(dir.Path("fixture.ply"),
            "ply\n"
            "format ascii 1.0\n"
            "comment frame utm 34 north\n"
            "element vertex 3\n"
            "property float x\n"
            "property float y\n"
            "property float z\n"
            "property uchar red\n"
            "property uchar green\n"
            "property uchar blue\n"
            "end_header\n"
            "1.5 2.5 3.5 255 0 10\n"
            "-1 -2 -3 1 2 3\n"
            "0 0 0 0 0 0\n");
  const PointCloud cloud = ReadPly(dir.Path("fixture.ply"));
  REQUIRE(cloud.points.size() == 3);
  CHECK(cloud.points[0] == Eigen::Vector3d(1.5, 2.5, 3.5));
  CHECK(cloud.points[1] == Eigen::Vector3d(-1, -2, -3));
  CHECK(cloud.colors[0] == std::array<uint8_t, 3>{255, 0, 10});
  CHECK(cloud.frame == CloudFrame::kUtm);
  CHECK(cloud.zone == 34);
  CHECK(cloud.hemisphere == Hemisphere::kNorth);
}

TEST_CASE("ascii and binary round trips preserve values") {
  Rng rng(21);
  PointCloud cloud;
  cloud.frame = CloudFrame::kUtm;
  cloud.zone = 34;
  for (int i = 0; i < 200; ++i) {
    cloud.points.emplace_back(555000.0 + rng.Uniform(-100, 100),
                              4255000.0 + rng.Uniform(-100, 100), rng.Uniform(0, 50));
    cloud.colors.push_back({static_cast<uint8_t>(rng.UniformInt(0, 255)),
                            static_cast<uint8_t>(rng.UniformInt(0, 255)),
                            static_cast<uint8_t>(rng.UniformInt(0, 255))});
  }
  TempDir dir("ply_roundtrip");

  WritePly(cloud, dir.Path("a.ply"), PlyVariant::kAscii);
  const PointCloud ascii_back = ReadPly(dir.Path("a.ply"));
  REQUIRE(ascii_back.points.size() == cloud.points.size());
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    CHECK((ascii_back.points[i] - cloud.points[i]).norm() < 1e-6);
    CHECK(ascii_back.colors[i] == cloud.colors[i]);
  }
  CHECK(ascii_back.zone == 34);

  WritePly(cloud, dir.Path("b.ply"), PlyVariant::kBinaryLittleEndian);
  const PointCloud bin_back = ReadPly(dir.Path("b.ply"));
  REQUIRE(bin_back.points.size() == cloud.points.size());
  for (size_t i = 0; i < cloud.points.size(); ++i) {
    CHECK(bin_back.points[i] == cloud.points[i]);  // bit-exact
    CHECK(bin_back.colors[i] == cloud.colors[i]);
  }

  // Binary re-write of a binary read is bit-identical.
  WritePly(bin_back, dir.Path("c.ply"), PlyVariant::kBinaryLittleEndian);
  CHECK(ReadFile(dir.Path("b.ply")) == ReadFile(dir.Path("c.ply")));
}

TEST_CASE("float32 coordinates read back exactly") {
  TempDir dir("ply_float");
  std::string body;
  const float values[6] = {1.25f, -3.5f, 1e6f, 0.1f, 2.0f, -7.75f};
  body.assign(reinterpret_cast<const char*>(values), sizeof(values));
  WriteFile(dir.Path("f.ply"),
            "ply\nformat binary_little_endian 1.0\nelement vertex 2\n"
            "property float x\nproperty float y\nproperty float z\nend_header\n" +
                body);
  const PointCloud cloud = ReadPly(dir.Path("f.ply"));
  REQUIRE(cloud.points.size() == 2);
  CHECK(cloud.points[0].x() == 1.25);
  CHECK(cloud.points[0].y() == -3.5);
  CHECK(cloud.points[1].z() == -7.75);
  CHECK(cloud.frame == CloudFrame::kLocal);
}

TEST_CASE("header/body count mismatch is a parse error") {
  TempDir dir("ply_mismatch");
  WriteFile(dir.Path("bad.ply"),
            "ply\nformat ascii 1.0\nelement vertex 3\n"
            "property float x\nproperty float y\nproperty float z\nend_header\n"
            "1 2 3\n");
  CHECK_THROWS_AS(ReadPly(dir.Path("bad.ply")), ParseError);
}

TEST_CASE("unsupported property types are rejected") {
  TempDir dir("ply_unsupported");
  WriteFile(dir.Path("bad.ply"),
            "ply\nformat ascii 1.0\nelement vertex 1\n"
            "property int x\nproperty float y\nproperty float z\nend_header\n"
            "1 2 3\n");
  CHECK_THROWS_AS(ReadPly(dir.Path("bad.ply")), ParseError);
  WriteFile(dir.Path("list.ply"),
            "ply\nformat ascii 1.0\nelement vertex 1\n"
            "property list uchar int vertex_indices\nend_header\n");
  CHECK_THROWS_AS(ReadPly(dir.Path("list.ply")), ParseError);
}

TEST_CASE("unknown vertex properties are rejected") {
  TempDir dir("ply_extra");
  WriteFile(dir.Path("bad.ply"),
            "ply\nformat ascii 1.0\nelement vertex 1\n"
            "property float x\nproperty float y\nproperty float z\nproperty float nx\n"
            "end_header\n1 2 3 4\n");
  CHECK_THROWS_AS(ReadPly(dir.Path("bad.ply")), ParseError);
}

// ------------------------------------------------------------------ sidecar

TEST_CASE("sidecar row maps to position, attitude, and intrinsics") {
  TempDir dir("sidecar");
  WriteFile(dir.Path("poses.csv"),
            "image,lat_deg,lon_deg,alt_m,roll_deg,pitch_deg,yaw_deg,fx,fy,cx,cy,width,height\n"
            "img_001.png,38.5,23.5,120,0,-90,45,2000,2000,960,540,1920,1080\n");
  const PoseSidecar sidecar = ReadPoseSidecar(dir.Path("poses.csv"));
  REQUIRE(sidecar.records.size() == 1);
  const SidecarRecord& rec = sidecar.records[0];
  CHECK(rec.image_name == "img_001.png");
  CHECK(rec.position.latitude_deg == 38.5);
  CHECK(rec.position.longitude_deg == 23.5);
  CHECK(rec.position.altitude_m == 120.0);
  CHECK(rec.attitude.roll_deg == 0.0);
  CHECK(rec.attitude.pitch_deg == -90.0);
  CHECK(rec.attitude.yaw_deg == 45.0);
  CHECK(rec.intrinsics.fx == 2000.0);
  CHECK(rec.intrinsics.width == 1920);
}

TEST_CASE("sidecar rejects duplicates, bad headers, and bad rows") {
  TempDir dir("sidecar_bad");
  WriteFile(dir.Path("dup.csv"),
            "image,lat_deg,lon_deg,alt_m,roll_deg,pitch_deg,yaw_deg,fx,fy,cx,cy,width,height\n"
            "a.png,0,0,0,0,0,0,100,100,50,50,100,100\n"
            "a.png,1,1,0,0,0,0,100,100,50,50,100,100\n");
  CHECK_THROWS_AS(ReadPoseSidecar(dir.Path("dup.csv")), ValidationError);

  WriteFile(dir.Path("hdr.csv"), "image,lat,lon\na.png,0,0\n");
  CHECK_THROWS_AS(ReadPoseSidecar(dir.Path("hdr.csv")), ParseError);

  WriteFile(dir.Path("lat.csv"),
            "image,lat_deg,lon_deg,alt_m,roll_deg,pitch_deg,yaw_deg,fx,fy,cx,cy,width,height\n"
            "a.png,99,0,0,0,0,0,100,100,50,50,100,100\n");
  CHECK_THROWS_AS(ReadPoseSidecar(dir.Path("lat.csv")), ValidationError);
}

TEST_CASE("sidecar round trip") {
  PoseSidecar sidecar;
  sidecar.records.push_back(
      {"a.png", {38.5, 23.5, 100.0}, {1.5, -88.0, 12.25}, {600, 601, 320, 256, 640, 512}});
  sidecar.records.push_back(
      {"b.png", {38.6, 23.4, 110.0}, {-2.0, -90.0, -170.0}, {600, 601, 320, 256, 640, 512}});
  TempDir dir("sidecar_rt");
  WritePoseSidecar(sidecar, dir.Path("poses.csv"));
  const PoseSidecar back = ReadPoseSidecar(dir.Path("poses.csv"));
  REQUIRE(back.records.size() == 2);
  CHECK(back.records[0].position.latitude_deg == 38.5);
  CHECK(back.records[1].attitude.yaw_deg == -170.0);
}

// --------------------------------------------------------------- detections

TEST_CASE("detections JSON round trip and validation") {
  TempDir dir("detections");
  WriteFile(dir.Path("dets.json"), R"({"images":[
    {"name":"q1.png","detections":[
      {"class":"dump truck","conf":0.91,"box":[10,20,110,120]},
      {"class":"human","conf":0.4,"box":[5,5,10,15]}]},
    {"name":"q2.png","detections":[]}
  ]})");
  const DetectionFile file = ReadDetections(dir.Path("dets.json"));
  REQUIRE(file.images.size() == 2);
  CHECK(file.images[0].detections.size() == 2);
  CHECK(file.images[0].detections[0].class_label == "dump truck");
  CHECK(file.images[0].detections[0].confidence == 0.91);
  CHECK(file.images[0].detections[1].box.y_max == 15.0);
  CHECK(file.images[1].detections.empty());  // empty list is valid

  WriteDetections(file, dir.Path("out.json"));
  const DetectionFile back = ReadDetections(dir.Path("out.json"));
  CHECK(back.images.size() == 2);
  CHECK(back.images[0].detections[0].box.x_max == 110.0);
}

TEST_CASE("detection confidence out of range is rejected") {
  TempDir dir("detections_conf");
  WriteFile(dir.Path("bad.json"),
            R"({"images":[{"name":"a","detections":[{"class":"car","conf":1.2,"box":[0,0,1,1]}]}]})");
  CHECK_THROWS_AS(ReadDetections(dir.Path("bad.json")), ValidationError);
}

TEST_CASE("inverted boxes and duplicate image names are rejected") {
  TempDir dir("detections_box");
  WriteFile(dir.Path("bad.json"),
            R"({"images":[{"name":"a","detections":[{"class":"car","conf":0.5,"box":[10,0,5,1]}]}]})");
  CHECK_THROWS_AS(ReadDetections(dir.Path("bad.json")), ValidationError);
  WriteFile(dir.Path("dup.json"),
            R"({"images":[{"name":"a","detections":[]},{"name":"a","detections":[]}]})");
  CHECK_THROWS_AS(ReadDetections(dir.Path("dup.json")), ValidationError);
}

TEST_CASE("unknown class labels pass through verbatim") {
  TempDir dir("detections_class");
  WriteFile(dir.Path("odd.json"),
            R"({"images":[{"name":"a","detections":[{"class":"weird-thing","conf":0.5,"box":[0,0,1,1]}]}]})");
  CHECK(ReadDetections(dir.Path("odd.json")).images[0].detections[0].class_label ==
        "weird-thing");
}

// ------------------------------------------------------------------ matches

TEST_CASE("match file round trip") {
  MatchFile file;
  file.query = "q1.png";
  file.matches.push_back({"db1.png", {10.5, 20.5}, 3});
  file.matches.push_back({"db2.png", {1.0, 2.0}, 0});
  TempDir dir("matches");
  WriteMatchFile(file, dir.Path("m.json"));
  const MatchFile back = ReadMatchFile(dir.Path("m.json"));
  CHECK(back.query == "q1.png");
  REQUIRE(back.matches.size() == 2);
  CHECK(back.matches[0].db_image == "db1.png");
  CHECK(back.matches[0].query_px == Eigen::Vector2d(10.5, 20.5));
  CHECK(back.matches[0].db_keypoint == 3);
}

TEST_CASE("malformed match JSON is a parse error") {
  TempDir dir("matches_bad");
  WriteFile(dir.Path("bad.json"), R"({"matches":[]})");
  CHECK_THROWS_AS(ReadMatchFile(dir.Path("bad.json")), ParseError);
  WriteFile(dir.Path("neg.json"),
            R"({"query":"q","matches":[{"db_image":"d","query_px":[1,2],"db_keypoint":-1}]})");
  CHECK_THROWS_AS(ReadMatchFile(dir.Path("neg.json")), ValidationError);
}

// ------------------------------------------------------------------ exports

TEST_CASE("geojson export of the datum definition case") {
  std::vector<GeoObject> objects(1);
  objects[0].class_label = "excavator";
  objects[0].confidence = 0.9;
  objects[0].position = {500000.0, 0.0, 12.0, 31, Hemisphere::kNorth};
  objects[0].support_count = 4;
  objects[0].source_image = "img.png";

  TempDir dir("export_geojson");
  ExportGeoObjects(objects, dir.Path("o.geojson"), ExportFormat::kGeoJson);
  const std::string text = ReadFile(dir.Path("o.geojson"));
  CHECK(text.find("\"FeatureCollection\"") != std::string::npos);
  CHECK(text.find("\"class\": \"excavator\"") != std::string::npos);
  // lon 3, lat 0 by the UTM definition.
  CHECK(text.find("3.0") != std::string::npos);
}

TEST_CASE("empty object list exports a valid empty collection") {
  TempDir dir("export_empty");
  ExportGeoObjects({}, dir.Path("o.geojson"), ExportFormat::kGeoJson);
  CHECK(ReadFile(dir.Path("o.geojson")).find("\"features\": []") != std::string::npos);
  ExportGeoObjects({}, dir.Path("o.csv"), ExportFormat::kCsv);
  CHECK(ReadFile(dir.Path("o.csv")) ==
        "class,conf,lat,lon,easting,northing,up,zone,source_image\n");
}

TEST_CASE("csv export row count and deterministic ordering") {
  std::vector<GeoObject> objects;
  for (int i = 0; i < 5; ++i) {
    GeoObject o;
    o.class_label = "car";
    o.confidence = 0.5;
    o.position = {500000.0 + i, 4000000.0, 0.0, 31, Hemisphere::kNorth};
    o.support_count = 1;
    o.source_image = i % 2 == 0 ? "b.png" : "a.png";
    objects.push_back(o);
  }
  TempDir dir("export_csv");
  ExportGeoObjects(objects, dir.Path("o.csv"), ExportFormat::kCsv);
  const std::string text = ReadFile(dir.Path("o.csv"));
  size_t rows = 0;
  for (const char c : text) rows += c == '\n';
  CHECK(rows == 6);  // header + 5 objects
  // a.png rows come before b.png rows.
  CHECK(text.find("a.png") < text.find("b.png"));

  const auto back = ReadGeoObjectsCsv(dir.Path("o.csv"));
  REQUIRE(back.size() == 5);
  CHECK(back[0].source_image == "a.png");
}

TEST_CASE("mixed zones require a forced zone") {
  // Two objects straddling the 31/32 boundary (6 deg E).
  std::vector<GeoObject> objects(2);
  objects[0].position = Wgs84ToUtm({45.0, 5.9, 0.0});
  objects[1].position = Wgs84ToUtm({45.0, 6.1, 0.0});
  REQUIRE(objects[0].position.zone == 31);
  REQUIRE(objects[1].position.zone == 32);
  objects[0].class_label = objects[1].class_label = "car";
  TempDir dir("export_zones");
  CHECK_THROWS_AS(ExportGeoObjects(objects, dir.Path("o.csv"), ExportFormat::kCsv),
                  ValidationError);
  CHECK_NOTHROW(ExportGeoObjects(objects, dir.Path("o.csv"), ExportFormat::kCsv, 31));
  const auto back = ReadGeoObjectsCsv(dir.Path("o.csv"));
  CHECK(back[0].position.zone == 31);
  CHECK(back[1].position.zone == 31);
}

TEST_CASE("trajectory csv round trip including failed rows") {
  Trajectory trajectory;
  trajectory.frame = TrajectoryFrame::kUtm;
  trajectory.zone = 34;
  TrajectoryEntry a;
  a.image_name = "q1.png";
  a.pose.center = {555000.123, 4255000.456, 140.0};
  a.pose.rotation = Eigen::Matrix3d::Identity();
  a.registered = true;
  TrajectoryEntry b;
  b.image_name = "q2.png";
  b.has_pose = false;
  trajectory.entries = {a, b};

  TempDir dir("trajectory");
  WriteTrajectoryCsv(trajectory, dir.Path("t.csv"));
  const Trajectory back = ReadTrajectoryCsv(dir.Path("t.csv"));
  REQUIRE(back.entries.size() == 2);
  CHECK(back.entries[0].has_pose);
  CHECK(back.entries[0].registered);
  CHECK((back.entries[0].pose.center - a.pose.center).norm() == 0.0);
  CHECK_FALSE(back.entries[1].has_pose);
}
