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

#include "uavgeo/retrieval.hpp"

#include <doctest.h>

#include "test_util.hpp"
#include "uavgeo/errors.hpp"
#include "uavgeo/io/binary.hpp"
#include "uavgeo/rng.hpp"

using namespace uavgeo;
using uavgeo::test::TempDir;

namespace {

GrayImage RandomImage(int w, int h, uint64_t seed) {
  Rng rng(seed);
  GrayImage img = GrayImage::Create(w, h);
  for (auto& p : img.pixels) {
    p = static_cast<float>(rng.Uniform(0.0, 255.0));
  }
  return img;
}

}  // namespace

TEST_CASE("identical images give identical descriptors") {
  const GrayImage img = RandomImage(64, 48, 1);
  const Eigen::VectorXf a = ThumbnailDescriptor(img);
  const Eigen::VectorXf b = ThumbnailDescriptor(img);
  CHECK(a.size() == 1024);
  CHECK((a - b).norm() == 0.0f);
  CHECK(std::fabs(a.norm() - 1.0f) < 1e-6f);
  CHECK(std::fabs(a.dot(b) - 1.0f) < 1e-6f);
}

TEST_CASE("negative image flips the descriptor") {
  const GrayImage img = RandomImage(64, 64, 2);
  GrayImage negative = img;
  for (auto& p : negative.pixels) {
    p = 255.0f - p;
  }
  const Eigen::VectorXf a = ThumbnailDescriptor(img);
  const Eigen::VectorXf b = ThumbnailDescriptor(negative);
  CHECK(a.dot(b) == doctest::Approx(-1.0).epsilon(1e-5));
}

TEST_CASE("constant image is a degenerate descriptor") {
  const GrayImage img = GrayImage::Create(40, 40, 128.0f);
  CHECK_THROWS_AS(ThumbnailDescriptor(img), DomainError);
}

TEST_CASE("images below 32x32 are rejected") {
  CHECK_THROWS_AS(ThumbnailDescriptor(GrayImage::Create(31, 64, 0.0f)), DomainError);
  CHECK_THROWS_AS(ThumbnailDescriptor(GrayImage::Create(64, 16, 0.0f)), DomainError);
}

TEST_CASE("area averaging handles non-divisible sizes") {
  // 33x47 image: every output cell still integrates unit total weight.
  const GrayImage img = RandomImage(33, 47, 3);
  const Eigen::VectorXf d = ThumbnailDescriptor(img);
  CHECK(d.size() == 1024);
  CHECK(std::fabs(d.norm() - 1.0f) < 1e-5f);
  CHECK(std::fabs(d.sum()) < 1e-3f);  // zero mean
}

TEST_CASE("descriptor file round trip") {
  DescriptorIndex index;
  Rng rng(4);
  for (int i = 0; i < 5; ++i) {
    Eigen::VectorXf d(128);
    for (int j = 0; j < 128; ++j) {
      d[j] = static_cast<float>(rng.Gaussian());
    }
    d.normalize();
    index.Add("img_" + std::to_string(i), d);
  }
  TempDir dir("descriptors");
  SaveDescriptors(index, dir.Path("d.gdsc"));
  const DescriptorIndex back = LoadExternalDescriptors(dir.Path("d.gdsc"));
  REQUIRE(back.entries.size() == 5);
  CHECK(back.dim == 128);
  for (size_t i = 0; i < 5; ++i) {
    CHECK(back.entries[i].name == index.entries[i].name);
    CHECK((back.entries[i].descriptor - index.entries[i].descriptor).norm() < 1e-6f);
  }
}

TEST_CASE("descriptor file validation errors") {
  TempDir dir("descriptors_bad");

  SUBCASE("bad magic") {
    BinaryWriter out(dir.Path("bad.gdsc"));
    out.WriteBytes("XXXX", 4);
    out.WriteU32(0);
    out.WriteU32(4);
  }
  SUBCASE("non-finite component") {
    BinaryWriter out(dir.Path("bad.gdsc"));
    out.WriteBytes("GDSC", 4);
    out.WriteU32(1);
    out.WriteU32(2);
    out.WriteU16(1);
    out.WriteBytes("a", 1);
    out.WriteF32(std::numeric_limits<float>::quiet_NaN());
    out.WriteF32(1.0f);
  }
  SUBCASE("norm far from unit") {
    BinaryWriter out(dir.Path("bad.gdsc"));
    out.WriteBytes("GDSC", 4);
    out.WriteU32(1);
    out.WriteU32(2);
    out.WriteU16(1);
    out.WriteBytes("a", 1);
    out.WriteF32(2.0f);
    out.WriteF32(0.0f);
  }
  SUBCASE("truncated entry") {
    BinaryWriter out(dir.Path("bad.gdsc"));
    out.WriteBytes("GDSC", 4);
    out.WriteU32(2);
    out.WriteU32(2);
    out.WriteU16(1);
    out.WriteBytes("a", 1);
    out.WriteF32(1.0f);
    // second component and second entry missing
  }
  CHECK_THROWS_AS(LoadExternalDescriptors(dir.Path("bad.gdsc")), Error);
}

TEST_CASE("descriptors within 1e-3 of unit norm are re-normalized") {
  TempDir dir("descriptors_norm");
  {
    BinaryWriter out(dir.Path("d.gdsc"));
    out.WriteBytes("GDSC", 4);
    out.WriteU32(1);
    out.WriteU32(2);
    out.WriteU16(1);
    out.WriteBytes("a", 1);
    out.WriteF32(1.0005f);
    out.WriteF32(0.0f);
  }
  const DescriptorIndex index = LoadExternalDescriptors(dir.Path("d.gdsc"));
  CHECK(std::fabs(index.entries[0].descriptor.norm() - 1.0f) < 1e-6f);
}

TEST_CASE("query ranking, ties, and clamping") {
  DescriptorIndex index;
  Eigen::VectorXf e1 = Eigen::VectorXf::Zero(4);
  e1[0] = 1.0f;
  Eigen::VectorXf e2 = Eigen::VectorXf::Zero(4);
  e2[1] = 1.0f;
  Eigen::VectorXf e3 = Eigen::VectorXf::Zero(4);
  e3[0] = e3[1] = std::sqrt(0.5f);
  index.Add("bravo", e2);
  index.Add("alpha", e1);
  index.Add("mixed", e3);

  SUBCASE("exact match first with similarity 1") {
    const auto hits = QueryTopK(index, e1, 2);
    REQUIRE(hits.size() == 2);
    CHECK(hits[0].name == "alpha");
    CHECK(hits[0].similarity == doctest::Approx(1.0));
    CHECK(hits[1].name == "mixed");
  }
  SUBCASE("k larger than the index returns the full ranking") {
    CHECK(QueryTopK(index, e1, 10).size() == 3);
  }
  SUBCASE("orthogonal query yields zero similarity") {
    Eigen::VectorXf q = Eigen::VectorXf::Zero(4);
    q[2] = 1.0f;
    const auto hits = QueryTopK(index, q, 3);
    for (const auto& h : hits) {
      CHECK(h.similarity == doctest::Approx(0.0));
    }
    // All tied at zero: ordered by name.
    CHECK(hits[0].name == "alpha");
    CHECK(hits[1].name == "bravo");
    CHECK(hits[2].name == "mixed");
  }
  SUBCASE("ranking invariant under positive scaling of the query") {
    const auto a = QueryTopK(index, e3, 3);
    const auto b = QueryTopK(index, (7.5f * e3).eval(), 3);
    for (size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].name == b[i].name);
      CHECK(a[i].similarity == doctest::Approx(b[i].similarity).epsilon(1e-6));
    }
  }
}

TEST_CASE("empty index and dimension mismatch are errors") {
  DescriptorIndex empty;
  CHECK_THROWS_AS(QueryTopK(empty, Eigen::VectorXf::Ones(4), 1), DomainError);
  DescriptorIndex index;
  index.Add("a", Eigen::VectorXf::Ones(4).normalized());
  CHECK_THROWS_AS(QueryTopK(index, Eigen::VectorXf::Ones(5), 1), DomainError);
}

TEST_CASE("mixed dimensions in one index are rejected") {
  DescriptorIndex index;
  index.Add("a", Eigen::VectorXf::Ones(8).normalized());
  CHECK_THROWS_AS(index.Add("b", Eigen::VectorXf::Ones(4).normalized()), ValidationError);
}
