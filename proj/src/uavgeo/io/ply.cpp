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

#include "uavgeo/io/ply.hpp"

#include <cmath>
#include <cstring>
#include <fstream>

#include "uavgeo/errors.hpp"
#include "uavgeo/io/text.hpp"

namespace uavgeo {
namespace {

enum class PropType { kFloat32, kFloat64, kUchar };

struct Property {
  std::string name;
  PropType type;
};

size_t PropSize(PropType t) {
  switch (t) {
    case PropType::kFloat32: return 4;
    case PropType::kFloat64: return 8;
    case PropType::kUchar: return 1;
  }
  return 0;
}

PropType ParsePropType(const std::string& path, size_t line_no, const std::string& token) {
  if (token == "float" || token == "float32") return PropType::kFloat32;
  if (token == "double" || token == "float64") return PropType::kFloat64;
  if (token == "uchar" || token == "uint8") return PropType::kUchar;
  throw ParseError(path, "unsupported property type '" + token + "'", line_no);
}

struct Header {
  PlyVariant variant = PlyVariant::kAscii;
  size_t vertex_count = 0;
  std::vector<Property> properties;
  CloudFrame frame = CloudFrame::kLocal;
  int zone = 0;
  Hemisphere hemisphere = Hemisphere::kNorth;
  size_t body_offset = 0;  // bytes from file start to first body byte
  size_t header_lines = 0;
};

Header ParseHeader(const std::string& path, std::istream& in) {
  Header header;
  std::string line;
  size_t line_no = 0;
  size_t offset = 0;
  bool in_vertex = false;
  bool saw_format = false;

  auto next_line = [&]() -> bool {
    if (!std::getline(in, line)) return false;
    offset += line.size() + 1;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    ++line_no;
    return true;
  };

  if (!next_line() || TrimWhitespace(line) != "ply") {
    throw ParseError(path, "missing 'ply' magic", 1);
  }
  while (next_line()) {
    const auto tokens = SplitWhitespace(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "end_header") {
      header.body_offset = offset;
      header.header_lines = line_no;
      if (!saw_format) throw ParseError(path, "missing format line", line_no);
      return header;
    }
    if (tokens[0] == "format") {
      if (tokens.size() != 3 || tokens[2] != "1.0") {
        throw ParseError(path, "unsupported format line '" + line + "'", line_no);
      }
      if (tokens[1] == "ascii") {
        header.variant = PlyVariant::kAscii;
      } else if (tokens[1] == "binary_little_endian") {
        header.variant = PlyVariant::kBinaryLittleEndian;
      } else {
        throw ParseError(path, "unsupported format '" + tokens[1] + "'", line_no);
      }
      saw_format = true;
    } else if (tokens[0] == "comment") {
      // Frame tag comment: "comment frame local" | "comment frame utm Z H".
      if (tokens.size() >= 3 && tokens[1] == "frame") {
        if (tokens[2] == "utm") {
          if (tokens.size() != 5) {
            throw ParseError(path, "malformed frame comment", line_no);
          }
          header.frame = CloudFrame::kUtm;
          header.zone = ParseField<int>(path, line_no, tokens[3], "zone");
          header.hemisphere = ParseHemisphere(tokens[4]);
        } else if (tokens[2] == "local") {
          header.frame = CloudFrame::kLocal;
        }
      }
    } else if (tokens[0] == "element") {
      if (tokens.size() != 3) throw ParseError(path, "malformed element line", line_no);
      if (tokens[1] == "vertex") {
        header.vertex_count = ParseField<uint64_t>(path, line_no, tokens[2], "vertex count");
        in_vertex = true;
      } else {
        const auto count = ParseField<uint64_t>(path, line_no, tokens[2], "element count");
        if (count != 0) {
          throw ParseError(path, "unsupported element '" + tokens[1] + "'", line_no);
        }
        in_vertex = false;
      }
    } else if (tokens[0] == "property") {
      if (!in_vertex) {
        throw ParseError(path, "property outside vertex element", line_no);
      }
      if (tokens.size() != 3) {
        throw ParseError(path, "unsupported property '" + line + "'", line_no);
      }
      header.properties.push_back({tokens[2], ParsePropType(path, line_no, tokens[1])});
    } else if (tokens[0] == "obj_info") {
      // tolerated
    } else {
      throw ParseError(path, "unexpected header line '" + line + "'", line_no);
    }
  }
  throw ParseError(path, "missing end_header", line_no);
}

struct Layout {
  int x = -1, y = -1, z = -1;     // property indices
  int r = -1, g = -1, b = -1;
  bool has_color = false;
};

Layout ResolveLayout(const std::string& path, const Header& header) {
  Layout layout;
  for (size_t i = 0; i < header.properties.size(); ++i) {
    const auto& p = header.properties[i];
    const int idx = static_cast<int>(i);
    if (p.name == "x") layout.x = idx;
    else if (p.name == "y") layout.y = idx;
    else if (p.name == "z") layout.z = idx;
    else if (p.name == "red" || p.name == "r") layout.r = idx;
    else if (p.name == "green" || p.name == "g") layout.g = idx;
    else if (p.name == "blue" || p.name == "b") layout.b = idx;
    else {
      throw ParseError(path, "unsupported vertex property '" + p.name + "'");
    }
  }
  auto require_float = [&](int idx, const char* name) {
    if (idx < 0) {
      throw ParseError(path, std::string("missing vertex property '") + name + "'");
    }
    if (header.properties[idx].type == PropType::kUchar) {
      throw ParseError(path, std::string("coordinate property '") + name + "' must be float");
    }
  };
  require_float(layout.x, "x");
  require_float(layout.y, "y");
  require_float(layout.z, "z");
  const int color_count = (layout.r >= 0) + (layout.g >= 0) + (layout.b >= 0);
  if (color_count != 0 && color_count != 3) {
    throw ParseError(path, "color properties must come as a full r, g, b triple");
  }
  layout.has_color = color_count == 3;
  if (layout.has_color) {
    for (const int idx : {layout.r, layout.g, layout.b}) {
      if (header.properties[idx].type != PropType::kUchar) {
        throw ParseError(path, "color properties must be uchar");
      }
    }
  }
  return layout;
}

}  // namespace

PointCloud ReadPly(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError("cannot open " + path);
  }
  in.seekg(0, std::ios::end);
  const auto file_size = static_cast<size_t>(in.tellg());
  in.seekg(0, std::ios::beg);
  const Header header = ParseHeader(path, in);
  const Layout layout = ResolveLayout(path, header);

  // A vertex costs at least a few bytes in either variant; a count that
  // cannot fit the remaining file is corruption, caught before allocating.
  const size_t body_bytes = file_size > header.body_offset ? file_size - header.body_offset : 0;
  if (header.vertex_count > body_bytes / 2 + 1) {
    throw ParseError(path,
                     "implausible vertex count " + std::to_string(header.vertex_count) +
                         " for " + std::to_string(body_bytes) + " body bytes",
                     std::nullopt, header.body_offset);
  }

  PointCloud cloud;
  cloud.frame = header.frame;
  cloud.zone = header.zone;
  cloud.hemisphere = header.hemisphere;
  cloud.points.reserve(header.vertex_count);
  if (layout.has_color) cloud.colors.reserve(header.vertex_count);

  if (header.variant == PlyVariant::kAscii) {
    std::string line;
    size_t line_no = header.header_lines;
    for (size_t i = 0; i < header.vertex_count; ++i) {
      do {
        if (!std::getline(in, line)) {
          throw ParseError(path,
                           "vertex count mismatch: header declares " +
                               std::to_string(header.vertex_count) + ", body holds " +
                               std::to_string(i),
                           line_no);
        }
        ++line_no;
      } while (TrimWhitespace(line).empty());
      const auto tokens = SplitWhitespace(line);
      if (tokens.size() != header.properties.size()) {
        throw ParseError(path, "vertex line has " + std::to_string(tokens.size()) +
                                   " values, expected " +
                                   std::to_string(header.properties.size()),
                         line_no);
      }
      auto value = [&](int idx) {
        return ParseField<double>(path, line_no, tokens[idx], "vertex value");
      };
      Eigen::Vector3d p(value(layout.x), value(layout.y), value(layout.z));
      if (!p.allFinite()) {
        throw ParseError(path, "non-finite vertex coordinate", line_no);
      }
      cloud.points.push_back(p);
      if (layout.has_color) {
        auto channel = [&](int idx) {
          const int v = ParseField<int>(path, line_no, tokens[idx], "color channel");
          if (v < 0 || v > 255) {
            throw ParseError(path, "color channel outside [0, 255]", line_no);
          }
          return static_cast<uint8_t>(v);
        };
        cloud.colors.push_back({channel(layout.r), channel(layout.g), channel(layout.b)});
      }
    }
  } else {
    size_t stride = 0;
    std::vector<size_t> offsets(header.properties.size());
    for (size_t i = 0; i < header.properties.size(); ++i) {
      offsets[i] = stride;
      stride += PropSize(header.properties[i].type);
    }
    std::vector<char> row(stride);
    for (size_t i = 0; i < header.vertex_count; ++i) {
      in.read(row.data(), static_cast<std::streamsize>(stride));
      if (static_cast<size_t>(in.gcount()) != stride) {
        throw ParseError(path,
                         "vertex count mismatch: header declares " +
                             std::to_string(header.vertex_count) + ", body truncated at vertex " +
                             std::to_string(i),
                         std::nullopt,
                         header.body_offset + i * stride + static_cast<size_t>(in.gcount()));
      }
      auto scalar = [&](int idx) -> double {
        const auto& prop = header.properties[idx];
        if (prop.type == PropType::kFloat32) {
          float v;
          std::memcpy(&v, row.data() + offsets[idx], 4);
          return v;
        }
        double v;
        std::memcpy(&v, row.data() + offsets[idx], 8);
        return v;
      };
      Eigen::Vector3d p(scalar(layout.x), scalar(layout.y), scalar(layout.z));
      if (!p.allFinite()) {
        throw ParseError(path, "non-finite vertex coordinate", std::nullopt,
                         header.body_offset + i * stride);
      }
      cloud.points.push_back(p);
      if (layout.has_color) {
        auto channel = [&](int idx) {
          return static_cast<uint8_t>(row[offsets[idx]]);
        };
        cloud.colors.push_back({channel(layout.r), channel(layout.g), channel(layout.b)});
      }
    }
  }

  if (!cloud.colors.empty() && cloud.colors.size() != cloud.points.size()) {
    throw ParseError(path, "color count does not match vertex count");
  }
  return cloud;
}

void WritePly(const PointCloud& cloud, const std::string& path, PlyVariant variant) {
  if (cloud.HasColors() && cloud.colors.size() != cloud.points.size()) {
    throw ValidationError("point cloud has " + std::to_string(cloud.points.size()) +
                          " points but " + std::to_string(cloud.colors.size()) + " colors");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("cannot open " + path + " for writing");
  }
  out << "ply\n";
  out << (variant == PlyVariant::kAscii ? "format ascii 1.0\n"
                                        : "format binary_little_endian 1.0\n");
  if (cloud.frame == CloudFrame::kUtm) {
    out << "comment frame utm " << cloud.zone << " " << HemisphereName(cloud.hemisphere)
        << "\n";
  } else {
    out << "comment frame local\n";
  }
  out << "element vertex " << cloud.points.size() << "\n";
  out << "property double x\nproperty double y\nproperty double z\n";
  if (cloud.HasColors()) {
    out << "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  }
  out << "end_header\n";

  if (variant == PlyVariant::kAscii) {
    for (size_t i = 0; i < cloud.points.size(); ++i) {
      const auto& p = cloud.points[i];
      out << FormatDouble(p.x()) << " " << FormatDouble(p.y()) << " " << FormatDouble(p.z());
      if (cloud.HasColors()) {
        out << " " << int(cloud.colors[i][0]) << " " << int(cloud.colors[i][1]) << " "
            << int(cloud.colors[i][2]);
      }
      out << "\n";
    }
  } else {
    for (size_t i = 0; i < cloud.points.size(); ++i) {
      const auto& p = cloud.points[i];
      for (int j = 0; j < 3; ++j) {
        const double v = p[j];
        uint64_t bits;
        std::memcpy(&bits, &v, 8);
        char buf[8];
        for (int b = 0; b < 8; ++b) {
          buf[b] = static_cast<char>(bits >> (8 * b));
        }
        out.write(buf, 8);
      }
      if (cloud.HasColors()) {
        out.write(reinterpret_cast<const char*>(cloud.colors[i].data()), 3);
      }
    }
  }
  out.flush();
  if (!out) {
    throw IoError("write failed: " + path);
  }
}

}  // namespace uavgeo
