// Copyright 2026 The guided-drill-sim Authors.
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

#include "gds/mesh_io.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <tuple>

#include "gds/fault.hpp"

namespace gds {
namespace {

class LineReader {
 public:
  LineReader(std::istream& in, std::string_view source) : in_(in), source_(source) {}

  /// Next line with surrounding whitespace removed; skips blank lines and,
  /// when `comments` is set, lines starting with '#'.
  bool next(std::string& line, bool comments = false) {
    while (std::getline(in_, line)) {
      ++line_no_;
      trim(line);
      if (line.empty() || (comments && line.front() == '#')) continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError(std::string(source_) + ":" + std::to_string(line_no_), what);
  }

  static void trim(std::string& s) {
    const auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
  }

 private:
  std::istream& in_;
  std::string_view source_;
  std::size_t line_no_ = 0;
};

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> tokens(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

template <typename T>
bool parse_number(std::string_view s, T& out) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

Vec3 parse_vec3(const LineReader& reader, std::string_view x, std::string_view y,
                std::string_view z) {
  Vec3 v;
  if (!parse_number(x, v.x) || !parse_number(y, v.y) || !parse_number(z, v.z)) {
    reader.fail("expected three numbers");
  }
  if (!v.is_finite()) reader.fail("non-finite coordinate");
  return v;
}

using VertexKey = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "cannot open file");
  return in;
}

void validate_loaded(TriangleMesh& mesh, std::string_view source) {
  try {
    mesh.validate();
  } catch (const GeometryFault& e) {
    throw ConfigError(std::string(source), e.what());
  }
}

}  // namespace

TriangleMesh read_stl_ascii(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  TriangleMesh mesh;
  std::map<VertexKey, std::uint32_t> index;
  std::string line;

  if (!reader.next(line) || tokens(line).empty() || tokens(line).front() != "solid") {
    reader.fail("expected 'solid' header (binary STL is not supported)");
  }
  bool closed = false;
  while (reader.next(line)) {
    const auto tok = tokens(line);
    if (tok.front() == "endsolid") {
      closed = true;
      break;
    }
    if (tok.front() != "facet") reader.fail("expected 'facet'");
    if (!reader.next(line) || tokens(line) != std::vector<std::string_view>{"outer", "loop"}) {
      reader.fail("expected 'outer loop'");
    }
    std::array<std::uint32_t, 3> tri{};
    for (auto& slot : tri) {
      if (!reader.next(line)) reader.fail("unexpected end of file");
      const auto vt = tokens(line);
      if (vt.size() != 4 || vt[0] != "vertex") reader.fail("expected 'vertex x y z'");
      const Vec3 v = parse_vec3(reader, vt[1], vt[2], vt[3]);
      const VertexKey key{std::bit_cast<std::uint64_t>(v.x + 0.0),
                          std::bit_cast<std::uint64_t>(v.y + 0.0),
                          std::bit_cast<std::uint64_t>(v.z + 0.0)};
      const auto [it, inserted] =
          index.emplace(key, static_cast<std::uint32_t>(mesh.vertices.size()));
      if (inserted) mesh.vertices.push_back(v);
      slot = it->second;
    }
    if (!reader.next(line) || line != "endloop") reader.fail("expected 'endloop'");
    if (!reader.next(line) || line != "endfacet") reader.fail("expected 'endfacet'");
    mesh.triangles.push_back(tri);
  }
  if (!closed) reader.fail("missing 'endsolid'");
  if (mesh.triangles.empty()) reader.fail("mesh has no facets");
  validate_loaded(mesh, source);
  return mesh;
}

TriangleMesh read_off(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::string line;
  if (!reader.next(line, true) || line != "OFF") reader.fail("expected 'OFF' header");
  if (!reader.next(line, true)) reader.fail("missing element counts");
  const auto counts = tokens(line);
  std::size_t nv = 0;
  std::size_t nf = 0;
  if (counts.size() < 2 || !parse_number(counts[0], nv) || !parse_number(counts[1], nf)) {
    reader.fail("expected '<vertices> <faces> [<edges>]'");
  }

  TriangleMesh mesh;
  mesh.vertices.reserve(nv);
  for (std::size_t i = 0; i < nv; ++i) {
    if (!reader.next(line, true)) reader.fail("unexpected end of file in vertex list");
    const auto t = tokens(line);
    if (t.size() < 3) reader.fail("expected 'x y z'");
    mesh.vertices.push_back(parse_vec3(reader, t[0], t[1], t[2]));
  }
  for (std::size_t f = 0; f < nf; ++f) {
    if (!reader.next(line, true)) reader.fail("unexpected end of file in face list");
    const auto t = tokens(line);
    std::size_t n = 0;
    if (t.empty() || !parse_number(t[0], n) || n < 3 || t.size() < n + 1) {
      reader.fail("expected '<n> i0 ... i(n-1)' with n >= 3");
    }
    std::vector<std::uint32_t> poly(n);
    for (std::size_t k = 0; k < n; ++k) {
      if (!parse_number(t[k + 1], poly[k]) || poly[k] >= nv) {
        reader.fail("vertex index out of range");
      }
    }
    for (std::size_t k = 1; k + 1 < n; ++k) {
      mesh.triangles.push_back({poly[0], poly[k], poly[k + 1]});
    }
  }
  if (mesh.triangles.empty()) reader.fail("mesh has no faces");
  validate_loaded(mesh, source);
  return mesh;
}

std::vector<Vec3> read_patch_csv(std::istream& in, std::string_view source) {
  LineReader reader(in, source);
  std::string line;
  if (!reader.next(line)) reader.fail("empty file");
  std::string header;
  for (char c : line) {
    if (!std::isspace(static_cast<unsigned char>(c))) header.push_back(c);
  }
  if (header != "x,y,z") reader.fail("expected header 'x,y,z'");
  std::vector<Vec3> points;
  while (reader.next(line)) {
    const auto cells = split(line, ',');
    if (cells.size() != 3) reader.fail("expected 3 columns");
    points.push_back(parse_vec3(reader, cells[0], cells[1], cells[2]));
  }
  return points;
}

TriangleMesh load_mesh(const std::filesystem::path& path) {
  const std::string ext = lower(path.extension().string());
  if (ext != ".stl" && ext != ".off") {
    throw ConfigError(path.string(), "unsupported mesh format (use .stl or .off)");
  }
  auto in = open_or_throw(path);
  return ext == ".stl" ? read_stl_ascii(in, path.string()) : read_off(in, path.string());
}

std::vector<Vec3> load_patch(const std::filesystem::path& path) {
  auto in = open_or_throw(path);
  return read_patch_csv(in, path.string());
}

void write_stl_ascii(std::ostream& out, const TriangleMesh& mesh, std::string_view name) {
  char buf[128];
  out << "solid " << name << '\n';
  for (const auto& tri : mesh.triangles) {
    const Vec3& a = mesh.vertices[tri[0]];
    const Vec3& b = mesh.vertices[tri[1]];
    const Vec3& c = mesh.vertices[tri[2]];
    const Vec3 n = (b - a).cross(c - a).normalized();
    std::snprintf(buf, sizeof(buf), "  facet normal %.9g %.9g %.9g\n", n.x, n.y, n.z);
    out << buf << "    outer loop\n";
    for (const Vec3* v : {&a, &b, &c}) {
      std::snprintf(buf, sizeof(buf), "      vertex %.17g %.17g %.17g\n", v->x, v->y, v->z);
      out << buf;
    }
    out << "    endloop\n  endfacet\n";
  }
  out << "endsolid " << name << '\n';
}

void write_off(std::ostream& out, const TriangleMesh& mesh) {
  char buf[128];
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.triangles.size() << " 0\n";
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof(buf), "%.17g %.17g %.17g\n", v.x, v.y, v.z);
    out << buf;
  }
  for (const auto& t : mesh.triangles) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

}  // namespace gds
