/*
 * Copyright 2026 The kakeya-lab Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "kakeya/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace kakeya {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool is_json_path(const std::string& path) {
  return std::filesystem::path(path).extension() == ".json";
}

Elem to_elem(double v, const Field& F, const std::string& where) {
  require(v >= 0 && v == std::floor(v) && F.contains(static_cast<std::uint64_t>(v)), ErrorCode::ParseError,
          where + ": coordinate " + format_double(v) + " is not a field element");
  return static_cast<Elem>(v);
}

nlohmann::json read_json(const std::string& path) {
  try {
    return nlohmann::json::parse(slurp(path));
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

AffineSpace space_from_json(const nlohmann::json& j, const Caps& caps, const std::string& path) {
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const auto m = j.value("m", 1u);
    const auto n = j.at("n").get<std::size_t>();
    return AffineSpace(Field::make(p, m), n, caps.enumeration);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

}  // namespace

TableFile read_table(const std::string& path) {
  std::istringstream in(slurp(path));
  TableFile t;
  std::string line;
  bool header = false;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    const std::string where = path + ":" + std::to_string(lineno);
    if (!header) {
      long long p = 0, m = 0, n = 0;
      require(static_cast<bool>(ls >> p >> m >> n) && p > 0 && m > 0 && n > 0, ErrorCode::ParseError,
              where + ": expected header \"p m n\"");
      t.p = static_cast<std::uint32_t>(p);
      t.m = static_cast<std::uint32_t>(m);
      t.n = static_cast<std::size_t>(n);
      header = true;
      continue;
    }
    std::vector<double> row;
    std::string tok;
    while (ls >> tok) {
      double v = 0;
      const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      require(res.ec == std::errc() && res.ptr == tok.data() + tok.size() && std::isfinite(v),
              ErrorCode::ParseError, where + ": bad number '" + tok + "'");
      row.push_back(v);
    }
    require(row.size() == t.n || row.size() == t.n + 1, ErrorCode::ParseError,
            where + ": expected " + std::to_string(t.n) + " coordinates and an optional value");
    t.rows.push_back(std::move(row));
  }
  require(header, ErrorCode::ParseError, path + ": missing header");
  return t;
}

PointFunction read_point_function(const std::string& path, const Caps& caps) {
  if (is_json_path(path)) {
    const auto j = read_json(path);
    const AffineSpace space = space_from_json(j, caps, path);
    try {
      if (j.contains("values")) {
        auto v = j.at("values").get<std::vector<double>>();
        require(v.size() == space.size(), ErrorCode::ParseError, path + ": dense values have the wrong length");
        return PointFunction(space, std::move(v));
      }
      PointFunction f(space);
      for (const auto& e : j.at("entries")) {
        const auto x = e.at("x").get<std::vector<double>>();
        require(x.size() == space.dim(), ErrorCode::ParseError, path + ": entry has wrong dimension");
        Point pt;
        for (double c : x) pt.push_back(to_elem(c, space.f(), path));
        f.set(space.encode(pt), e.at("value").get<double>());
      }
      return f;
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::ParseError, path + ": " + e.what());
    }
  }
  const TableFile t = read_table(path);
  const AffineSpace space(Field::make(t.p, t.m), t.n, caps.enumeration);
  PointFunction f(space);
  for (const auto& row : t.rows) {
    require(row.size() == t.n + 1, ErrorCode::ParseError, path + ": point-function rows need a value");
    Point pt;
    for (std::size_t i = 0; i < t.n; ++i) pt.push_back(to_elem(row[i], space.f(), path));
    f.set(space.encode(pt), row[t.n]);
  }
  return f;
}

PointSetFile read_point_set(const std::string& path, const Caps& caps) {
  if (is_json_path(path)) {
    const auto j = read_json(path);
    PointSetFile out{space_from_json(j, caps, path), {}};
    try {
      std::vector<PointIndex> pts;
      for (const auto& x : j.at("points")) {
        const auto c = x.get<std::vector<double>>();
        require(c.size() == out.space.dim(), ErrorCode::ParseError, path + ": point has wrong dimension");
        Point pt;
        for (double v : c) pt.push_back(to_elem(v, out.space.f(), path));
        pts.push_back(out.space.encode(pt));
      }
      out.points = make_point_set(std::move(pts));
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorCode::ParseError, path + ": " + e.what());
    }
    return out;
  }
  const TableFile t = read_table(path);
  PointSetFile out{AffineSpace(Field::make(t.p, t.m), t.n, caps.enumeration), {}};
  std::vector<PointIndex> pts;
  for (const auto& row : t.rows) {
    if (row.size() == t.n + 1 && row[t.n] == 0) continue;
    Point pt;
    for (std::size_t i = 0; i < t.n; ++i) pt.push_back(to_elem(row[i], out.space.f(), path));
    pts.push_back(out.space.encode(pt));
  }
  out.points = make_point_set(std::move(pts));
  return out;
}

void write_point_function(const std::string& path, const PointFunction& f) {
  const AffineSpace& s = f.space();
  std::string out = std::to_string(s.f().p()) + " " + std::to_string(s.f().m()) + " " + std::to_string(s.dim()) + "\n";
  for (PointIndex i = 0; i < s.size(); ++i) {
    if (f[i] == 0) continue;
    for (Elem c : s.decode(i)) out += std::to_string(c) + " ";
    out += format_double(f[i]) + "\n";
  }
  write_atomic(path, out);
}

void write_point_set(const std::string& path, const AffineSpace& space, const PointSet& set) {
  std::string out = std::to_string(space.f().p()) + " " + std::to_string(space.f().m()) + " " +
                    std::to_string(space.dim()) + "\n";
  for (PointIndex i : set) {
    const auto x = space.decode(i);
    for (std::size_t k = 0; k < x.size(); ++k) out += (k ? " " : "") + std::to_string(x[k]);
    out += "\n";
  }
  write_atomic(path, out);
}

void write_atomic(const std::string& path, std::string_view content) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    require(static_cast<bool>(out), ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    require(static_cast<bool>(out), ErrorCode::InvalidArgument, "short write to " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    fail(ErrorCode::InvalidArgument, "cannot rename onto " + path + ": " + ec.message());
  }
}

std::uint64_t fnv1a(std::string_view data) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace kakeya
