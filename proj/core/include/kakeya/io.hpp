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

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kakeya/maximal.hpp"
#include "kakeya/space.hpp"

namespace kakeya {

inline constexpr std::string_view kVersion = "0.1.0";

/// First line "p m n"; each further line holds integers and an optional
/// trailing value. Blank lines and lines starting with '#' are skipped.
struct TableFile {
  std::uint32_t p = 0;
  std::uint32_t m = 1;
  std::size_t n = 0;
  std::vector<std::vector<double>> rows;
};
TableFile read_table(const std::string& path);

/// Rows "x1 ... xn value" (coordinates are packed field elements); unlisted
/// points are 0. A ".json" path is read as {"p", "m", "n", "entries":
/// [{"x": [...], "value": v}, ...]} or with a dense "values" array instead.
PointFunction read_point_function(const std::string& path, const Caps& caps = {});
/// Rows "x1 ... xn" or "x1 ... xn value"; a row belongs to the set unless its
/// value is 0. JSON uses "points": [[x1, ..., xn], ...].
struct PointSetFile {
  AffineSpace space;
  PointSet points;
};
PointSetFile read_point_set(const std::string& path, const Caps& caps = {});

void write_point_function(const std::string& path, const PointFunction& f);
void write_point_set(const std::string& path, const AffineSpace& space, const PointSet& set);

/// Writes to a sibling temporary file and renames it over the target.
void write_atomic(const std::string& path, std::string_view content);

std::uint64_t fnv1a(std::string_view data) noexcept;
std::string hex64(std::uint64_t v);
/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

}  // namespace kakeya
