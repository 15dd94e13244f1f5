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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "kakeya/io.hpp"
#include "kakeya/random.hpp"

using namespace kakeya;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("kakeya_io_" + name)).string();
}

void write_text(const std::string& path, const std::string& s) { std::ofstream(path) << s; }

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InternalError;
}

}  // namespace

TEST_CASE("point function text round trip") {
  AffineSpace sp(Field::of_order(4), 2);
  Rng rng(1);
  const auto f = random_point_function(sp, rng);
  const auto path = temp_path("f.pf");
  write_point_function(path, f);
  const auto g = read_point_function(path);
  CHECK(g.values() == f.values());
  CHECK(g.space().f().q() == 4);
}

TEST_CASE("point function formats") {
  const auto path = temp_path("ones.pf");
  write_text(path, "# comment\n3 1 2\n0 0 1\n1 2 2.5\n\n");
  const auto f = read_point_function(path);
  CHECK(f[0] == 1.0);
  CHECK(f[5] == 2.5);
  CHECK(f[1] == 0.0);

  const auto jpath = temp_path("f.json");
  write_text(jpath, R"({"p":3,"m":1,"n":2,"entries":[{"x":[1,2],"value":4}]})");
  CHECK(read_point_function(jpath)[5] == 4.0);
  write_text(jpath, R"({"p":2,"n":1,"values":[1,3]})");
  CHECK(read_point_function(jpath).values() == std::vector<double>{1, 3});

  write_text(path, "3 1 2\n0 5 1\n");
  CHECK(code_of([&] { read_point_function(path); }) == ErrorCode::ParseError);
  write_text(path, "3 1\n");
  CHECK(code_of([&] { read_point_function(path); }) == ErrorCode::ParseError);
  write_text(path, "3 1 2\n0 x 1\n");
  CHECK(code_of([&] { read_point_function(path); }) == ErrorCode::ParseError);
  CHECK(code_of([&] { read_point_function(temp_path("missing.pf")); }) == ErrorCode::ParseError);
  write_text(path, "4 1 2\n");
  CHECK(code_of([&] { read_point_function(path); }) == ErrorCode::NonPrime);
}

TEST_CASE("point sets") {
  AffineSpace sp(Field::make(5), 2);
  const PointSet s{0, 3, 17, 24};
  const auto path = temp_path("s.ps");
  write_point_set(path, sp, s);
  const auto back = read_point_set(path);
  CHECK(back.points == s);
  write_text(path, "5 1 2\n0 0 1\n1 1 0\n2 2\n");
  CHECK(read_point_set(path).points == PointSet{0, 12});
  const auto jpath = temp_path("s.json");
  write_text(jpath, R"({"p":5,"n":2,"points":[[1,1],[0,0]]})");
  CHECK(read_point_set(jpath).points == PointSet{0, 6});
}

TEST_CASE("atomic writes and hashing") {
  const auto path = temp_path("atomic.txt");
  write_atomic(path, "first");
  write_atomic(path, "second");
  std::ifstream in(path);
  std::string s;
  in >> s;
  CHECK(s == "second");
  CHECK_FALSE(std::filesystem::exists(path + ".tmp"));
  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(hex64(255) == "00000000000000ff");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3)) == 1.0 / 3);
}
