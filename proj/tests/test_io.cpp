// Copyright 2026 The convexlab Authors.
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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "convexlab/generators.hpp"
#include "convexlab/io.hpp"
#include "convexlab/moments.hpp"
#include "convexlab/sampling.hpp"

using namespace convexlab;

namespace {

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  for (std::string l; std::getline(is, l);) out.push_back(l);
  return out;
}

std::filesystem::path scratch(const char* name) { return std::filesystem::temp_directory_path() / name; }

}  // namespace

TEST_CASE("body round trip") {
  const std::vector<Body> bodies{Body(random_symmetric_polytope(3, 12, 5)), Body(polar(cube(2))),
                                 Body(random_ellipsoid(4, 2))};
  for (const auto& k : bodies) {
    const Json j = body_to_json(k, make_meta({{"kind", "test"}}, 9));
    const Body back = body_from_json(Json::parse(dump(j)));
    CHECK(back.index() == k.index());
    CHECK(volume(back) == doctest::Approx(volume(k)).epsilon(1e-14));
    CHECK(dump(body_to_json(back, j["meta"])) == dump(j));
    CHECK(j["meta"]["version"] == kVersion);
    CHECK(j["meta"]["seed"] == 9);
  }
  const Json c = body_to_json(cube(2));
  CHECK(c["kind"] == "v-polytope");
  CHECK(c["vertices"].size() == 4);
  CHECK(!c.contains("meta"));
}

TEST_CASE("body schema errors") {
  Json j = body_to_json(cube(2));
  Json two = j;
  two["shape"] = matrix_json(MatrixXd::Identity(2, 2));
  CHECK_THROWS_AS(body_from_json(two), IoError);
  Json none = j;
  none.erase("vertices");
  CHECK_THROWS_AS(body_from_json(none), IoError);
  Json bad_dim = j;
  bad_dim["dim"] = 3;
  CHECK_THROWS_AS(body_from_json(bad_dim), IoError);
  Json kind = j;
  kind["kind"] = "zonotope";
  CHECK_THROWS_AS(body_from_json(kind), IoError);
  Json asym = j;
  asym["vertices"] = Json::array({{1, 0}, {0, 1}, {-1, 0}});
  CHECK_THROWS_AS(body_from_json(asym), IoError);
  Json ragged = j;
  ragged["vertices"][1] = Json::array({1});
  CHECK_THROWS_AS(body_from_json(ragged), IoError);
  CHECK_THROWS_AS(body_from_json(Json::parse(R"({"dim": 2, "kind": "ellipsoid", "shape": [[1, 0], [0, -1]]})")),
                  IoError);
}

TEST_CASE("moment matrix json") {
  const MomentMatrix exact = second_moment_matrix(Body(cube(2)));
  const Json e = moment_to_json(exact);
  CHECK(e["stderr"].is_null());
  CHECK(e["samples"].is_null());
  CHECK(e["seed"].is_null());
  CHECK(e["volume"] == 4.0);
  const MomentMatrix mc = mc_second_moment(Body(cube(2)), 10'000, 3);
  const Json m = moment_to_json(mc);
  CHECK(m["samples"] == 10'000);
  CHECK(m["seed"] == 3);
  const MomentMatrix back = moment_from_json(m);
  CHECK(back.matrix == mc.matrix);
  CHECK(*back.stderr_matrix == *mc.stderr_matrix);
}

TEST_CASE("partition round trip") {
  const Body k = random_symmetric_polytope(2, 10, 3);
  const VectorXd u = VectorXd::Unit(2, 0);
  const YaoYaoPartition p = yao_yao_equipartition(sample_measure(k, u, 20'000, 1), u);
  const Json j = partition_to_json(p);
  CHECK(j["cones"].size() == 4);
  const YaoYaoPartition q = partition_from_json(Json::parse(dump(j)));
  CHECK(dump(partition_to_json(q)) == dump(j));
  Json short_j = j;
  short_j["masses"].erase(0);
  CHECK_THROWS_AS(partition_from_json(short_j), IoError);
}

TEST_CASE("report csv and json lines") {
  DeficitReport r = make_report("ball", 1.0 / 3, 0.5, 1e-8, Method::exact);
  r.seed = 17;
  const Json meta = make_meta({{"command", "verify"}}, 17);
  const auto csv = lines(reports_csv({r, r}, meta));
  REQUIRE(csv.size() == 4);
  CHECK(csv[0].rfind("# {", 0) == 0);
  CHECK(csv[1] == kReportCsvHeader);
  CHECK(csv[2] == "ball,0.3333333333,0.5,0.1666666667,1e-08,exact,17");
  const auto jl = lines(reports_jsonl({r}, meta));
  REQUIRE(jl.size() == 2);
  CHECK(Json::parse(jl[0])["meta"]["seed"] == 17);
  const Json rec = Json::parse(jl[1]);
  CHECK(rec["deficit"].get<double>() == r.deficit);
  CHECK(rec["passed"] == true);
  CHECK(rec["relation"] == "le");
}

TEST_CASE("stability csv") {
  StabilityRecord s;
  s.t = 0.002;
  s.vol_k = 3.14159265358979;
  s.samples = 1000;
  s.seed = 4;
  const auto csv = lines(stability_csv({s}, make_meta(nullptr, 4)));
  REQUIRE(csv.size() == 3);
  CHECK(csv[1] == kStabilityCsvHeader);
  CHECK(csv[2] == "0.002,3.141592654,0,0,0,0,0,1000,4");
  CHECK(format_number(123456789012.0) == "1.23456789e+11");
}

TEST_CASE("file io") {
  const auto path = scratch("convexlab_io_test.json").string();
  const Json j = body_to_json(cross_polytope(3));
  write_json(path, j);
  CHECK(read_json(path) == j);
  write_text(path, "{not json");
  CHECK_THROWS_AS(read_json(path), IoError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_json(path), IoError);
  CHECK_THROWS_AS(write_text("/nonexistent-dir/x.json", "x"), IoError);
}
