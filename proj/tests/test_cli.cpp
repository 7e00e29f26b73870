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

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "convexlab/io.hpp"

using namespace convexlab;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "convexlab_cli_test";
  fs::create_directories(dir);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("gen writes valid, reproducible body files") {
  const std::string a = tmp("rs_a.json"), b = tmp("rs_b.json");
  for (const auto& p : {a, b})
    REQUIRE(run({"gen", "random-symmetric", "--dim", "3", "--verts", "20", "--seed", "7", "--out", p}).code == 0);
  CHECK(read_text(a) == read_text(b));
  const Json j = read_json(a);
  CHECK(j["meta"]["seed"] == 7);
  CHECK(j["meta"]["config"]["verts"] == 20);
  CHECK(j["meta"]["version"] == kVersion);
  CHECK(dim(body_from_json(j)) == 3);

  const Run cube = run({"gen", "cube", "--dim", "2"});
  REQUIRE(cube.code == 0);
  CHECK(volume(body_from_json(Json::parse(cube.out))) == doctest::Approx(4));
  for (const char* kind : {"cross", "ball-approx", "ellipsoid"}) CHECK(run({"gen", kind, "--dim", "3"}).code == 0);
  const Run kt = run({"gen", "kt", "--dim", "2", "--t", "0.002"});
  REQUIRE(kt.code == 0);
  CHECK(volume(body_from_json(Json::parse(kt.out))) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("usage errors exit 1") {
  CHECK(run({}).code == 1);
  CHECK(run({"gen", "dodecahedron"}).code == 1);
  CHECK(run({"gen", "cube", "--dim", "5"}).code == 1);
  CHECK(run({"gen", "kt", "--dim", "2", "--t", "0.05"}).code == 1);
  CHECK(run({"verify", tmp("missing.json")}).code == 1);
  CHECK(run({"--help"}).code == 0);
  const std::string c = tmp("c2.json");
  REQUIRE(run({"gen", "cube", "--out", c}).code == 0);
  CHECK(run({"verify", c, "--which", "everything"}).code == 1);
  CHECK(run({"verify", c, "--which", "directional", "--direction", "1,2,3"}).code == 1);
  CHECK(run({"verify", c, "--which", "directional", "--direction", "0,0"}).code == 1);
  CHECK(run({"verify", c, "--which", "directional", "--direction", "1,x"}).code == 1);
  CHECK(run({"stability", "kt-sweep", "--t", "0.001:0.002"}).code == 1);
  CHECK(run({"stability", "kt-sweep", "--t", "0.02:0.1:9", "--samples", "20000"}).code == 1);
  CHECK(run({"stability", "kt-sweep", "--dim", "3", "--t", "0.001:0.002:2"}).code == 1);
}

TEST_CASE("seed from the environment") {
  setenv("CONVEXLAB_SEED", "11", 1);
  const Run a = run({"gen", "ellipsoid", "--dim", "2"});
  unsetenv("CONVEXLAB_SEED");
  const Run b = run({"gen", "ellipsoid", "--dim", "2", "--seed", "11"});
  CHECK(a.out == b.out);
  CHECK(Json::parse(a.out)["meta"]["seed"] == 11);
  setenv("CONVEXLAB_SEED", "eleven", 1);
  CHECK(run({"gen", "cube"}).code == 1);
  unsetenv("CONVEXLAB_SEED");
}

TEST_CASE("verify all on the square") {
  const std::string c = tmp("sq.json"), prefix = tmp("sq_report");
  REQUIRE(run({"gen", "cube", "--dim", "2", "--out", c}).code == 0);
  const Run v = run({"verify", c, "--which", "all", "--samples", "100000", "--out", prefix});
  CHECK(v.code == 0);
  const std::string csv = read_text(prefix + ".csv");
  CHECK(csv.find("\nname,lhs,rhs,deficit,tolerance,method,seed\n") != std::string::npos);
  CHECK(csv.find("\nsantalo,8,9.869604401,1.869604401,1e-08,exact,") != std::string::npos);
  CHECK(csv.find("\nball,0.8888888889,1.23370055,0.3448116612,") != std::string::npos);
  for (const char* name : {"directional", "cone_0", "cone_3", "decomposition", "pl_0", "pl_1"})
    CHECK(csv.find(std::string("\n") + name + ",") != std::string::npos);
  std::istringstream jl(read_text(prefix + ".jsonl"));
  std::string line;
  std::getline(jl, line);
  CHECK(Json::parse(line)["meta"]["config"]["samples"] == 100000);
  while (std::getline(jl, line)) CHECK(Json::parse(line)["passed"] == true);

  const Run again = run({"verify", c, "--which", "all", "--samples", "100000", "--out", prefix + "2"});
  CHECK(read_text(prefix + ".csv") == read_text(prefix + "2.csv"));
  CHECK(read_text(prefix + ".jsonl") == read_text(prefix + "2.jsonl"));
}

TEST_CASE("verify ball on an ellipsoid") {
  const std::string e = tmp("ell.json");
  REQUIRE(run({"gen", "ellipsoid", "--dim", "3", "--seed", "5", "--out", e}).code == 0);
  const Run v = run({"verify", e, "--which", "ball"});
  CHECK(v.code == 0);
  std::istringstream jl(v.out);
  std::string line;
  std::getline(jl, line);
  std::getline(jl, line);
  const Json r = Json::parse(line);
  CHECK(std::abs(r["deficit"].get<double>()) < 1e-8);
  CHECK(run({"verify", e, "--which", "pl", "--samples", "20000"}).code == 0);
}

TEST_CASE("compute") {
  const std::string c = tmp("cc.json"), p = tmp("cc_polar.json"), iso = tmp("cc_iso.json");
  REQUIRE(run({"gen", "random-symmetric", "--dim", "2", "--verts", "10", "--seed", "3", "--out", c}).code == 0);
  CHECK(run({"compute", c, "--what", "polar", "--out", p}).code == 0);
  const Body k = body_from_json(read_json(c));
  CHECK(volume(body_from_json(read_json(p))) == doctest::Approx(volume(polar(k))).epsilon(1e-12));
  const Run m = run({"compute", c, "--what", "moments"});
  REQUIRE(m.code == 0);
  const MomentMatrix mm = moment_from_json(Json::parse(m.out)["moment"]);
  CHECK(mm.volume == doctest::Approx(volume(k)).epsilon(1e-12));
  const Run mc = run({"compute", c, "--what", "moments", "--samples", "50000", "--seed", "4"});
  CHECK(Json::parse(mc.out)["moment"]["seed"] == 4);
  CHECK(run({"compute", c, "--what", "isotropic", "--target", "polar", "--out", iso}).code == 0);
  const Json cert = read_json(iso + ".cert.json");
  CHECK(cert["certificate"]["off_diag_rel"].get<double>() < 1e-9);
  CHECK(cert["certificate"]["target"] == "polar");
  CHECK(run({"compute", c, "--what", "volume"}).code == 0);
  CHECK(run({"compute", c, "--what", "isotropic", "--target", "other"}).code == 1);
}

TEST_CASE("yaoyao") {
  const std::string c = tmp("yy.json"), out = tmp("yy_part.json");
  REQUIRE(run({"gen", "random-symmetric", "--dim", "2", "--verts", "12", "--seed", "8", "--out", c}).code == 0);
  CHECK(run({"yaoyao", c, "--direction", "1,1", "--samples", "100000", "--out", out}).code == 0);
  const YaoYaoPartition p = partition_from_json(read_json(out));
  CHECK(p.cones.size() == 4);
  CHECK(p.residual <= p.mass_tol);
  const Json rep = read_json(out + ".report.json");
  CHECK(rep["dual_cover"]["passed"] == true);
  CHECK(rep["primal_cover"]["uncovered"] == 0);
}

TEST_CASE("kt sweep csv") {
  const std::string a = tmp("sw_a.csv"), b = tmp("sw_b.csv");
  for (const auto& p : {a, b})
    REQUIRE(run({"stability", "kt-sweep", "--dim", "2", "--t", "0.001:0.002:2", "--samples", "50000", "--seed", "3",
                 "--out", p})
                .code == 0);
  const std::string csv = read_text(a);
  CHECK(csv == read_text(b));
  std::istringstream is(csv);
  std::string line;
  std::getline(is, line);
  CHECK(line.rfind("# ", 0) == 0);
  std::getline(is, line);
  CHECK(line == kStabilityCsvHeader);
  std::getline(is, line);
  CHECK(line.rfind("0.001,3.141592654,", 0) == 0);
  CHECK(line.substr(line.size() - 8) == ",50000,3");
}
