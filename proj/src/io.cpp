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

#include "convexlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace convexlab {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw IoError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw IoError(std::string(what) + " must be a number");
  return j.get<double>();
}

const char* normalization_name(Normalization n) { return n == Normalization::none ? "none" : "volume"; }
const char* target_name(IsotropicTarget t) { return t == IsotropicTarget::self ? "self" : "polar"; }

}  // namespace

Json make_meta(const Json& config, std::uint64_t seed) {
  Json m;
  m["version"] = kVersion;
  m["config"] = config;
  m["seed"] = seed;
  return m;
}

Json vector_json(const VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

Json matrix_json(const MatrixXd& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(vector_json(VectorXd(m.row(i).transpose())));
  return a;
}

VectorXd vector_from_json(const Json& j) {
  if (!j.is_array()) throw IoError("expected an array of numbers");
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = number(j[i], "array entry");
  return v;
}

MatrixXd matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw IoError("expected a non-empty array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  if (cols == 0) throw IoError("matrix rows must be non-empty arrays");
  MatrixXd m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < j.size(); ++i) {
    const VectorXd r = vector_from_json(j[i]);
    if (static_cast<std::size_t>(r.size()) != cols) throw IoError("ragged matrix rows");
    m.row(static_cast<Eigen::Index>(i)) = r.transpose();
  }
  return m;
}

Json body_to_json(const Body& k, const Json& meta) {
  Json j;
  j["dim"] = dim(k);
  if (const auto* v = std::get_if<VPolytope>(&k)) {
    j["kind"] = "v-polytope";
    j["vertices"] = matrix_json(MatrixXd(v->vertices().transpose()));
  } else if (const auto* h = std::get_if<HPolytope>(&k)) {
    j["kind"] = "h-polytope";
    j["normals"] = matrix_json(h->normals());
    j["offsets"] = vector_json(h->offsets());
  } else {
    j["kind"] = "ellipsoid";
    j["shape"] = matrix_json(std::get<EllipsoidD>(k).shape());
  }
  if (!meta.is_null()) j["meta"] = meta;
  return j;
}

Body body_from_json(const Json& j) {
  const Json& d = field(j, "dim");
  if (!d.is_number_integer()) throw IoError("dim must be an integer");
  const int n = d.get<int>();
  const Json& kind_j = field(j, "kind");
  if (!kind_j.is_string()) throw IoError("kind must be a string");
  const std::string kind = kind_j.get<std::string>();
  int payloads = 0;
  for (const char* key : {"vertices", "normals", "shape"}) payloads += j.contains(key);
  if (j.contains("offsets") && !j.contains("normals")) throw IoError("offsets without normals");
  if (payloads != 1) throw IoError("body file must carry exactly one payload");
  try {
    if (kind == "v-polytope") {
      const MatrixXd v = matrix_from_json(field(j, "vertices"));
      if (v.cols() != n) throw IoError("vertex length differs from dim");
      return VPolytope(MatrixXd(v.transpose()));
    }
    if (kind == "h-polytope") {
      const MatrixXd a = matrix_from_json(field(j, "normals"));
      const VectorXd b = vector_from_json(field(j, "offsets"));
      if (a.cols() != n) throw IoError("normal length differs from dim");
      return HPolytope(a, b);
    }
    if (kind == "ellipsoid") {
      const MatrixXd q = matrix_from_json(field(j, "shape"));
      if (q.rows() != n || q.cols() != n) throw IoError("shape must be dim x dim");
      return EllipsoidD(q);
    }
  } catch (const GeometryError& e) {
    throw IoError(std::string("invalid body: ") + e.what());
  }
  throw IoError("unknown body kind \"" + kind + "\"");
}

Json moment_to_json(const MomentMatrix& m) {
  Json j;
  j["volume"] = m.volume;
  j["matrix"] = matrix_json(m.matrix);
  j["stderr"] = m.stderr_matrix ? matrix_json(*m.stderr_matrix) : Json(nullptr);
  j["samples"] = m.samples ? Json(*m.samples) : Json(nullptr);
  j["seed"] = m.seed ? Json(*m.seed) : Json(nullptr);
  return j;
}

MomentMatrix moment_from_json(const Json& j) {
  MomentMatrix m;
  m.volume = number(field(j, "volume"), "volume");
  m.matrix = matrix_from_json(field(j, "matrix"));
  if (m.matrix.rows() != m.matrix.cols()) throw IoError("moment matrix must be square");
  if (j.contains("stderr") && !j["stderr"].is_null()) m.stderr_matrix = matrix_from_json(j["stderr"]);
  if (j.contains("samples") && !j["samples"].is_null()) m.samples = j["samples"].get<std::int64_t>();
  if (j.contains("seed") && !j["seed"].is_null()) m.seed = j["seed"].get<std::uint64_t>();
  return m;
}

Json certificate_to_json(const IsotropicCertificate& c) {
  Json j;
  j["map"] = matrix_json(c.map.matrix());
  j["target"] = target_name(c.target);
  j["normalization"] = normalization_name(c.normalization);
  j["off_diag_rel"] = c.off_diag_rel;
  j["diag_spread_rel"] = c.diag_spread_rel;
  j["volume_after"] = c.volume_after;
  return j;
}

Json partition_to_json(const YaoYaoPartition& p) {
  Json j;
  j["u"] = vector_json(p.u);
  j["v"] = vector_json(p.v);
  Json cones = Json::array();
  for (const auto& c : p.cones) cones.push_back(Json{{"generators", matrix_json(MatrixXd(c.generators().transpose()))}});
  j["cones"] = cones;
  j["masses"] = vector_json(p.masses);
  j["total"] = p.total;
  j["mass_tol"] = p.mass_tol;
  j["center"] = vector_json(p.center);
  j["iterations"] = p.iterations;
  j["residual"] = p.residual;
  return j;
}

YaoYaoPartition partition_from_json(const Json& j) {
  YaoYaoPartition p;
  p.u = vector_from_json(field(j, "u"));
  p.v = vector_from_json(field(j, "v"));
  const Json& cones = field(j, "cones");
  if (!cones.is_array()) throw IoError("cones must be an array");
  try {
    for (const auto& c : cones) p.cones.emplace_back(MatrixXd(matrix_from_json(field(c, "generators")).transpose()));
  } catch (const GeometryError& e) {
    throw IoError(std::string("invalid cone: ") + e.what());
  }
  p.masses = vector_from_json(field(j, "masses"));
  p.total = number(field(j, "total"), "total");
  p.mass_tol = number(field(j, "mass_tol"), "mass_tol");
  p.center = j.contains("center") ? vector_from_json(j["center"]) : VectorXd::Zero(p.u.size());
  if (j.contains("iterations")) p.iterations = j["iterations"].get<int>();
  if (j.contains("residual")) p.residual = number(j["residual"], "residual");
  const std::size_t expect = std::size_t{1} << p.u.size();
  if (p.cones.size() != expect || static_cast<std::size_t>(p.masses.size()) != expect)
    throw IoError("partition needs 2^n cones and masses");
  return p;
}

Json report_to_json(const DeficitReport& r) {
  Json j;
  j["name"] = r.name;
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  j["deficit"] = r.deficit;
  j["tolerance"] = r.tolerance;
  j["method"] = method_name(r.method);
  j["relation"] = relation_name(r.relation);
  j["seed"] = r.seed;
  j["samples"] = r.samples;
  j["passed"] = r.passed();
  return j;
}

std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string reports_csv(const std::vector<DeficitReport>& reports, const Json& meta) {
  std::ostringstream os;
  os << "# " << meta.dump() << '\n' << kReportCsvHeader << '\n';
  for (const auto& r : reports)
    os << r.name << ',' << format_number(r.lhs) << ',' << format_number(r.rhs) << ',' << format_number(r.deficit)
       << ',' << format_number(r.tolerance) << ',' << method_name(r.method) << ',' << r.seed << '\n';
  return os.str();
}

std::string reports_jsonl(const std::vector<DeficitReport>& reports, const Json& meta) {
  std::ostringstream os;
  os << Json{{"meta", meta}}.dump() << '\n';
  for (const auto& r : reports) os << report_to_json(r).dump() << '\n';
  return os.str();
}

std::string stability_csv(const std::vector<StabilityRecord>& records, const Json& meta) {
  std::ostringstream os;
  os << "# " << meta.dump() << '\n' << kStabilityCsvHeader << '\n';
  for (const auto& r : records)
    os << format_number(r.t) << ',' << format_number(r.vol_k) << ',' << format_number(r.vol_polar) << ','
       << format_number(r.deficit_santalo) << ',' << format_number(r.deficit_ball) << ','
       << format_number(r.a_dist) << ',' << format_number(r.ratio) << ',' << r.samples << ',' << r.seed << '\n';
  return os.str();
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json read_json(const std::string& path) {
  try {
    return Json::parse(read_text(path));
  } catch (const Json::parse_error& e) {
    throw IoError(path + ": " + e.what());
  }
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  if (!out) throw IoError("write failed for " + path);
}

}  // namespace convexlab
