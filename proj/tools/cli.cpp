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

#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "convexlab/generators.hpp"
#include "convexlab/inequalities.hpp"
#include "convexlab/io.hpp"
#include "convexlab/isotropic.hpp"
#include "convexlab/moments.hpp"
#include "convexlab/sampling.hpp"
#include "convexlab/stability.hpp"
#include "convexlab/yaoyao.hpp"

namespace convexlab::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 1;
constexpr std::int64_t kDefaultVerifySamples = 200'000;
constexpr std::int64_t kDefaultSweepSamples = 1'000'000;
constexpr std::int64_t kCoverDirections = 100'000;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int dim = 2;
  std::uint64_t seed = kDefaultSeed;
  std::int64_t samples = -1;
  double tol = kExactTolerance;
  double mass_tol = kDefaultMassTol;
  std::string out;
  int workers = 1;
  std::string direction;

  std::string kind;
  int verts = 20;
  double t = 0;
  int grid = 0;

  std::string body;
  std::string what = "moments";
  std::string target = "polar";
  std::string normalize = "none";
  std::string cert;

  std::string which = "all";
  std::string t_range;
};

std::uint64_t env_seed() {
  const char* s = std::getenv("CONVEXLAB_SEED");
  if (!s || !*s) return kDefaultSeed;
  try {
    std::size_t pos = 0;
    const unsigned long long v = std::stoull(s, &pos);
    if (pos != std::string(s).size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("CONVEXLAB_SEED is not an unsigned integer: ") + s);
  }
}

std::vector<double> parse_reals(const std::string& text, char sep) {
  std::vector<double> v;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) {
    try {
      std::size_t pos = 0;
      v.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("not a number: \"" + item + "\"");
    }
  }
  return v;
}

VectorXd parse_direction(const std::string& text, int n) {
  const std::vector<double> v = parse_reals(text, ',');
  if (static_cast<int>(v.size()) != n)
    throw UsageError("--direction needs " + std::to_string(n) + " components, got " + std::to_string(v.size()));
  VectorXd u = Eigen::Map<const VectorXd>(v.data(), n);
  if (!u.allFinite() || !(u.norm() > 0)) throw UsageError("--direction must be a finite nonzero vector");
  return u.normalized();
}

VectorXd direction_or_random(const Options& o, int n) {
  return o.direction.empty() ? random_direction(n, o.seed) : parse_direction(o.direction, n);
}

std::vector<double> parse_t_range(const std::string& text) {
  const std::vector<double> p = parse_reals(text, ':');
  if (p.size() != 3) throw UsageError("--t expects a:b:k");
  const double k = p[2];
  if (!(k >= 1) || k != std::floor(k) || k > 1000) throw UsageError("--t count k must be an integer in [1, 1000]");
  std::vector<double> ts;
  const int m = static_cast<int>(k);
  for (int i = 0; i < m; ++i) ts.push_back(m == 1 ? p[0] : p[0] + (p[1] - p[0]) * i / (m - 1));
  return ts;
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty())
    out << text;
  else
    write_text(path, text);
}

Json base_config(const char* command, const Options& o) {
  Json c;
  c["command"] = command;
  c["seed"] = o.seed;
  c["workers"] = o.workers;
  return c;
}

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

int cmd_gen(const Options& o, std::ostream& out) {
  Json cfg = base_config("gen", o);
  cfg["kind"] = o.kind;
  cfg["dim"] = o.dim;
  const int n = o.dim;
  auto body = [&]() -> Body {
    if (o.kind == "cube") return cube(n);
    if (o.kind == "cross") return cross_polytope(n);
    if (o.kind == "ellipsoid") return random_ellipsoid(n, o.seed);
    if (o.kind == "random-symmetric" || o.kind == "ball-approx") {
      cfg["verts"] = o.verts;
      return o.kind == "ball-approx" ? ball_approx(n, o.verts, o.seed) : random_symmetric_polytope(n, o.verts, o.seed);
    }
    if (o.kind == "kt") {
      const int grid = o.grid > 0 ? o.grid : kt_default_grid(n);
      cfg["t"] = o.t;
      cfg["grid"] = grid;
      return kt_family(n, o.t, grid);
    }
    throw UsageError("unknown body kind \"" + o.kind + "\"");
  }();
  emit(o.out, dump(body_to_json(body, make_meta(cfg, o.seed))), out);
  return kOk;
}

int cmd_compute(const Options& o, std::ostream& out) {
  const Body k = body_from_json(read_json(o.body));
  Json cfg = base_config("compute", o);
  cfg["body"] = o.body;
  cfg["what"] = o.what;
  if (o.what == "moments") {
    cfg["samples"] = std::max<std::int64_t>(o.samples, 0);
    const MomentMatrix m =
        o.samples > 0 ? mc_second_moment(k, o.samples, o.seed, o.workers) : second_moment_matrix(k);
    Json j;
    j["meta"] = make_meta(cfg, o.seed);
    j["moment"] = moment_to_json(m);
    emit(o.out, dump(j), out);
    return kOk;
  }
  if (o.what == "volume") {
    Json j;
    j["meta"] = make_meta(cfg, o.seed);
    j["volume"] = volume(k);
    j["polar_volume"] = volume(polar(k));
    j["santalo_product"] = volume(k) * volume(polar(k));
    j["inradius"] = inradius(k);
    j["circumradius"] = circumradius(k);
    emit(o.out, dump(j), out);
    return kOk;
  }
  if (o.what == "polar") {
    emit(o.out, dump(body_to_json(polar(k), make_meta(cfg, o.seed))), out);
    return kOk;
  }
  if (o.what == "isotropic") {
    if (o.target != "self" && o.target != "polar") throw UsageError("--target must be self or polar");
    if (o.normalize != "none" && o.normalize != "volume") throw UsageError("--normalize must be none or volume");
    cfg["target"] = o.target;
    cfg["normalize"] = o.normalize;
    const IsotropicResult r =
        isotropize(k, o.normalize == "none" ? Normalization::none : Normalization::volume,
                   o.target == "self" ? IsotropicTarget::self : IsotropicTarget::polar);
    const Json meta = make_meta(cfg, o.seed);
    Json cert;
    cert["meta"] = meta;
    cert["certificate"] = certificate_to_json(r.certificate);
    emit(o.out, dump(body_to_json(r.body, meta)), out);
    const std::string cert_path = !o.cert.empty() ? o.cert : (o.out.empty() ? "" : o.out + ".cert.json");
    emit(cert_path, dump(cert), out);
    return kOk;
  }
  throw UsageError("unknown --what \"" + o.what + "\"");
}

/// Rotation into principal axes, so orthant moments of an ellipsoid are exact.
Body principal_axes(const Body& k) {
  const auto* e = std::get_if<EllipsoidD>(&k);
  if (!e) return k;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(e->shape());
  return apply_map(Map(es.eigenvectors().transpose()), k);
}

int cmd_verify(const Options& o, std::ostream& out) {
  static const std::vector<std::string> kinds{"santalo", "ball", "directional", "cones", "pl"};
  if (o.which != "all" && std::find(kinds.begin(), kinds.end(), o.which) == kinds.end())
    throw UsageError("unknown check \"" + o.which + "\"");
  const auto wants = [&](const char* c) { return o.which == "all" || o.which == c; };
  const Body k = body_from_json(read_json(o.body));
  const int n = dim(k);
  const std::int64_t samples = o.samples > 0 ? o.samples : kDefaultVerifySamples;
  Json cfg = base_config("verify", o);
  cfg["body"] = o.body;
  cfg["which"] = o.which;
  cfg["samples"] = samples;
  cfg["tol"] = o.tol;
  cfg["mass_tol"] = o.mass_tol;

  std::vector<DeficitReport> reports;
  bool side_conditions = true;
  if (wants("santalo")) reports.push_back(santalo_deficit(k));
  if (wants("ball")) reports.push_back(ball_deficit(k));
  if (wants("directional") || wants("cones")) {
    const VectorXd u = direction_or_random(o, n);
    cfg["direction"] = vector_json(u);
    if (wants("directional")) {
      const IsotropicResult iso = isotropize(k, Normalization::none, IsotropicTarget::polar);
      reports.push_back(directional_deficit(iso.body, u, &iso.certificate));
    }
    if (wants("cones")) {
      const MeasureSamples mu = sample_measure(k, u, samples, o.seed, o.workers);
      const YaoYaoPartition p = yao_yao_equipartition(mu, u, o.mass_tol);
      const Map t = shear_to_axis(u, p.v);
      const ConeCheck c =
          cone_restricted_check(apply_map(t, k), apply_map(t, mu), apply_map(t, p), samples, o.seed + 1, o.workers);
      reports.insert(reports.end(), c.cones.begin(), c.cones.end());
      reports.push_back(c.decomposition);
    }
  }
  if (wants("pl")) {
    const Body x = principal_axes(k);
    const Body y = polar(x);
    for (int i = 0; i < n; ++i) {
      const PlCheck r = pl_triple_check(x, y, i, samples, o.seed + 2 + static_cast<std::uint64_t>(i), o.workers);
      side_conditions = side_conditions && r.hypothesis_holds && r.containment_holds;
      DeficitReport d = r.deficit;
      d.name = "pl_" + std::to_string(i);
      reports.push_back(d);
    }
  }
  for (auto& r : reports)
    if (r.method == Method::exact && r.name != "chain" && r.name != "shear") r.tolerance = o.tol;

  const Json meta = make_meta(cfg, o.seed);
  bool ok = side_conditions;
  for (const auto& r : reports) ok = ok && r.passed();
  if (o.out.empty()) {
    out << reports_jsonl(reports, meta);
  } else {
    write_text(o.out + ".jsonl", reports_jsonl(reports, meta));
    write_text(o.out + ".csv", reports_csv(reports, meta));
    for (const auto& r : reports)
      out << r.name << " deficit=" << format_number(r.deficit) << " tol=" << format_number(r.tolerance) << ' '
          << verdict(r.passed()) << '\n';
    if (!side_conditions) out << "pl hypothesis or containment FAIL\n";
  }
  return ok ? kOk : kViolation;
}

int cmd_yaoyao(const Options& o, std::ostream& out) {
  const Body k = body_from_json(read_json(o.body));
  const int n = dim(k);
  const std::int64_t samples = o.samples > 0 ? o.samples : kDefaultYaoYaoSamples;
  const VectorXd u = direction_or_random(o, n);
  Json cfg = base_config("yaoyao", o);
  cfg["body"] = o.body;
  cfg["samples"] = samples;
  cfg["mass_tol"] = o.mass_tol;
  cfg["direction"] = vector_json(u);

  const MeasureSamples mu = sample_measure(k, u, samples, o.seed, o.workers);
  const YaoYaoPartition p = yao_yao_equipartition(mu, u, o.mass_tol);
  std::vector<Cone> duals;
  for (const auto& c : p.cones) duals.push_back(dual_cone(c));
  const CoverReport primal = cover_test(p.cones, kCoverDirections, o.seed + 1);
  const CoverReport dual = cover_test(duals, kCoverDirections, o.seed + 2);
  const bool masses_ok = p.residual <= o.mass_tol;
  const auto cover_json = [](const CoverReport& r) {
    return Json{{"directions", r.directions},
                {"uncovered", r.uncovered},
                {"multiply_covered", r.multiply_covered},
                {"passed", r.passed()}};
  };
  const Json meta = make_meta(cfg, o.seed);
  Json part = partition_to_json(p);
  part["meta"] = meta;
  Json report;
  report["meta"] = meta;
  report["residual"] = p.residual;
  report["iterations"] = p.iterations;
  report["masses_within_tol"] = masses_ok;
  report["primal_cover"] = cover_json(primal);
  report["dual_cover"] = cover_json(dual);
  emit(o.out, dump(part), out);
  emit(o.out.empty() ? "" : o.out + ".report.json", dump(report), out);
  return masses_ok && primal.passed() && dual.passed() ? kOk : kViolation;
}

int cmd_sweep(const Options& o, std::ostream& out) {
  if (o.t_range.empty()) throw UsageError("kt-sweep needs --t a:b:k");
  const std::vector<double> ts = parse_t_range(o.t_range);
  const std::int64_t samples = o.samples > 0 ? o.samples : kDefaultSweepSamples;
  Json cfg = base_config("stability kt-sweep", o);
  cfg["dim"] = o.dim;
  cfg["t"] = o.t_range;
  cfg["samples"] = samples;
  cfg["grid"] = o.grid > 0 ? o.grid : kt_default_grid(o.dim);
  const SweepResult s = kt_sweep(o.dim, ts, samples, o.seed, o.workers, o.grid);
  emit(o.out, stability_csv(s.records, make_meta(cfg, o.seed)), out);
  bool warned = false;
  for (const auto& r : s.records) warned = warned || r.fit_warning;
  if (!o.out.empty() && ts.size() >= 2) {
    out << "santalo slope " << format_number(s.santalo.slope) << '\n'
        << "A_dist slope " << format_number(s.a_dist.slope) << '\n'
        << "ratio spread " << format_number(s.ratio_spread) << '\n';
  }
  return warned ? kNoConvergence : kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Convex body computations: polars, moments, isotropic position, equipartitions, deficits."};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  const auto common = [&o](CLI::App* c) {
    c->add_option("--seed", o.seed, "RNG seed (default $CONVEXLAB_SEED or 1)");
    c->add_option("--out", o.out, "Output path (stdout if omitted)");
    c->add_option("--workers", o.workers, "Worker threads; 1 is bit-stable")->check(CLI::Range(1, 256));
  };
  const auto sampling = [&o](CLI::App* c) {
    c->add_option("--samples", o.samples, "Monte Carlo sample count")->check(CLI::PositiveNumber);
  };

  CLI::App* gen = app.add_subcommand("gen", "Generate a body file");
  gen->add_option("kind", o.kind, "random-symmetric | cube | cross | ball-approx | ellipsoid | kt")->required();
  gen->add_option("--dim", o.dim, "Dimension")->check(CLI::Range(kMinDim, kMaxDim));
  gen->add_option("--verts", o.verts, "Vertex count for random-symmetric and ball-approx");
  gen->add_option("--t", o.t, "Bump height for kt");
  gen->add_option("--grid", o.grid, "Direction grid size for kt");
  common(gen);

  CLI::App* compute = app.add_subcommand("compute", "Polar, moments, volumes or isotropic position");
  compute->add_option("body", o.body, "Body file")->required();
  compute->add_option("--what", o.what, "moments | volume | polar | isotropic");
  compute->add_option("--target", o.target, "isotropic target: self | polar");
  compute->add_option("--normalize", o.normalize, "isotropic normalization: none | volume");
  compute->add_option("--cert", o.cert, "Certificate path (default <out>.cert.json)");
  common(compute);
  sampling(compute);

  CLI::App* verify = app.add_subcommand("verify", "Deficit reports for the inequalities");
  verify->add_option("body", o.body, "Body file")->required();
  verify->add_option("--which", o.which, "santalo | ball | directional | cones | pl | all");
  verify->add_option("--tol", o.tol, "Tolerance for exact deficits")->check(CLI::NonNegativeNumber);
  verify->add_option("--mass-tol", o.mass_tol, "Relative cone mass tolerance")->check(CLI::PositiveNumber);
  verify->add_option("--direction", o.direction, "x,y[,z[,w]]");
  common(verify);
  sampling(verify);

  CLI::App* yy = app.add_subcommand("yaoyao", "Equipartition into 2^n cones");
  yy->add_option("body", o.body, "Body file")->required();
  yy->add_option("--direction", o.direction, "x,y[,z[,w]]");
  yy->add_option("--mass-tol", o.mass_tol, "Relative cone mass tolerance")->check(CLI::PositiveNumber);
  common(yy);
  sampling(yy);

  CLI::App* stab = app.add_subcommand("stability", "Stability sweeps");
  stab->require_subcommand(1);
  CLI::App* sweep = stab->add_subcommand("kt-sweep", "Sweep the bump family over t");
  sweep->add_option("--dim", o.dim, "Dimension")->check(CLI::Range(kMinDim, kMaxDim));
  sweep->add_option("--t", o.t_range, "a:b:k, k evenly spaced values from a to b")->required();
  sweep->add_option("--grid", o.grid, "Direction grid size");
  common(sweep);
  sampling(sweep);

  try {
    o.seed = env_seed();
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (gen->parsed()) return cmd_gen(o, out);
    if (compute->parsed()) return cmd_compute(o, out);
    if (verify->parsed()) return cmd_verify(o, out);
    if (yy->parsed()) return cmd_yaoyao(o, out);
    if (sweep->parsed()) return cmd_sweep(o, out);
    return kUsage;
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    return kNoConvergence;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace convexlab::cli
