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

#pragma once

// JSON and CSV formats for bodies, moment matrices, certificates, partitions,
// deficit reports and stability sweeps.

#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "convexlab/geometry.hpp"
#include "convexlab/inequalities.hpp"
#include "convexlab/isotropic.hpp"
#include "convexlab/moments.hpp"
#include "convexlab/stability.hpp"
#include "convexlab/yaoyao.hpp"

namespace convexlab {

inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// Malformed file, unreadable path, schema violation.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"version": .., "config": .., "seed": ..}.
Json make_meta(const Json& config, std::uint64_t seed);

Json vector_json(const VectorXd& v);
/// Rows of m as arrays.
Json matrix_json(const MatrixXd& m);
VectorXd vector_from_json(const Json& j);
MatrixXd matrix_from_json(const Json& j);

/// {"dim", "kind", one payload, "meta"?}. Vertices and normals are stored one
/// point per row.
Json body_to_json(const Body& k, const Json& meta = nullptr);
Body body_from_json(const Json& j);

Json moment_to_json(const MomentMatrix& m);
MomentMatrix moment_from_json(const Json& j);

Json certificate_to_json(const IsotropicCertificate& c);

Json partition_to_json(const YaoYaoPartition& p);
YaoYaoPartition partition_from_json(const Json& j);

Json report_to_json(const DeficitReport& r);

inline constexpr const char* kReportCsvHeader = "name,lhs,rhs,deficit,tolerance,method,seed";
inline constexpr const char* kStabilityCsvHeader =
    "t,vol_K,vol_polar,deficit_santalo,deficit_ball,A_dist,ratio,samples,seed";

/// 10 significant digits.
std::string format_number(double x);

/// Metadata comment line "# <meta json>", then one header row and the records.
std::string reports_csv(const std::vector<DeficitReport>& reports, const Json& meta);
std::string reports_jsonl(const std::vector<DeficitReport>& reports, const Json& meta);
std::string stability_csv(const std::vector<StabilityRecord>& records, const Json& meta);

/// Two-space indented JSON with a trailing newline.
std::string dump(const Json& j);

Json read_json(const std::string& path);
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);
inline void write_json(const std::string& path, const Json& j) { write_text(path, dump(j)); }

}  // namespace convexlab
