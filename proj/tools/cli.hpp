// Copyright 2026 The frobtrace Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License").
// You may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing,
// software distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions
// and limitations under the License.


#pragma once
// Command-line front end: argument parsing, report serialization, dispatch.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "frobtrace/drinfeld.hpp"
#include "frobtrace/verify.hpp"

namespace frobtrace::cli {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Command { adm, strata, trace, phi, atlas, drinfeld, verify };
enum class Format { text, json, csv };

inline constexpr int kExitPass = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitUsage = 2;

struct RunConfig {
  Command command = Command::adm;
  std::int64_t p = 3;
  std::int64_t r = 1;
  Format format = Format::text;
  std::string out_path;   // empty: stdout
  std::string json_path;  // extra JSON copy of the report
  std::uint64_t limit = kDefaultLimit;
  unsigned workers = 0;
  bool force = false;
  bool timing = true;

  std::array<std::uint64_t, 5> point{};  // trace: element indices
  std::array<std::uint64_t, 4> torus{};  // phi: element indices
  AdmLabel w = AdmLabel::tau;            // phi
  int n = 2;                             // drinfeld
  bool validate = false;                 // atlas

  std::optional<std::string> help;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

/// Reads the process environment.
std::optional<std::string> process_env(const std::string& name);

/// args excludes the program name. FROBTRACE_LIMIT and FROBTRACE_WORKERS
/// supply defaults that explicit flags override. Throws UsageError.
RunConfig parse_args(const std::vector<std::string>& args, const EnvLookup& env = process_env);

/// Parses "i0,i1,...": exactly `count` element indices, each below q.
std::vector<std::uint64_t> parse_index_list(const std::string& text, std::size_t count, std::uint64_t q,
                                            const std::string& flag);

// Reports as JSON documents with fixed key order.
Json adm_json();
Json census_json(const FieldCtx& ctx, const std::array<std::uint64_t, kAdmissibleCount>& counts);
Json trace_json(const FieldCtx& ctx, const TraceReport& rep);
Json witness_json(const FieldCtx& ctx, const Witness& w);
Json verification_json(const VerificationReport& rep, bool timing);
Json drinfeld_json(const FieldCtx& ctx, const DrinfeldReport& rep);

/// Inverse of verification_json.
VerificationReport verification_from_json(const Json& j);

/// Serializes a verification report in the configured format.
std::string emit_report(const VerificationReport& rep, const RunConfig& cfg);
std::string emit_census(const FieldCtx& ctx, const std::array<std::uint64_t, kAdmissibleCount>& counts,
                        const RunConfig& cfg);

/// Runs one command; returns the process exit code.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// parse_args then run, mapping usage errors to exit code 2.
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
               const EnvLookup& env = process_env);

}  // namespace frobtrace::cli
