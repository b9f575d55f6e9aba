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


#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "cli.hpp"

namespace frobtrace::cli {
namespace {

EnvLookup no_env() {
  return [](const std::string&) -> std::optional<std::string> { return std::nullopt; };
}

EnvLookup env_of(std::map<std::string, std::string> vars) {
  return [vars](const std::string& k) -> std::optional<std::string> {
    auto it = vars.find(k);
    if (it == vars.end()) return std::nullopt;
    return it->second;
  };
}

struct Result {
  int code;
  std::string out, err;
};

Result invoke(const std::vector<std::string>& args, const EnvLookup& env = no_env()) {
  std::ostringstream out, err;
  int code = main_entry(args, out, err, env);
  return {code, out.str(), err.str()};
}

std::string usage_message(const std::vector<std::string>& args) {
  try {
    parse_args(args, no_env());
  } catch (const UsageError& e) {
    return e.what();
  }
  return {};
}

TEST(ParseArgs, Verify) {
  auto cfg = parse_args({"verify", "--p", "3", "--r", "2"}, no_env());
  EXPECT_EQ(cfg.command, Command::verify);
  EXPECT_EQ(cfg.p, 3);
  EXPECT_EQ(cfg.r, 2);
  EXPECT_EQ(cfg.limit, kDefaultLimit);
  EXPECT_EQ(cfg.format, Format::text);
  EXPECT_TRUE(cfg.timing);
  EXPECT_FALSE(cfg.force);
}

TEST(ParseArgs, TracePoint) {
  auto cfg = parse_args({"trace", "--point", "0,0,0,0,0", "--p", "3", "--r", "1"}, no_env());
  EXPECT_EQ(cfg.command, Command::trace);
  EXPECT_EQ(cfg.point, (std::array<std::uint64_t, 5>{0, 0, 0, 0, 0}));
  cfg = parse_args({"trace", "--point", "0,1,2,0,1", "--p", "3"}, no_env());
  EXPECT_EQ(cfg.point, (std::array<std::uint64_t, 5>{0, 1, 2, 0, 1}));
}

TEST(ParseArgs, Errors) {
  EXPECT_NE(usage_message({"verify", "--p", "4", "--r", "1"}).find("p must be an odd prime"), std::string::npos);
  EXPECT_NE(usage_message({"verify", "--p", "4"}).find("--p"), std::string::npos);
  EXPECT_NE(usage_message({"verify", "--p", "3", "--r", "9"}).find("--r"), std::string::npos);
  EXPECT_NE(usage_message({"verify", "--p", "3", "--bogus"}).find("--bogus"), std::string::npos);
  EXPECT_NE(usage_message({"trace", "--point", "0,0,0", "--p", "3"}).find("--point"), std::string::npos);
  EXPECT_NE(usage_message({"trace", "--point", "0,0,x,0,0", "--p", "3"}).find("--point"), std::string::npos);
  EXPECT_NE(usage_message({"trace", "--point", "0,0,0,0,3", "--p", "3"}).find("--point"), std::string::npos);
  EXPECT_NE(usage_message({"trace", "--point", "0,0,0,0,", "--p", "3"}).find("--point"), std::string::npos);
  EXPECT_NE(usage_message({"trace", "--point", "1,1,0,0,0", "--p", "3"}).find("special fiber"), std::string::npos);
  EXPECT_NE(usage_message({"phi", "--s", "1,1,0,1", "--w", "tau", "--p", "3"}).find("--s"), std::string::npos);
  EXPECT_NE(usage_message({"phi", "--s", "1,1,1,1", "--w", "s9tau", "--p", "3"}).find("--w"), std::string::npos);
  EXPECT_NE(usage_message({"drinfeld", "--n", "7", "--p", "3"}).find("--n"), std::string::npos);
  EXPECT_NE(usage_message({"verify", "--p", "3", "--limit", "0"}).find("--limit"), std::string::npos);
  EXPECT_NE(usage_message({"verify", "--p", "3", "--format", "xml"}).find("--format"), std::string::npos);
  EXPECT_FALSE(usage_message({}).empty());
}

TEST(ParseArgs, EnvironmentOverridesDefaultsButNotFlags) {
  auto env = env_of({{"FROBTRACE_LIMIT", "1234"}, {"FROBTRACE_WORKERS", "3"}});
  auto cfg = parse_args({"verify", "--p", "3"}, env);
  EXPECT_EQ(cfg.limit, 1234u);
  EXPECT_EQ(cfg.workers, 3u);
  cfg = parse_args({"verify", "--p", "3", "--limit", "99", "--workers", "2"}, env);
  EXPECT_EQ(cfg.limit, 99u);
  EXPECT_EQ(cfg.workers, 2u);
  EXPECT_THROW(parse_args({"verify", "--p", "3"}, env_of({{"FROBTRACE_LIMIT", "lots"}})), UsageError);
}

TEST(ParseArgs, Help) {
  auto cfg = parse_args({"--help"}, no_env());
  ASSERT_TRUE(cfg.help.has_value());
  EXPECT_NE(cfg.help->find("verify"), std::string::npos);
  EXPECT_EQ(invoke({"--help"}).code, kExitPass);
}

TEST(Emit, CensusCsv) {
  auto r = invoke({"strata", "--p", "3", "--format", "csv"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);
  EXPECT_EQ(line, "label,count");
  int rows = 0;
  std::uint64_t sum = 0;
  while (std::getline(is, line)) {
    ++rows;
    sum += std::stoull(line.substr(line.find(',') + 1));
  }
  EXPECT_EQ(rows, 13);
  EXPECT_EQ(sum, 71u);
}

TEST(Emit, VerifyJsonVerdict) {
  auto r = invoke({"verify", "--p", "3", "--format", "json"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  auto j = Json::parse(r.out);
  EXPECT_EQ(j.at("verdict"), "pass");
  EXPECT_EQ(j.at("total"), 71);
  EXPECT_FALSE(j.contains("witness"));
  EXPECT_TRUE(j.contains("elapsed_us"));
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"params", "strata", "total", "verdict", "elapsed_us"}));
  EXPECT_EQ(j.at("strata").size(), 13u);
  EXPECT_EQ(j.at("strata")[12].at("label"), "τ");
}

VerificationReport failing_report() {
  auto ctx = FieldCtx::make(3, 1);
  VerifyOptions opts;
  opts.workers = 2;
  opts.phi = [](const FieldCtx& c, const TorusElement& s, AdmLabel w) {
    return w == AdmLabel::tau || w == AdmLabel::s10 ? phi_scaled(c, s, w) - 3 : phi_scaled(c, s, w);
  };
  return verify_theorem(ctx, opts);
}

TEST(Emit, InjectedFailureHasWitness) {
  auto rep = failing_report();
  ASSERT_FALSE(rep.pass);
  auto j = verification_json(rep, false);
  EXPECT_EQ(j.at("verdict"), "fail");
  ASSERT_TRUE(j.contains("witness"));
  EXPECT_TRUE(j.at("witness").is_object());
  EXPECT_EQ(j.at("witness").at("stratum"), "τ");
  EXPECT_EQ(j.at("witness").at("point"), Json::parse("[0,0,0,0,0]"));
  EXPECT_EQ(j.at("witness").at("trace"), -20);
  EXPECT_EQ(j.at("witness").at("phi"), -23);
  EXPECT_FALSE(j.at("witness").at("fiber_detail").empty());

  RunConfig cfg;
  cfg.format = Format::text;
  cfg.timing = false;
  auto text = emit_report(rep, cfg);
  EXPECT_NE(text.find("witness (0,0,0,0,0)"), std::string::npos);
  EXPECT_NE(text.find("verdict fail"), std::string::npos);
}

TEST(Emit, JsonRoundTrip) {
  for (const auto& rep : {failing_report(), verify_theorem(FieldCtx::make(3, 2))}) {
    for (bool timing : {true, false}) {
      auto j = verification_json(rep, timing);
      auto back = verification_from_json(j);
      EXPECT_EQ(verification_json(back, timing), j);
      EXPECT_EQ(back.total, rep.total);
      EXPECT_EQ(back.pass, rep.pass);
      for (std::size_t k = 0; k < kAdmissibleCount; ++k) {
        EXPECT_EQ(back.strata[k].count, rep.strata[k].count);
        ASSERT_EQ(back.strata[k].witness.has_value(), rep.strata[k].witness.has_value());
        if (rep.strata[k].witness) {
          EXPECT_EQ(back.strata[k].witness->point, rep.strata[k].witness->point);
          EXPECT_EQ(back.strata[k].witness->s, rep.strata[k].witness->s);
          EXPECT_EQ(back.strata[k].witness->detail.fiber_detail, rep.strata[k].witness->detail.fiber_detail);
        }
      }
      if (timing) EXPECT_EQ(back.elapsed_us, rep.elapsed_us);
    }
  }
}

TEST(Emit, TextAndCsvForVerify) {
  auto rep = verify_theorem(FieldCtx::make(3, 1));
  RunConfig cfg;
  cfg.format = Format::csv;
  auto csv = emit_report(rep, cfg);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,count,pass,fail");
  EXPECT_NE(csv.find("tau,1,1,0"), std::string::npos);
  cfg.format = Format::text;
  cfg.timing = false;
  auto text = emit_report(rep, cfg);
  EXPECT_NE(text.find("total 71  verdict pass"), std::string::npos);
  EXPECT_EQ(text.find("elapsed"), std::string::npos);
}

TEST(Run, DeterministicAcrossWorkers) {
  auto a = invoke({"verify", "--p", "3", "--r", "2", "--format", "json", "--no-timing", "--workers", "1"});
  auto b = invoke({"verify", "--p", "3", "--r", "2", "--format", "json", "--no-timing", "--workers", "6"});
  EXPECT_EQ(a.code, kExitPass);
  EXPECT_EQ(a.out, b.out);
}

TEST(Run, ExitCodes) {
  EXPECT_EQ(invoke({"verify", "--p", "5", "--r", "2", "--limit", "1000"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--p", "3", "--limit", "1000", "--force"}).code, kExitPass);
  EXPECT_EQ(invoke({"verify", "--p", "32749", "--r", "2", "--force"}).code, kExitUsage);
  EXPECT_EQ(invoke({"verify", "--p", "4"}).code, kExitUsage);
  EXPECT_EQ(invoke({"drinfeld", "--n", "4", "--p", "3"}).code, kExitPass);
  EXPECT_EQ(invoke({"atlas", "--validate", "--p", "3"}).code, kExitPass);
  EXPECT_EQ(invoke({"adm", "--format", "json"}).code, kExitPass);
  EXPECT_EQ(invoke({"verify", "--p", "3", "--out", "/nonexistent-dir/x.txt"}).code, kExitUsage);
}

TEST(Run, OutputFiles) {
  const auto dir = std::filesystem::temp_directory_path() / "frobtrace_cli_test";
  std::filesystem::create_directories(dir);
  const auto text_path = (dir / "report.txt").string();
  const auto json_path = (dir / "report.json").string();
  auto r = invoke({"verify", "--p", "3", "--out", text_path, "--json", json_path, "--no-timing"});
  ASSERT_EQ(r.code, kExitPass) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream t(text_path), j(json_path);
  std::stringstream ts, js;
  ts << t.rdbuf();
  js << j.rdbuf();
  EXPECT_NE(ts.str().find("verdict pass"), std::string::npos);
  EXPECT_EQ(Json::parse(js.str()).at("verdict"), "pass");
  std::filesystem::remove_all(dir);
}

TEST(Run, Subcommands) {
  auto adm = Json::parse(invoke({"adm", "--format", "json"}).out);
  EXPECT_EQ(adm.size(), 13u);
  EXPECT_EQ(adm[7].at("label"), "s02τ");
  EXPECT_EQ(adm[7].at("diff"), Json::parse(R"j(["(1010)","(0110)","(1010)"])j"));

  auto tr = Json::parse(invoke({"trace", "--point", "0,0,0,0,0", "--p", "3", "--format", "json"}).out);
  EXPECT_EQ(tr.at("trace"), -20);
  EXPECT_EQ(tr.at("stratum"), "τ");
  Int sum = 0;
  for (const auto& row : tr.at("fiber_detail")) sum += row.at("contribution").get<Int>();
  EXPECT_EQ(sum, -20);

  auto phi = Json::parse(invoke({"phi", "--s", "1,1,2,2", "--w", "s010tau", "--p", "3", "--format", "json"}).out);
  EXPECT_EQ(phi.at("phi"), 0);
  EXPECT_EQ(phi.at("norm_in_A"), false);

  auto dr = Json::parse(invoke({"drinfeld", "--n", "2", "--p", "3", "--r", "2", "--format", "json"}).out);
  EXPECT_EQ(dr.at("points"), 17);
  EXPECT_EQ(dr.at("verdict"), "pass");

  auto at = invoke({"atlas", "--validate", "--p", "3"});
  EXPECT_NE(at.out.find("s02-cover"), std::string::npos);
  EXPECT_EQ(at.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace frobtrace::cli
