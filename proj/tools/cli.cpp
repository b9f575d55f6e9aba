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


#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "frobtrace/charts.hpp"
#include "frobtrace/error.hpp"

namespace frobtrace::cli {

std::optional<std::string> process_env(const std::string& name) {
  const char* v = std::getenv(name.c_str());
  if (!v) return std::nullopt;
  return std::string(v);
}

namespace {

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  std::uint64_t v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty()) throw UsageError(what + ": expected a nonnegative integer, got '" + text + "'");
  return v;
}

ModelPoint point_of(const FieldCtx& ctx, const std::array<std::uint64_t, 5>& idx) {
  return {ctx.element(idx[0]), ctx.element(idx[1]), ctx.element(idx[2]), ctx.element(idx[3]), ctx.element(idx[4])};
}

}  // namespace

std::vector<std::uint64_t> parse_index_list(const std::string& text, std::size_t count, std::uint64_t q,
                                            const std::string& flag) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(parse_u64(part, flag));
  if (!text.empty() && text.back() == ',') out.push_back(parse_u64("", flag));
  if (out.size() != count)
    throw UsageError(flag + ": expected " + std::to_string(count) + " comma-separated element indices, got '" + text +
                     "'");
  for (auto v : out)
    if (v >= q) throw UsageError(flag + ": element index " + std::to_string(v) + " is not below q = " + std::to_string(q));
  return out;
}

RunConfig parse_args(const std::vector<std::string>& args, const EnvLookup& env) {
  RunConfig cfg;
  CLI::App app{"Frobenius traces on the GSp4 pro-p Iwahori local model", "frobtrace"};
  app.require_subcommand(1);
  app.fallthrough(false);

  std::string format = "text", point, torus, label;
  struct Sub {
    Command cmd;
    CLI::App* app;
    bool field;
  };
  std::vector<Sub> subs;
  auto add = [&](Command cmd, const char* name, const char* help, bool field) {
    CLI::App* sc = app.add_subcommand(name, help);
    sc->add_option("--format", format, "text, json or csv")
        ->check(CLI::IsMember({"text", "json", "csv"}));
    sc->add_option("--out", cfg.out_path, "write the report to this file");
    sc->add_option("--json", cfg.json_path, "also write the report as JSON to this file");
    sc->add_flag("!--no-timing", cfg.timing, "omit elapsed time");
    if (field) {
      sc->add_option("--p", cfg.p, "odd prime")->required();
      sc->add_option("--r", cfg.r, "extension degree");
      sc->add_option("--limit", cfg.limit, "largest tuple count to enumerate");
      sc->add_option("--workers", cfg.workers, "worker threads (0: all cores)");
      sc->add_flag("--force", cfg.force, "ignore the enumeration limit");
    }
    subs.push_back({cmd, sc, field});
    return sc;
  };
  add(Command::adm, "adm", "admissible set table", false);
  add(Command::strata, "strata", "points per stratum", true);
  add(Command::trace, "trace", "trace at one point", true)
      ->add_option("--point", point, "element indices x,y,a,b,c")
      ->required();
  auto* phi = add(Command::phi, "phi", "scaled test function", true);
  phi->add_option("--s", torus, "element indices g0,g1,g2,g3")->required();
  phi->add_option("--w", label, "stratum label, e.g. s02tau")->required();
  add(Command::atlas, "atlas", "resolution charts", true)->add_flag("--validate", cfg.validate, "validate over F_q");
  add(Command::drinfeld, "drinfeld", "Drinfeld case check", true)->add_option("--n", cfg.n, "rank, 1..4");
  add(Command::verify, "verify", "pointwise comparison over the special fiber", true);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    cfg.help = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }

  const Sub* chosen = nullptr;
  for (const auto& s : subs)
    if (s.app->parsed()) chosen = &s;
  if (!chosen) throw UsageError("a subcommand is required");
  cfg.command = chosen->cmd;
  cfg.format = format == "json" ? Format::json : format == "csv" ? Format::csv : Format::text;
  if (!chosen->field) return cfg;

  if (chosen->app->count("--limit") == 0)
    if (auto v = env("FROBTRACE_LIMIT")) cfg.limit = parse_u64(*v, "FROBTRACE_LIMIT");
  if (chosen->app->count("--workers") == 0)
    if (auto v = env("FROBTRACE_WORKERS")) {
      const auto w = parse_u64(*v, "FROBTRACE_WORKERS");
      if (w > 4096) throw UsageError("FROBTRACE_WORKERS: at most 4096 workers");
      cfg.workers = static_cast<unsigned>(w);
    }
  if (cfg.limit < 1) throw UsageError("--limit: must be at least 1");

  std::optional<FieldCtx> ctx;
  try {
    ctx = FieldCtx::make(cfg.p, cfg.r);
  } catch (const ConstructionError& e) {
    throw UsageError(std::string(cfg.p < 3 || !is_prime(static_cast<std::uint64_t>(std::max<std::int64_t>(cfg.p, 0)))
                                     ? "--p: "
                                     : "--r: ") +
                     e.what());
  }

  if (cfg.command == Command::trace) {
    auto v = parse_index_list(point, 5, ctx->q(), "--point");
    std::copy(v.begin(), v.end(), cfg.point.begin());
    if (!on_special_fiber(*ctx, point_of(*ctx, cfg.point)))
      throw UsageError("--point: " + format_point(*ctx, point_of(*ctx, cfg.point)) + " is not on the special fiber");
  }
  if (cfg.command == Command::phi) {
    auto v = parse_index_list(torus, 4, ctx->q(), "--s");
    std::copy(v.begin(), v.end(), cfg.torus.begin());
    if (std::find(v.begin(), v.end(), 0) != v.end()) throw UsageError("--s: components must be nonzero");
    auto w = parse_label(label);
    if (!w) throw UsageError("--w: unknown stratum label '" + label + "'");
    cfg.w = *w;
  }
  if (cfg.command == Command::drinfeld && (cfg.n < 1 || cfg.n > kMaxDrinfeldRank))
    throw UsageError("--n: must satisfy 1 <= n <= " + std::to_string(kMaxDrinfeldRank));
  return cfg;
}

namespace {

struct Rendered {
  std::string body;
  Json json;
  int code = kExitPass;
};

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::size_t code_points(const std::string& s) {
  return static_cast<std::size_t>(
      std::count_if(s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
}

Rendered run_adm(const RunConfig& cfg) {
  Rendered out;
  out.json = adm_json();
  std::ostringstream os;
  if (cfg.format == Format::json) {
    os << dump(out.json);
  } else if (cfg.format == Format::csv) {
    os << "label,length,t0,t1,t2\n";
    for (const auto& e : admissible_table())
      os << e.ascii << ',' << e.length << ',' << format_bits(e.diff[0]) << ',' << format_bits(e.diff[1]) << ','
         << format_bits(e.diff[2]) << '\n';
  } else {
    for (const auto& e : admissible_table()) {
      const std::string label(e.label);
      os << label << std::string(8 - code_points(label), ' ');
      os << e.length << "  " << format_bits(e.diff[0]) << ' ' << format_bits(e.diff[1]) << ' '
         << format_bits(e.diff[2]) << '\n';
    }
  }
  out.body = os.str();
  return out;
}

Rendered run_trace(const FieldCtx& ctx, const RunConfig& cfg) {
  Rendered out;
  const TraceReport rep = NearbyEngine(ctx).trace_at(point_of(ctx, cfg.point));
  out.json = trace_json(ctx, rep);
  std::ostringstream os;
  if (cfg.format == Format::json) {
    os << dump(out.json);
  } else if (cfg.format == Format::csv) {
    os << "segment,chart,points,branches,contribution\n";
    for (const auto& r : rep.fiber_detail)
      os << '"' << r.segment << "\",\"" << r.chart << "\"," << r.points << ',' << r.branches << ',' << r.contribution
         << '\n';
  } else {
    os << "point " << format_point(ctx, rep.point) << "  stratum " << adm(rep.stratum).label << "  trace " << rep.trace
       << '\n';
    for (const auto& r : rep.fiber_detail)
      os << "  " << r.segment << " on " << r.chart << ": " << r.points << " points, " << r.branches << " branches, "
         << r.contribution << '\n';
  }
  out.body = os.str();
  return out;
}

Rendered run_phi(const FieldCtx& ctx, const RunConfig& cfg) {
  Rendered out;
  TorusElement s;
  for (std::size_t i = 0; i < 4; ++i) s.g[i] = ctx.element(cfg.torus[i]);
  const Rational v = phi_prime(ctx, s, cfg.w);
  const Int scaled = phi_scaled(ctx, s, cfg.w);
  const bool member = in_A(ctx, cfg.w, norm(ctx, s));
  Json sj = Json::array();
  for (auto i : cfg.torus) sj.push_back(i);
  out.json = Json{{"params", Json{{"p", ctx.p()}, {"r", ctx.r()}, {"q", ctx.q()}}},
                  {"s", sj},
                  {"w", std::string(adm(cfg.w).label)},
                  {"norm_in_A", member},
                  {"similitude", satisfies_similitude(ctx, s)},
                  {"phi_prime", Json{{"num", v.num}, {"den", v.den}}},
                  {"phi", scaled}};
  std::ostringstream os;
  if (cfg.format == Format::json) {
    os << dump(out.json);
  } else if (cfg.format == Format::csv) {
    os << "w,num,den,phi\n" << adm(cfg.w).ascii << ',' << v.num << ',' << v.den << ',' << scaled << '\n';
  } else {
    os << "w " << adm(cfg.w).label << "  A_w: " << subgroup_predicate(cfg.w) << "  N(s) in A_w: "
       << (member ? "yes" : "no") << '\n';
    os << "phi' = " << v.num << "/" << v.den << "  Phi = (q-1)^3 phi' = " << scaled << '\n';
  }
  out.body = os.str();
  return out;
}

Rendered run_atlas(const FieldCtx& ctx, const RunConfig& cfg) {
  Rendered out;
  out.json = Json::array();
  std::ostringstream text, csv;
  csv << "chart,coords,tame,vanishing,base_map,verdict\n";
  for (const auto& ch : atlas(ctx.p())) {
    Json j{{"name", ch.name}, {"coords", ch.coords}, {"p_equation", ch.p_equation.text()}, {"source", ch.source}};
    if (!ch.reduction.empty()) j["reduction"] = ch.reduction;
    text << describe(ch) << "\n    " << ch.source << '\n';
    if (cfg.validate) {
      const ChartValidation v = validate_chart(ch, ctx);
      Json vj{{"tame", v.tame},
              {"vanishing", v.vanishing},
              {"base_map", v.base_map_ok},
              {"exhaustive", v.exhaustive},
              {"tuples", v.tuples_scanned},
              {"chart_points", v.chart_points},
              {"special_fiber_points", v.special_fiber_points},
              {"verdict", v.passed() ? "pass" : "fail"}};
      if (!v.failure.empty()) vj["failure"] = v.failure;
      if (v.witness) vj["witness"] = *v.witness;
      j["validation"] = vj;
      text << "    " << (v.passed() ? "pass" : "FAIL") << (v.exhaustive ? " (exhaustive, " : " (sampled, ")
           << v.chart_points << " chart points)";
      if (!v.passed()) text << ": " << v.failure << ' ' << v.witness.value_or("");
      text << '\n';
      csv << '"' << ch.name << "\"," << ch.coords.size() << ',' << v.tame << ',' << v.vanishing << ','
          << v.base_map_ok << ',' << (v.passed() ? "pass" : "fail") << '\n';
      if (!v.passed()) out.code = kExitMismatch;
    }
    out.json.push_back(std::move(j));
  }
  out.body = cfg.format == Format::json ? dump(out.json) : cfg.format == Format::csv ? csv.str() : text.str();
  return out;
}

Rendered run_drinfeld(const FieldCtx& ctx, const RunConfig& cfg, std::uint64_t limit) {
  Rendered out;
  const DrinfeldReport rep = verify_drinfeld(ctx, cfg.n, limit);
  out.json = drinfeld_json(ctx, rep);
  out.code = rep.ok() ? kExitPass : kExitMismatch;
  std::ostringstream os;
  if (cfg.format == Format::json) {
    os << dump(out.json);
  } else if (cfg.format == Format::csv) {
    os << "n,points,pass,fail\n" << rep.n << ',' << rep.points << ',' << rep.passed << ',' << rep.failed << '\n';
  } else {
    os << "drinfeld  n=" << rep.n << " q=" << ctx.q() << "  points " << rep.points << "  pass " << rep.passed
       << "  fail " << rep.failed << "  verdict " << (rep.ok() ? "pass" : "fail") << '\n';
    if (rep.witness) os << "witness " << *rep.witness << '\n';
  }
  out.body = os.str();
  return out;
}

Rendered dispatch(const RunConfig& cfg) {
  if (cfg.command == Command::adm) return run_adm(cfg);
  const FieldCtx ctx = FieldCtx::make(cfg.p, cfg.r);
  const std::uint64_t limit = cfg.force ? std::numeric_limits<std::uint64_t>::max() : cfg.limit;
  switch (cfg.command) {
    case Command::strata: {
      const auto counts = stratum_census(ctx, limit, cfg.workers);
      return {emit_census(ctx, counts, cfg), census_json(ctx, counts), kExitPass};
    }
    case Command::trace: return run_trace(ctx, cfg);
    case Command::phi: return run_phi(ctx, cfg);
    case Command::atlas: return run_atlas(ctx, cfg);
    case Command::drinfeld: return run_drinfeld(ctx, cfg, limit);
    case Command::verify: {
      VerifyOptions opts;
      opts.limit = limit;
      opts.workers = cfg.workers;
      const VerificationReport rep = verify_theorem(ctx, opts);
      return {emit_report(rep, cfg), verification_json(rep, cfg.timing), rep.pass ? kExitPass : kExitMismatch};
    }
    case Command::adm: break;
  }
  throw std::logic_error("unhandled command");
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UsageError("cannot open " + path + " for writing");
  f << body;
  f.close();
  if (!f) throw UsageError("failed writing " + path);
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.help) {
    out << *cfg.help;
    return kExitPass;
  }
  try {
    const Rendered r = dispatch(cfg);
    if (cfg.out_path.empty())
      out << r.body;
    else
      write_file(cfg.out_path, r.body);
    if (!cfg.json_path.empty()) write_file(cfg.json_path, dump(r.json));
    return r.code;
  } catch (const LimitError& e) {
    err << "refused: " << e.what() << " (raise --limit or pass --force)\n";
    return kExitUsage;
  } catch (const InvariantError& e) {
    err << "mismatch: " << e.what() << '\n';
    return kExitMismatch;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const OverflowError& e) {
    err << "refused: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const EnvLookup& env) {
  RunConfig cfg;
  try {
    cfg = parse_args(args, env);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun 'frobtrace --help' for usage\n";
    return kExitUsage;
  }
  return run(cfg, out, err);
}

}  // namespace frobtrace::cli
