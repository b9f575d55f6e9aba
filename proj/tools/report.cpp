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


#include <sstream>

#include "cli.hpp"
#include "frobtrace/error.hpp"

namespace frobtrace::cli {

namespace {

Json params_json(std::uint32_t p, int r, std::uint64_t q) { return Json{{"p", p}, {"r", r}, {"q", q}}; }

Json indices(const FieldCtx& ctx, std::initializer_list<FqElement> els) {
  Json out = Json::array();
  for (const auto& e : els) out.push_back(ctx.index(e));
  return out;
}

Json point_json(const FieldCtx& ctx, const ModelPoint& P) { return indices(ctx, {P.x, P.y, P.a, P.b, P.c}); }

ModelPoint point_from(const FieldCtx& ctx, const Json& j) {
  if (!j.is_array() || j.size() != 5) throw std::invalid_argument("point must be an array of 5 indices");
  auto at = [&](std::size_t i) { return ctx.element(j.at(i).get<std::uint64_t>()); };
  return {at(0), at(1), at(2), at(3), at(4)};
}

AdmLabel label_from(const Json& j) {
  auto w = parse_label(j.get<std::string>());
  if (!w) throw std::invalid_argument("unknown stratum label " + j.dump());
  return *w;
}

Json rows_json(const std::vector<FiberRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows)
    out.push_back(Json{{"segment", r.segment},
                       {"chart", r.chart},
                       {"points", r.points},
                       {"branches", r.branches},
                       {"contribution", r.contribution}});
  return out;
}

std::vector<FiberRow> rows_from(const Json& j) {
  std::vector<FiberRow> out;
  for (const auto& r : j)
    out.push_back(FiberRow{r.at("segment").get<std::string>(), r.at("chart").get<std::string>(),
                           r.at("points").get<std::uint64_t>(), r.at("branches").get<int>(),
                           r.at("contribution").get<Int>()});
  return out;
}

Witness witness_from(const FieldCtx& ctx, const Json& j) {
  Witness w;
  w.point = point_from(ctx, j.at("point"));
  w.trace = j.at("trace").get<Int>();
  w.phi = j.at("phi").get<Int>();
  const auto& s = j.at("s");
  for (std::size_t i = 0; i < 4; ++i) w.s.g[i] = ctx.element(s.at(i).get<std::uint64_t>());
  w.detail.point = w.point;
  w.detail.stratum = label_from(j.at("stratum"));
  w.detail.trace = w.trace;
  w.detail.fiber_detail = rows_from(j.at("fiber_detail"));
  return w;
}

// Display width of a UTF-8 string: one column per code point.
std::size_t columns(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++n;
  return n;
}

std::string pad_right(const std::string& s, std::size_t w) {
  const std::size_t n = columns(s);
  return n >= w ? s : s + std::string(w - n, ' ');
}

std::string pad_left(const std::string& s, std::size_t w) {
  const std::size_t n = columns(s);
  return n >= w ? s : std::string(w - n, ' ') + s;
}

}  // namespace

Json adm_json() {
  Json out = Json::array();
  for (const auto& e : admissible_table()) {
    Json diff = Json::array();
    for (const auto& t : e.diff) diff.push_back(format_bits(t));
    out.push_back(Json{{"label", std::string(e.label)},
                       {"ascii", std::string(e.ascii)},
                       {"length", e.length},
                       {"diff", diff},
                       {"translation", format_bits(e.translation)}});
  }
  return out;
}

Json census_json(const FieldCtx& ctx, const std::array<std::uint64_t, kAdmissibleCount>& counts) {
  Json strata = Json::array();
  std::uint64_t total = 0;
  for (std::size_t k = 0; k < kAdmissibleCount; ++k) {
    strata.push_back(Json{{"label", std::string(adm(static_cast<AdmLabel>(k)).label)}, {"count", counts[k]}});
    total += counts[k];
  }
  return Json{{"params", params_json(ctx.p(), ctx.r(), ctx.q())}, {"strata", strata}, {"total", total}};
}

Json trace_json(const FieldCtx& ctx, const TraceReport& rep) {
  return Json{{"params", params_json(ctx.p(), ctx.r(), ctx.q())},
              {"point", point_json(ctx, rep.point)},
              {"point_text", format_point(ctx, rep.point)},
              {"stratum", std::string(adm(rep.stratum).label)},
              {"trace", rep.trace},
              {"fiber_detail", rows_json(rep.fiber_detail)}};
}

Json witness_json(const FieldCtx& ctx, const Witness& w) {
  return Json{{"stratum", std::string(adm(w.detail.stratum).label)},
              {"point", point_json(ctx, w.point)},
              {"point_text", format_point(ctx, w.point)},
              {"trace", w.trace},
              {"phi", w.phi},
              {"s", indices(ctx, {w.s.g[0], w.s.g[1], w.s.g[2], w.s.g[3]})},
              {"fiber_detail", rows_json(w.detail.fiber_detail)}};
}

Json verification_json(const VerificationReport& rep, bool timing) {
  const FieldCtx ctx = FieldCtx::make(rep.p, rep.r);
  Json strata = Json::array();
  for (const auto& s : rep.strata) {
    Json row{{"label", std::string(adm(s.label).label)}, {"count", s.count}, {"pass", s.pass}, {"fail", s.fail}};
    if (s.witness) row["witness"] = witness_json(ctx, *s.witness);
    strata.push_back(std::move(row));
  }
  Json out{{"params", params_json(rep.p, rep.r, rep.q)},
           {"strata", strata},
           {"total", rep.total},
           {"verdict", rep.pass ? "pass" : "fail"}};
  if (const Witness* w = rep.first_witness()) out["witness"] = witness_json(ctx, *w);
  if (timing) out["elapsed_us"] = rep.elapsed_us;
  return out;
}

VerificationReport verification_from_json(const Json& j) {
  VerificationReport rep;
  const auto& params = j.at("params");
  rep.p = params.at("p").get<std::uint32_t>();
  rep.r = params.at("r").get<int>();
  const FieldCtx ctx = FieldCtx::make(rep.p, rep.r);
  rep.q = params.at("q").get<std::uint64_t>();
  if (rep.q != ctx.q()) throw std::invalid_argument("q does not match p^r");
  const auto& strata = j.at("strata");
  if (strata.size() != kAdmissibleCount) throw std::invalid_argument("expected 13 strata");
  for (std::size_t k = 0; k < kAdmissibleCount; ++k) {
    const auto& row = strata.at(k);
    auto& s = rep.strata[k];
    s.label = label_from(row.at("label"));
    if (s.label != static_cast<AdmLabel>(k)) throw std::invalid_argument("strata out of order");
    s.count = row.at("count").get<std::uint64_t>();
    s.pass = row.at("pass").get<std::uint64_t>();
    s.fail = row.at("fail").get<std::uint64_t>();
    if (row.contains("witness")) s.witness = witness_from(ctx, row.at("witness"));
  }
  rep.total = j.at("total").get<std::uint64_t>();
  rep.pass = j.at("verdict").get<std::string>() == "pass";
  if (j.contains("elapsed_us")) rep.elapsed_us = j.at("elapsed_us").get<std::int64_t>();
  return rep;
}

Json drinfeld_json(const FieldCtx& ctx, const DrinfeldReport& rep) {
  Json out{{"params", params_json(ctx.p(), ctx.r(), ctx.q())},
           {"n", rep.n},
           {"points", rep.points},
           {"pass", rep.passed},
           {"fail", rep.failed},
           {"verdict", rep.ok() ? "pass" : "fail"}};
  if (rep.witness) out["witness"] = *rep.witness;
  return out;
}

std::string emit_report(const VerificationReport& rep, const RunConfig& cfg) {
  std::ostringstream os;
  switch (cfg.format) {
    case Format::json:
      os << verification_json(rep, cfg.timing).dump(2) << '\n';
      break;
    case Format::csv:
      os << "label,count,pass,fail\n";
      for (const auto& s : rep.strata)
        os << adm(s.label).ascii << ',' << s.count << ',' << s.pass << ',' << s.fail << '\n';
      break;
    case Format::text: {
      os << "verify  p=" << rep.p << " r=" << rep.r << " q=" << rep.q << '\n';
      os << pad_right("stratum", 8) << pad_left("count", 10) << pad_left("pass", 10) << pad_left("fail", 8) << '\n';
      for (const auto& s : rep.strata)
        os << pad_right(std::string(adm(s.label).label), 8) << pad_left(std::to_string(s.count), 10)
           << pad_left(std::to_string(s.pass), 10) << pad_left(std::to_string(s.fail), 8) << '\n';
      os << "total " << rep.total << "  verdict " << (rep.pass ? "pass" : "fail") << '\n';
      if (const Witness* w = rep.first_witness()) {
        const FieldCtx ctx = FieldCtx::make(rep.p, rep.r);
        os << "witness " << format_point(ctx, w->point) << " in " << adm(w->detail.stratum).label << ": trace "
           << w->trace << " but Phi " << w->phi << '\n';
        for (const auto& row : w->detail.fiber_detail)
          os << "  " << row.segment << " on " << row.chart << ": " << row.points << " points, " << row.branches
             << " branches, " << row.contribution << '\n';
      }
      if (cfg.timing) os << "elapsed " << rep.elapsed_us << " us\n";
      break;
    }
  }
  return os.str();
}

std::string emit_census(const FieldCtx& ctx, const std::array<std::uint64_t, kAdmissibleCount>& counts,
                        const RunConfig& cfg) {
  std::ostringstream os;
  switch (cfg.format) {
    case Format::json:
      os << census_json(ctx, counts).dump(2) << '\n';
      break;
    case Format::csv:
      os << "label,count\n";
      for (std::size_t k = 0; k < kAdmissibleCount; ++k)
        os << adm(static_cast<AdmLabel>(k)).ascii << ',' << counts[k] << '\n';
      break;
    case Format::text: {
      std::uint64_t total = 0;
      os << "strata  p=" << ctx.p() << " r=" << ctx.r() << " q=" << ctx.q() << '\n';
      for (std::size_t k = 0; k < kAdmissibleCount; ++k) {
        os << pad_right(std::string(adm(static_cast<AdmLabel>(k)).label), 8) << pad_left(std::to_string(counts[k]), 12)
           << '\n';
        total += counts[k];
      }
      os << pad_right("total", 8) << pad_left(std::to_string(total), 12) << '\n';
      break;
    }
  }
  return os.str();
}

}  // namespace frobtrace::cli
