// Copyright 2026 The cantorprod Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cantorprod/serialize.hpp"

namespace cantorprod {

namespace {

std::string low(const Rational& x) { return to_decimal(x, kDecimalDigits, Rounding::TowardZero); }
std::string high(const Rational& x) {
  return to_decimal(x, kDecimalDigits, Rounding::AwayFromZero);
}
std::string near(const Rational& x) { return to_decimal(x, kDecimalDigits, Rounding::Nearest); }

Json interval_json(const RatInterval& iv) {
  return Json::array({to_exact_string(iv.lo), to_exact_string(iv.hi)});
}

}  // namespace

Json enclosure_json(const Params& p, const MeasureEnclosure& e, const TargetedApprox* targeted) {
  Json j;
  j["m"] = p.m();
  j["lambda"] = to_exact_string(p.lambda());
  j["mode"] = std::string(to_string(p.mode()));
  j["rank_k"] = e.rank_k;
  j["depth_N"] = e.depth_N;
  j["lower"] = to_exact_string(e.lower);
  j["upper"] = to_exact_string(e.upper);
  j["lower_decimal"] = low(e.lower);
  j["upper_decimal"] = high(e.upper);
  j["certified"] = e.certified;
  if (targeted != nullptr) {
    j["target_err"] = to_exact_string(targeted->target_err);
    j["target_met"] = targeted->target_met;
  }
  return j;
}

Json chain_json(const Params& p, const ChainConditionReport& r) {
  Json j;
  j["m"] = p.m();
  j["lambda"] = to_exact_string(p.lambda());
  j["quantity_h"] = to_exact_string(r.quantity_h);
  j["quantity_v"] = to_exact_string(r.quantity_v);
  j["quantity_claim"] = to_exact_string(r.quantity_claim);
  j["all_pass"] = r.all_pass;
  return j;
}

Json remark2_json(const Remark2Report& r) {
  Json j;
  j["target"] = interval_json(r.target);
  j["contained"] = r.contained;
  j["core_measure"] = to_exact_string(r.core_measure);
  j["core_measure_decimal"] = low(r.core_measure);
  j["coverage_gap"] = to_exact_string(r.coverage_gap);
  j["coverage_gap_decimal"] = near(r.coverage_gap);
  j["error_bound"] = to_exact_string(r.error_bound);
  j["error_bound_decimal"] = high(r.error_bound);
  j["gap_within_bound"] = r.gap_within_bound;
  return j;
}

Json sandwich_json(const Params& p, const SandwichReport& r) {
  Json j;
  j["m"] = p.m();
  j["lambda"] = to_exact_string(p.lambda());
  j["level_n"] = r.level_n;
  j["rank_k"] = r.enclosure.rank_k;
  j["depth_N"] = r.enclosure.depth_N;
  j["lower"] = to_exact_string(r.lower);
  j["lower_decimal"] = low(r.lower);
  j["outer"] = to_exact_string(r.outer);
  j["outer_decimal"] = high(r.outer);
  j["ok"] = r.ok;
  return j;
}

Json endpoint_json(const Params& p, const EndpointPairReport& r) {
  Json j;
  j["m"] = p.m();
  j["lambda"] = to_exact_string(p.lambda());
  j["level"] = r.level;
  j["rank_k"] = r.rank_k;
  j["pairs_tested"] = r.pairs_tested;
  j["all_absorbed"] = r.all_absorbed;
  Json w = Json::array();
  for (const auto& [x, y] : r.witnesses_of_failure)
    w.push_back(Json::array({to_exact_string(x), to_exact_string(y)}));
  j["witnesses_of_failure"] = w;
  return j;
}

Json components_json(const ComponentsReport& r) {
  Json j;
  j["count"] = r.count;
  j["total_length"] = to_exact_string(r.total_length);
  j["total_length_decimal"] = low(r.total_length);
  Json first = Json::array();
  for (const auto& iv : r.first) first.push_back(interval_json(iv));
  j["first"] = first;
  Json last = Json::array();
  for (const auto& iv : r.last) last.push_back(interval_json(iv));
  j["last"] = last;
  Json hist = Json::array();
  for (const auto& [exp, count] : r.length_histogram)
    hist.push_back(Json{{"log2_length", exp}, {"count", count}});
  j["length_histogram"] = hist;
  return j;
}

Json curve_json(int m, const std::vector<CurvePoint>& points, const MonotonicityReport& mono) {
  Json j;
  j["m"] = m;
  Json arr = Json::array();
  for (const auto& pt : points) {
    Json e;
    e["lambda"] = to_exact_string(pt.lambda);
    e["lower"] = to_exact_string(pt.lower);
    e["upper"] = to_exact_string(pt.upper);
    e["lower_decimal"] = low(pt.lower);
    e["upper_decimal"] = high(pt.upper);
    e["rank_k"] = pt.rank_k;
    e["depth_N"] = pt.depth_N;
    e["certified"] = pt.certified;
    e["target_met"] = pt.target_met;
    arr.push_back(e);
  }
  j["points"] = arr;
  Json pairs = Json::array();
  for (const auto& [a, b] : mono.violating_pairs) pairs.push_back(Json::array({a, b}));
  j["monotonicity"] = Json{{"is_consistent_with_increasing", mono.is_consistent_with_increasing},
                           {"violating_pairs", pairs}};
  return j;
}

Json error_json(ErrorCode code, const std::string& message) {
  return Json{{"error", Json{{"code", std::string(to_string(code))}, {"message", message}}}};
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace cantorprod
