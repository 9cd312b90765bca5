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

#pragma once

// JSON renderings of results. Rationals appear as "p/q" strings; decimal
// companions use 12 significant digits, rounded so that printed bounds still
// enclose the exact ones.

#include <json.hpp>

#include <optional>
#include <string>

#include "cantorprod/errors.hpp"
#include "cantorprod/interval_set.hpp"
#include "cantorprod/oracle.hpp"
#include "cantorprod/phi_curve.hpp"
#include "cantorprod/product.hpp"

namespace cantorprod {

using Json = nlohmann::ordered_json;

inline constexpr int kDecimalDigits = 12;

/// {m, lambda, rank_k, depth_N, lower, upper, lower_decimal, upper_decimal,
/// certified}; `targeted` adds target_err and target_met.
Json enclosure_json(const Params& p, const MeasureEnclosure& e,
                    const TargetedApprox* targeted = nullptr);
Json chain_json(const Params& p, const ChainConditionReport& r);
Json remark2_json(const Remark2Report& r);
Json sandwich_json(const Params& p, const SandwichReport& r);
Json endpoint_json(const Params& p, const EndpointPairReport& r);
Json components_json(const ComponentsReport& r);
Json curve_json(int m, const std::vector<CurvePoint>& points, const MonotonicityReport& mono);
Json error_json(ErrorCode code, const std::string& message);

/// Two-space indented dump followed by a newline.
std::string dump(const Json& j);

}  // namespace cantorprod
