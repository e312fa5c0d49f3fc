// Copyright 2026  The snsd Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include "snsd/mos/normalize.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "snsd/common/error.h"

namespace snsd::mos {

namespace {

constexpr double kDegenerateGap = 1e-9;

}  // namespace

AnchorFit FitAnchorMap(AnchorPair measured, AnchorPair reference) {
  AnchorFit fit;
  const double dm = measured.wiener - measured.noisy;
  const double dr = reference.wiener - reference.noisy;
  if (std::abs(dm) < kDegenerateGap || std::abs(dr) < kDegenerateGap) {
    fit.a = 1.0;
    fit.b = 0.5 * (reference.noisy + reference.wiener) - 0.5 * (measured.noisy + measured.wiener);
    fit.offset_only = true;
    return fit;
  }
  fit.a = dr / dm;
  fit.b = reference.noisy - fit.a * measured.noisy;
  return fit;
}

double ApplyAnchorMap(const AnchorFit &fit, double mos) {
  return std::clamp(fit.a * mos + fit.b, 1.0, 5.0);
}

void NormalizeToReference(MosReport &report, const std::string &noisy_condition,
                          const std::string &reference_condition, AnchorPair reference) {
  auto find = [&](const std::string &name) -> const ConditionMos & {
    for (const auto &c : report.conditions)
      if (c.condition == name) return c;
    throw InputDataError(fmt::format("anchor condition '{}' has no ratings", name));
  };
  AnchorPair measured{find(noisy_condition).mos, find(reference_condition).mos};
  const AnchorFit fit = FitAnchorMap(measured, reference);
  report.anchor_fit = fit;
  report.normalized.clear();
  for (const auto &c : report.conditions)
    report.normalized.push_back({c.condition, c.mos, ApplyAnchorMap(fit, c.mos)});
}

}  // namespace snsd::mos
