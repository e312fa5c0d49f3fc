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

#include "snsd/metrics/pearson.h"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace snsd::metrics {

namespace {

double Mean(std::span<const double> v) {
  double sum = 0.0;
  for (double x : v) sum += x;
  return sum / static_cast<double>(v.size());
}

}  // namespace

double PearsonCorrelation(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw InvalidArgumentError(
        fmt::format("pearson: length mismatch ({} vs {})", x.size(), y.size()));
  if (x.size() < 3)
    throw InvalidArgumentError(fmt::format("pearson: need at least 3 pairs, got {}", x.size()));
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
      throw InvalidArgumentError("pearson: non-finite input");

  // Two-pass centred sums keep affine rescaling exact to rounding.
  const double mx = Mean(x), my = Mean(y);
  double sxx = 0.0, syy = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    syy += dy * dy;
    sxy += dx * dy;
  }
  if (sxx == 0.0) throw UndefinedCorrelationError("first sequence is constant");
  if (syy == 0.0) throw UndefinedCorrelationError("second sequence is constant");
  return std::clamp(sxy / (std::sqrt(sxx) * std::sqrt(syy)), -1.0, 1.0);
}

}  // namespace snsd::metrics
