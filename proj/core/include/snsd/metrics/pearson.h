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

#ifndef SNSD_METRICS_PEARSON_H_
#define SNSD_METRICS_PEARSON_H_

#include <span>

#include "snsd/common/error.h"

namespace snsd::metrics {

class UndefinedCorrelationError : public InvalidArgumentError {
 public:
  explicit UndefinedCorrelationError(const std::string &what)
      : InvalidArgumentError("correlation undefined: " + what) {}
};

// Sample Pearson correlation of two equal-length sequences (n >= 3).
// Throws UndefinedCorrelationError when either sequence is constant.
double PearsonCorrelation(std::span<const double> x, std::span<const double> y);

}  // namespace snsd::metrics

#endif  // SNSD_METRICS_PEARSON_H_
