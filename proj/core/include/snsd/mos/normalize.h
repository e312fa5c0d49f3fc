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

#ifndef SNSD_MOS_NORMALIZE_H_
#define SNSD_MOS_NORMALIZE_H_

#include <string>

#include "snsd/mos/aggregate.h"

namespace snsd::mos {

struct AnchorPair {
  double noisy = 0.0;
  double wiener = 0.0;
};

// Affine map m(x) = a x + b taking the measured anchors onto the reference
// anchors. With two distinct measured and two distinct reference values the
// two-point fit is exact. If either pair coincides the fit is singular and
// the slope is pinned to 1: b = mean(reference) - mean(measured).
AnchorFit FitAnchorMap(AnchorPair measured, AnchorPair reference);

// a x + b clamped to the MOS scale [1, 5].
double ApplyAnchorMap(const AnchorFit &fit, double mos);

// Fills report.anchor_fit and report.normalized from the two anchor
// conditions' MOS. Throws InputDataError if either anchor is missing.
void NormalizeToReference(MosReport &report, const std::string &noisy_condition,
                          const std::string &reference_condition, AnchorPair reference);

}  // namespace snsd::mos

#endif  // SNSD_MOS_NORMALIZE_H_
