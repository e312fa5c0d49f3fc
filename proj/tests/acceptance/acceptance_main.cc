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

// Acceptance suite. Prints one PASS or FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include "acceptance/criteria.h"

namespace snsd::acceptance {

void Checks::Expect(bool ok, const std::string &what) {
  if (!ok) failures_.push_back(what);
}

Outcome Checks::Finish(std::string summary) const {
  if (failures_.empty()) return {true, std::move(summary)};
  std::string detail = summary + "; failed: " + failures_.front();
  if (failures_.size() > 1) detail += " (+" + std::to_string(failures_.size() - 1) + " more)";
  return {false, detail};
}

}  // namespace snsd::acceptance

int main() {
  using namespace snsd::acceptance;
  std::vector<Criterion> all;
  for (auto group : {SynthCriteria, EnhanceCriteria, MetricsCriteria, MosCriteria, ServiceCriteria})
    for (auto &c : group()) all.push_back(std::move(c));

  int failed = 0;
  for (const auto &c : all) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.name.c_str(), o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(all.size()) - failed, all.size());
  return failed == 0 ? 0 : 1;
}
