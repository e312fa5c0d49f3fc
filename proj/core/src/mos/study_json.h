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

// JSON codecs shared by the study, event and report translation units.

#ifndef SNSD_MOS_STUDY_JSON_H_
#define SNSD_MOS_STUDY_JSON_H_

#include <filesystem>

#include <nlohmann/json.hpp>

#include "snsd/mos/study.h"

namespace snsd::mos::internal {

nlohmann::json ConfigToJson(const StudyConfig &config);
StudyConfig ConfigFromJson(const nlohmann::json &j);

nlohmann::json StudyToJsonValue(const Study &study);
// Strict inverse of StudyToJsonValue; paths are taken verbatim.
Study StudyFromJsonValue(const nlohmann::json &j);

}  // namespace snsd::mos::internal

#endif  // SNSD_MOS_STUDY_JSON_H_
