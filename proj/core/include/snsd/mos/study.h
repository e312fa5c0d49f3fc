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

#ifndef SNSD_MOS_STUDY_H_
#define SNSD_MOS_STUDY_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "snsd/synth/manifest.h"

namespace snsd::mos {

// One rateable item: a clip processed by one condition ("Noisy", "Wiener",
// a method under test, ...).
struct StudyClip {
  std::string clip_id;
  std::string condition;
  std::string noise_type;
  std::filesystem::path path;
  friend bool operator==(const StudyClip &, const StudyClip &) = default;
};

// Trap clip with a known answer: 5 for clean speech, 1 for very noisy.
struct QualificationClip {
  std::string clip_id;
  int expected = 5;
  std::filesystem::path path;
  friend bool operator==(const QualificationClip &, const QualificationClip &) = default;
};

struct TrainingClip {
  std::string clip_id;
  std::filesystem::path path;
  friend bool operator==(const TrainingClip &, const TrainingClip &) = default;
};

struct StudyConfig {
  int ratings_per_clip_target = 10;
  // Fraction of qualification answers that must be right.
  double qualification_pass_fraction = 0.8;
  // Failed qualification attempts allowed before the judge is blocked.
  int qualification_retries = 1;
  // Spam control: mean |score - peer mean| over the last `spam_window`
  // ratings on clips with at least `spam_min_peers` other ratings.
  std::size_t spam_window = 20;
  double spam_threshold = 1.5;
  std::size_t spam_min_peers = 3;
  // Default training set size when none is given.
  std::size_t training_clip_count = 5;
  // An unanswered assignment stops reserving its clip after this long.
  double assignment_lease_s = 600.0;
  // Anchors for normalization.
  std::string noisy_condition = "Noisy";
  std::string reference_condition = "Wiener";
  double reference_noisy_mos = 2.45;
  double reference_wiener_mos = 2.45;

  friend bool operator==(const StudyConfig &, const StudyConfig &) = default;
};

struct Study {
  std::string study_id;
  StudyConfig config;
  std::vector<StudyClip> clips;
  std::vector<QualificationClip> qualification;
  std::vector<TrainingClip> training;

  std::vector<std::string> Conditions() const;  // sorted, unique
  friend bool operator==(const Study &, const Study &) = default;
};

// Throws InvalidArgumentError / InputDataError when: no clips, duplicate
// clip ids (within or across sets), fewer than two qualification clips,
// expected values other than 1 or 5, qualification clips that are also
// rated, a non-positive rating target, or (with check_files) a referenced
// file that does not exist.
void ValidateStudy(const Study &study, bool check_files);

// Picks `count` training clips spread evenly over the rated set, by clip id.
std::vector<TrainingClip> DefaultTrainingSet(const std::vector<StudyClip> &clips,
                                             std::size_t count);

// One extra condition whose files mirror the noisy files of a manifest.
struct ConditionSource {
  std::string name;
  std::filesystem::path directory;
};

// Builds the rated set from a corpus manifest: every row contributes one
// item for the noisy condition plus one per extra condition. The item id is
// "<condition>/<manifest clip_id>". An enhanced file is looked up as
// <directory>/<noisy file name>, then <directory>/<noisy_path>.
std::vector<StudyClip> ClipsFromManifest(const std::vector<synth::MixtureRecord> &manifest,
                                         const std::filesystem::path &manifest_dir,
                                         const std::string &noisy_condition,
                                         const std::vector<ConditionSource> &conditions);

// JSON study description (see README). Relative paths resolve against
// `base_dir`. A "manifest" (path) or "manifest_tsv" (inline text) plus
// "conditions" may replace an explicit "clips" list; training defaults to
// DefaultTrainingSet when omitted.
Study ParseStudySpec(const std::string &json_text, const std::filesystem::path &base_dir);
std::string StudyToJson(const Study &study);

}  // namespace snsd::mos

#endif  // SNSD_MOS_STUDY_H_
