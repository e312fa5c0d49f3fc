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

#include "snsd/mos/study.h"

#include <algorithm>
#include <set>

#include <fmt/format.h>

#include "snsd/common/error.h"
#include "snsd/common/fs_util.h"
#include "study_json.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace snsd::mos {

std::vector<std::string> Study::Conditions() const {
  std::set<std::string> s;
  for (const auto &c : clips) s.insert(c.condition);
  return {s.begin(), s.end()};
}

void ValidateStudy(const Study &study, bool check_files) {
  const auto &cfg = study.config;
  if (study.clips.empty()) throw InvalidArgumentError("study has no clips to rate");
  if (cfg.ratings_per_clip_target < 1)
    throw InvalidArgumentError("ratings_per_clip_target must be at least 1");
  if (!(cfg.qualification_pass_fraction > 0.0 && cfg.qualification_pass_fraction <= 1.0))
    throw InvalidArgumentError("qualification_pass_fraction must lie in (0, 1]");
  if (cfg.qualification_retries < 0)
    throw InvalidArgumentError("qualification_retries must be non-negative");
  if (cfg.spam_window < 1) throw InvalidArgumentError("spam_window must be at least 1");
  if (!(cfg.spam_threshold > 0.0)) throw InvalidArgumentError("spam_threshold must be positive");
  if (!(cfg.assignment_lease_s > 0.0))
    throw InvalidArgumentError("assignment_lease_s must be positive");
  if (study.qualification.size() < 2)
    throw InvalidArgumentError("at least two qualification clips are required");

  std::set<std::string> rated_ids;
  std::set<fs::path> rated_paths;
  for (const auto &c : study.clips) {
    if (c.clip_id.empty() || c.condition.empty())
      throw InvalidArgumentError("every clip needs a clip_id and a condition");
    if (!rated_ids.insert(c.clip_id).second)
      throw InvalidArgumentError(fmt::format("duplicate clip_id '{}'", c.clip_id));
    rated_paths.insert(c.path.lexically_normal());
  }
  std::set<std::string> qual_ids;
  for (const auto &q : study.qualification) {
    if (q.expected != 1 && q.expected != 5)
      throw InvalidArgumentError(
          fmt::format("qualification clip '{}': expected rating must be 1 or 5", q.clip_id));
    if (rated_ids.count(q.clip_id) || rated_paths.count(q.path.lexically_normal()))
      throw InvalidArgumentError(
          fmt::format("qualification clip '{}' is also in the rated set", q.clip_id));
    if (!qual_ids.insert(q.clip_id).second)
      throw InvalidArgumentError(fmt::format("duplicate qualification clip '{}'", q.clip_id));
  }
  std::set<std::string> training_ids;
  for (const auto &t : study.training) {
    if (qual_ids.count(t.clip_id))
      throw InvalidArgumentError(
          fmt::format("training clip '{}' is also a qualification clip", t.clip_id));
    if (!training_ids.insert(t.clip_id).second)
      throw InvalidArgumentError(fmt::format("duplicate training clip '{}'", t.clip_id));
  }
  if (check_files) {
    auto need = [](const fs::path &p, const std::string &id) {
      std::error_code ec;
      if (!fs::is_regular_file(p, ec))
        throw InputDataError(fmt::format("clip '{}': file not found: {}", id, p.string()));
    };
    for (const auto &c : study.clips) need(c.path, c.clip_id);
    for (const auto &q : study.qualification) need(q.path, q.clip_id);
    for (const auto &t : study.training) need(t.path, t.clip_id);
  }
}

std::vector<TrainingClip> DefaultTrainingSet(const std::vector<StudyClip> &clips,
                                             std::size_t count) {
  std::vector<const StudyClip *> sorted;
  for (const auto &c : clips) sorted.push_back(&c);
  std::sort(sorted.begin(), sorted.end(),
            [](const StudyClip *a, const StudyClip *b) { return a->clip_id < b->clip_id; });
  count = std::min(count, sorted.size());
  std::vector<TrainingClip> out;
  for (std::size_t i = 0; i < count; ++i) {
    const StudyClip *c = sorted[i * sorted.size() / count];
    out.push_back({"training/" + c->clip_id, c->path});
  }
  return out;
}

std::vector<StudyClip> ClipsFromManifest(const std::vector<synth::MixtureRecord> &manifest,
                                         const fs::path &manifest_dir,
                                         const std::string &noisy_condition,
                                         const std::vector<ConditionSource> &conditions) {
  std::vector<StudyClip> out;
  for (const auto &row : manifest) {
    out.push_back({noisy_condition + "/" + row.clip_id, noisy_condition, row.noise_type,
                   manifest_dir / row.noisy_path});
    for (const auto &cond : conditions) {
      if (cond.name == noisy_condition)
        throw InvalidArgumentError(
            fmt::format("condition '{}' clashes with the noisy condition", cond.name));
      fs::path p = cond.directory / row.noisy_path.filename();
      std::error_code ec;
      if (!fs::exists(p, ec)) p = cond.directory / row.noisy_path;
      out.push_back({cond.name + "/" + row.clip_id, cond.name, row.noise_type, p});
    }
  }
  return out;
}

namespace internal {

json ConfigToJson(const StudyConfig &c) {
  return json{{"ratings_per_clip_target", c.ratings_per_clip_target},
              {"qualification_pass_fraction", c.qualification_pass_fraction},
              {"qualification_retries", c.qualification_retries},
              {"spam_window", c.spam_window},
              {"spam_threshold", c.spam_threshold},
              {"spam_min_peers", c.spam_min_peers},
              {"training_clip_count", c.training_clip_count},
              {"assignment_lease_s", c.assignment_lease_s},
              {"noisy_condition", c.noisy_condition},
              {"reference_condition", c.reference_condition},
              {"reference_noisy_mos", c.reference_noisy_mos},
              {"reference_wiener_mos", c.reference_wiener_mos}};
}

StudyConfig ConfigFromJson(const json &j) {
  StudyConfig c;
  if (!j.is_object()) throw InputDataError("study config must be a JSON object");
  static const std::set<std::string> known = {
      "ratings_per_clip_target", "qualification_pass_fraction", "qualification_retries",
      "spam_window",             "spam_threshold",              "spam_min_peers",
      "training_clip_count",     "assignment_lease_s",          "noisy_condition",
      "reference_condition",     "reference_noisy_mos",         "reference_wiener_mos"};
  for (const auto &[key, value] : j.items())
    if (!known.count(key)) throw InputDataError("unknown study config key '" + key + "'");
  c.ratings_per_clip_target = j.value("ratings_per_clip_target", c.ratings_per_clip_target);
  c.qualification_pass_fraction =
      j.value("qualification_pass_fraction", c.qualification_pass_fraction);
  c.qualification_retries = j.value("qualification_retries", c.qualification_retries);
  c.spam_window = j.value("spam_window", c.spam_window);
  c.spam_threshold = j.value("spam_threshold", c.spam_threshold);
  c.spam_min_peers = j.value("spam_min_peers", c.spam_min_peers);
  c.training_clip_count = j.value("training_clip_count", c.training_clip_count);
  c.assignment_lease_s = j.value("assignment_lease_s", c.assignment_lease_s);
  c.noisy_condition = j.value("noisy_condition", c.noisy_condition);
  c.reference_condition = j.value("reference_condition", c.reference_condition);
  c.reference_noisy_mos = j.value("reference_noisy_mos", c.reference_noisy_mos);
  c.reference_wiener_mos = j.value("reference_wiener_mos", c.reference_wiener_mos);
  return c;
}

json StudyToJsonValue(const Study &s) {
  json clips = json::array(), qual = json::array(), training = json::array();
  for (const auto &c : s.clips)
    clips.push_back({{"clip_id", c.clip_id},
                     {"condition", c.condition},
                     {"noise_type", c.noise_type},
                     {"path", c.path.generic_string()}});
  for (const auto &q : s.qualification)
    qual.push_back(
        {{"clip_id", q.clip_id}, {"expected", q.expected}, {"path", q.path.generic_string()}});
  for (const auto &t : s.training)
    training.push_back({{"clip_id", t.clip_id}, {"path", t.path.generic_string()}});
  return json{{"study_id", s.study_id},
              {"config", ConfigToJson(s.config)},
              {"clips", clips},
              {"qualification", qual},
              {"training", training}};
}

Study StudyFromJsonValue(const json &j) {
  Study s;
  s.study_id = j.at("study_id").get<std::string>();
  s.config = ConfigFromJson(j.at("config"));
  for (const auto &c : j.at("clips"))
    s.clips.push_back({c.at("clip_id").get<std::string>(), c.at("condition").get<std::string>(),
                       c.value("noise_type", std::string()),
                       fs::path(c.at("path").get<std::string>())});
  for (const auto &q : j.at("qualification"))
    s.qualification.push_back({q.at("clip_id").get<std::string>(), q.at("expected").get<int>(),
                               fs::path(q.at("path").get<std::string>())});
  for (const auto &t : j.at("training"))
    s.training.push_back(
        {t.at("clip_id").get<std::string>(), fs::path(t.at("path").get<std::string>())});
  return s;
}

}  // namespace internal

namespace {

fs::path Resolve(const fs::path &base, const std::string &p) {
  fs::path path(p);
  return path.is_absolute() ? path : base / path;
}

}  // namespace

Study ParseStudySpec(const std::string &json_text, const fs::path &base_dir) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception &e) {
    throw InputDataError(std::string("study spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputDataError("study spec must be a JSON object");
  try {
    Study s;
    s.study_id = j.value("study_id", std::string());
    if (j.contains("config")) s.config = internal::ConfigFromJson(j.at("config"));

    if (j.contains("clips")) {
      for (const auto &c : j.at("clips"))
        s.clips.push_back({c.at("clip_id").get<std::string>(),
                           c.at("condition").get<std::string>(),
                           c.value("noise_type", std::string()),
                           Resolve(base_dir, c.at("path").get<std::string>())});
    } else if (j.contains("manifest") || j.contains("manifest_tsv")) {
      std::vector<synth::MixtureRecord> manifest;
      fs::path manifest_dir;
      if (j.contains("manifest")) {
        fs::path mpath = Resolve(base_dir, j.at("manifest").get<std::string>());
        manifest = synth::ReadManifest(mpath);
        manifest_dir = mpath.parent_path();
      } else {
        manifest = synth::ParseManifest(j.at("manifest_tsv").get<std::string>(), "manifest_tsv");
        manifest_dir = Resolve(base_dir, j.value("manifest_dir", std::string(".")));
      }
      std::vector<ConditionSource> conditions;
      if (j.contains("conditions"))
        for (const auto &[name, dir] : j.at("conditions").items())
          conditions.push_back({name, Resolve(base_dir, dir.get<std::string>())});
      s.clips = ClipsFromManifest(manifest, manifest_dir, s.config.noisy_condition, conditions);
    } else {
      throw InputDataError("study spec needs \"clips\" or a \"manifest\"");
    }

    if (j.contains("qualification"))
      for (const auto &q : j.at("qualification"))
        s.qualification.push_back({q.at("clip_id").get<std::string>(),
                                   q.at("expected").get<int>(),
                                   Resolve(base_dir, q.at("path").get<std::string>())});
    if (j.contains("training")) {
      for (const auto &t : j.at("training"))
        s.training.push_back(
            {t.at("clip_id").get<std::string>(), Resolve(base_dir, t.at("path").get<std::string>())});
    } else {
      s.training = DefaultTrainingSet(s.clips, s.config.training_clip_count);
    }
    return s;
  } catch (const json::exception &e) {
    throw InputDataError(std::string("study spec: ") + e.what());
  }
}

std::string StudyToJson(const Study &study) {
  return internal::StudyToJsonValue(study).dump(2);
}

}  // namespace snsd::mos
