// Copyright 2026 The hewer authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hewer/eval.hpp"

#include <omp.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "hewer/errors.hpp"

namespace hewer {

std::string_view match_mode_name(MatchMode mode) {
  return mode == MatchMode::strict ? "strict" : "lenient";
}

HitClass classify_hit(const std::string& unit_text,
                      const std::string& unit_parent_doc_id,
                      const AnswerKey& key) {
  if (!key.matches(unit_text)) return HitClass::none;
  if (key.supporting_doc_ids.count(unit_parent_doc_id)) return HitClass::strict;
  return HitClass::lenient;
}

RunRecord evaluate_run(const std::vector<RankedResult>& results,
                       const AnswerKeySet& keys, int n, const InvertedIndex& index,
                       int threads) {
  if (n < 1) throw PreconditionError("evaluation depth must be >= 1");
  RunRecord record;
  record.config.n = n;
  record.config.granularity = index.config().granularity;
  record.config.analyzer_fingerprint = index.config().analyzer.fingerprint();

  std::vector<std::pair<std::string, QuestionHits>> rows(results.size());
  std::vector<char> evaluable(results.size(), 0);

  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
  for (size_t i = 0; i < results.size(); ++i) {
    const RankedResult& rr = results[i];
    rows[i].first = rr.question_id;
    const AnswerKey* key = keys.find(rr.question_id);
    if (!key) continue;
    evaluable[i] = 1;
    QuestionHits hits;
    const size_t depth = std::min(rr.entries.size(), static_cast<size_t>(n));
    hits.retrieved = static_cast<int>(depth);
    for (size_t r = 0; r < depth; ++r) {
      const auto& entry = rr.entries[r];
      HitClass hc = classify_hit(index.unit_text(entry.unit_id),
                                 index.unit_parent(entry.unit_id), *key);
      if (hc != HitClass::none) ++hits.lenient_hits;
      if (hc == HitClass::strict) ++hits.strict_hits;
    }
    rows[i].second = hits;
  }

  for (size_t i = 0; i < results.size(); ++i) {
    if (evaluable[i])
      record.per_question[rows[i].first] = rows[i].second;
    else
      record.unevaluable.push_back(rows[i].first);
  }
  std::sort(record.unevaluable.begin(), record.unevaluable.end());
  return record;
}

namespace {

int hits_of(const QuestionHits& h, MatchMode mode) {
  return mode == MatchMode::strict ? h.strict_hits : h.lenient_hits;
}

void require_evaluable(const RunRecord& record) {
  if (record.per_question.empty())
    throw UndefinedMetricError("run '" + record.run_id +
                               "' has no evaluable questions");
}

}  // namespace

double coverage(const RunRecord& record, MatchMode mode) {
  require_evaluable(record);
  size_t covered = 0;
  for (const auto& [qid, hits] : record.per_question)
    if (hits_of(hits, mode) >= 1) ++covered;
  return static_cast<double>(covered) /
         static_cast<double>(record.per_question.size());
}

double redundancy(const RunRecord& record, MatchMode mode) {
  require_evaluable(record);
  long total = 0;
  for (const auto& [qid, hits] : record.per_question)
    total += hits_of(hits, mode);
  return static_cast<double>(total) /
         static_cast<double>(record.per_question.size());
}

DifficultSet identify_difficult(const std::vector<RunRecord>& runs, int n) {
  if (runs.empty())
    throw PreconditionError("identify_difficult needs at least one run");
  const auto& first = runs.front().per_question;
  for (const auto& run : runs) {
    if (run.config.n < n)
      throw PreconditionError("run '" + run.run_id + "' was evaluated at depth " +
                              std::to_string(run.config.n) +
                              ", below requested n=" + std::to_string(n));
    if (run.per_question.size() != first.size() ||
        !std::equal(run.per_question.begin(), run.per_question.end(),
                    first.begin(),
                    [](const auto& a, const auto& b) { return a.first == b.first; }))
      throw Error(ErrorCode::usage,
                  "runs cover mismatched question sets ('" + runs.front().run_id +
                      "' vs '" + run.run_id + "')");
  }

  DifficultSet out;
  out.n = n;
  for (const auto& run : runs) out.provenance.push_back(run.run_id);
  for (const auto& [qid, _] : first) {
    bool all_zero = true;
    for (const auto& run : runs) {
      const auto& hits = run.per_question.at(qid);
      if (hits.strict_hits > 0 || hits.lenient_hits > 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) out.question_ids.insert(qid);
  }
  return out;
}

bool RunFilter::accepts(const RunRecord& record) const {
  if (!run_ids.empty() &&
      std::find(run_ids.begin(), run_ids.end(), record.run_id) == run_ids.end())
    return false;
  if (!run_id_prefix.empty() &&
      record.run_id.compare(0, run_id_prefix.size(), run_id_prefix) != 0)
    return false;
  if (granularity && record.config.granularity != *granularity) return false;
  if (n && record.config.n != *n) return false;
  if (variant && record.config.variant != *variant) return false;
  if (question_set && record.config.question_set != *question_set) return false;
  if (rf_only && record.config.rf.empty()) return false;
  return true;
}

namespace {

nlohmann::ordered_json record_to_json(const RunRecord& record) {
  nlohmann::ordered_json j;
  j["schema_version"] = RunLog::kSchemaVersion;
  j["run_id"] = record.run_id;
  j["config"] = {
      {"granularity", std::string(granularity_name(record.config.granularity))},
      {"analyzer_fingerprint", record.config.analyzer_fingerprint},
      {"n", record.config.n},
      {"variant", record.config.variant},
      {"rf", record.config.rf},
      {"question_set", record.config.question_set},
  };
  nlohmann::ordered_json per_q;
  for (const auto& [qid, hits] : record.per_question)
    per_q[qid] = {hits.strict_hits, hits.lenient_hits, hits.retrieved};
  j["per_question"] = std::move(per_q);
  j["unevaluable"] = record.unevaluable;
  return j;
}

RunRecord record_from_json(const nlohmann::json& j, const std::string& path,
                           size_t line_no) {
  if (!j.contains("schema_version") ||
      j["schema_version"].get<int>() != RunLog::kSchemaVersion)
    throw SchemaError("run log " + path + " line " + std::to_string(line_no) +
                      ": schema version mismatch");
  RunRecord record;
  record.run_id = j["run_id"].get<std::string>();
  const auto& jc = j["config"];
  record.config.granularity =
      granularity_from_name(jc["granularity"].get<std::string>());
  record.config.analyzer_fingerprint =
      jc["analyzer_fingerprint"].get<std::string>();
  record.config.n = jc["n"].get<int>();
  record.config.variant = jc["variant"].get<std::string>();
  record.config.rf = jc["rf"].get<std::string>();
  record.config.question_set = jc["question_set"].get<std::string>();
  for (const auto& [qid, arr] : j["per_question"].items())
    record.per_question[qid] =
        QuestionHits{arr[0].get<int>(), arr[1].get<int>(), arr[2].get<int>()};
  record.unevaluable = j["unevaluable"].get<std::vector<std::string>>();
  return record;
}

}  // namespace

void RunLog::append(const RunRecord& record) const {
  if (std::filesystem::exists(path_)) {
    std::ifstream in(path_);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (line.empty()) continue;
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception&) {
        throw SchemaError("run log " + path_ + " line " +
                          std::to_string(line_no) + ": malformed record");
      }
      if (j.value("run_id", "") == record.run_id)
        throw CollisionError("run_id '" + record.run_id +
                             "' already present in " + path_);
    }
  }
  std::ofstream out(path_, std::ios::app | std::ios::binary);
  if (!out) throw IoError("cannot append to run log: " + path_);
  out << record_to_json(record).dump() << '\n';
  if (!out) throw IoError("failed writing run log: " + path_);
}

std::vector<RunRecord> RunLog::load(const RunFilter& filter) const {
  std::ifstream in(path_);
  if (!in) throw IoError("cannot open run log: " + path_);
  std::vector<RunRecord> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw SchemaError("run log " + path_ + " line " + std::to_string(line_no) +
                        ": malformed record");
    }
    RunRecord record = record_from_json(j, path_, line_no);
    if (filter.accepts(record)) out.push_back(std::move(record));
  }
  return out;
}

}  // namespace hewer
