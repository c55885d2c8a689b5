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

#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hewer/index.hpp"
#include "hewer/qa.hpp"

namespace hewer {

/// strict implies the lenient condition also held (the regex matched).
enum class HitClass { none, lenient, strict };

enum class MatchMode { strict, lenient };

std::string_view match_mode_name(MatchMode mode);

/// Lenient when any answer pattern matches the retrieved text; strict when
/// additionally the unit's parent document id is judged supporting. At
/// passage granularity the parent document's id feeds the strict test while
/// the regex runs over the passage text alone.
HitClass classify_hit(const std::string& unit_text,
                      const std::string& unit_parent_doc_id,
                      const AnswerKey& key);

struct QuestionHits {
  int strict_hits = 0;
  int lenient_hits = 0;
  int retrieved = 0;
};

struct RunConfigInfo {
  Granularity granularity = Granularity::passage;
  std::string analyzer_fingerprint;
  int n = 0;                 // retrieval depth the counts were taken at
  std::string variant;       // q, qt, qe, qte
  std::string rf;            // empty unless RF produced the queries
  std::string question_set;  // label for report grouping
};

struct RunRecord {
  std::string run_id;
  RunConfigInfo config;
  std::map<std::string, QuestionHits> per_question;  // evaluable questions
  std::vector<std::string> unevaluable;              // qids without answer keys
};

/// Counts strict/lenient hits among the top n entries of every ranked list.
/// Questions without an answer key land in `unevaluable` and stay out of all
/// metric denominators.
RunRecord evaluate_run(const std::vector<RankedResult>& results,
                       const AnswerKeySet& keys, int n, const InvertedIndex& index,
                       int threads = 0);

/// Proportion of evaluable questions with at least one hit of the mode.
double coverage(const RunRecord& record, MatchMode mode);

/// Mean number of hit texts per evaluable question; never exceeds n.
double redundancy(const RunRecord& record, MatchMode mode);

struct DifficultSet {
  std::set<std::string> question_ids;
  std::vector<std::string> provenance;  // run ids consulted
  int n = 0;
};

/// Questions with zero strict and zero lenient hits in every supplied run.
/// All runs must cover the same evaluable question set at depth >= n.
DifficultSet identify_difficult(const std::vector<RunRecord>& runs, int n);

struct RunFilter {
  std::vector<std::string> run_ids;  // empty = any
  std::string run_id_prefix;         // empty = any
  std::optional<Granularity> granularity;
  std::optional<int> n;
  std::optional<std::string> variant;
  std::optional<std::string> question_set;
  bool rf_only = false;

  bool accepts(const RunRecord& record) const;
};

/// Append-only JSONL run log with a versioned schema. Single writer, any
/// number of readers.
class RunLog {
 public:
  explicit RunLog(std::string path) : path_(std::move(path)) {}

  /// Throws CollisionError when the run_id is already present.
  void append(const RunRecord& record) const;
  std::vector<RunRecord> load(const RunFilter& filter = {}) const;

  static constexpr int kSchemaVersion = 1;

 private:
  std::string path_;
};

}  // namespace hewer
