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

#include <string>
#include <unordered_set>
#include <vector>

#include "hewer/eval.hpp"
#include "hewer/index.hpp"
#include "hewer/qa.hpp"

namespace hewer {

/// Terms kept as candidates even when a mining filter would drop them
/// (titles and similar appellations). Matched case-insensitively on the
/// token surface.
class TitleWhitelist {
 public:
  TitleWhitelist() = default;
  explicit TitleWhitelist(const std::vector<std::string>& terms);
  static TitleWhitelist load(const std::string& path);

  bool contains(std::string_view folded_surface) const;
  size_t size() const { return folded_.size(); }

 private:
  std::unordered_set<std::string> folded_;
};

struct FilterCounts {
  int question_words = 0;
  int target_words = 0;
  int answer_words = 0;
  int stopwords = 0;
  int numbers = 0;
  std::vector<std::string> retained_titles;  // whitelist saves, surfaces
};

struct CandidateSet {
  std::string question_id;
  std::vector<Term> candidates;  // deduped by stem, first-occurrence order
  int source_passage_count = 0;
  FilterCounts filters_applied;
  std::vector<std::string> missing_doc_ids;
};

/// Passages of the judged supporting documents whose text matches at least
/// one answer pattern, in corpus document order. Supporting ids absent from
/// the corpus are skipped and reported through `missing`.
std::vector<Passage> collect_answer_passages(const AnswerKey& key,
                                             const Corpus& corpus,
                                             std::vector<std::string>* missing = nullptr);

/// Harvests candidate extension terms from answer-bearing passages:
/// analyzer normalization, then removal of question/target stems, tokens
/// inside answer-pattern match spans, stopwords and (when the analyzer strips
/// numbers) digit tokens. Whitelisted titles survive every filter.
CandidateSet mine_candidates(const std::vector<Passage>& passages,
                             const Question& question, const AnswerKey& key,
                             const Analyzer& analyzer,
                             const TitleWhitelist& whitelist);

/// One (question, extension term, variant) retrieval observation.
struct HewRecord {
  std::string question_id;
  std::string term;  // surface form appended to the query
  std::string stem;
  VariantKind variant = VariantKind::QE;  // QE or QTE
  double strict_redundancy = 0.0;
  double lenient_redundancy = 0.0;
  double baseline_strict = 0.0;  // zero for difficult questions

  bool is_hew() const { return baseline_strict == 0.0 && strict_redundancy > 0.0; }
};

struct ExtensionEvaluation {
  std::vector<HewRecord> records;  // candidate order, QE then QTE
  double baseline_q_strict = 0.0;
  double baseline_q_lenient = 0.0;
  double baseline_qt_strict = 0.0;
  double baseline_qt_lenient = 0.0;
};

/// Runs Q+E and Q+T+E for every candidate at depth n and classifies hits
/// with the question's own key. The question must be difficult at depth n
/// (zero strict and lenient hits for both Q and Q+T); candidates must not
/// collide with question or target stems.
ExtensionEvaluation evaluate_extensions(const InvertedIndex& index,
                                        const Question& question,
                                        const CandidateSet& candidates, int n,
                                        const AnswerKeySet& keys, int threads = 0);

struct HewSummary {
  int difficult_used = 0;
  long variations_tested = 0;  // (question, candidate, variant) retrievals
  int questions_benefited = 0;
  double benefited_fraction = 0.0;
  long hew_count_strict = 0;  // distinct (question, term) HEW pairs
  double mean_hew_per_question = 0.0;
  double mean_redundancy_increase = 0.0;  // over HEW pairs, max variant
};

HewSummary hew_stats(const std::vector<HewRecord>& records, int difficult_used);

/// HEW stems grouped per question, for the RF intersection analysis.
std::map<std::string, std::set<std::string>> hew_stems_by_question(
    const std::vector<HewRecord>& records);

}  // namespace hewer
