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
#include <set>
#include <string>
#include <vector>

#include "hewer/eval.hpp"
#include "hewer/index.hpp"
#include "hewer/qa.hpp"
#include "hewer/report.hpp"

namespace hewer {

/// Blind RF settings: r feedback texts, k appended terms, and which
/// granularity supplies the feedback texts.
struct RfConfig {
  int r = 5;
  int k = 5;
  Granularity level = Granularity::document;

  void validate() const;
  /// Column label, e.g. "r=5 Doc".
  std::string label() const;
};

struct RfSelection {
  std::vector<std::string> terms;  // stems, TF desc then lexicographic
  bool empty_retrieval = false;    // nothing retrieved; RF vacuously skipped
};

/// Retrieves the top r units for query Q on the feed index, counts raw term
/// frequencies over their analyzed texts, removes question/target stems and
/// stopword stems, and returns the top k.
RfSelection select_rf_terms(const InvertedIndex& feed_index, const Question& q,
                            const RfConfig& cfg);

/// resolved_text + " " + terms joined by spaces; unchanged when empty.
std::string apply_rf(const Question& q, const std::vector<std::string>& terms);

struct RfExperiment {
  Table table;  // rank rows, one column per config, baseline last
  /// Per question and config label: the terms RF appended (audit output).
  std::map<std::string, std::map<std::string, std::vector<std::string>>> terms;
  /// Strict-coverage run records per rank, loggable for later reporting.
  std::vector<RunRecord> records;
};

/// Baseline and RF-extended retrieval for every question; strict coverage at
/// each requested rank. The coverage re-evaluation always runs on the base
/// index; configs only choose where feedback terms come from. Questions with
/// an empty initial retrieval keep their baseline result.
RfExperiment rf_coverage_experiment(
    const InvertedIndex& base_index,
    const std::map<Granularity, const InvertedIndex*>& feed_indexes,
    const std::vector<Question>& questions, const AnswerKeySet& keys,
    const std::vector<RfConfig>& configs, const std::vector<int>& ranks,
    int threads = 0);

struct RfIntersection {
  // pooled over questions (micro)
  double hew_found_in_irt = 0.0;
  double irt_containing_hew = 0.0;
  double rf_words_in_hew = 0.0;
  // per-question means (macro)
  double macro_hew_found_in_irt = 0.0;
  double macro_irt_containing_hew = 0.0;
  double macro_rf_words_in_hew = 0.0;
};

/// All three maps must be keyed by the same question set. IRT texts are the
/// analyzed stem lists of the top-r initially retrieved units.
RfIntersection rf_hew_intersection(
    const std::map<std::string, std::set<std::string>>& hew_sets,
    const std::map<std::string, std::vector<std::vector<std::string>>>& irt_texts,
    const std::map<std::string, std::vector<std::string>>& rf_terms);

Table render_rf_intersection(const std::vector<std::pair<std::string, RfIntersection>>& columns);

}  // namespace hewer
