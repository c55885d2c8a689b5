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

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "hewer/analysis.hpp"
#include "hewer/corpus.hpp"

namespace hewer {

enum class Granularity { document, passage };

std::string_view granularity_name(Granularity g);
Granularity granularity_from_name(std::string_view name);

struct IndexConfig {
  Granularity granularity = Granularity::passage;
  AnalyzerConfig analyzer;
  double k1 = 1.2;
  double b = 0.75;

  std::string fingerprint() const;
};

/// One retrievable unit: a whole document or a single passage.
struct UnitInput {
  std::string id;
  std::string parent_id;
  std::string text;
};

std::vector<UnitInput> collect_units(const Corpus& corpus, Granularity g);

struct ScoredEntry {
  std::string unit_id;
  double score = 0.0;
};

struct RankedResult {
  std::string question_id;
  std::vector<ScoredEntry> entries;  // score desc, unit_id asc; no zero scores
  bool empty_query = false;          // query analyzed to nothing; not an error
};

struct QueryInput {
  std::string question_id;
  std::string text;
};

struct Posting {
  uint32_t unit = 0;  // dense internal id, build order
  uint32_t tf = 0;
};

/// Immutable BM25 index over documents or passages. Construction can fan out
/// across OpenMP workers and merges postings deterministically; after build
/// any number of threads may query it concurrently.
class InvertedIndex {
 public:
  /// threads <= 0 means the OpenMP default.
  static InvertedIndex build(std::vector<UnitInput> units, IndexConfig cfg,
                             int threads = 0);
  static InvertedIndex build(const Corpus& corpus, IndexConfig cfg,
                             int threads = 0);
  /// Single-threaded reference kept for tests and the benchmark.
  static InvertedIndex build_serial(std::vector<UnitInput> units, IndexConfig cfg);

  /// BM25 with idf = ln(1 + (N - df + 0.5) / (df + 0.5)). Duplicate query
  /// stems contribute additively, once per occurrence, in the given order.
  double score(std::string_view unit_id,
               const std::vector<std::string>& query_stems) const;

  /// Analyzes the query with the index's analyzer and returns the top n units
  /// by score; ties break by unit_id ascending and zero scores are excluded.
  RankedResult retrieve(std::string_view question_id, std::string_view query_text,
                        int n) const;

  std::vector<RankedResult> retrieve_batch(const std::vector<QueryInput>& queries,
                                           int n, int threads = 0) const;
  std::vector<RankedResult> retrieve_batch_serial(
      const std::vector<QueryInput>& queries, int n) const;

  size_t unit_count() const { return unit_ids_.size(); }
  double avg_length() const { return avg_length_; }
  const IndexConfig& config() const { return cfg_; }
  const Analyzer& analyzer() const { return analyzer_; }

  bool has_unit(std::string_view unit_id) const;
  const std::string& unit_text(std::string_view unit_id) const;
  const std::string& unit_parent(std::string_view unit_id) const;
  uint32_t unit_length(std::string_view unit_id) const;
  const std::vector<std::string>& unit_ids() const { return unit_ids_; }

  size_t df(std::string_view stem) const;
  const std::vector<Posting>* postings(std::string_view stem) const;

  void save(const std::string& path) const;
  static InvertedIndex load(const std::string& path);

 private:
  InvertedIndex() = default;
  uint32_t internal_id(std::string_view unit_id) const;
  double score_internal(uint32_t unit, const std::vector<std::string>& stems) const;
  RankedResult rank(std::string_view question_id,
                    const std::vector<std::string>& stems, int n) const;
  void finish_build();

  IndexConfig cfg_;
  Analyzer analyzer_;
  std::vector<std::string> unit_ids_;
  std::vector<std::string> unit_parents_;
  std::vector<std::string> unit_texts_;
  std::vector<uint32_t> unit_lengths_;
  double avg_length_ = 0.0;
  std::unordered_map<std::string, uint32_t> id_lookup_;
  std::unordered_map<std::string, std::vector<Posting>> postings_;
};

}  // namespace hewer
