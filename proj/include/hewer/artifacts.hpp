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

// On-disk formats the pipeline stages compose through. Every file embeds the
// fingerprint of the configuration that produced it: JSONL files in a _meta
// first line, TSV files in a leading '#' comment.

#include <string>
#include <vector>

#include "hewer/eval.hpp"
#include "hewer/index.hpp"
#include "hewer/mining.hpp"
#include "hewer/report.hpp"

namespace hewer {

struct RankedFileMeta {
  std::string fingerprint;
  int n = 0;
  std::string variant;
  std::string granularity;
};

void write_ranked_jsonl(const std::string& path, const RankedFileMeta& meta,
                        const std::vector<RankedResult>& results);
std::vector<RankedResult> read_ranked_jsonl(const std::string& path,
                                            RankedFileMeta* meta = nullptr);

void write_difficult_json(const std::string& path, const DifficultSet& set,
                          const std::string& fingerprint);
DifficultSet read_difficult_json(const std::string& path);

void write_candidates_jsonl(const std::string& path,
                            const std::vector<CandidateSet>& sets,
                            const std::string& fingerprint);
std::vector<CandidateSet> read_candidates_jsonl(const std::string& path);

void write_hew_jsonl(const std::string& path, const std::vector<HewRecord>& records,
                     const std::string& fingerprint);
std::vector<HewRecord> read_hew_jsonl(const std::string& path);

/// Six-row summary in the shape of the extension experiment table:
/// counts plain, the benefited row as "count (pct%)", means 3-decimal.
std::string render_hew_summary(const HewSummary& summary,
                               const std::string& fingerprint);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace hewer
