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
#include <vector>

#include "hewer/analysis.hpp"
#include "hewer/index.hpp"
#include "hewer/rf.hpp"

namespace hewer {

/// One declarative document describing a whole experiment sweep. Validated
/// before any work starts: every referenced path must exist and every named
/// configuration must resolve.
struct Manifest {
  std::string base_dir;  // directory of the manifest file; paths resolve here

  std::string corpus_path;
  std::string corpus_format = "auto";
  std::string questions_path;
  std::string questions_format = "auto";
  std::string patterns_path;
  std::string judgments_path;
  std::string stopwords_path;
  std::string titles_path;
  bool regex_icase = false;
  std::string question_set_label;

  AnalyzerConfig analyzer;  // stopwords filled from stopwords_path
  std::vector<Granularity> granularities;
  std::vector<std::string> variants;  // baseline variants: q, qt
  std::vector<int> depths;

  int difficulty_n = 20;

  bool mining_enabled = true;
  Granularity mining_granularity = Granularity::passage;
  int mining_n = 20;

  bool rf_enabled = true;
  std::vector<RfConfig> rf_configs;
  std::vector<int> rf_ranks;
  Granularity rf_base_granularity = Granularity::passage;

  std::vector<std::string> reports;

  std::string fingerprint() const;

  static Manifest load(const std::string& path);
};

}  // namespace hewer
