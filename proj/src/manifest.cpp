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

#include "hewer/manifest.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hewer/errors.hpp"
#include "hewer/fingerprint.hpp"

namespace hewer {

namespace fs = std::filesystem;

namespace {

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_absolute()) return path;
  return (fs::path(base_dir) / p).string();
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty())
    throw SchemaError("manifest: missing required path for " + what);
  if (!fs::exists(path))
    throw SchemaError("manifest: " + what + " path does not exist: " + path);
}

}  // namespace

std::string Manifest::fingerprint() const {
  std::ostringstream os;
  os << corpus_path << '|' << corpus_format << '|' << questions_path << '|'
     << patterns_path << '|' << judgments_path << '|' << regex_icase << '|'
     << analyzer.fingerprint() << '|';
  for (auto g : granularities) os << granularity_name(g) << ',';
  os << '|';
  for (const auto& v : variants) os << v << ',';
  os << '|';
  for (int n : depths) os << n << ',';
  os << "|difficulty=" << difficulty_n << "|mining=" << mining_enabled << ','
     << granularity_name(mining_granularity) << ',' << mining_n
     << "|rf=" << rf_enabled << ',' << granularity_name(rf_base_granularity);
  for (const auto& c : rf_configs)
    os << ',' << c.r << '/' << c.k << '/' << granularity_name(c.level);
  os << '|';
  for (int r : rf_ranks) os << r << ',';
  return to_hex(fnv1a64(os.str()));
}

Manifest Manifest::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open manifest: " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("manifest " + path + " is not valid JSON: " + e.what());
  }
  if (j.value("schema_version", -1) != 1)
    throw SchemaError("manifest " + path + ": schema version mismatch");

  Manifest m;
  m.base_dir = fs::path(path).parent_path().string();
  if (m.base_dir.empty()) m.base_dir = ".";

  const auto& corpus = j.at("corpus");
  m.corpus_path = resolve(m.base_dir, corpus.at("path").get<std::string>());
  m.corpus_format = corpus.value("format", "auto");

  m.questions_path = resolve(m.base_dir, j.at("questions").get<std::string>());
  m.questions_format = j.value("questions_format", "auto");
  m.patterns_path = resolve(m.base_dir, j.at("patterns").get<std::string>());
  m.judgments_path = resolve(m.base_dir, j.at("judgments").get<std::string>());
  m.stopwords_path = resolve(m.base_dir, j.value("stopwords", ""));
  m.titles_path = resolve(m.base_dir, j.value("titles", ""));
  m.regex_icase = j.value("regex_icase", false);
  m.question_set_label =
      j.value("question_set", fs::path(m.questions_path).stem().string());

  if (j.contains("analyzer")) {
    const auto& ja = j["analyzer"];
    m.analyzer.lowercase = ja.value("lowercase", true);
    m.analyzer.strip_numbers = ja.value("strip_numbers", false);
    m.analyzer.stem = ja.value("stem", true);
    m.analyzer.stop_on_stems = ja.value("stop_on_stems", true);
  }

  for (const auto& g : j.value("granularities", std::vector<std::string>{"passage"}))
    m.granularities.push_back(granularity_from_name(g));
  m.variants = j.value("variants", std::vector<std::string>{"q", "qt"});
  for (const auto& v : m.variants)
    if (v != "q" && v != "qt")
      throw SchemaError("manifest: baseline variants must be q or qt, got " + v);
  m.depths = j.value("depths", std::vector<int>{20});
  std::sort(m.depths.begin(), m.depths.end());
  for (int n : m.depths)
    if (n < 1) throw SchemaError("manifest: depths must be >= 1");

  if (j.contains("difficulty")) m.difficulty_n = j["difficulty"].value("n", 20);
  if (std::find(m.depths.begin(), m.depths.end(), m.difficulty_n) == m.depths.end())
    throw SchemaError("manifest: difficulty n=" + std::to_string(m.difficulty_n) +
                      " must be one of the evaluated depths");

  if (j.contains("mining")) {
    const auto& jm = j["mining"];
    m.mining_enabled = jm.value("enabled", true);
    m.mining_granularity =
        granularity_from_name(jm.value("granularity", "passage"));
    m.mining_n = jm.value("n", m.difficulty_n);
  }

  if (j.contains("rf")) {
    const auto& jr = j["rf"];
    m.rf_enabled = jr.value("enabled", true);
    m.rf_base_granularity =
        granularity_from_name(jr.value("base_granularity", "passage"));
    if (jr.contains("configs")) {
      for (const auto& jc : jr["configs"]) {
        RfConfig cfg;
        cfg.r = jc.value("r", 5);
        cfg.k = jc.value("k", 5);
        cfg.level = granularity_from_name(jc.value("level", "document"));
        cfg.validate();
        m.rf_configs.push_back(cfg);
      }
    }
    m.rf_ranks = jr.value("ranks", std::vector<int>{});
    std::sort(m.rf_ranks.begin(), m.rf_ranks.end());
  }
  if (m.rf_enabled && m.rf_configs.empty())
    m.rf_configs.push_back(RfConfig{5, 5, Granularity::document});
  if (m.rf_enabled && m.rf_ranks.empty()) m.rf_ranks = m.depths;

  m.reports = j.value("reports",
                      std::vector<std::string>{"coverage_table", "difficult_counts",
                                               "common_difficult"});

  // fail fast: everything referenced must exist before any work starts
  require_file(m.corpus_path, "corpus");
  require_file(m.questions_path, "questions");
  require_file(m.patterns_path, "patterns");
  require_file(m.judgments_path, "judgments");
  if (!m.stopwords_path.empty()) require_file(m.stopwords_path, "stopwords");
  if (!m.titles_path.empty()) require_file(m.titles_path, "titles");
  if (m.granularities.empty())
    throw SchemaError("manifest: at least one granularity required");
  if (m.mining_enabled &&
      std::find(m.granularities.begin(), m.granularities.end(),
                m.mining_granularity) == m.granularities.end())
    throw SchemaError("manifest: mining granularity not among built indexes");
  if (m.rf_enabled) {
    if (std::find(m.granularities.begin(), m.granularities.end(),
                  m.rf_base_granularity) == m.granularities.end())
      throw SchemaError("manifest: rf base granularity not among built indexes");
    for (const auto& cfg : m.rf_configs)
      if (std::find(m.granularities.begin(), m.granularities.end(), cfg.level) ==
          m.granularities.end())
        throw SchemaError("manifest: rf feed level not among built indexes");
  }
  for (const auto& r : m.reports) report_kind_from_name(r);
  return m;
}

}  // namespace hewer
