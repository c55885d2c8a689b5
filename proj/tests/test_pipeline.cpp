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

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "hewer/artifacts.hpp"
#include "hewer/errors.hpp"
#include "hewer/pipeline.hpp"

using namespace hewer;
namespace fs = std::filesystem;

namespace {

const char* kManifestPath = HEWER_DATA_DIR "/fixtures/mini/manifest.json";

std::map<std::string, std::string> tree_bytes(const fs::path& root) {
  std::map<std::string, std::string> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (!entry.is_regular_file()) continue;
    std::ifstream in(entry.path(), std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    files[fs::relative(entry.path(), root).generic_string()] = os.str();
  }
  return files;
}

fs::path fresh_dir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("manifest: loads and validates the bundled fixture") {
  auto m = Manifest::load(kManifestPath);
  CHECK(m.granularities.size() == 2);
  CHECK(m.difficulty_n == 20);
  CHECK(m.question_set_label == "mini");
  CHECK(m.rf_configs.size() == 2);
  CHECK(!m.fingerprint().empty());
}

TEST_CASE("manifest: missing referenced file fails validation") {
  auto dir = fresh_dir("hewer_manifest_bad");
  fs::create_directories(dir);
  std::ofstream(dir / "m.json")
      << "{\"schema_version\":1,\"corpus\":{\"path\":\"nope.trec\"},"
         "\"questions\":\"nope.tsv\",\"patterns\":\"p\",\"judgments\":\"j\"}";
  CHECK_THROWS_AS(Manifest::load((dir / "m.json").string()), SchemaError);
  fs::remove_all(dir);
}

TEST_CASE("pipeline: full fixture run produces the expected artifacts") {
  auto m = Manifest::load(kManifestPath);
  auto out = fresh_dir("hewer_pipe_a");
  PipelineOptions opt;
  opt.out_dir = out.string();
  opt.threads = 1;
  opt.quiet = true;
  run_manifest(m, opt);

  // difficult set is exactly the four constructed misses
  auto difficult = read_difficult_json((out / "difficult.json").string());
  CHECK(difficult.question_ids ==
        std::set<std::string>{"q07", "q08", "q09", "q10"});
  CHECK(difficult.n == 20);
  CHECK(difficult.provenance.size() == 4);  // 2 granularities x 2 variants

  // every difficult question was mined and benefited
  auto candidates = read_candidates_jsonl((out / "candidates.jsonl").string());
  CHECK(candidates.size() == 4);
  for (const auto& cs : candidates) CHECK(!cs.candidates.empty());

  auto hew = read_hew_jsonl((out / "hew.jsonl").string());
  CHECK(!hew.empty());
  auto by_q = hew_stems_by_question(hew);
  CHECK(by_q.size() == 4);
  // the planted rescuers are present
  CHECK(by_q.at("q07").count("islamabad"));
  CHECK(by_q.at("q08").count("norilsk"));
  CHECK(by_q.at("q09").count("frame"));
  CHECK(by_q.at("q10").count("carcass"));

  // summary carries the exact ratio field
  std::ifstream summary(out / "hew_summary.tsv");
  std::string text((std::istreambuf_iterator<char>(summary)),
                   std::istreambuf_iterator<char>());
  CHECK(text.find("Difficult questions used\t4") != std::string::npos);
  CHECK(text.find("Questions that benefited\t4 (100.0%)") != std::string::npos);

  // all report renderings exist
  for (const char* name :
       {"coverage_table", "difficult_counts", "common_difficult", "rf_table"}) {
    CHECK(fs::exists(out / "reports" / (std::string(name) + ".tsv")));
    CHECK(fs::exists(out / "reports" / (std::string(name) + ".txt")));
  }
  CHECK(fs::exists(out / "rf_table.tsv"));
  CHECK(fs::exists(out / "rf_terms.jsonl"));
  CHECK(fs::exists(out / "rf_intersection.tsv"));
  CHECK(fs::exists(out / "indexes/passage.idx"));
  CHECK(fs::exists(out / "indexes/document.idx"));

  // reusing the directory is a collision
  CHECK_THROWS_AS(run_manifest(m, opt), CollisionError);
  fs::remove_all(out);
}

TEST_CASE("pipeline: byte-identical trees across thread counts") {
  auto m = Manifest::load(kManifestPath);
  auto out1 = fresh_dir("hewer_pipe_t1");
  auto out8 = fresh_dir("hewer_pipe_t8");

  PipelineOptions a;
  a.out_dir = out1.string();
  a.threads = 1;
  a.quiet = true;
  run_manifest(m, a);

  PipelineOptions b;
  b.out_dir = out8.string();
  b.threads = 8;
  b.quiet = true;
  run_manifest(m, b);

  auto t1 = tree_bytes(out1);
  auto t8 = tree_bytes(out8);
  REQUIRE(t1.size() == t8.size());
  for (const auto& [rel, bytes] : t1) {
    REQUIRE(t8.count(rel));
    CHECK_MESSAGE(t8.at(rel) == bytes, "file differs: ", rel);
  }
  fs::remove_all(out1);
  fs::remove_all(out8);
}
