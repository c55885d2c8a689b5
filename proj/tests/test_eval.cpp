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
#include <sstream>

#include "hewer/errors.hpp"
#include "hewer/eval.hpp"

using namespace hewer;

namespace {

AnswerKey make_key(const std::string& qid, std::vector<std::string> patterns,
                   std::set<std::string> docs) {
  AnswerKey key;
  key.question_id = qid;
  for (const auto& p : patterns) {
    key.pattern_sources.push_back(p);
    key.patterns.push_back(compile_answer_pattern(p, false, qid));
  }
  key.supporting_doc_ids = std::move(docs);
  return key;
}

// Small two-doc index: doc A holds the answer text, doc B noise.
InvertedIndex answer_index() {
  IndexConfig cfg;
  cfg.granularity = Granularity::document;
  return InvertedIndex::build(
      {UnitInput{"A", "A", "General Musharraf led the overthrow"},
       UnitInput{"B", "B", "cricket scores and monsoon news"},
       UnitInput{"C", "C", "General Musharraf in Kashmir"}},
      cfg);
}

RunRecord record_with(std::map<std::string, QuestionHits> hits, int n) {
  RunRecord r;
  r.run_id = "test";
  r.config.n = n;
  r.per_question = std::move(hits);
  return r;
}

}  // namespace

TEST_CASE("classify_hit: the three classes") {
  auto key = make_key("q", {"Musharraf"}, {"A"});
  CHECK(classify_hit("General Musharraf spoke", "A", key) == HitClass::strict);
  CHECK(classify_hit("General Musharraf spoke", "Z", key) == HitClass::lenient);
  CHECK(classify_hit("no answer here", "A", key) == HitClass::none);
}

TEST_CASE("evaluate_run: depth truncation") {
  RankedResult rr;
  rr.question_id = "q";
  rr.entries = {{"B", 3.0}, {"B2", 2.5}, {"A", 2.0}};  // hit at rank 3

  IndexConfig cfg;
  cfg.granularity = Granularity::document;
  auto idx = InvertedIndex::build(
      {UnitInput{"A", "A", "General Musharraf led the overthrow"},
       UnitInput{"B", "B", "noise"}, UnitInput{"B2", "B2", "more noise"}},
      cfg);
  AnswerKeySet keys;
  keys.by_qid["q"] = make_key("q", {"Musharraf"}, {"A"});

  auto full = evaluate_run({rr}, keys, 20, idx);
  CHECK(full.per_question.at("q").lenient_hits == 1);
  CHECK(full.per_question.at("q").strict_hits == 1);
  CHECK(full.per_question.at("q").retrieved == 3);

  auto cut = evaluate_run({rr}, keys, 2, idx);
  CHECK(cut.per_question.at("q").lenient_hits == 0);
  CHECK(cut.per_question.at("q").retrieved == 2);

  RankedResult empty;
  empty.question_id = "q";
  auto none = evaluate_run({empty}, keys, 20, idx);
  CHECK(none.per_question.at("q").lenient_hits == 0);
}

TEST_CASE("evaluate_run: questions without keys are unevaluable") {
  auto idx = answer_index();
  AnswerKeySet keys;
  keys.by_qid["q1"] = make_key("q1", {"Musharraf"}, {"A"});
  RankedResult r1{"q1", {{"A", 1.0}}, false};
  RankedResult r2{"q2", {{"A", 1.0}}, false};
  auto rec = evaluate_run({r1, r2}, keys, 20, idx);
  CHECK(rec.per_question.size() == 1);
  REQUIRE(rec.unevaluable.size() == 1);
  CHECK(rec.unevaluable[0] == "q2");
  // excluded from denominators
  CHECK(coverage(rec, MatchMode::strict) == 1.0);
}

TEST_CASE("coverage and redundancy basics") {
  auto rec = record_with({{"a", {0, 0, 5}},
                          {"b", {0, 0, 5}},
                          {"c", {2, 4, 5}},
                          {"d", {1, 4, 5}}},
                         20);
  CHECK(coverage(rec, MatchMode::lenient) == 0.5);
  CHECK(coverage(rec, MatchMode::strict) == 0.5);
  CHECK(redundancy(rec, MatchMode::lenient) == 2.0);
  CHECK(redundancy(rec, MatchMode::strict) == 0.75);

  auto zeros = record_with({{"a", {0, 0, 5}}, {"b", {0, 0, 5}}}, 20);
  CHECK(coverage(zeros, MatchMode::lenient) == 0.0);
  CHECK(redundancy(zeros, MatchMode::strict) == 0.0);

  RunRecord empty;
  CHECK_THROWS_AS(coverage(empty, MatchMode::strict), UndefinedMetricError);
  CHECK_THROWS_AS(redundancy(empty, MatchMode::strict), UndefinedMetricError);
}

TEST_CASE("strict never exceeds lenient") {
  auto rec = record_with({{"a", {1, 3, 5}}, {"b", {0, 2, 5}}}, 20);
  CHECK(coverage(rec, MatchMode::strict) <= coverage(rec, MatchMode::lenient));
  CHECK(redundancy(rec, MatchMode::strict) <= redundancy(rec, MatchMode::lenient));
}

TEST_CASE("identify_difficult: zero hits across all runs") {
  auto r1 = record_with({{"a", {0, 0, 5}}, {"b", {0, 1, 5}}, {"c", {0, 0, 5}}}, 20);
  r1.run_id = "r1";
  auto r2 = record_with({{"a", {0, 0, 5}}, {"b", {0, 0, 5}}, {"c", {0, 0, 5}}}, 20);
  r2.run_id = "r2";
  auto dset = identify_difficult({r1, r2}, 20);
  CHECK(dset.question_ids == std::set<std::string>{"a", "c"});
  CHECK(dset.provenance == std::vector<std::string>{"r1", "r2"});
  CHECK(dset.n == 20);

  // one lenient hit anywhere rescues the question
  auto r3 = record_with({{"a", {0, 1, 5}}, {"b", {0, 0, 5}}, {"c", {0, 0, 5}}}, 20);
  r3.run_id = "r3";
  auto smaller = identify_difficult({r1, r2, r3}, 20);
  CHECK(smaller.question_ids == std::set<std::string>{"c"});
}

TEST_CASE("identify_difficult: superset of runs gives subset of questions") {
  auto r1 = record_with({{"a", {0, 0, 5}}, {"b", {0, 0, 5}}}, 20);
  r1.run_id = "r1";
  auto r2 = record_with({{"a", {0, 2, 5}}, {"b", {0, 0, 5}}}, 20);
  r2.run_id = "r2";
  auto base = identify_difficult({r1}, 20);
  auto more = identify_difficult({r1, r2}, 20);
  for (const auto& qid : more.question_ids) CHECK(base.question_ids.count(qid));
}

TEST_CASE("identify_difficult: mismatched question sets rejected") {
  auto r1 = record_with({{"a", {0, 0, 5}}}, 20);
  auto r2 = record_with({{"b", {0, 0, 5}}}, 20);
  CHECK_THROWS_AS(identify_difficult({r1, r2}, 20), Error);
}

TEST_CASE("identify_difficult: depth below n rejected") {
  auto r1 = record_with({{"a", {0, 0, 5}}}, 10);
  CHECK_THROWS_AS(identify_difficult({r1}, 20), PreconditionError);
}

TEST_CASE("run log: append, reload, filter, collide") {
  auto path = std::filesystem::temp_directory_path() / "hewer_runlog_test.jsonl";
  std::filesystem::remove(path);
  RunLog log(path.string());

  auto rec = record_with({{"a", {1, 2, 5}}, {"b", {0, 0, 5}}}, 20);
  rec.run_id = "passage-q-n20";
  rec.config.granularity = Granularity::passage;
  rec.config.variant = "q";
  rec.config.question_set = "fixture";
  rec.unevaluable = {"zz"};
  log.append(rec);

  auto rec2 = rec;
  rec2.run_id = "document-q-n20";
  rec2.config.granularity = Granularity::document;
  log.append(rec2);

  auto all = log.load();
  REQUIRE(all.size() == 2);
  CHECK(all[0].run_id == "passage-q-n20");
  CHECK(all[0].per_question.at("a").lenient_hits == 2);
  CHECK(all[0].unevaluable == std::vector<std::string>{"zz"});
  CHECK(all[0].config.question_set == "fixture");

  RunFilter by_gran;
  by_gran.granularity = Granularity::passage;
  CHECK(log.load(by_gran).size() == 1);

  RunFilter by_prefix;
  by_prefix.run_id_prefix = "document-";
  CHECK(log.load(by_prefix).size() == 1);

  CHECK_THROWS_AS(log.append(rec), CollisionError);
  std::filesystem::remove(path);
}
