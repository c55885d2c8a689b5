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

#include <sstream>

#include "hewer/errors.hpp"
#include "hewer/qa.hpp"

using namespace hewer;

TEST_CASE("parse_questions: tsv with and without resolved text") {
  std::istringstream in(
      "# comment\n"
      "q1\ts1\tWarren Moon\tWhere did he play in college?\tWhere did Warren "
      "Moon play in college?\n"
      "q2\ts1\tWarren Moon\tWhen was he born?\n");
  auto qs = parse_questions(in, "tsv");
  REQUIRE(qs.size() == 2);
  CHECK(qs[0].resolved_text == "Where did Warren Moon play in college?");
  CHECK(qs[1].resolved_text == qs[1].raw_text);  // documented default
}

TEST_CASE("parse_questions: duplicate id rejected") {
  std::istringstream in("q1\ts\tT\ttext\nq1\ts\tT\ttext\n");
  CHECK_THROWS_AS(parse_questions(in, "tsv"), CollisionError);
}

TEST_CASE("parse_questions: missing field names the line") {
  std::istringstream in("q1\ts1\n");
  try {
    parse_questions(in, "tsv");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("line 1") != std::string::npos);
  }
}

TEST_CASE("parse_questions: jsonl") {
  std::istringstream in(
      "{\"question_id\":\"q1\",\"series_id\":\"s1\",\"target\":\"T\","
      "\"raw_text\":\"Who?\"}\n");
  auto qs = parse_questions(in, "jsonl");
  REQUIRE(qs.size() == 1);
  CHECK(qs[0].resolved_text == "Who?");
}

TEST_CASE("parse_answer_keys: merge patterns and judgments") {
  std::istringstream pats(
      "q1 General\\s+Musharraf\n"
      "q1 Pervez\n"
      "q2 Kashmir\n");
  std::istringstream judg(
      "q1 APW19990101.0001\n"
      "q1 APW19990101.0002\n"
      "q1 NYT19990101.0003\n");
  auto keys = parse_answer_keys(pats, judg);
  REQUIRE(keys.by_qid.size() == 2);
  const auto& k1 = keys.by_qid.at("q1");
  CHECK(k1.patterns.size() == 2);
  CHECK(k1.supporting_doc_ids.size() == 3);
  // q2 has patterns but no judged docs: strict impossible, lenient fine
  CHECK(keys.by_qid.at("q2").supporting_doc_ids.empty());
  CHECK(k1.matches("General  Musharraf spoke"));
  CHECK_FALSE(k1.matches("General Zia spoke"));
}

TEST_CASE("parse_answer_keys: judgment-only qid skipped with warning") {
  std::istringstream pats("q1 x\n");
  std::istringstream judg("q9 DOC1\n");
  auto keys = parse_answer_keys(pats, judg);
  CHECK(keys.by_qid.count("q9") == 0);
  REQUIRE(keys.warnings.size() == 1);
  CHECK(keys.warnings[0].find("q9") != std::string::npos);
}

TEST_CASE("compile_answer_pattern: bad regex names qid and pattern") {
  std::istringstream pats("q1 *invalid(\n");
  std::istringstream judg("");
  try {
    parse_answer_keys(pats, judg);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    std::string msg = e.what();
    CHECK(msg.find("q1") != std::string::npos);
    CHECK(msg.find("*invalid(") != std::string::npos);
  }
}

TEST_CASE("compile_answer_pattern: backreferences rejected") {
  CHECK_THROWS_AS(compile_answer_pattern("(a)\\1", false, "q1"), ParseError);
  // escaped backslash before a digit is not a backreference
  CHECK_NOTHROW(compile_answer_pattern("a\\\\1", false, "q1"));
}

TEST_CASE("compile_answer_pattern: global case flag") {
  auto sensitive = compile_answer_pattern("Musharraf", false, "q");
  auto insensitive = compile_answer_pattern("Musharraf", true, "q");
  CHECK_FALSE(std::regex_search(std::string("MUSHARRAF"), sensitive));
  CHECK(std::regex_search(std::string("MUSHARRAF"), insensitive));
}

TEST_CASE("match_spans: every span of every pattern") {
  AnswerKey key;
  key.patterns.push_back(compile_answer_pattern("ab", false, "q"));
  key.patterns.push_back(compile_answer_pattern("ba", false, "q"));
  auto spans = key.match_spans("abab");
  // "ab" at 0 and 2; "ba" at 1
  REQUIRE(spans.size() == 3);
}

TEST_CASE("formulate_query: the four variants") {
  Question q;
  q.question_id = "q1";
  q.target = "Warren Moon";
  q.raw_text = "Where did he play in college?";
  q.resolved_text = "Where did he play in college?";

  CHECK(formulate_query(q, {VariantKind::Q, {}}) == q.resolved_text);
  auto qt = formulate_query(q, {VariantKind::QT, {}});
  CHECK(qt == "Where did he play in college? Warren Moon");
  auto qte = formulate_query(q, {VariantKind::QTE, "NFL"});
  CHECK(qte == "Where did he play in college? Warren Moon NFL");
  auto qe = formulate_query(q, {VariantKind::QE, "NFL"});
  CHECK(qe == "Where did he play in college? NFL");

  // prefix chain: Q < QT < QTE
  CHECK(qt.compare(0, q.resolved_text.size(), q.resolved_text) == 0);
  CHECK(qte.compare(0, qt.size(), qt) == 0);
}

TEST_CASE("round trip: question and answer key records are lossless") {
  std::istringstream qin(
      "q7\ts7\tPakistani government overthrown in 1999\tWho was the nominal "
      "leader after the overthrow?\tWho was the nominal leader after the "
      "overthrow?\n");
  auto questions = parse_questions(qin, "tsv");
  REQUIRE(questions.size() == 1);
  std::istringstream again(question_to_tsv(questions[0]));
  auto reparsed = parse_questions(again, "tsv");
  REQUIRE(reparsed.size() == 1);
  CHECK(reparsed[0].question_id == questions[0].question_id);
  CHECK(reparsed[0].series_id == questions[0].series_id);
  CHECK(reparsed[0].target == questions[0].target);
  CHECK(reparsed[0].raw_text == questions[0].raw_text);
  CHECK(reparsed[0].resolved_text == questions[0].resolved_text);

  std::istringstream pats("q7 General\\s+Musharraf\nq7 Pervez\n");
  std::istringstream judg("q7 D07\nq7 D99\n");
  auto keys = parse_answer_keys(pats, judg);
  const auto& key = keys.by_qid.at("q7");
  std::istringstream pats2(answer_key_pattern_lines(key));
  std::istringstream judg2(answer_key_judgment_lines(key));
  auto keys2 = parse_answer_keys(pats2, judg2);
  const auto& key2 = keys2.by_qid.at("q7");
  CHECK(key2.pattern_sources == key.pattern_sources);
  CHECK(key2.supporting_doc_ids == key.supporting_doc_ids);
}

TEST_CASE("formulate_query: extension presence enforced") {
  Question q;
  q.resolved_text = "x";
  CHECK_THROWS_AS(formulate_query(q, {VariantKind::QE, {}}), PreconditionError);
  CHECK_THROWS_AS(formulate_query(q, {VariantKind::Q, "ext"}), PreconditionError);
}
