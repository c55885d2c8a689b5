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

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "hewer/errors.hpp"
#include "hewer/index.hpp"
#include "oracles.hpp"

using namespace hewer;

namespace {

IndexConfig small_cfg() {
  IndexConfig cfg;
  cfg.granularity = Granularity::document;
  cfg.analyzer.stopwords = {"a", "the"};
  return cfg;
}

}  // namespace

TEST_CASE("build: postings reflect analyzed term counts") {
  auto idx = InvertedIndex::build(
      {UnitInput{"u1", "u1", "a cat"}, UnitInput{"u2", "u2", "the cat cat"}},
      small_cfg());
  const auto* plist = idx.postings("cat");
  REQUIRE(plist != nullptr);
  REQUIRE(plist->size() == 2);
  CHECK((*plist)[0].tf == 1);
  CHECK((*plist)[1].tf == 2);
  CHECK(idx.unit_length("u1") == 1);
  CHECK(idx.unit_length("u2") == 2);
}

TEST_CASE("build: empty unit list") {
  auto idx = InvertedIndex::build(std::vector<UnitInput>{}, small_cfg());
  CHECK(idx.unit_count() == 0);
  auto rr = idx.retrieve("q", "cat", 5);
  CHECK(rr.entries.empty());
}

TEST_CASE("build: all-stopword unit has length 0 and no postings") {
  auto idx = InvertedIndex::build(
      {UnitInput{"u1", "u1", "the a the"}, UnitInput{"u2", "u2", "cat"}},
      small_cfg());
  CHECK(idx.unit_length("u1") == 0);
  CHECK(idx.df("the") == 0);
  CHECK(idx.df("cat") == 1);
}

TEST_CASE("build: duplicate unit id rejected") {
  CHECK_THROWS_AS(
      InvertedIndex::build(
          {UnitInput{"u1", "u1", "x"}, UnitInput{"u1", "u1", "y"}}, small_cfg()),
      CollisionError);
}

TEST_CASE("score: tf=1, len=avglen collapses to the idf") {
  // single unit: idf = ln(1 + (1-1+0.5)/(1+0.5)) = ln(4/3), tf norm cancels
  auto idx = InvertedIndex::build({UnitInput{"u1", "u1", "cat"}}, small_cfg());
  double s = idx.score("u1", {"cat"});
  CHECK(s == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-12));
  // duplicate query stems contribute additively per occurrence
  CHECK(idx.score("u1", {"cat", "cat"}) == doctest::Approx(2.0 * s));
  // absent terms contribute zero
  CHECK(idx.score("u1", {"dog"}) == 0.0);

  // two units of equal length, one match: idf = ln(1 + 1.5/1.5) = ln 2
  auto two = InvertedIndex::build(
      {UnitInput{"u1", "u1", "cat"}, UnitInput{"u2", "u2", "dog"}}, small_cfg());
  CHECK(two.score("u1", {"cat"}) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
}

TEST_CASE("retrieve: stopword-only query flags empty status") {
  auto idx = InvertedIndex::build({UnitInput{"u1", "u1", "cat"}}, small_cfg());
  auto rr = idx.retrieve("q1", "the a", 5);
  CHECK(rr.empty_query);
  CHECK(rr.entries.empty());

  auto ok = idx.retrieve("q1", "cat", 5);
  CHECK_FALSE(ok.empty_query);
}

TEST_CASE("retrieve: n larger than matches returns all, no padding") {
  auto idx = InvertedIndex::build(
      {UnitInput{"u1", "u1", "overthrow leader"}, UnitInput{"u2", "u2", "cricket"},
       UnitInput{"u3", "u3", "monsoon"}, UnitInput{"u4", "u4", "overthrow"},
       UnitInput{"u5", "u5", "economy"}},
      small_cfg());
  auto rr = idx.retrieve("q1", "overthrow", 100);
  CHECK(rr.entries.size() == 2);
  for (const auto& e : rr.entries) CHECK(e.score > 0.0);
}

TEST_CASE("retrieve: unique term ranks its unit first") {
  std::vector<UnitInput> units{
      UnitInput{"u1", "u1", "cricket scores rose"},
      UnitInput{"u2", "u2", "the overthrow of the government"},
      UnitInput{"u3", "u3", "monsoon season"},
      UnitInput{"u4", "u4", "market economy"},
      UnitInput{"u5", "u5", "local elections"}};
  auto idx = InvertedIndex::build(units, small_cfg());
  auto rr = idx.retrieve("q1", "overthrow", 5);
  REQUIRE(!rr.entries.empty());
  CHECK(rr.entries[0].unit_id == "u2");
  // cross-check with the exhaustive scorer
  auto oracle = oracles::bm25_rank(units, "overthrow", small_cfg(), 5);
  REQUIRE(oracle.size() == rr.entries.size());
  CHECK(oracle[0].id == "u2");
}

TEST_CASE("retrieve: oracle equivalence on random corpora") {
  std::mt19937 rng(7);
  auto vocab = oracles::synth_vocab(60);
  for (int round = 0; round < 8; ++round) {
    auto units = oracles::synth_units(rng, 120, vocab);
    auto idx = InvertedIndex::build(units, small_cfg());
    for (int q = 0; q < 5; ++q) {
      auto query = oracles::synth_query(rng, vocab);
      auto got = idx.retrieve("q", query, 10);
      auto want = oracles::bm25_rank(units, query, small_cfg(), 10);
      REQUIRE(got.entries.size() == want.size());
      for (size_t i = 0; i < want.size(); ++i) {
        CHECK(got.entries[i].unit_id == want[i].id);
        CHECK(got.entries[i].score ==
              doctest::Approx(want[i].score).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("retrieve: prefix property in n") {
  std::mt19937 rng(11);
  auto vocab = oracles::synth_vocab(30);
  auto units = oracles::synth_units(rng, 200, vocab);
  auto idx = InvertedIndex::build(units, small_cfg());
  auto query = oracles::synth_query(rng, vocab, 2, 4);
  auto small = idx.retrieve("q", query, 3);
  auto large = idx.retrieve("q", query, 17);
  REQUIRE(small.entries.size() <= large.entries.size());
  for (size_t i = 0; i < small.entries.size(); ++i) {
    CHECK(small.entries[i].unit_id == large.entries[i].unit_id);
    CHECK(small.entries[i].score == large.entries[i].score);
  }
}

TEST_CASE("retrieve: ties break by unit id ascending") {
  // identical texts -> identical scores
  auto idx = InvertedIndex::build(
      {UnitInput{"b", "b", "cat dog"}, UnitInput{"a", "a", "cat dog"},
       UnitInput{"c", "c", "cat dog"}},
      small_cfg());
  auto rr = idx.retrieve("q", "cat", 3);
  REQUIRE(rr.entries.size() == 3);
  CHECK(rr.entries[0].unit_id == "a");
  CHECK(rr.entries[1].unit_id == "b");
  CHECK(rr.entries[2].unit_id == "c");
  CHECK(rr.entries[0].score == rr.entries[1].score);
}

TEST_CASE("parallel build and batch retrieval match the serial reference") {
  std::mt19937 rng(23);
  auto vocab = oracles::synth_vocab(80);
  auto units = oracles::synth_units(rng, 300, vocab, 5, 60);
  auto serial = InvertedIndex::build_serial(units, small_cfg());
  auto parallel = InvertedIndex::build(units, small_cfg(), 8);

  std::vector<QueryInput> queries;
  for (int i = 0; i < 40; ++i)
    queries.push_back(QueryInput{"q" + std::to_string(i),
                                 oracles::synth_query(rng, vocab)});
  auto a = serial.retrieve_batch_serial(queries, 10);
  auto b = parallel.retrieve_batch(queries, 10, 8);
  auto c = parallel.retrieve_batch(queries, 10, 1);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].entries.size() == b[i].entries.size());
    for (size_t j = 0; j < a[i].entries.size(); ++j) {
      CHECK(a[i].entries[j].unit_id == b[i].entries[j].unit_id);
      // bitwise identical across builds and thread counts
      CHECK(a[i].entries[j].score == b[i].entries[j].score);
      CHECK(b[i].entries[j].score == c[i].entries[j].score);
    }
  }
}

TEST_CASE("snapshot: save/load round trip preserves rankings") {
  std::mt19937 rng(31);
  auto vocab = oracles::synth_vocab(40);
  auto units = oracles::synth_units(rng, 80, vocab);
  auto idx = InvertedIndex::build(units, small_cfg());

  auto path = std::filesystem::temp_directory_path() / "hewer_idx_test.idx";
  idx.save(path.string());
  auto loaded = InvertedIndex::load(path.string());
  CHECK(loaded.unit_count() == idx.unit_count());
  CHECK(loaded.avg_length() == idx.avg_length());

  auto query = oracles::synth_query(rng, vocab);
  auto a = idx.retrieve("q", query, 10);
  auto b = loaded.retrieve("q", query, 10);
  REQUIRE(a.entries.size() == b.entries.size());
  for (size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].unit_id == b.entries[i].unit_id);
    CHECK(a.entries[i].score == b.entries[i].score);
  }
  std::filesystem::remove(path);
}

TEST_CASE("snapshot: bad magic raises a schema error") {
  auto path = std::filesystem::temp_directory_path() / "hewer_bad.idx";
  {
    std::FILE* f = std::fopen(path.string().c_str(), "wb");
    std::fputs("NOTANIDX", f);
    std::fclose(f);
  }
  CHECK_THROWS_AS(InvertedIndex::load(path.string()), SchemaError);
  std::filesystem::remove(path);
}

TEST_CASE("collect_units: passage level splits by paragraph") {
  std::istringstream in(
      "<DOC><DOCNO>D1</DOCNO><TEXT><P>alpha beta</P><P>gamma</P></TEXT></DOC>");
  Corpus corpus = parse_trec_sgml(in);
  auto docs = collect_units(corpus, Granularity::document);
  auto passages = collect_units(corpus, Granularity::passage);
  REQUIRE(docs.size() == 1);
  REQUIRE(passages.size() == 2);
  CHECK(passages[0].id == "D1#0");
  CHECK(passages[0].parent_id == "D1");
  CHECK(docs[0].parent_id == "D1");

  // the index reports exactly the corpus passage total
  IndexConfig pcfg;
  pcfg.granularity = Granularity::passage;
  auto idx = InvertedIndex::build(corpus, pcfg);
  CHECK(idx.unit_count() == corpus.passage_count());
}
