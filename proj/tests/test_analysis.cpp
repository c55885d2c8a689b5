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

#include "hewer/analysis.hpp"
#include "hewer/porter.hpp"

using namespace hewer;

namespace {

AnalyzerConfig default_cfg() {
  AnalyzerConfig cfg;
  cfg.stopwords = load_word_list(std::string(HEWER_DATA_DIR) + "/stopwords.txt");
  return cfg;
}

std::vector<std::string> surfaces(const std::vector<Term>& terms) {
  std::vector<std::string> out;
  for (const auto& t : terms) out.push_back(t.surface);
  return out;
}

}  // namespace

TEST_CASE("tokenize: empty input") { CHECK(tokenize("").empty()); }

TEST_CASE("tokenize: plain question text") {
  CHECK(tokenize("Who was the nominal leader after the overthrow?") ==
        std::vector<std::string>{"Who", "was", "the", "nominal", "leader",
                                 "after", "the", "overthrow"});
}

TEST_CASE("tokenize: abbreviations and trailing punctuation") {
  CHECK(tokenize("Lt. Col. Smith, 1999.") ==
        std::vector<std::string>{"Lt", "Col", "Smith", "1999"});
  CHECK(tokenize("the U.S. economy") ==
        std::vector<std::string>{"the", "U.S", "economy"});
  CHECK(tokenize("don't stop") == std::vector<std::string>{"don't", "stop"});
}

TEST_CASE("tokenize: spans point at the original bytes") {
  std::string text = "Gen X, aged 30.";
  auto spans = tokenize_spans(text);
  REQUIRE(spans.size() == 4);
  for (const auto& s : spans)
    CHECK(text.substr(s.begin, s.end - s.begin) == s.text);
  CHECK(spans[3].text == "30");
}

TEST_CASE("tokenize: invalid UTF-8 bytes separate tokens") {
  std::string text = "abc\xFFzzz";
  CHECK(tokenize(text) == std::vector<std::string>{"abc", "zzz"});
  // valid multibyte characters stay inside tokens
  CHECK(tokenize("caf\xC3\xA9 bar") == std::vector<std::string>{"caf\xC3\xA9", "bar"});
}

TEST_CASE("analyze: stopword and number handling") {
  auto cfg = default_cfg();
  auto terms = analyze("the overthrow", cfg);
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].surface == "overthrow");
  CHECK(terms[0].stem == "overthrow");

  CHECK(analyze("", cfg).empty());

  cfg.strip_numbers = true;
  CHECK(analyze("in 1999", cfg).empty());
  cfg.strip_numbers = false;
  auto with_number = analyze("in 1999", cfg);
  REQUIRE(with_number.size() == 1);
  CHECK(with_number[0].stem == "1999");
}

TEST_CASE("analyze: order and duplicates preserved") {
  auto cfg = default_cfg();
  auto terms = analyze("Pakistan overthrow Pakistan", cfg);
  CHECK(surfaces(terms) ==
        std::vector<std::string>{"Pakistan", "overthrow", "Pakistan"});
  CHECK(terms[0].stem == terms[2].stem);
}

TEST_CASE("analyze: deterministic and pure") {
  auto cfg = default_cfg();
  std::string text = "Lt. Col. Smith commanded the 82nd Airborne in 1999.";
  auto a = analyze(text, cfg);
  auto b = analyze(text, cfg);
  CHECK(a == b);
}

TEST_CASE("analyze: no output stem lands in the stemmed stopword closure") {
  auto cfg = default_cfg();
  Analyzer analyzer(cfg);
  // "differs" is not on the list but stems to the same stem as "different",
  // which is; the stem-closure pass drops it.
  CHECK(analyzer.analyze("differs").empty());

  std::string text =
      "The new commander, using whatever was available, differs greatly from "
      "anything the council had known; willing officers gathered in Islamabad "
      "during 1999 and waited.";
  for (const auto& term : analyzer.analyze(text)) {
    CHECK(!analyzer.is_stop_stem(term.stem));
    CHECK(!analyzer.is_stop_surface(fold_case(term.surface)));
  }
}

TEST_CASE("analyze: strip_numbers leaves no digit-only stems") {
  auto cfg = default_cfg();
  cfg.strip_numbers = true;
  for (const auto& term :
       analyze("12 men, 82nd Airborne, 1999, version 2.0, x9", cfg))
    CHECK(!all_digits(term.stem));
}

TEST_CASE("analyzer config fingerprints") {
  auto cfg = default_cfg();
  auto fp = cfg.fingerprint();
  CHECK(fp.size() == 16);
  CHECK(cfg.fingerprint() == fp);  // stable
  auto other = cfg;
  other.strip_numbers = true;
  CHECK(other.fingerprint() != fp);
  // order of the stopword list does not matter
  auto shuffled = cfg;
  std::rotate(shuffled.stopwords.begin(), shuffled.stopwords.begin() + 7,
              shuffled.stopwords.end());
  CHECK(shuffled.fingerprint() == fp);
}

TEST_CASE("analyze: lowercase disabled keeps surface case, stems still fold") {
  AnalyzerConfig cfg;
  cfg.lowercase = false;
  auto terms = analyze("Running FAST", cfg);
  REQUIRE(terms.size() == 2);
  CHECK(terms[0].surface == "Running");
  CHECK(terms[0].stem == "run");
  CHECK(terms[1].stem == "fast");
}
