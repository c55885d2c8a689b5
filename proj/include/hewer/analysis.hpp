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
#include <string_view>
#include <unordered_set>
#include <vector>

namespace hewer {

/// An analyzed token: the surface form as it appeared in the text plus the
/// normalized stem used for matching.
struct Term {
  std::string surface;
  std::string stem;

  bool operator==(const Term&) const = default;
};

/// Byte range of a token within the original text, for span-based filtering.
struct TokenSpan {
  size_t begin = 0;
  size_t end = 0;  // one past the last byte
  std::string text;
};

/// Normalization settings shared by indexing, query formulation, mining and
/// RF term selection. An empty stopword list disables stopping. When
/// stop_on_stems is set (the default), a term is also dropped when its final
/// stem falls in the stemmed closure of the stopword list, so stopword
/// inflections the list misses cannot leak through as stems.
struct AnalyzerConfig {
  bool lowercase = true;
  bool strip_numbers = false;
  bool stem = true;
  bool stop_on_stems = true;
  std::vector<std::string> stopwords;

  bool stopping_enabled() const { return !stopwords.empty(); }
  /// Stable hex digest of every field; order of the stopword list does not
  /// matter.
  std::string fingerprint() const;
};

/// Compiled form of an AnalyzerConfig. Immutable after construction and safe
/// to share across threads.
class Analyzer {
 public:
  Analyzer() : Analyzer(AnalyzerConfig{}) {}
  explicit Analyzer(AnalyzerConfig cfg);

  const AnalyzerConfig& config() const { return cfg_; }

  /// tokenize -> lowercase -> stop (surface) -> strip numbers -> stem ->
  /// stop (stem closure). Order and duplicates preserved.
  std::vector<Term> analyze(std::string_view text) const;

  /// Stems only, in text order; convenience for query processing.
  std::vector<std::string> stems(std::string_view text) const;

  /// Applies the pipeline's normalization to a single token (no stopping).
  std::string normalize_token(std::string_view token) const;

  bool is_stop_surface(std::string_view folded) const;
  bool is_stop_stem(std::string_view stem) const;

 private:
  AnalyzerConfig cfg_;
  std::unordered_set<std::string> stop_surface_;
  std::unordered_set<std::string> stop_stems_;
};

/// Splits text into maximal runs of alphanumeric characters; '.' and '\''
/// are token characters only between two alphanumerics, so "Lt." loses its
/// period but "U.S" and "don't" stay whole. Bytes outside ASCII that form
/// valid UTF-8 are treated as word characters; invalid sequences are replaced
/// with U+FFFD, which separates tokens.
std::vector<std::string> tokenize(std::string_view text);
std::vector<TokenSpan> tokenize_spans(std::string_view text);

std::vector<Term> analyze(std::string_view text, const AnalyzerConfig& cfg);

std::string fold_case(std::string_view s);
bool all_digits(std::string_view s);

/// One word per line, UTF-8, '#' comment lines and blanks ignored.
std::vector<std::string> load_word_list(const std::string& path);

}  // namespace hewer
