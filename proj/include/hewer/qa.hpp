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

#include <istream>
#include <map>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace hewer {

struct Question {
  std::string question_id;
  std::string series_id;
  std::string target;
  std::string raw_text;
  std::string resolved_text;  // anaphora already resolved upstream
};

/// Regex patterns plus the judged supporting documents for one question.
/// Patterns use ECMAScript syntax with backreferences rejected; an optional
/// global flag makes all of them case-insensitive.
struct AnswerKey {
  std::string question_id;
  std::vector<std::string> pattern_sources;
  std::vector<std::regex> patterns;
  std::set<std::string> supporting_doc_ids;

  bool matches(const std::string& text) const;
  /// Byte ranges [begin, end) of every match of every pattern.
  std::vector<std::pair<size_t, size_t>> match_spans(const std::string& text) const;
};

struct AnswerKeySet {
  std::map<std::string, AnswerKey> by_qid;
  std::vector<std::string> warnings;

  const AnswerKey* find(std::string_view qid) const;
};

enum class VariantKind { Q, QT, QE, QTE };

std::string_view variant_name(VariantKind kind);
VariantKind variant_from_name(std::string_view name);

struct QueryVariant {
  VariantKind kind = VariantKind::Q;
  std::optional<std::string> extension;  // single analyzed term, QE/QTE only
};

/// TSV columns: question_id, series_id, target, raw_text[, resolved_text];
/// or JSONL objects with those field names. '#' comment lines allowed.
std::vector<Question> parse_questions(std::istream& in, const std::string& format);
std::vector<Question> load_questions(const std::string& path,
                                     const std::string& format = "auto");

/// Patterns file: `qid <whitespace> regex` (regex is the rest of the line).
/// Judgments file: `qid <whitespace> docid`. Keys are merged per qid; a qid
/// with patterns but no judged documents is fine (strict hits then
/// impossible). A qid with judged documents but no pattern can never match
/// anything and is skipped with a warning.
AnswerKeySet parse_answer_keys(std::istream& patterns_in, std::istream& judgments_in,
                               bool case_insensitive = false);
AnswerKeySet load_answer_keys(const std::string& patterns_path,
                              const std::string& judgments_path,
                              bool case_insensitive = false);

/// Compiles one pattern under the project dialect. Throws ParseError on
/// backreferences or syntax errors, naming the offending pattern.
std::regex compile_answer_pattern(const std::string& source, bool case_insensitive,
                                  const std::string& qid);

/// Q -> resolved text; QT -> + target; QE -> + extension; QTE -> + target +
/// extension. Plain concatenation; analysis happens at retrieval time.
std::string formulate_query(const Question& q, const QueryVariant& v);

/// Round-trip serializers for the line formats above.
std::string question_to_tsv(const Question& q);
std::string answer_key_pattern_lines(const AnswerKey& key);
std::string answer_key_judgment_lines(const AnswerKey& key);

}  // namespace hewer
