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
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace hewer {

struct Passage {
  std::string passage_id;  // "<doc_id>#<ordinal>"
  std::string parent_doc_id;
  std::string text;
};

struct Document {
  std::string doc_id;
  std::string text;  // passage texts joined with blank lines
  std::vector<Passage> passages;
};

struct Corpus {
  std::vector<Document> documents;  // input order
  std::vector<std::string> warnings;

  const Document* find(std::string_view doc_id) const;
  size_t passage_count() const;
  void rebuild_lookup();

 private:
  std::unordered_map<std::string, size_t> by_id_;
};

/// Builds passages from raw paragraph texts: trims each, drops
/// whitespace-only ones, assigns dense ordinals in order.
std::vector<Passage> segment_passages(const std::string& doc_id,
                                      const std::vector<std::string>& paragraphs);

/// Parses a stream of <DOC> blocks with <DOCNO> and <TEXT> elements; <P>
/// elements inside TEXT mark paragraphs, and a TEXT without any is one
/// passage. Only the five standard SGML entities are decoded. Malformed
/// blocks raise ParseError naming the byte offset and the last good doc id;
/// duplicate DOCNOs raise ParseError naming the duplicate.
Corpus parse_trec_sgml(std::istream& in);

/// One JSON object per line: {"id": ..., "text": ...} or
/// {"id": ..., "paragraphs": [...]}. Blank lines are skipped.
Corpus parse_jsonl(std::istream& in);

/// format is "trec", "jsonl" or "auto" (by extension: .jsonl/.ndjson).
Corpus load_corpus(const std::string& path, const std::string& format = "auto");

}  // namespace hewer
