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

#include "hewer/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "hewer/errors.hpp"

namespace hewer {

namespace {

std::string trim(std::string_view s) {
  size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string_view::npos) return {};
  size_t b = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(a, b - a + 1));
}

// The five standard entities only; anything else stays verbatim so answer
// regexes see the raw corpus bytes.
std::string decode_entities(std::string_view s) {
  static const std::pair<std::string_view, char> kEntities[] = {
      {"&amp;", '&'}, {"&lt;", '<'}, {"&gt;", '>'},
      {"&quot;", '"'}, {"&apos;", '\''},
  };
  std::string out;
  out.reserve(s.size());
  size_t i = 0;
  while (i < s.size()) {
    if (s[i] == '&') {
      bool replaced = false;
      for (const auto& [name, ch] : kEntities) {
        if (s.substr(i, name.size()) == name) {
          out.push_back(ch);
          i += name.size();
          replaced = true;
          break;
        }
      }
      if (replaced) continue;
    }
    out.push_back(s[i]);
    ++i;
  }
  return out;
}

std::string join_passages(const std::vector<Passage>& passages) {
  std::string text;
  for (size_t i = 0; i < passages.size(); ++i) {
    if (i) text += "\n\n";
    text += passages[i].text;
  }
  return text;
}

}  // namespace

const Document* Corpus::find(std::string_view doc_id) const {
  auto it = by_id_.find(std::string(doc_id));
  return it == by_id_.end() ? nullptr : &documents[it->second];
}

size_t Corpus::passage_count() const {
  size_t n = 0;
  for (const auto& d : documents) n += d.passages.size();
  return n;
}

void Corpus::rebuild_lookup() {
  by_id_.clear();
  for (size_t i = 0; i < documents.size(); ++i)
    by_id_[documents[i].doc_id] = i;
}

std::vector<Passage> segment_passages(const std::string& doc_id,
                                      const std::vector<std::string>& paragraphs) {
  std::vector<Passage> out;
  for (const auto& p : paragraphs) {
    std::string body = trim(p);
    if (body.empty()) continue;
    size_t ordinal = out.size();
    out.push_back(Passage{doc_id + "#" + std::to_string(ordinal), doc_id,
                          std::move(body)});
  }
  return out;
}

Corpus parse_trec_sgml(std::istream& in) {
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::string last_good = "(none)";
  size_t pos = 0;

  auto context = [&](size_t at) {
    return "byte " + std::to_string(at) + " (last good doc: " + last_good + ")";
  };

  while (true) {
    size_t doc_start = data.find("<DOC>", pos);
    if (doc_start == std::string::npos) break;
    size_t doc_end = data.find("</DOC>", doc_start);
    if (doc_end == std::string::npos)
      throw ParseError("unclosed <DOC> at " + context(doc_start));
    std::string_view block(data.data() + doc_start, doc_end - doc_start);

    size_t no_start = block.find("<DOCNO>");
    if (no_start == std::string_view::npos)
      throw ParseError("missing <DOCNO> in block at " + context(doc_start));
    size_t no_end = block.find("</DOCNO>", no_start);
    if (no_end == std::string_view::npos)
      throw ParseError("unclosed <DOCNO> at " + context(doc_start + no_start));
    std::string doc_id = trim(block.substr(no_start + 7, no_end - no_start - 7));
    if (doc_id.empty())
      throw ParseError("empty <DOCNO> in block at " + context(doc_start));
    if (!seen.insert(doc_id).second)
      throw ParseError("duplicate DOCNO '" + doc_id + "' at " +
                       context(doc_start));

    // Concatenate every <TEXT> element in the block.
    std::string text_content;
    size_t tpos = 0;
    while (true) {
      size_t t_start = block.find("<TEXT>", tpos);
      if (t_start == std::string_view::npos) break;
      size_t t_end = block.find("</TEXT>", t_start);
      if (t_end == std::string_view::npos)
        throw ParseError("unclosed <TEXT> in doc '" + doc_id + "' at " +
                         context(doc_start + t_start));
      text_content.append(block.substr(t_start + 6, t_end - t_start - 6));
      text_content.push_back('\n');
      tpos = t_end + 7;
    }

    std::vector<std::string> paragraphs;
    size_t ppos = 0;
    while (true) {
      size_t p_start = text_content.find("<P>", ppos);
      if (p_start == std::string::npos) break;
      size_t p_end = text_content.find("</P>", p_start);
      if (p_end == std::string::npos)
        throw ParseError("unclosed <P> in doc '" + doc_id + "'");
      paragraphs.push_back(
          decode_entities(text_content.substr(p_start + 3, p_end - p_start - 3)));
      ppos = p_end + 4;
    }
    if (paragraphs.empty()) paragraphs.push_back(decode_entities(text_content));

    auto passages = segment_passages(doc_id, paragraphs);
    if (passages.empty()) {
      corpus.warnings.push_back("dropped empty document '" + doc_id + "'");
    } else {
      Document doc;
      doc.doc_id = doc_id;
      doc.text = join_passages(passages);
      doc.passages = std::move(passages);
      corpus.documents.push_back(std::move(doc));
      last_good = doc_id;
    }
    pos = doc_end + 6;
  }
  corpus.rebuild_lookup();
  return corpus;
}

Corpus parse_jsonl(std::istream& in) {
  Corpus corpus;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception&) {
      throw ParseError("line " + std::to_string(line_no) + ": malformed record");
    }
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string())
      throw ParseError("line " + std::to_string(line_no) +
                       ": record needs a string 'id'");
    std::string doc_id = rec["id"].get<std::string>();
    if (!seen.insert(doc_id).second)
      throw ParseError("line " + std::to_string(line_no) + ": duplicate id '" +
                       doc_id + "'");

    bool has_text = rec.contains("text");
    bool has_paras = rec.contains("paragraphs");
    if (has_text == has_paras)
      throw ParseError("line " + std::to_string(line_no) +
                       ": record needs exactly one of 'text' or 'paragraphs'");
    std::vector<std::string> paragraphs;
    if (has_paras) {
      if (!rec["paragraphs"].is_array())
        throw ParseError("line " + std::to_string(line_no) +
                         ": 'paragraphs' must be an array of strings");
      for (const auto& p : rec["paragraphs"]) {
        if (!p.is_string())
          throw ParseError("line " + std::to_string(line_no) +
                           ": 'paragraphs' must be an array of strings");
        paragraphs.push_back(p.get<std::string>());
      }
    } else {
      if (!rec["text"].is_string())
        throw ParseError("line " + std::to_string(line_no) +
                         ": 'text' must be a string");
      paragraphs.push_back(rec["text"].get<std::string>());
    }

    auto passages = segment_passages(doc_id, paragraphs);
    if (passages.empty()) {
      corpus.warnings.push_back("dropped empty document '" + doc_id + "'");
      continue;
    }
    Document doc;
    doc.doc_id = std::move(doc_id);
    doc.text = join_passages(passages);
    doc.passages = std::move(passages);
    corpus.documents.push_back(std::move(doc));
  }
  corpus.rebuild_lookup();
  return corpus;
}

Corpus load_corpus(const std::string& path, const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus: " + path);
  std::string fmt = format;
  if (fmt == "auto") {
    auto ends_with = [&](std::string_view suf) {
      return path.size() >= suf.size() &&
             path.compare(path.size() - suf.size(), suf.size(), suf) == 0;
    };
    fmt = (ends_with(".jsonl") || ends_with(".ndjson")) ? "jsonl" : "trec";
  }
  if (fmt == "jsonl") return parse_jsonl(in);
  if (fmt == "trec") return parse_trec_sgml(in);
  throw Error(ErrorCode::usage, "unknown corpus format: " + format);
}

}  // namespace hewer
