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

#include "hewer/qa.hpp"

#include <fstream>
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

bool comment_or_blank(const std::string& line) {
  std::string t = trim(line);
  return t.empty() || t[0] == '#';
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return out;
}

// Splits "qid <ws> rest" keeping rest verbatim (it may contain spaces).
bool split_keyed_line(const std::string& line, std::string& key, std::string& rest) {
  size_t ws = line.find_first_of(" \t");
  if (ws == std::string::npos) return false;
  key = line.substr(0, ws);
  size_t start = line.find_first_not_of(" \t", ws);
  if (start == std::string::npos) return false;
  rest = trim(line.substr(start));
  return !key.empty() && !rest.empty();
}

}  // namespace

std::string_view variant_name(VariantKind kind) {
  switch (kind) {
    case VariantKind::Q:
      return "q";
    case VariantKind::QT:
      return "qt";
    case VariantKind::QE:
      return "qe";
    case VariantKind::QTE:
      return "qte";
  }
  return "q";
}

VariantKind variant_from_name(std::string_view name) {
  if (name == "q") return VariantKind::Q;
  if (name == "qt") return VariantKind::QT;
  if (name == "qe") return VariantKind::QE;
  if (name == "qte") return VariantKind::QTE;
  throw Error(ErrorCode::usage, "unknown query variant: " + std::string(name));
}

bool AnswerKey::matches(const std::string& text) const {
  for (const auto& re : patterns)
    if (std::regex_search(text, re)) return true;
  return false;
}

std::vector<std::pair<size_t, size_t>> AnswerKey::match_spans(
    const std::string& text) const {
  std::vector<std::pair<size_t, size_t>> spans;
  for (const auto& re : patterns) {
    for (auto it = std::sregex_iterator(text.begin(), text.end(), re);
         it != std::sregex_iterator(); ++it) {
      size_t begin = static_cast<size_t>(it->position(0));
      spans.emplace_back(begin, begin + static_cast<size_t>(it->length(0)));
    }
  }
  return spans;
}

const AnswerKey* AnswerKeySet::find(std::string_view qid) const {
  auto it = by_qid.find(std::string(qid));
  return it == by_qid.end() ? nullptr : &it->second;
}

std::regex compile_answer_pattern(const std::string& source, bool case_insensitive,
                                  const std::string& qid) {
  // Reject backreferences up front; without them the pattern stays a regular
  // language and matching cannot blow up.
  for (size_t i = 0; i + 1 < source.size(); ++i) {
    if (source[i] == '\\') {
      char next = source[i + 1];
      if (next >= '1' && next <= '9')
        throw ParseError("pattern for " + qid +
                         " uses a backreference (unsupported): " + source);
      ++i;
    }
  }
  auto flags = std::regex::ECMAScript | std::regex::optimize | std::regex::nosubs;
  if (case_insensitive) flags |= std::regex::icase;
  try {
    return std::regex(source, flags);
  } catch (const std::regex_error& e) {
    throw ParseError("pattern for " + qid + " does not compile: " + source +
                     " (" + e.what() + ")");
  }
}

std::vector<Question> parse_questions(std::istream& in, const std::string& format) {
  std::vector<Question> out;
  std::unordered_set<std::string> seen;
  std::string line;
  size_t line_no = 0;

  auto add = [&](Question q, size_t at_line) {
    if (q.question_id.empty())
      throw ParseError("line " + std::to_string(at_line) + ": empty question_id");
    if (q.resolved_text.empty()) q.resolved_text = q.raw_text;
    if (q.resolved_text.empty())
      throw ParseError("line " + std::to_string(at_line) +
                       ": question '" + q.question_id + "' has no text");
    if (!seen.insert(q.question_id).second)
      throw CollisionError("line " + std::to_string(at_line) +
                           ": duplicate question_id '" + q.question_id + "'");
    out.push_back(std::move(q));
  };

  if (format == "jsonl") {
    while (std::getline(in, line)) {
      ++line_no;
      if (comment_or_blank(line)) continue;
      nlohmann::json rec;
      try {
        rec = nlohmann::json::parse(line);
      } catch (const nlohmann::json::exception&) {
        throw ParseError("line " + std::to_string(line_no) + ": malformed record");
      }
      Question q;
      auto field = [&](const char* name, bool required) -> std::string {
        if (!rec.contains(name) || !rec[name].is_string()) {
          if (required)
            throw ParseError("line " + std::to_string(line_no) +
                             ": missing field '" + name + "'");
          return {};
        }
        return rec[name].get<std::string>();
      };
      q.question_id = field("question_id", true);
      q.series_id = field("series_id", true);
      q.target = field("target", true);
      q.raw_text = field("raw_text", true);
      q.resolved_text = field("resolved_text", false);
      add(std::move(q), line_no);
    }
    return out;
  }

  if (format != "tsv")
    throw Error(ErrorCode::usage, "unknown question format: " + format);

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (comment_or_blank(line)) continue;
    auto fields = split_tabs(line);
    if (fields.size() < 4 || fields.size() > 5)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 4 or 5 tab-separated fields, got " +
                       std::to_string(fields.size()));
    Question q;
    q.question_id = trim(fields[0]);
    q.series_id = trim(fields[1]);
    q.target = trim(fields[2]);
    q.raw_text = trim(fields[3]);
    if (fields.size() == 5) q.resolved_text = trim(fields[4]);
    add(std::move(q), line_no);
  }
  return out;
}

std::vector<Question> load_questions(const std::string& path,
                                     const std::string& format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open questions: " + path);
  std::string fmt = format;
  if (fmt == "auto")
    fmt = (path.size() >= 6 && path.ends_with(".jsonl")) ? "jsonl" : "tsv";
  return parse_questions(in, fmt);
}

AnswerKeySet parse_answer_keys(std::istream& patterns_in, std::istream& judgments_in,
                               bool case_insensitive) {
  AnswerKeySet keys;
  std::string line;
  size_t line_no = 0;
  while (std::getline(patterns_in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (comment_or_blank(line)) continue;
    std::string qid, pattern;
    if (!split_keyed_line(line, qid, pattern))
      throw ParseError("patterns line " + std::to_string(line_no) +
                       ": expected 'qid pattern'");
    AnswerKey& key = keys.by_qid[qid];
    key.question_id = qid;
    key.patterns.push_back(compile_answer_pattern(pattern, case_insensitive, qid));
    key.pattern_sources.push_back(pattern);
  }

  line_no = 0;
  std::map<std::string, std::set<std::string>> judged;
  while (std::getline(judgments_in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (comment_or_blank(line)) continue;
    std::string qid, doc_id;
    if (!split_keyed_line(line, qid, doc_id))
      throw ParseError("judgments line " + std::to_string(line_no) +
                       ": expected 'qid docid'");
    judged[qid].insert(doc_id);
  }

  for (auto& [qid, docs] : judged) {
    auto it = keys.by_qid.find(qid);
    if (it == keys.by_qid.end()) {
      keys.warnings.push_back("question '" + qid +
                              "' has judged documents but no pattern; skipped");
      continue;
    }
    it->second.supporting_doc_ids = std::move(docs);
  }
  return keys;
}

AnswerKeySet load_answer_keys(const std::string& patterns_path,
                              const std::string& judgments_path,
                              bool case_insensitive) {
  std::ifstream pin(patterns_path, std::ios::binary);
  if (!pin) throw IoError("cannot open patterns: " + patterns_path);
  std::ifstream jin(judgments_path, std::ios::binary);
  if (!jin) throw IoError("cannot open judgments: " + judgments_path);
  return parse_answer_keys(pin, jin, case_insensitive);
}

std::string question_to_tsv(const Question& q) {
  return q.question_id + "\t" + q.series_id + "\t" + q.target + "\t" +
         q.raw_text + "\t" + q.resolved_text + "\n";
}

std::string answer_key_pattern_lines(const AnswerKey& key) {
  std::string out;
  for (const auto& src : key.pattern_sources)
    out += key.question_id + " " + src + "\n";
  return out;
}

std::string answer_key_judgment_lines(const AnswerKey& key) {
  std::string out;
  for (const auto& doc_id : key.supporting_doc_ids)
    out += key.question_id + " " + doc_id + "\n";
  return out;
}

std::string formulate_query(const Question& q, const QueryVariant& v) {
  bool needs_ext = v.kind == VariantKind::QE || v.kind == VariantKind::QTE;
  if (needs_ext != v.extension.has_value())
    throw PreconditionError("query variant " + std::string(variant_name(v.kind)) +
                            (needs_ext ? " requires an extension term"
                                       : " does not take an extension term"));
  switch (v.kind) {
    case VariantKind::Q:
      return q.resolved_text;
    case VariantKind::QT:
      return q.resolved_text + " " + q.target;
    case VariantKind::QE:
      return q.resolved_text + " " + *v.extension;
    case VariantKind::QTE:
      return q.resolved_text + " " + q.target + " " + *v.extension;
  }
  return q.resolved_text;
}

}  // namespace hewer
