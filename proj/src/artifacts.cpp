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

#include "hewer/artifacts.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hewer/errors.hpp"

namespace hewer {

namespace {

using ojson = nlohmann::ordered_json;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write: " + path);
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open: " + path);
  return in;
}

nlohmann::json parse_line(const std::string& line, const std::string& path,
                          size_t line_no) {
  try {
    return nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception&) {
    throw ParseError(path + " line " + std::to_string(line_no) +
                     ": malformed record");
  }
}

// Reads and validates the _meta first line shared by all JSONL artifacts.
nlohmann::json read_meta_line(std::istream& in, const std::string& path,
                              const std::string& expected_kind) {
  std::string line;
  if (!std::getline(in, line))
    throw SchemaError(path + ": empty artifact file");
  auto j = parse_line(line, path, 1);
  if (!j.contains("_meta"))
    throw SchemaError(path + ": missing _meta line");
  auto meta = j["_meta"];
  if (meta.value("schema_version", -1) != 1)
    throw SchemaError(path + ": schema version mismatch");
  if (meta.value("kind", "") != expected_kind)
    throw SchemaError(path + ": expected a '" + expected_kind + "' artifact");
  return meta;
}

ojson meta_line(const std::string& kind, const std::string& fingerprint) {
  ojson meta;
  meta["schema_version"] = 1;
  meta["kind"] = kind;
  meta["fingerprint"] = fingerprint;
  return meta;
}

}  // namespace

void write_ranked_jsonl(const std::string& path, const RankedFileMeta& meta,
                        const std::vector<RankedResult>& results) {
  auto out = open_out(path);
  ojson m = meta_line("ranked", meta.fingerprint);
  m["n"] = meta.n;
  m["variant"] = meta.variant;
  m["granularity"] = meta.granularity;
  out << ojson{{"_meta", m}}.dump() << '\n';
  for (const auto& rr : results) {
    ojson entries = ojson::array();
    for (const auto& e : rr.entries) entries.push_back({e.unit_id, e.score});
    ojson rec;
    rec["question_id"] = rr.question_id;
    rec["empty_query"] = rr.empty_query;
    rec["entries"] = std::move(entries);
    out << rec.dump() << '\n';
  }
}

std::vector<RankedResult> read_ranked_jsonl(const std::string& path,
                                            RankedFileMeta* meta_out) {
  auto in = open_in(path);
  auto meta = read_meta_line(in, path, "ranked");
  if (meta_out) {
    meta_out->fingerprint = meta.value("fingerprint", "");
    meta_out->n = meta.value("n", 0);
    meta_out->variant = meta.value("variant", "");
    meta_out->granularity = meta.value("granularity", "");
  }
  std::vector<RankedResult> results;
  std::string line;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto j = parse_line(line, path, line_no);
    RankedResult rr;
    rr.question_id = j["question_id"].get<std::string>();
    rr.empty_query = j["empty_query"].get<bool>();
    for (const auto& e : j["entries"])
      rr.entries.push_back(ScoredEntry{e[0].get<std::string>(), e[1].get<double>()});
    results.push_back(std::move(rr));
  }
  return results;
}

void write_difficult_json(const std::string& path, const DifficultSet& set,
                          const std::string& fingerprint) {
  ojson j;
  j["_meta"] = meta_line("difficult", fingerprint);
  j["n"] = set.n;
  j["provenance"] = set.provenance;
  j["question_ids"] =
      std::vector<std::string>(set.question_ids.begin(), set.question_ids.end());
  auto out = open_out(path);
  out << j.dump(2) << '\n';
}

DifficultSet read_difficult_json(const std::string& path) {
  auto in = open_in(path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception&) {
    throw ParseError(path + ": malformed difficult set");
  }
  if (!j.contains("_meta") || j["_meta"].value("kind", "") != "difficult" ||
      j["_meta"].value("schema_version", -1) != 1)
    throw SchemaError(path + ": expected a 'difficult' artifact");
  DifficultSet set;
  set.n = j["n"].get<int>();
  set.provenance = j["provenance"].get<std::vector<std::string>>();
  for (const auto& qid : j["question_ids"])
    set.question_ids.insert(qid.get<std::string>());
  return set;
}

void write_candidates_jsonl(const std::string& path,
                            const std::vector<CandidateSet>& sets,
                            const std::string& fingerprint) {
  auto out = open_out(path);
  out << ojson{{"_meta", meta_line("candidates", fingerprint)}}.dump() << '\n';
  for (const auto& cs : sets) {
    ojson cands = ojson::array();
    for (const auto& t : cs.candidates) cands.push_back({t.surface, t.stem});
    ojson rec;
    rec["question_id"] = cs.question_id;
    rec["candidates"] = std::move(cands);
    rec["source_passage_count"] = cs.source_passage_count;
    rec["filters"] = {{"question_words", cs.filters_applied.question_words},
                      {"target_words", cs.filters_applied.target_words},
                      {"answer_words", cs.filters_applied.answer_words},
                      {"stopwords", cs.filters_applied.stopwords},
                      {"numbers", cs.filters_applied.numbers},
                      {"retained_titles", cs.filters_applied.retained_titles}};
    rec["missing_doc_ids"] = cs.missing_doc_ids;
    out << rec.dump() << '\n';
  }
}

std::vector<CandidateSet> read_candidates_jsonl(const std::string& path) {
  auto in = open_in(path);
  read_meta_line(in, path, "candidates");
  std::vector<CandidateSet> sets;
  std::string line;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto j = parse_line(line, path, line_no);
    CandidateSet cs;
    cs.question_id = j["question_id"].get<std::string>();
    for (const auto& c : j["candidates"])
      cs.candidates.push_back(Term{c[0].get<std::string>(), c[1].get<std::string>()});
    cs.source_passage_count = j["source_passage_count"].get<int>();
    const auto& f = j["filters"];
    cs.filters_applied.question_words = f["question_words"].get<int>();
    cs.filters_applied.target_words = f["target_words"].get<int>();
    cs.filters_applied.answer_words = f["answer_words"].get<int>();
    cs.filters_applied.stopwords = f["stopwords"].get<int>();
    cs.filters_applied.numbers = f["numbers"].get<int>();
    cs.filters_applied.retained_titles =
        f["retained_titles"].get<std::vector<std::string>>();
    cs.missing_doc_ids = j["missing_doc_ids"].get<std::vector<std::string>>();
    sets.push_back(std::move(cs));
  }
  return sets;
}

void write_hew_jsonl(const std::string& path, const std::vector<HewRecord>& records,
                     const std::string& fingerprint) {
  auto out = open_out(path);
  out << ojson{{"_meta", meta_line("hew", fingerprint)}}.dump() << '\n';
  for (const auto& rec : records) {
    ojson j;
    j["question_id"] = rec.question_id;
    j["term"] = rec.term;
    j["stem"] = rec.stem;
    j["variant"] = std::string(variant_name(rec.variant));
    j["strict_redundancy"] = rec.strict_redundancy;
    j["lenient_redundancy"] = rec.lenient_redundancy;
    j["baseline_strict"] = rec.baseline_strict;
    j["is_hew"] = rec.is_hew();
    out << j.dump() << '\n';
  }
}

std::vector<HewRecord> read_hew_jsonl(const std::string& path) {
  auto in = open_in(path);
  read_meta_line(in, path, "hew");
  std::vector<HewRecord> records;
  std::string line;
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto j = parse_line(line, path, line_no);
    HewRecord rec;
    rec.question_id = j["question_id"].get<std::string>();
    rec.term = j["term"].get<std::string>();
    rec.stem = j["stem"].get<std::string>();
    rec.variant = variant_from_name(j["variant"].get<std::string>());
    rec.strict_redundancy = j["strict_redundancy"].get<double>();
    rec.lenient_redundancy = j["lenient_redundancy"].get<double>();
    rec.baseline_strict = j["baseline_strict"].get<double>();
    records.push_back(std::move(rec));
  }
  return records;
}

std::string render_hew_summary(const HewSummary& s, const std::string& fingerprint) {
  std::ostringstream os;
  char pct[32];
  std::snprintf(pct, sizeof(pct), "%.1f", s.benefited_fraction * 100.0);
  os << "# hew_summary | fingerprint: " << fingerprint << '\n';
  os << "Difficult questions used\t" << s.difficult_used << '\n';
  os << "Variations tested\t" << s.variations_tested << '\n';
  os << "Questions that benefited\t" << s.questions_benefited << " (" << pct
     << "%)\n";
  os << "Helpful extension words (strict)\t" << s.hew_count_strict << '\n';
  os << "Mean helpful words per question\t"
     << format_fixed3(s.mean_hew_per_question) << '\n';
  os << "Mean redundancy increase\t"
     << format_fixed3(s.mean_redundancy_increase) << '\n';
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  auto out = open_out(path);
  out << content;
  if (!out) throw IoError("failed writing: " + path);
}

std::string read_text_file(const std::string& path) {
  auto in = open_in(path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace hewer
