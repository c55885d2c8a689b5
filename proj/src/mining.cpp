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

#include "hewer/mining.hpp"

#include <omp.h>

#include <algorithm>
#include <map>

#include "hewer/errors.hpp"

namespace hewer {

TitleWhitelist::TitleWhitelist(const std::vector<std::string>& terms) {
  for (const auto& t : terms) folded_.insert(fold_case(t));
}

TitleWhitelist TitleWhitelist::load(const std::string& path) {
  return TitleWhitelist(load_word_list(path));
}

bool TitleWhitelist::contains(std::string_view folded_surface) const {
  return folded_.count(std::string(folded_surface)) > 0;
}

std::vector<Passage> collect_answer_passages(const AnswerKey& key,
                                             const Corpus& corpus,
                                             std::vector<std::string>* missing) {
  std::vector<Passage> out;
  std::unordered_set<std::string> found;
  for (const auto& doc : corpus.documents) {
    if (!key.supporting_doc_ids.count(doc.doc_id)) continue;
    found.insert(doc.doc_id);
    for (const auto& p : doc.passages)
      if (key.matches(p.text)) out.push_back(p);
  }
  if (missing) {
    for (const auto& doc_id : key.supporting_doc_ids)
      if (!found.count(doc_id))
        missing->push_back("supporting document '" + doc_id +
                           "' for question '" + key.question_id +
                           "' not in corpus; skipped");
  }
  return out;
}

namespace {

// Every token stem of the text, stopwords included; question and target
// words are removed from candidates whether or not they are stopwords.
std::unordered_set<std::string> token_stems(const Analyzer& analyzer,
                                            std::string_view text) {
  std::unordered_set<std::string> stems;
  for (const auto& tok : tokenize(text))
    stems.insert(analyzer.normalize_token(tok));
  return stems;
}

bool overlaps_any(const TokenSpan& tok,
                  const std::vector<std::pair<size_t, size_t>>& spans) {
  for (const auto& [begin, end] : spans)
    if (tok.begin < end && begin < tok.end) return true;
  return false;
}

}  // namespace

CandidateSet mine_candidates(const std::vector<Passage>& passages,
                             const Question& question, const AnswerKey& key,
                             const Analyzer& analyzer,
                             const TitleWhitelist& whitelist) {
  CandidateSet out;
  out.question_id = question.question_id;
  out.source_passage_count = static_cast<int>(passages.size());

  const auto question_stems = token_stems(analyzer, question.resolved_text);
  const auto target_stems = token_stems(analyzer, question.target);
  const bool stopping = analyzer.config().stopping_enabled();
  const bool strip_numbers = analyzer.config().strip_numbers;

  // Answer words are a per-question set of stems: any token inside a match
  // span anywhere in the harvested passages poisons its stem everywhere.
  std::unordered_set<std::string> answer_stems;
  for (const auto& passage : passages) {
    const auto spans = key.match_spans(passage.text);
    if (spans.empty()) continue;
    for (const auto& tok : tokenize_spans(passage.text))
      if (overlaps_any(tok, spans))
        answer_stems.insert(analyzer.normalize_token(tok.text));
  }

  std::unordered_set<std::string> seen_stems;
  std::unordered_set<std::string> seen_titles;

  for (const auto& passage : passages) {
    for (const auto& tok : tokenize_spans(passage.text)) {
      const std::string folded = fold_case(tok.text);
      const std::string stem = analyzer.normalize_token(tok.text);

      // first matching filter wins the count
      enum class Drop { none, question, target, answer, stopword, number };
      Drop drop = Drop::none;
      if (question_stems.count(stem))
        drop = Drop::question;
      else if (target_stems.count(stem))
        drop = Drop::target;
      else if (answer_stems.count(stem))
        drop = Drop::answer;
      else if (stopping && analyzer.is_stop_surface(folded))
        drop = Drop::stopword;
      else if (strip_numbers && all_digits(folded))
        drop = Drop::number;
      else if (stopping && analyzer.is_stop_stem(stem))
        drop = Drop::stopword;

      if (drop != Drop::none) {
        if (whitelist.contains(folded)) {
          if (seen_titles.insert(folded).second)
            out.filters_applied.retained_titles.push_back(tok.text);
        } else {
          switch (drop) {
            case Drop::question: ++out.filters_applied.question_words; break;
            case Drop::target: ++out.filters_applied.target_words; break;
            case Drop::answer: ++out.filters_applied.answer_words; break;
            case Drop::stopword: ++out.filters_applied.stopwords; break;
            case Drop::number: ++out.filters_applied.numbers; break;
            case Drop::none: break;
          }
          continue;
        }
      }
      if (seen_stems.insert(stem).second)
        out.candidates.push_back(Term{tok.text, stem});
    }
  }
  return out;
}

ExtensionEvaluation evaluate_extensions(const InvertedIndex& index,
                                        const Question& question,
                                        const CandidateSet& candidates, int n,
                                        const AnswerKeySet& keys, int threads) {
  const AnswerKey* key = keys.find(question.question_id);
  if (!key)
    throw PreconditionError("question '" + question.question_id +
                            "' has no answer key");
  if (candidates.candidates.empty())
    throw PreconditionError("question '" + question.question_id +
                            "' has no candidates to evaluate");

  const auto question_stems = token_stems(index.analyzer(), question.resolved_text);
  const auto target_stems = token_stems(index.analyzer(), question.target);
  for (const auto& cand : candidates.candidates) {
    if (question_stems.count(cand.stem) || target_stems.count(cand.stem))
      throw PreconditionError("candidate '" + cand.surface + "' (stem '" +
                              cand.stem + "') collides with question/target terms "
                              "of '" + question.question_id + "'");
  }

  auto count_hits = [&](const RankedResult& rr) {
    QuestionHits hits;
    for (const auto& entry : rr.entries) {
      HitClass hc = classify_hit(index.unit_text(entry.unit_id),
                                 index.unit_parent(entry.unit_id), *key);
      if (hc != HitClass::none) ++hits.lenient_hits;
      if (hc == HitClass::strict) ++hits.strict_hits;
    }
    return hits;
  };

  ExtensionEvaluation eval;
  const auto base_q = count_hits(index.retrieve(
      question.question_id, formulate_query(question, {VariantKind::Q, {}}), n));
  const auto base_qt = count_hits(index.retrieve(
      question.question_id, formulate_query(question, {VariantKind::QT, {}}), n));
  eval.baseline_q_strict = base_q.strict_hits;
  eval.baseline_q_lenient = base_q.lenient_hits;
  eval.baseline_qt_strict = base_qt.strict_hits;
  eval.baseline_qt_lenient = base_qt.lenient_hits;
  if (base_q.strict_hits || base_q.lenient_hits || base_qt.strict_hits ||
      base_qt.lenient_hits)
    throw PreconditionError("question '" + question.question_id +
                            "' is not difficult at n=" + std::to_string(n));

  const auto& cands = candidates.candidates;
  eval.records.resize(cands.size() * 2);
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
  for (size_t i = 0; i < cands.size(); ++i) {
    for (int v = 0; v < 2; ++v) {
      VariantKind kind = v == 0 ? VariantKind::QE : VariantKind::QTE;
      QueryVariant variant{kind, cands[i].surface};
      const auto hits = count_hits(
          index.retrieve(question.question_id, formulate_query(question, variant), n));
      HewRecord rec;
      rec.question_id = question.question_id;
      rec.term = cands[i].surface;
      rec.stem = cands[i].stem;
      rec.variant = kind;
      rec.strict_redundancy = hits.strict_hits;
      rec.lenient_redundancy = hits.lenient_hits;
      rec.baseline_strict = 0.0;
      eval.records[i * 2 + static_cast<size_t>(v)] = std::move(rec);
    }
  }
  return eval;
}

HewSummary hew_stats(const std::vector<HewRecord>& records, int difficult_used) {
  if (difficult_used == 0)
    throw UndefinedMetricError("hew_stats over zero difficult questions");

  HewSummary s;
  s.difficult_used = difficult_used;
  s.variations_tested = static_cast<long>(records.size());

  // (question, stem) -> max strict redundancy over variants
  std::map<std::pair<std::string, std::string>, double> best;
  for (const auto& rec : records) {
    if (rec.baseline_strict != 0.0) continue;
    auto key = std::make_pair(rec.question_id, rec.stem);
    auto it = best.find(key);
    if (it == best.end())
      best.emplace(key, rec.strict_redundancy);
    else
      it->second = std::max(it->second, rec.strict_redundancy);
  }

  std::set<std::string> benefited;
  double redundancy_total = 0.0;
  for (const auto& [key, strict] : best) {
    if (strict <= 0.0) continue;
    ++s.hew_count_strict;
    redundancy_total += strict;
    benefited.insert(key.first);
  }
  s.questions_benefited = static_cast<int>(benefited.size());
  s.benefited_fraction =
      static_cast<double>(s.questions_benefited) / difficult_used;
  s.mean_hew_per_question =
      static_cast<double>(s.hew_count_strict) / difficult_used;
  s.mean_redundancy_increase =
      s.hew_count_strict > 0 ? redundancy_total / s.hew_count_strict : 0.0;
  return s;
}

std::map<std::string, std::set<std::string>> hew_stems_by_question(
    const std::vector<HewRecord>& records) {
  std::map<std::string, std::set<std::string>> out;
  for (const auto& rec : records)
    if (rec.is_hew()) out[rec.question_id].insert(rec.stem);
  return out;
}

}  // namespace hewer
