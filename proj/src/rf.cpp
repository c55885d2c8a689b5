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

#include "hewer/rf.hpp"

#include <omp.h>

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hewer/errors.hpp"
#include "hewer/fingerprint.hpp"

namespace hewer {

void RfConfig::validate() const {
  if (r < 1) throw PreconditionError("rf: r must be >= 1");
  if (k < 1) throw PreconditionError("rf: k must be >= 1");
}

std::string RfConfig::label() const {
  return "r=" + std::to_string(r) +
         (level == Granularity::document ? " Doc" : " Para");
}

namespace {

std::unordered_set<std::string> token_stems(const Analyzer& analyzer,
                                            std::string_view text) {
  std::unordered_set<std::string> stems;
  for (const auto& tok : tokenize(text))
    stems.insert(analyzer.normalize_token(tok));
  return stems;
}

}  // namespace

RfSelection select_rf_terms(const InvertedIndex& feed_index, const Question& q,
                            const RfConfig& cfg) {
  cfg.validate();
  if (feed_index.config().granularity != cfg.level)
    throw PreconditionError("rf: feed index granularity does not match cfg.level");

  RfSelection out;
  const auto irt =
      feed_index.retrieve(q.question_id, q.resolved_text, cfg.r);
  if (irt.entries.empty()) {
    out.empty_retrieval = true;
    return out;
  }

  const Analyzer& analyzer = feed_index.analyzer();
  const auto question_stems = token_stems(analyzer, q.resolved_text);
  const auto target_stems = token_stems(analyzer, q.target);

  std::unordered_map<std::string, long> tf;
  for (const auto& entry : irt.entries) {
    for (const auto& term : analyzer.analyze(feed_index.unit_text(entry.unit_id))) {
      if (question_stems.count(term.stem) || target_stems.count(term.stem))
        continue;
      if (analyzer.config().stopping_enabled() && analyzer.is_stop_stem(term.stem))
        continue;
      ++tf[term.stem];
    }
  }

  std::vector<std::pair<std::string, long>> ranked(tf.begin(), tf.end());
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  const size_t take = std::min(ranked.size(), static_cast<size_t>(cfg.k));
  out.terms.reserve(take);
  for (size_t i = 0; i < take; ++i) out.terms.push_back(ranked[i].first);
  return out;
}

std::string apply_rf(const Question& q, const std::vector<std::string>& terms) {
  std::string query = q.resolved_text;
  for (const auto& t : terms) {
    query += ' ';
    query += t;
  }
  return query;
}

RfExperiment rf_coverage_experiment(
    const InvertedIndex& base_index,
    const std::map<Granularity, const InvertedIndex*>& feed_indexes,
    const std::vector<Question>& questions, const AnswerKeySet& keys,
    const std::vector<RfConfig>& configs, const std::vector<int>& ranks,
    int threads) {
  if (ranks.empty()) throw PreconditionError("rf experiment needs ranks");
  if (!std::is_sorted(ranks.begin(), ranks.end()))
    throw PreconditionError("rf experiment ranks must be sorted ascending");
  for (const auto& cfg : configs) {
    cfg.validate();
    auto it = feed_indexes.find(cfg.level);
    if (it == feed_indexes.end() || !it->second)
      throw PreconditionError("rf experiment missing feed index for level " +
                              std::string(granularity_name(cfg.level)));
  }
  const int max_rank = ranks.back();

  // slot 0 = baseline, slot 1 + c = config c
  const size_t variants = configs.size() + 1;
  std::vector<std::vector<RankedResult>> ranked(variants);
  for (auto& v : ranked) v.resize(questions.size());
  std::vector<std::vector<std::string>> rf_terms(configs.size() * questions.size());

  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
  for (size_t qi = 0; qi < questions.size(); ++qi) {
    const Question& q = questions[qi];
    ranked[0][qi] = base_index.retrieve(q.question_id, q.resolved_text, max_rank);
    for (size_t c = 0; c < configs.size(); ++c) {
      const auto sel = select_rf_terms(*feed_indexes.at(configs[c].level), q,
                                       configs[c]);
      rf_terms[c * questions.size() + qi] = sel.terms;
      if (sel.terms.empty()) {
        // nothing to add: blind RF keeps the baseline result
        ranked[1 + c][qi] = ranked[0][qi];
      } else {
        ranked[1 + c][qi] =
            base_index.retrieve(q.question_id, apply_rf(q, sel.terms), max_rank);
      }
    }
  }

  RfExperiment exp;
  for (size_t c = 0; c < configs.size(); ++c) {
    const std::string label = configs[c].label();
    for (size_t qi = 0; qi < questions.size(); ++qi)
      exp.terms[questions[qi].question_id][label] =
          rf_terms[c * questions.size() + qi];
  }

  // evaluate every variant at every rank; records feed both the table and
  // the run log
  for (size_t v = 0; v < variants; ++v) {
    for (int rank : ranks) {
      RunRecord record = evaluate_run(ranked[v], keys, rank, base_index, threads);
      record.config.variant = "q";
      record.config.rf = v == 0 ? "" : configs[v - 1].label();
      record.run_id = (v == 0 ? std::string("rf-baseline")
                              : "rf-" + configs[v - 1].label()) +
                      "@n" + std::to_string(rank);
      exp.records.push_back(std::move(record));
    }
  }
  exp.table = make_rf_table(exp.records);
  exp.table.title = "rf_table";
  return exp;
}

RfIntersection rf_hew_intersection(
    const std::map<std::string, std::set<std::string>>& hew_sets,
    const std::map<std::string, std::vector<std::vector<std::string>>>& irt_texts,
    const std::map<std::string, std::vector<std::string>>& rf_terms) {
  auto same_keys = [](const auto& a, const auto& b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(),
                      [](const auto& x, const auto& y) { return x.first == y.first; });
  };
  if (!same_keys(hew_sets, irt_texts) || !same_keys(hew_sets, rf_terms))
    throw PreconditionError(
        "rf_hew_intersection inputs must cover the same question set");

  long hew_total = 0;
  for (const auto& [qid, hews] : hew_sets) hew_total += static_cast<long>(hews.size());
  if (hew_total == 0)
    throw UndefinedMetricError("rf_hew_intersection over an empty HEW set");

  long hew_in_irt = 0;
  long irt_total = 0;
  long irt_with_hew = 0;
  long rf_total = 0;
  long rf_in_hew = 0;

  double macro_hew_sum = 0.0;
  long macro_hew_n = 0;
  double macro_irt_sum = 0.0;
  long macro_irt_n = 0;
  double macro_rf_sum = 0.0;
  long macro_rf_n = 0;

  for (const auto& [qid, hews] : hew_sets) {
    const auto& irts = irt_texts.at(qid);
    const auto& rf = rf_terms.at(qid);

    std::unordered_set<std::string> irt_vocab;
    long q_irt_with_hew = 0;
    for (const auto& irt : irts) {
      bool has_hew = false;
      for (const auto& stem : irt) {
        irt_vocab.insert(stem);
        if (hews.count(stem)) has_hew = true;
      }
      if (has_hew) ++q_irt_with_hew;
    }
    irt_total += static_cast<long>(irts.size());
    irt_with_hew += q_irt_with_hew;
    if (!irts.empty()) {
      macro_irt_sum += static_cast<double>(q_irt_with_hew) /
                       static_cast<double>(irts.size());
      ++macro_irt_n;
    }

    long q_hew_in_irt = 0;
    for (const auto& h : hews)
      if (irt_vocab.count(h)) ++q_hew_in_irt;
    hew_in_irt += q_hew_in_irt;
    if (!hews.empty()) {
      macro_hew_sum +=
          static_cast<double>(q_hew_in_irt) / static_cast<double>(hews.size());
      ++macro_hew_n;
    }

    long q_rf_in_hew = 0;
    for (const auto& t : rf)
      if (hews.count(t)) ++q_rf_in_hew;
    rf_total += static_cast<long>(rf.size());
    rf_in_hew += q_rf_in_hew;
    if (!rf.empty()) {
      macro_rf_sum +=
          static_cast<double>(q_rf_in_hew) / static_cast<double>(rf.size());
      ++macro_rf_n;
    }
  }

  RfIntersection out;
  out.hew_found_in_irt =
      static_cast<double>(hew_in_irt) / static_cast<double>(hew_total);
  out.irt_containing_hew =
      irt_total == 0 ? 0.0
                     : static_cast<double>(irt_with_hew) /
                           static_cast<double>(irt_total);
  out.rf_words_in_hew =
      rf_total == 0 ? 0.0
                    : static_cast<double>(rf_in_hew) / static_cast<double>(rf_total);
  out.macro_hew_found_in_irt = macro_hew_n ? macro_hew_sum / macro_hew_n : 0.0;
  out.macro_irt_containing_hew = macro_irt_n ? macro_irt_sum / macro_irt_n : 0.0;
  out.macro_rf_words_in_hew = macro_rf_n ? macro_rf_sum / macro_rf_n : 0.0;
  return out;
}

Table render_rf_intersection(
    const std::vector<std::pair<std::string, RfIntersection>>& columns) {
  Table t;
  t.title = "rf_intersection";
  std::string blob;
  for (const auto& [label, _] : columns) blob += label + ";";
  t.meta = "fingerprint: " + to_hex(fnv1a64(blob)) +
           " columns: " + std::to_string(columns.size());
  t.columns = {"Metric"};
  for (const auto& [label, _] : columns) t.columns.push_back(label);

  auto row = [&](const std::string& name, auto getter) {
    std::vector<std::string> cells{name};
    for (const auto& [_, inter] : columns)
      cells.push_back(format_fixed3(getter(inter)));
    t.rows.push_back(std::move(cells));
  };
  row("HEW found in IRT", [](const RfIntersection& i) { return i.hew_found_in_irt; });
  row("IRT containing HEW",
      [](const RfIntersection& i) { return i.irt_containing_hew; });
  row("RF words in HEW", [](const RfIntersection& i) { return i.rf_words_in_hew; });
  row("HEW found in IRT (macro)",
      [](const RfIntersection& i) { return i.macro_hew_found_in_irt; });
  row("IRT containing HEW (macro)",
      [](const RfIntersection& i) { return i.macro_irt_containing_hew; });
  row("RF words in HEW (macro)",
      [](const RfIntersection& i) { return i.macro_rf_words_in_hew; });
  return t;
}

}  // namespace hewer
