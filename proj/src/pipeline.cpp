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

#include "hewer/pipeline.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include <json.hpp>

#include "hewer/artifacts.hpp"
#include "hewer/errors.hpp"
#include "hewer/mining.hpp"
#include "hewer/rf.hpp"

namespace hewer {

namespace fs = std::filesystem;

namespace {

using ojson = nlohmann::ordered_json;

std::string run_label(Granularity g, const std::string& variant, int n) {
  return std::string(granularity_name(g)) + "-" + variant + "-n" +
         std::to_string(n);
}

void note(const PipelineOptions& opt, const std::string& msg) {
  if (!opt.quiet) std::cerr << "[hewer] " << msg << '\n';
}

}  // namespace

void run_manifest(const Manifest& m, const PipelineOptions& opt) {
  const fs::path out(opt.out_dir.empty() ? "hewer-out" : opt.out_dir);
  const fs::path runs_dir = out / "runs";
  const fs::path index_dir = out / "indexes";
  const fs::path report_dir = out / "reports";
  const std::string runlog_path = (runs_dir / "runlog.jsonl").string();
  if (fs::exists(runlog_path))
    throw CollisionError("output directory already holds a run: " + runlog_path);
  fs::create_directories(runs_dir);
  fs::create_directories(index_dir);
  fs::create_directories(report_dir);

  const std::string fp = m.fingerprint();

  // inputs
  AnalyzerConfig analyzer_cfg = m.analyzer;
  if (!m.stopwords_path.empty())
    analyzer_cfg.stopwords = load_word_list(m.stopwords_path);
  TitleWhitelist whitelist;
  if (!m.titles_path.empty()) whitelist = TitleWhitelist::load(m.titles_path);

  note(opt, "loading corpus " + m.corpus_path);
  Corpus corpus = load_corpus(m.corpus_path, m.corpus_format);
  for (const auto& w : corpus.warnings) note(opt, "corpus: " + w);
  auto questions = load_questions(m.questions_path, m.questions_format);
  auto keys = load_answer_keys(m.patterns_path, m.judgments_path, m.regex_icase);
  for (const auto& w : keys.warnings) note(opt, "keys: " + w);

  // indexes
  std::map<Granularity, InvertedIndex> indexes;
  for (Granularity g : m.granularities) {
    IndexConfig cfg;
    cfg.granularity = g;
    cfg.analyzer = analyzer_cfg;
    note(opt, "building " + std::string(granularity_name(g)) + " index");
    auto idx = InvertedIndex::build(corpus, cfg, opt.threads);
    idx.save((index_dir / (std::string(granularity_name(g)) + ".idx")).string());
    indexes.emplace(g, std::move(idx));
  }

  // baseline retrieval + evaluation grid
  RunLog log(runlog_path);
  const int max_depth = m.depths.back();
  for (Granularity g : m.granularities) {
    const auto& index = indexes.at(g);
    for (const auto& variant : m.variants) {
      VariantKind kind = variant_from_name(variant);
      std::vector<QueryInput> queries;
      queries.reserve(questions.size());
      for (const auto& q : questions)
        queries.push_back(
            QueryInput{q.question_id, formulate_query(q, {kind, {}})});
      auto ranked = index.retrieve_batch(queries, max_depth, opt.threads);

      RankedFileMeta meta;
      meta.fingerprint = fp;
      meta.n = max_depth;
      meta.variant = variant;
      meta.granularity = std::string(granularity_name(g));
      write_ranked_jsonl(
          (runs_dir / ("ranked-" + std::string(granularity_name(g)) + "-" +
                       variant + ".jsonl"))
              .string(),
          meta, ranked);

      for (int n : m.depths) {
        RunRecord rec = evaluate_run(ranked, keys, n, index, opt.threads);
        rec.run_id = run_label(g, variant, n);
        rec.config.variant = variant;
        rec.config.question_set = m.question_set_label;
        log.append(rec);
        note(opt, "evaluated " + rec.run_id);
      }
    }
  }

  // difficult questions at difficulty_n over the whole baseline grid
  RunFilter dfilter;
  dfilter.n = m.difficulty_n;
  auto druns = log.load(dfilter);
  DifficultSet difficult = identify_difficult(druns, m.difficulty_n);
  write_difficult_json((out / "difficult.json").string(), difficult, fp);
  note(opt, "difficult questions: " + std::to_string(difficult.question_ids.size()));

  // extension mining + HEW evaluation
  std::vector<HewRecord> hew_records;
  int difficult_used = 0;
  if (m.mining_enabled && !difficult.question_ids.empty()) {
    const auto& index = indexes.at(m.mining_granularity);
    std::vector<CandidateSet> candidate_sets;
    std::vector<const Question*> mined;
    for (const auto& q : questions) {
      if (!difficult.question_ids.count(q.question_id)) continue;
      const AnswerKey* key = keys.find(q.question_id);
      if (!key) continue;
      ++difficult_used;
      CandidateSet cs;
      std::vector<std::string> missing;
      auto passages = collect_answer_passages(*key, corpus, &missing);
      cs = mine_candidates(passages, q, *key, index.analyzer(), whitelist);
      cs.missing_doc_ids = std::move(missing);
      for (const auto& w : cs.missing_doc_ids) note(opt, "mining: " + w);
      candidate_sets.push_back(std::move(cs));
      mined.push_back(&q);
    }
    write_candidates_jsonl((out / "candidates.jsonl").string(), candidate_sets, fp);

    for (size_t i = 0; i < candidate_sets.size(); ++i) {
      if (candidate_sets[i].candidates.empty()) {
        note(opt, "mining: no candidates for " + candidate_sets[i].question_id);
        continue;
      }
      auto eval = evaluate_extensions(index, *mined[i], candidate_sets[i],
                                      m.mining_n, keys, opt.threads);
      hew_records.insert(hew_records.end(), eval.records.begin(),
                         eval.records.end());
    }
    write_hew_jsonl((out / "hew.jsonl").string(), hew_records, fp);
    if (difficult_used > 0) {
      HewSummary summary = hew_stats(hew_records, difficult_used);
      write_text_file((out / "hew_summary.tsv").string(),
                      render_hew_summary(summary, fp));
      note(opt, "HEW pairs: " + std::to_string(summary.hew_count_strict));
    }
  }

  // blind relevance feedback
  if (m.rf_enabled) {
    const auto& base = indexes.at(m.rf_base_granularity);
    std::map<Granularity, const InvertedIndex*> feeds;
    for (const auto& [g, idx] : indexes) feeds[g] = &idx;

    auto exp = rf_coverage_experiment(base, feeds, questions, keys, m.rf_configs,
                                      m.rf_ranks, opt.threads);
    for (auto& rec : exp.records) {
      rec.config.question_set = m.question_set_label;
      log.append(rec);
    }
    write_text_file((out / "rf_table.tsv").string(), render_tsv(exp.table));
    write_text_file((out / "rf_table.txt").string(), render_text(exp.table));

    std::ofstream terms_out(out / "rf_terms.jsonl", std::ios::binary);
    terms_out << ojson{{"_meta",
                        {{"schema_version", 1},
                         {"kind", "rf_terms"},
                         {"fingerprint", fp}}}}
                     .dump()
              << '\n';
    for (const auto& q : questions) {
      auto it = exp.terms.find(q.question_id);
      if (it == exp.terms.end()) continue;
      ojson rec;
      rec["question_id"] = q.question_id;
      for (const auto& [label, terms] : it->second) rec["terms"][label] = terms;
      terms_out << rec.dump() << '\n';
    }

    // intersection diagnostics against the HEW ground truth
    if (m.mining_enabled && !hew_records.empty()) {
      auto hew_by_q = hew_stems_by_question(hew_records);
      std::vector<std::pair<std::string, RfIntersection>> columns;
      for (const auto& cfg : m.rf_configs) {
        const auto& feed = indexes.at(cfg.level);
        std::map<std::string, std::set<std::string>> hew_sets;
        std::map<std::string, std::vector<std::vector<std::string>>> irt;
        std::map<std::string, std::vector<std::string>> rf_terms;
        for (const auto& q : questions) {
          if (!difficult.question_ids.count(q.question_id)) continue;
          auto hit = hew_by_q.find(q.question_id);
          hew_sets[q.question_id] =
              hit == hew_by_q.end() ? std::set<std::string>{} : hit->second;
          auto irt_rr = feed.retrieve(q.question_id, q.resolved_text, cfg.r);
          auto& texts = irt[q.question_id];
          for (const auto& e : irt_rr.entries)
            texts.push_back(feed.analyzer().stems(feed.unit_text(e.unit_id)));
          rf_terms[q.question_id] = select_rf_terms(feed, q, cfg).terms;
        }
        columns.emplace_back(cfg.label(),
                             rf_hew_intersection(hew_sets, irt, rf_terms));
      }
      Table inter = render_rf_intersection(columns);
      write_text_file((out / "rf_intersection.tsv").string(), render_tsv(inter));
      write_text_file((out / "rf_intersection.txt").string(), render_text(inter));
    }
  }

  // reports
  for (const auto& kind_name : m.reports) {
    ReportKind kind = report_kind_from_name(kind_name);
    RunFilter filter;
    switch (kind) {
      case ReportKind::coverage_table:
        break;  // whole baseline grid; rf runs excluded below
      case ReportKind::difficult_counts:
      case ReportKind::common_difficult:
        filter.n = m.difficulty_n;
        break;
      case ReportKind::rf_table:
        filter.run_id_prefix = "rf-";
        break;
    }
    auto runs = log.load(filter);
    if (kind != ReportKind::rf_table) {
      std::erase_if(runs,
                    [](const RunRecord& r) { return !r.config.rf.empty() ||
                                                    r.run_id.starts_with("rf-"); });
    }
    Table table = make_report(kind, runs);
    write_text_file((report_dir / (kind_name + ".tsv")).string(),
                    render_tsv(table));
    write_text_file((report_dir / (kind_name + ".txt")).string(),
                    render_text(table));
  }
  note(opt, "done; outputs in " + out.string());
}

}  // namespace hewer
