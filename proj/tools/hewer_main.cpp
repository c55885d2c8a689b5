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

// hewer: measures ranked-retrieval coverage/redundancy against QA answer
// keys, finds difficult questions, mines helpful extension words from
// answer-bearing passages, and evaluates blind relevance feedback against
// that ground truth. Stages compose through files; `hewer run` drives a whole
// manifest.

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "hewer/artifacts.hpp"
#include "hewer/errors.hpp"
#include "hewer/fingerprint.hpp"
#include "hewer/mining.hpp"
#include "hewer/pipeline.hpp"
#include "hewer/rf.hpp"

namespace {

using namespace hewer;

struct GlobalOpts {
  std::string stopwords_path;
  std::string titles_path;
  std::string out_dir;
  bool icase = false;
  int threads = 0;

  // Output paths land under --out-dir when it is set.
  std::string out(const std::string& path) const {
    if (out_dir.empty() || std::filesystem::path(path).is_absolute())
      return path;
    std::filesystem::create_directories(out_dir);
    return (std::filesystem::path(out_dir) / path).string();
  }

  AnalyzerConfig analyzer_config(bool strip_numbers, bool no_stem, bool no_lowercase,
                                 bool no_stop_stems) const {
    AnalyzerConfig cfg;
    cfg.lowercase = !no_lowercase;
    cfg.strip_numbers = strip_numbers;
    cfg.stem = !no_stem;
    cfg.stop_on_stems = !no_stop_stems;
    if (!stopwords_path.empty()) cfg.stopwords = load_word_list(stopwords_path);
    return cfg;
  }

  TitleWhitelist whitelist() const {
    return titles_path.empty() ? TitleWhitelist()
                               : TitleWhitelist::load(titles_path);
  }
};

// HEWER_CONFIG may point at a JSON file of defaults for the global flags.
void apply_env_defaults(GlobalOpts& g) {
  const char* path = std::getenv("HEWER_CONFIG");
  if (!path || !*path) return;
  std::ifstream in(path);
  if (!in) throw IoError(std::string("HEWER_CONFIG points at unreadable file: ") + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("HEWER_CONFIG is not valid JSON: ") + e.what());
  }
  g.stopwords_path = j.value("stopwords", g.stopwords_path);
  g.titles_path = j.value("titles", g.titles_path);
  g.out_dir = j.value("out_dir", g.out_dir);
  g.icase = j.value("icase", g.icase);
  g.threads = j.value("threads", g.threads);
}

std::vector<Question> questions_in_difficult_order(
    const std::vector<Question>& questions, const DifficultSet& difficult) {
  std::vector<Question> out;
  for (const auto& q : questions)
    if (difficult.question_ids.count(q.question_id)) out.push_back(q);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "hewer: IR coverage analysis for question answering, helpful-extension-"
      "word mining, and blind relevance feedback evaluation"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags are accepted after the subcommand too

  GlobalOpts g;
  try {
    apply_env_defaults(g);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  }
  app.add_option("--stopwords", g.stopwords_path, "stopword file (one word per line)");
  app.add_option("--titles", g.titles_path, "title whitelist file for mining");
  app.add_flag("--icase", g.icase, "compile answer patterns case-insensitively");
  app.add_option("--threads", g.threads, "worker threads (0 = OpenMP default)");
  app.add_option("--out-dir", g.out_dir,
                 "directory that relative output paths resolve into");

  // ---- index ----
  auto* c_index = app.add_subcommand("index", "build an index snapshot from a corpus");
  std::string corpus_path, corpus_format = "auto", granularity = "passage",
              out_path;
  bool strip_numbers = false, no_stem = false, no_lowercase = false,
       no_stop_stems = false;
  c_index->add_option("--corpus", corpus_path)->required();
  c_index->add_option("--format", corpus_format, "trec|jsonl|auto");
  c_index->add_option("--granularity", granularity, "document|passage");
  c_index->add_flag("--strip-numbers", strip_numbers);
  c_index->add_flag("--no-stem", no_stem);
  c_index->add_flag("--no-lowercase", no_lowercase);
  c_index->add_flag("--no-stop-stems", no_stop_stems);
  c_index->add_option("--out", out_path)->required();

  // ---- retrieve ----
  auto* c_retrieve = app.add_subcommand("retrieve", "ranked retrieval for a question set");
  std::string index_path, questions_path, questions_format = "auto",
              variant = "q", ranked_out;
  int depth = 20;
  c_retrieve->add_option("--index", index_path)->required();
  c_retrieve->add_option("--questions", questions_path)->required();
  c_retrieve->add_option("--questions-format", questions_format, "tsv|jsonl|auto");
  c_retrieve->add_option("--n", depth, "retrieval depth")->required();
  c_retrieve->add_option("--variant", variant, "q|qt");
  c_retrieve->add_option("--out", ranked_out)->required();

  // ---- eval ----
  auto* c_eval = app.add_subcommand("eval", "classify hits and log a run record");
  std::string e_index, e_ranked, e_patterns, e_judgments, e_run_id, e_variant = "q",
              e_qset, e_runlog;
  int e_n = 20;
  c_eval->add_option("--index", e_index)->required();
  c_eval->add_option("--ranked", e_ranked)->required();
  c_eval->add_option("--patterns", e_patterns)->required();
  c_eval->add_option("--judgments", e_judgments)->required();
  c_eval->add_option("--n", e_n)->required();
  c_eval->add_option("--run-id", e_run_id)->required();
  c_eval->add_option("--variant", e_variant);
  c_eval->add_option("--question-set", e_qset);
  c_eval->add_option("--run-log", e_runlog)->required();

  // ---- difficult ----
  auto* c_diff = app.add_subcommand("difficult", "identify zero-redundancy questions");
  std::string d_runlog, d_out;
  std::vector<std::string> d_runs;
  int d_n = 20;
  c_diff->add_option("--run-log", d_runlog)->required();
  c_diff->add_option("--runs", d_runs, "run ids to consult (default: all at depth n)")
      ->delimiter(',');
  c_diff->add_option("--n", d_n)->required();
  c_diff->add_option("--out", d_out)->required();

  // ---- mine ----
  auto* c_mine = app.add_subcommand("mine", "harvest extension candidates from answer-bearing passages");
  std::string m_difficult, m_corpus, m_corpus_format = "auto", m_index,
              m_questions, m_qformat = "auto", m_patterns, m_judgments, m_out;
  c_mine->add_option("--difficult", m_difficult)->required();
  c_mine->add_option("--corpus", m_corpus)->required();
  c_mine->add_option("--format", m_corpus_format);
  c_mine->add_option("--index", m_index, "index whose analyzer drives normalization")
      ->required();
  c_mine->add_option("--questions", m_questions)->required();
  c_mine->add_option("--questions-format", m_qformat);
  c_mine->add_option("--patterns", m_patterns)->required();
  c_mine->add_option("--judgments", m_judgments)->required();
  c_mine->add_option("--out", m_out)->required();

  // ---- eval-ext ----
  auto* c_ext = app.add_subcommand("eval-ext", "evaluate extension candidates; emit HEW records");
  std::string x_candidates, x_index, x_questions, x_qformat = "auto", x_patterns,
              x_judgments, x_out_records, x_out_summary;
  int x_n = 20;
  c_ext->add_option("--candidates", x_candidates)->required();
  c_ext->add_option("--index", x_index)->required();
  c_ext->add_option("--questions", x_questions)->required();
  c_ext->add_option("--questions-format", x_qformat);
  c_ext->add_option("--patterns", x_patterns)->required();
  c_ext->add_option("--judgments", x_judgments)->required();
  c_ext->add_option("--n", x_n)->required();
  c_ext->add_option("--out-records", x_out_records)->required();
  c_ext->add_option("--out-summary", x_out_summary)->required();

  // ---- rf ----
  auto* c_rf = app.add_subcommand("rf", "blind relevance feedback experiment");
  std::string r_base_index, r_doc_index, r_para_index, r_questions,
      r_qformat = "auto", r_patterns, r_judgments, r_out_table, r_out_terms,
      r_hew, r_out_inter, r_runlog;
  std::vector<int> r_rs{5};
  std::vector<int> r_ranks{20};
  int r_k = 5;
  c_rf->add_option("--base-index", r_base_index, "index scored for coverage")
      ->required();
  c_rf->add_option("--doc-index", r_doc_index, "document index feeding RF terms");
  c_rf->add_option("--para-index", r_para_index, "passage index feeding RF terms");
  c_rf->add_option("--questions", r_questions)->required();
  c_rf->add_option("--questions-format", r_qformat);
  c_rf->add_option("--patterns", r_patterns)->required();
  c_rf->add_option("--judgments", r_judgments)->required();
  c_rf->add_option("--r", r_rs, "feedback text counts")->delimiter(',');
  c_rf->add_option("--k", r_k, "terms appended per query");
  c_rf->add_option("--ranks", r_ranks, "coverage ranks")->delimiter(',');
  c_rf->add_option("--out-table", r_out_table)->required();
  c_rf->add_option("--out-terms", r_out_terms)->required();
  c_rf->add_option("--hew", r_hew, "HEW records for the intersection analysis");
  c_rf->add_option("--out-intersection", r_out_inter);
  c_rf->add_option("--run-log", r_runlog, "also append per-rank run records");

  // ---- report ----
  auto* c_report = app.add_subcommand("report", "render tables from the run log");
  std::string p_runlog, p_kind, p_format = "tsv", p_out, p_granularity, p_variant,
              p_qset, p_prefix;
  std::vector<std::string> p_runs;
  int p_n = 0;
  c_report->add_option("--run-log", p_runlog)->required();
  c_report
      ->add_option("--kind", p_kind,
                   "coverage_table|difficult_counts|common_difficult|rf_table")
      ->required();
  c_report->add_option("--format", p_format, "tsv|text");
  c_report->add_option("--out", p_out, "output file (default: stdout)");
  c_report->add_option("--runs", p_runs)->delimiter(',');
  c_report->add_option("--run-prefix", p_prefix);
  c_report->add_option("--granularity", p_granularity);
  c_report->add_option("--variant", p_variant);
  c_report->add_option("--question-set", p_qset);
  c_report->add_option("--n", p_n);

  // ---- run ----
  auto* c_run = app.add_subcommand("run", "execute a whole manifest");
  std::string run_manifest_path, run_out = "hewer-out";
  bool run_quiet = false;
  c_run->add_option("--manifest", run_manifest_path)->required();
  c_run->add_option("--out", run_out, "output directory");
  c_run->add_flag("--quiet", run_quiet);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_index) {
      Corpus corpus = load_corpus(corpus_path, corpus_format);
      for (const auto& w : corpus.warnings) std::cerr << "warning: " << w << '\n';
      IndexConfig cfg;
      cfg.granularity = granularity_from_name(granularity);
      cfg.analyzer =
          g.analyzer_config(strip_numbers, no_stem, no_lowercase, no_stop_stems);
      auto index = InvertedIndex::build(corpus, cfg, g.threads);
      index.save(g.out(out_path));
      std::cout << "indexed " << index.unit_count() << " units ("
                << granularity_name(cfg.granularity)
                << "), fingerprint " << cfg.fingerprint() << '\n';
    } else if (*c_retrieve) {
      auto index = InvertedIndex::load(index_path);
      auto questions = load_questions(questions_path, questions_format);
      VariantKind kind = variant_from_name(variant);
      if (kind != VariantKind::Q && kind != VariantKind::QT)
        throw Error(ErrorCode::usage, "retrieve supports variants q and qt");
      std::vector<QueryInput> queries;
      for (const auto& q : questions)
        queries.push_back(QueryInput{q.question_id, formulate_query(q, {kind, {}})});
      auto ranked = index.retrieve_batch(queries, depth, g.threads);
      RankedFileMeta meta;
      meta.fingerprint = index.config().fingerprint();
      meta.n = depth;
      meta.variant = variant;
      meta.granularity = std::string(granularity_name(index.config().granularity));
      write_ranked_jsonl(g.out(ranked_out), meta, ranked);
      size_t empties = 0;
      for (const auto& rr : ranked) empties += rr.empty_query ? 1 : 0;
      std::cout << "retrieved for " << ranked.size() << " questions ("
                << empties << " empty queries)\n";
    } else if (*c_eval) {
      auto index = InvertedIndex::load(e_index);
      RankedFileMeta meta;
      auto ranked = read_ranked_jsonl(e_ranked, &meta);
      if (meta.n < e_n)
        throw PreconditionError("ranked lists were cut at n=" +
                                std::to_string(meta.n) +
                                ", cannot evaluate at n=" + std::to_string(e_n));
      auto keys = load_answer_keys(e_patterns, e_judgments, g.icase);
      for (const auto& w : keys.warnings) std::cerr << "warning: " << w << '\n';
      RunRecord rec = evaluate_run(ranked, keys, e_n, index, g.threads);
      rec.run_id = e_run_id;
      rec.config.variant = e_variant;
      rec.config.question_set = e_qset;
      RunLog(g.out(e_runlog)).append(rec);
      std::cout << "run " << rec.run_id << ": coverage strict "
                << format_fixed3(coverage(rec, MatchMode::strict)) << ", lenient "
                << format_fixed3(coverage(rec, MatchMode::lenient))
                << "; redundancy strict "
                << format_fixed3(redundancy(rec, MatchMode::strict)) << ", lenient "
                << format_fixed3(redundancy(rec, MatchMode::lenient)) << " ("
                << rec.unevaluable.size() << " unevaluable)\n";
    } else if (*c_diff) {
      RunFilter filter;
      filter.run_ids = d_runs;
      if (d_runs.empty()) filter.n = d_n;
      auto runs = RunLog(d_runlog).load(filter);
      auto difficult = identify_difficult(runs, d_n);
      std::string fp;
      for (const auto& r : runs) fp += r.run_id + ";";
      write_difficult_json(g.out(d_out), difficult, to_hex(fnv1a64(fp)));
      std::cout << difficult.question_ids.size() << " difficult questions over "
                << runs.size() << " runs at n=" << d_n << '\n';
    } else if (*c_mine) {
      auto difficult = read_difficult_json(m_difficult);
      Corpus corpus = load_corpus(m_corpus, m_corpus_format);
      auto index = InvertedIndex::load(m_index);
      auto questions = load_questions(m_questions, m_qformat);
      auto keys = load_answer_keys(m_patterns, m_judgments, g.icase);
      auto whitelist = g.whitelist();
      std::vector<CandidateSet> sets;
      for (const auto& q : questions_in_difficult_order(questions, difficult)) {
        const AnswerKey* key = keys.find(q.question_id);
        if (!key) {
          std::cerr << "warning: no key for difficult question " << q.question_id
                    << "; skipped\n";
          continue;
        }
        std::vector<std::string> missing;
        auto passages = collect_answer_passages(*key, corpus, &missing);
        auto cs = mine_candidates(passages, q, *key, index.analyzer(), whitelist);
        cs.missing_doc_ids = std::move(missing);
        for (const auto& w : cs.missing_doc_ids)
          std::cerr << "warning: " << w << '\n';
        sets.push_back(std::move(cs));
      }
      write_candidates_jsonl(g.out(m_out), sets, index.config().fingerprint());
      std::cout << "mined candidates for " << sets.size() << " questions\n";
    } else if (*c_ext) {
      auto candidate_sets = read_candidates_jsonl(x_candidates);
      auto index = InvertedIndex::load(x_index);
      auto questions = load_questions(x_questions, x_qformat);
      auto keys = load_answer_keys(x_patterns, x_judgments, g.icase);
      std::map<std::string, const Question*> by_id;
      for (const auto& q : questions) by_id[q.question_id] = &q;
      std::vector<HewRecord> records;
      for (const auto& cs : candidate_sets) {
        if (cs.candidates.empty()) continue;
        auto it = by_id.find(cs.question_id);
        if (it == by_id.end())
          throw PreconditionError("candidates reference unknown question '" +
                                  cs.question_id + "'");
        auto eval =
            evaluate_extensions(index, *it->second, cs, x_n, keys, g.threads);
        records.insert(records.end(), eval.records.begin(), eval.records.end());
      }
      write_hew_jsonl(g.out(x_out_records), records, index.config().fingerprint());
      auto summary = hew_stats(records, static_cast<int>(candidate_sets.size()));
      write_text_file(g.out(x_out_summary),
                      render_hew_summary(summary, index.config().fingerprint()));
      std::cout << "HEW records: " << records.size() << "; HEW pairs: "
                << summary.hew_count_strict << '\n';
    } else if (*c_rf) {
      auto base = InvertedIndex::load(r_base_index);
      std::map<Granularity, InvertedIndex> feeds_storage;
      std::map<Granularity, const InvertedIndex*> feeds;
      feeds[base.config().granularity] = &base;
      if (!r_doc_index.empty()) {
        feeds_storage.emplace(Granularity::document,
                              InvertedIndex::load(r_doc_index));
        feeds[Granularity::document] = &feeds_storage.at(Granularity::document);
      }
      if (!r_para_index.empty()) {
        feeds_storage.emplace(Granularity::passage,
                              InvertedIndex::load(r_para_index));
        feeds[Granularity::passage] = &feeds_storage.at(Granularity::passage);
      }
      auto questions = load_questions(r_questions, r_qformat);
      auto keys = load_answer_keys(r_patterns, r_judgments, g.icase);
      std::sort(r_ranks.begin(), r_ranks.end());
      std::vector<RfConfig> configs;
      for (int r : r_rs)
        for (const auto& [level, _] : feeds)
          configs.push_back(RfConfig{r, r_k, level});
      auto exp = rf_coverage_experiment(base, feeds, questions, keys, configs,
                                        r_ranks, g.threads);
      write_text_file(g.out(r_out_table), render_tsv(exp.table));
      std::ofstream terms_out(g.out(r_out_terms), std::ios::binary);
      terms_out << nlohmann::ordered_json{
                       {"_meta",
                        {{"schema_version", 1},
                         {"kind", "rf_terms"},
                         {"fingerprint", base.config().fingerprint()}}}}
                       .dump()
                << '\n';
      for (const auto& q : questions) {
        auto it = exp.terms.find(q.question_id);
        if (it == exp.terms.end()) continue;
        nlohmann::ordered_json rec;
        rec["question_id"] = q.question_id;
        for (const auto& [label, terms] : it->second) rec["terms"][label] = terms;
        terms_out << rec.dump() << '\n';
      }
      if (!r_runlog.empty()) {
        RunLog log(g.out(r_runlog));
        for (auto& rec : exp.records) log.append(rec);
      }
      if (!r_hew.empty()) {
        if (r_out_inter.empty())
          throw Error(ErrorCode::usage, "--hew needs --out-intersection");
        auto hew_records = read_hew_jsonl(r_hew);
        auto hew_by_q = hew_stems_by_question(hew_records);
        std::set<std::string> hew_qids;
        for (const auto& rec : hew_records) hew_qids.insert(rec.question_id);
        std::vector<std::pair<std::string, RfIntersection>> columns;
        for (const auto& cfg : configs) {
          const auto& feed = *feeds.at(cfg.level);
          std::map<std::string, std::set<std::string>> hew_sets;
          std::map<std::string, std::vector<std::vector<std::string>>> irt;
          std::map<std::string, std::vector<std::string>> terms;
          for (const auto& q : questions) {
            if (!hew_qids.count(q.question_id)) continue;
            auto hit = hew_by_q.find(q.question_id);
            hew_sets[q.question_id] =
                hit == hew_by_q.end() ? std::set<std::string>{} : hit->second;
            auto irt_rr = feed.retrieve(q.question_id, q.resolved_text, cfg.r);
            auto& texts = irt[q.question_id];
            for (const auto& e : irt_rr.entries)
              texts.push_back(feed.analyzer().stems(feed.unit_text(e.unit_id)));
            terms[q.question_id] = select_rf_terms(feed, q, cfg).terms;
          }
          columns.emplace_back(cfg.label(),
                               rf_hew_intersection(hew_sets, irt, terms));
        }
        write_text_file(g.out(r_out_inter), render_tsv(render_rf_intersection(columns)));
      }
      std::cout << "rf experiment over " << questions.size() << " questions, "
                << configs.size() << " configs\n";
    } else if (*c_report) {
      RunFilter filter;
      filter.run_ids = p_runs;
      filter.run_id_prefix = p_prefix;
      if (!p_granularity.empty())
        filter.granularity = granularity_from_name(p_granularity);
      if (!p_variant.empty()) filter.variant = p_variant;
      if (!p_qset.empty()) filter.question_set = p_qset;
      if (p_n > 0) filter.n = p_n;
      ReportKind kind = report_kind_from_name(p_kind);
      if (kind == ReportKind::rf_table && p_prefix.empty() && p_runs.empty())
        filter.run_id_prefix = "rf-";
      auto runs = RunLog(p_runlog).load(filter);
      Table table = make_report(kind, runs);
      std::string rendered =
          p_format == "text" ? render_text(table) : render_tsv(table);
      if (p_out.empty())
        std::cout << rendered;
      else
        write_text_file(g.out(p_out), rendered);
    } else if (*c_run) {
      Manifest manifest = Manifest::load(run_manifest_path);
      PipelineOptions options;
      options.out_dir = g.out(run_out);
      options.threads = g.threads;
      options.quiet = run_quiet;
      run_manifest(manifest, options);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
