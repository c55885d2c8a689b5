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

#include "hewer/report.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "hewer/errors.hpp"
#include "hewer/fingerprint.hpp"

namespace hewer {

namespace {

// Stable digest over the runs a table was built from.
std::string runs_meta(const std::vector<RunRecord>& runs) {
  std::string blob;
  for (const auto& r : runs) {
    blob += r.run_id;
    blob += '|';
    blob += r.config.analyzer_fingerprint;
    blob += '|';
    blob += std::to_string(r.config.n);
    blob += ';';
  }
  return "fingerprint: " + to_hex(fnv1a64(blob)) +
         " runs: " + std::to_string(runs.size());
}

// Groups run indexes by question_set label, preserving first-seen order.
std::vector<std::pair<std::string, std::vector<size_t>>> group_by_set(
    const std::vector<RunRecord>& runs) {
  std::vector<std::pair<std::string, std::vector<size_t>>> groups;
  for (size_t i = 0; i < runs.size(); ++i) {
    auto it = std::find_if(groups.begin(), groups.end(), [&](const auto& g) {
      return g.first == runs[i].config.question_set;
    });
    if (it == groups.end())
      groups.push_back({runs[i].config.question_set, {i}});
    else
      it->second.push_back(i);
  }
  return groups;
}

std::set<std::string> common_questions(const std::vector<RunRecord>& runs,
                                       const std::vector<size_t>& members) {
  std::set<std::string> qids;
  for (const auto& [qid, _] : runs[members.front()].per_question)
    qids.insert(qid);
  for (size_t i = 1; i < members.size(); ++i) {
    std::set<std::string> keep;
    for (const auto& [qid, _] : runs[members[i]].per_question)
      if (qids.count(qid)) keep.insert(qid);
    qids.swap(keep);
  }
  return qids;
}

}  // namespace

ReportKind report_kind_from_name(std::string_view name) {
  if (name == "coverage_table") return ReportKind::coverage_table;
  if (name == "difficult_counts") return ReportKind::difficult_counts;
  if (name == "common_difficult") return ReportKind::common_difficult;
  if (name == "rf_table") return ReportKind::rf_table;
  throw Error(ErrorCode::usage, "unknown report kind: " + std::string(name));
}

std::string_view report_kind_name(ReportKind kind) {
  switch (kind) {
    case ReportKind::coverage_table:
      return "coverage_table";
    case ReportKind::difficult_counts:
      return "difficult_counts";
    case ReportKind::common_difficult:
      return "common_difficult";
    case ReportKind::rf_table:
      return "rf_table";
  }
  return "coverage_table";
}

std::string format_fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  return buf;
}

std::string render_tsv(const Table& table) {
  std::ostringstream os;
  os << "# " << table.title << " | " << table.meta << '\n';
  for (size_t c = 0; c < table.columns.size(); ++c) {
    if (c) os << '\t';
    os << table.columns[c];
  }
  os << '\n';
  for (const auto& row : table.rows) {
    for (size_t c = 0; c < row.size(); ++c) {
      if (c) os << '\t';
      os << row[c];
    }
    os << '\n';
  }
  return os.str();
}

std::string render_text(const Table& table) {
  std::vector<size_t> widths(table.columns.size(), 0);
  for (size_t c = 0; c < table.columns.size(); ++c)
    widths[c] = table.columns[c].size();
  for (const auto& row : table.rows)
    for (size_t c = 0; c < row.size() && c < widths.size(); ++c)
      widths[c] = std::max(widths[c], row[c].size());

  std::ostringstream os;
  os << table.title << "  (" << table.meta << ")\n";
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t c = 0; c < widths.size(); ++c) {
      std::string cell = c < cells.size() ? cells[c] : "";
      os << cell << std::string(widths[c] - cell.size(), ' ');
      os << (c + 1 < widths.size() ? "  " : "");
    }
    os << '\n';
  };
  line(table.columns);
  size_t total = 0;
  for (size_t w : widths) total += w + 2;
  os << std::string(total > 2 ? total - 2 : total, '-') << '\n';
  for (const auto& row : table.rows) line(row);
  return os.str();
}

Table make_coverage_table(const std::vector<RunRecord>& runs) {
  Table t;
  t.title = "coverage_table";
  t.meta = runs_meta(runs);
  t.columns = {"Run", "Coverage Len.", "Coverage Strict", "Redundancy Len.",
               "Redundancy Strict"};
  for (const auto& run : runs) {
    t.rows.push_back({
        run.run_id,
        format_fixed3(coverage(run, MatchMode::lenient)),
        format_fixed3(coverage(run, MatchMode::strict)),
        format_fixed3(redundancy(run, MatchMode::lenient)),
        format_fixed3(redundancy(run, MatchMode::strict)),
    });
  }
  return t;
}

Table make_difficult_counts(const std::vector<RunRecord>& runs) {
  Table t;
  t.title = "difficult_counts";
  t.meta = runs_meta(runs);
  std::vector<std::string> run_cols;
  for (const auto& run : runs)
    if (std::find(run_cols.begin(), run_cols.end(), run.run_id) == run_cols.end())
      run_cols.push_back(run.run_id);
  std::sort(run_cols.begin(), run_cols.end());

  t.columns = {"Question set"};
  t.columns.insert(t.columns.end(), run_cols.begin(), run_cols.end());

  for (const auto& [set_label, members] : group_by_set(runs)) {
    std::vector<std::string> row{set_label};
    for (const auto& col : run_cols) {
      auto it = std::find_if(members.begin(), members.end(), [&](size_t i) {
        return runs[i].run_id == col;
      });
      if (it == members.end()) {
        row.push_back("-");
        continue;
      }
      int difficult = 0;
      for (const auto& [qid, hits] : runs[*it].per_question)
        if (hits.strict_hits == 0 && hits.lenient_hits == 0) ++difficult;
      row.push_back(std::to_string(difficult));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table make_common_difficult(const std::vector<RunRecord>& runs) {
  Table t;
  t.title = "common_difficult";
  t.meta = runs_meta(runs);
  t.columns = {"Question set", "Strict", "Lenient"};
  for (const auto& [set_label, members] : group_by_set(runs)) {
    auto qids = common_questions(runs, members);
    int strict_difficult = 0;
    int lenient_difficult = 0;
    for (const auto& qid : qids) {
      bool all_strict_zero = true;
      bool all_lenient_zero = true;
      for (size_t i : members) {
        const auto& hits = runs[i].per_question.at(qid);
        if (hits.strict_hits > 0) all_strict_zero = false;
        if (hits.lenient_hits > 0) all_lenient_zero = false;
      }
      if (all_strict_zero) ++strict_difficult;
      if (all_lenient_zero) ++lenient_difficult;
    }
    t.rows.push_back({set_label, std::to_string(strict_difficult),
                      std::to_string(lenient_difficult)});
  }
  return t;
}

Table make_rf_table(const std::vector<RunRecord>& runs) {
  Table t;
  t.title = "rf_table";
  t.meta = runs_meta(runs);

  std::vector<std::string> rf_cols;
  std::set<int> ranks;
  for (const auto& run : runs) {
    if (!run.config.rf.empty() &&
        std::find(rf_cols.begin(), rf_cols.end(), run.config.rf) == rf_cols.end())
      rf_cols.push_back(run.config.rf);
    ranks.insert(run.config.n);
  }
  std::sort(rf_cols.begin(), rf_cols.end());

  t.columns = {"Rank"};
  t.columns.insert(t.columns.end(), rf_cols.begin(), rf_cols.end());
  t.columns.push_back("Baseline");

  for (int rank : ranks) {
    std::vector<std::string> row{std::to_string(rank)};
    for (const auto& col : rf_cols) {
      auto it = std::find_if(runs.begin(), runs.end(), [&](const RunRecord& r) {
        return r.config.rf == col && r.config.n == rank;
      });
      row.push_back(it == runs.end()
                        ? "-"
                        : format_fixed3(coverage(*it, MatchMode::strict)));
    }
    auto base = std::find_if(runs.begin(), runs.end(), [&](const RunRecord& r) {
      return r.config.rf.empty() && r.config.n == rank;
    });
    row.push_back(base == runs.end()
                      ? "-"
                      : format_fixed3(coverage(*base, MatchMode::strict)));
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table make_report(ReportKind kind, const std::vector<RunRecord>& runs) {
  switch (kind) {
    case ReportKind::coverage_table:
      return make_coverage_table(runs);
    case ReportKind::difficult_counts:
      return make_difficult_counts(runs);
    case ReportKind::common_difficult:
      return make_common_difficult(runs);
    case ReportKind::rf_table:
      return make_rf_table(runs);
  }
  throw Error(ErrorCode::usage, "unhandled report kind");
}

}  // namespace hewer
