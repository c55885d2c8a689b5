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

#include <string>
#include <vector>

#include "hewer/eval.hpp"

namespace hewer {

enum class ReportKind { coverage_table, difficult_counts, common_difficult, rf_table };

ReportKind report_kind_from_name(std::string_view name);
std::string_view report_kind_name(ReportKind kind);

struct Table {
  std::string title;
  std::string meta;  // fingerprint line embedded in every rendering
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

/// All numeric cells use fixed 3-decimal formatting.
std::string format_fixed3(double v);

std::string render_tsv(const Table& table);
std::string render_text(const Table& table);  // aligned columns

/// Run label | coverage (lenient, strict) | redundancy (lenient, strict).
Table make_coverage_table(const std::vector<RunRecord>& runs);

/// Rows per question set, one column per run: how many questions had zero
/// strict and zero lenient hits in that run alone.
Table make_difficult_counts(const std::vector<RunRecord>& runs);

/// Rows per question set, strict and lenient columns: questions difficult
/// across every run of the group under that match type alone.
Table make_common_difficult(const std::vector<RunRecord>& runs);

/// Rank rows; one strict-coverage column per RF configuration, baseline last.
Table make_rf_table(const std::vector<RunRecord>& runs);

Table make_report(ReportKind kind, const std::vector<RunRecord>& runs);

}  // namespace hewer
