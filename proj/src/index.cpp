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

#include "hewer/index.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "hewer/errors.hpp"
#include "hewer/fingerprint.hpp"

namespace hewer {

namespace {

constexpr char kSnapshotMagic[] = "HEWIDX01";
constexpr int kSnapshotVersion = 1;

int resolve_threads(int threads) {
  return threads > 0 ? threads : omp_get_max_threads();
}

// Per-thread partial index over a contiguous unit range.
struct BuildChunk {
  std::unordered_map<std::string, std::vector<Posting>> postings;
};

}  // namespace

std::string_view granularity_name(Granularity g) {
  return g == Granularity::document ? "document" : "passage";
}

Granularity granularity_from_name(std::string_view name) {
  if (name == "document" || name == "doc") return Granularity::document;
  if (name == "passage" || name == "para" || name == "paragraph")
    return Granularity::passage;
  throw Error(ErrorCode::usage, "unknown granularity: " + std::string(name));
}

std::string IndexConfig::fingerprint() const {
  std::ostringstream os;
  os << "granularity=" << granularity_name(granularity)
     << ";analyzer=" << analyzer.fingerprint() << ";k1=" << k1 << ";b=" << b;
  return to_hex(fnv1a64(os.str()));
}

std::vector<UnitInput> collect_units(const Corpus& corpus, Granularity g) {
  std::vector<UnitInput> units;
  if (g == Granularity::document) {
    units.reserve(corpus.documents.size());
    for (const auto& d : corpus.documents)
      units.push_back(UnitInput{d.doc_id, d.doc_id, d.text});
  } else {
    units.reserve(corpus.passage_count());
    for (const auto& d : corpus.documents)
      for (const auto& p : d.passages)
        units.push_back(UnitInput{p.passage_id, p.parent_doc_id, p.text});
  }
  return units;
}

InvertedIndex InvertedIndex::build(const Corpus& corpus, IndexConfig cfg,
                                   int threads) {
  return build(collect_units(corpus, cfg.granularity), std::move(cfg), threads);
}

InvertedIndex InvertedIndex::build(std::vector<UnitInput> units, IndexConfig cfg,
                                   int threads) {
  InvertedIndex idx;
  idx.cfg_ = std::move(cfg);
  idx.analyzer_ = Analyzer(idx.cfg_.analyzer);

  const size_t n = units.size();
  idx.unit_ids_.resize(n);
  idx.unit_parents_.resize(n);
  idx.unit_texts_.resize(n);
  idx.unit_lengths_.resize(n);

  const int nthreads = resolve_threads(threads);
  const size_t nchunks =
      std::min<size_t>(n == 0 ? 1 : n, static_cast<size_t>(nthreads));
  std::vector<BuildChunk> chunks(nchunks);
  // contiguous ranges so concatenating chunk postings keeps units ascending
  auto chunk_begin = [&](size_t c) { return c * n / nchunks; };

#pragma omp parallel for num_threads(nthreads) schedule(static, 1)
  for (size_t c = 0; c < nchunks; ++c) {
    BuildChunk& chunk = chunks[c];
    const size_t lo = chunk_begin(c);
    const size_t hi = chunk_begin(c + 1);
    for (size_t u = lo; u < hi; ++u) {
      auto terms = idx.analyzer_.analyze(units[u].text);
      idx.unit_lengths_[u] = static_cast<uint32_t>(terms.size());
      idx.unit_ids_[u] = std::move(units[u].id);
      idx.unit_parents_[u] = std::move(units[u].parent_id);
      idx.unit_texts_[u] = std::move(units[u].text);
      std::unordered_map<std::string, uint32_t> tf;
      for (auto& t : terms) ++tf[std::move(t.stem)];
      for (auto& [stem, count] : tf)
        chunk.postings[stem].push_back(
            Posting{static_cast<uint32_t>(u), count});
    }
    // per-unit maps are unordered; restore unit order within the chunk
    for (auto& [stem, plist] : chunk.postings)
      std::sort(plist.begin(), plist.end(),
                [](const Posting& a, const Posting& b) { return a.unit < b.unit; });
  }

  for (auto& chunk : chunks) {
    for (auto& [stem, plist] : chunk.postings) {
      auto& dst = idx.postings_[stem];
      dst.insert(dst.end(), plist.begin(), plist.end());
    }
  }
  idx.finish_build();
  return idx;
}

InvertedIndex InvertedIndex::build_serial(std::vector<UnitInput> units,
                                          IndexConfig cfg) {
  InvertedIndex idx;
  idx.cfg_ = std::move(cfg);
  idx.analyzer_ = Analyzer(idx.cfg_.analyzer);

  const size_t n = units.size();
  idx.unit_ids_.resize(n);
  idx.unit_parents_.resize(n);
  idx.unit_texts_.resize(n);
  idx.unit_lengths_.resize(n);

  for (size_t u = 0; u < n; ++u) {
    auto terms = idx.analyzer_.analyze(units[u].text);
    idx.unit_lengths_[u] = static_cast<uint32_t>(terms.size());
    idx.unit_ids_[u] = std::move(units[u].id);
    idx.unit_parents_[u] = std::move(units[u].parent_id);
    idx.unit_texts_[u] = std::move(units[u].text);
    std::map<std::string, uint32_t> tf;
    for (auto& t : terms) ++tf[std::move(t.stem)];
    for (auto& [stem, count] : tf)
      idx.postings_[stem].push_back(Posting{static_cast<uint32_t>(u), count});
  }
  idx.finish_build();
  return idx;
}

void InvertedIndex::finish_build() {
  id_lookup_.reserve(unit_ids_.size());
  for (size_t u = 0; u < unit_ids_.size(); ++u) {
    auto [it, inserted] =
        id_lookup_.emplace(unit_ids_[u], static_cast<uint32_t>(u));
    if (!inserted)
      throw CollisionError("duplicate unit id in index build: " + unit_ids_[u]);
  }
  uint64_t total = 0;
  for (uint32_t len : unit_lengths_) total += len;
  avg_length_ = unit_lengths_.empty()
                     ? 0.0
                     : static_cast<double>(total) /
                           static_cast<double>(unit_lengths_.size());
}

uint32_t InvertedIndex::internal_id(std::string_view unit_id) const {
  auto it = id_lookup_.find(std::string(unit_id));
  if (it == id_lookup_.end())
    throw PreconditionError("unknown unit id: " + std::string(unit_id));
  return it->second;
}

bool InvertedIndex::has_unit(std::string_view unit_id) const {
  return id_lookup_.count(std::string(unit_id)) > 0;
}

const std::string& InvertedIndex::unit_text(std::string_view unit_id) const {
  return unit_texts_[internal_id(unit_id)];
}

const std::string& InvertedIndex::unit_parent(std::string_view unit_id) const {
  return unit_parents_[internal_id(unit_id)];
}

uint32_t InvertedIndex::unit_length(std::string_view unit_id) const {
  return unit_lengths_[internal_id(unit_id)];
}

size_t InvertedIndex::df(std::string_view stem) const {
  auto it = postings_.find(std::string(stem));
  return it == postings_.end() ? 0 : it->second.size();
}

const std::vector<Posting>* InvertedIndex::postings(std::string_view stem) const {
  auto it = postings_.find(std::string(stem));
  return it == postings_.end() ? nullptr : &it->second;
}

double InvertedIndex::score_internal(uint32_t unit,
                                     const std::vector<std::string>& stems) const {
  const double N = static_cast<double>(unit_count());
  const double len = static_cast<double>(unit_lengths_[unit]);
  const double norm =
      cfg_.k1 * (1.0 - cfg_.b +
                 cfg_.b * (avg_length_ > 0.0 ? len / avg_length_ : 0.0));
  double total = 0.0;
  for (const auto& stem : stems) {
    const auto* plist = postings(stem);
    if (!plist) continue;
    auto it = std::lower_bound(
        plist->begin(), plist->end(), unit,
        [](const Posting& p, uint32_t u) { return p.unit < u; });
    if (it == plist->end() || it->unit != unit) continue;
    const double df_ = static_cast<double>(plist->size());
    const double idf = std::log(1.0 + (N - df_ + 0.5) / (df_ + 0.5));
    const double tf = static_cast<double>(it->tf);
    total += idf * tf * (cfg_.k1 + 1.0) / (tf + norm);
  }
  return total;
}

double InvertedIndex::score(std::string_view unit_id,
                            const std::vector<std::string>& query_stems) const {
  return score_internal(internal_id(unit_id), query_stems);
}

RankedResult InvertedIndex::rank(std::string_view question_id,
                                 const std::vector<std::string>& stems,
                                 int n) const {
  RankedResult result;
  result.question_id = std::string(question_id);
  if (stems.empty()) {
    result.empty_query = true;
    return result;
  }
  if (n < 1) throw PreconditionError("retrieval depth must be >= 1");

  // Term-at-a-time in query order: every unit accumulates its contributions
  // in exactly the order a per-unit sum would, so scores are bit-identical to
  // the exhaustive scorer.
  std::vector<double> acc(unit_count(), 0.0);
  std::vector<uint32_t> touched;
  const double N = static_cast<double>(unit_count());
  for (const auto& stem : stems) {
    const auto* plist = postings(stem);
    if (!plist) continue;
    const double df_ = static_cast<double>(plist->size());
    const double idf = std::log(1.0 + (N - df_ + 0.5) / (df_ + 0.5));
    for (const Posting& p : *plist) {
      if (acc[p.unit] == 0.0) touched.push_back(p.unit);
      const double len = static_cast<double>(unit_lengths_[p.unit]);
      const double norm =
          cfg_.k1 * (1.0 - cfg_.b +
                     cfg_.b * (avg_length_ > 0.0 ? len / avg_length_ : 0.0));
      const double tf = static_cast<double>(p.tf);
      acc[p.unit] += idf * tf * (cfg_.k1 + 1.0) / (tf + norm);
    }
  }

  auto better = [&](uint32_t a, uint32_t b) {
    if (acc[a] != acc[b]) return acc[a] > acc[b];
    return unit_ids_[a] < unit_ids_[b];
  };
  if (touched.size() > static_cast<size_t>(n)) {
    std::partial_sort(touched.begin(), touched.begin() + n, touched.end(),
                      better);
    touched.resize(static_cast<size_t>(n));
  } else {
    std::sort(touched.begin(), touched.end(), better);
  }

  result.entries.reserve(touched.size());
  for (uint32_t u : touched)
    result.entries.push_back(ScoredEntry{unit_ids_[u], acc[u]});
  return result;
}

RankedResult InvertedIndex::retrieve(std::string_view question_id,
                                     std::string_view query_text, int n) const {
  return rank(question_id, analyzer_.stems(query_text), n);
}

std::vector<RankedResult> InvertedIndex::retrieve_batch(
    const std::vector<QueryInput>& queries, int n, int threads) const {
  std::vector<RankedResult> results(queries.size());
  const int nthreads = resolve_threads(threads);
#pragma omp parallel for num_threads(nthreads) schedule(dynamic)
  for (size_t i = 0; i < queries.size(); ++i)
    results[i] = retrieve(queries[i].question_id, queries[i].text, n);
  return results;
}

std::vector<RankedResult> InvertedIndex::retrieve_batch_serial(
    const std::vector<QueryInput>& queries, int n) const {
  std::vector<RankedResult> results(queries.size());
  for (size_t i = 0; i < queries.size(); ++i)
    results[i] = retrieve(queries[i].question_id, queries[i].text, n);
  return results;
}

void InvertedIndex::save(const std::string& path) const {
  nlohmann::ordered_json j;
  j["schema_version"] = kSnapshotVersion;
  j["config"] = {
      {"granularity", std::string(granularity_name(cfg_.granularity))},
      {"k1", cfg_.k1},
      {"b", cfg_.b},
      {"analyzer",
       {{"lowercase", cfg_.analyzer.lowercase},
        {"strip_numbers", cfg_.analyzer.strip_numbers},
        {"stem", cfg_.analyzer.stem},
        {"stop_on_stems", cfg_.analyzer.stop_on_stems},
        {"stopwords", cfg_.analyzer.stopwords}}},
  };
  j["fingerprint"] = cfg_.fingerprint();
  nlohmann::ordered_json units = nlohmann::ordered_json::array();
  for (size_t u = 0; u < unit_ids_.size(); ++u)
    units.push_back({unit_ids_[u], unit_parents_[u], unit_lengths_[u],
                     unit_texts_[u]});
  j["units"] = std::move(units);

  std::vector<std::string> stems;
  stems.reserve(postings_.size());
  for (const auto& [stem, _] : postings_) stems.push_back(stem);
  std::sort(stems.begin(), stems.end());
  nlohmann::ordered_json post;
  for (const auto& stem : stems) {
    nlohmann::ordered_json plist = nlohmann::ordered_json::array();
    for (const Posting& p : postings_.at(stem)) plist.push_back({p.unit, p.tf});
    post[stem] = std::move(plist);
  }
  j["postings"] = std::move(post);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write index snapshot: " + path);
  out.write(kSnapshotMagic, 8);
  auto bytes = nlohmann::ordered_json::to_msgpack(j);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("failed writing index snapshot: " + path);
}

InvertedIndex InvertedIndex::load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open index snapshot: " + path);
  char magic[8];
  in.read(magic, 8);
  if (in.gcount() != 8 || std::string_view(magic, 8) != kSnapshotMagic)
    throw SchemaError("not an index snapshot (bad magic): " + path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  nlohmann::json j;
  try {
    j = nlohmann::json::from_msgpack(bytes);
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError("corrupt index snapshot " + path + ": " + e.what());
  }
  if (!j.contains("schema_version") ||
      j["schema_version"].get<int>() != kSnapshotVersion)
    throw SchemaError("index snapshot schema version mismatch in " + path);

  InvertedIndex idx;
  const auto& jc = j["config"];
  idx.cfg_.granularity =
      granularity_from_name(jc["granularity"].get<std::string>());
  idx.cfg_.k1 = jc["k1"].get<double>();
  idx.cfg_.b = jc["b"].get<double>();
  const auto& ja = jc["analyzer"];
  idx.cfg_.analyzer.lowercase = ja["lowercase"].get<bool>();
  idx.cfg_.analyzer.strip_numbers = ja["strip_numbers"].get<bool>();
  idx.cfg_.analyzer.stem = ja["stem"].get<bool>();
  idx.cfg_.analyzer.stop_on_stems = ja["stop_on_stems"].get<bool>();
  idx.cfg_.analyzer.stopwords =
      ja["stopwords"].get<std::vector<std::string>>();
  idx.analyzer_ = Analyzer(idx.cfg_.analyzer);

  for (const auto& u : j["units"]) {
    idx.unit_ids_.push_back(u[0].get<std::string>());
    idx.unit_parents_.push_back(u[1].get<std::string>());
    idx.unit_lengths_.push_back(u[2].get<uint32_t>());
    idx.unit_texts_.push_back(u[3].get<std::string>());
  }
  for (const auto& [stem, plist] : j["postings"].items()) {
    auto& dst = idx.postings_[stem];
    for (const auto& p : plist)
      dst.push_back(Posting{p[0].get<uint32_t>(), p[1].get<uint32_t>()});
  }
  idx.finish_build();
  return idx;
}

}  // namespace hewer
