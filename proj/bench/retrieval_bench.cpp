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

// Compares the serial reference kernels against the OpenMP ones on a
// synthetic corpus and checks they agree. Sizes are overridable:
//   hewer_bench [units] [queries] [n]

#include <omp.h>

#include <cstdlib>
#include <iostream>
#include <random>
#include <sstream>

#include "hewer/index.hpp"

using namespace hewer;

namespace {

std::vector<std::string> make_vocab(size_t size) {
  std::vector<std::string> vocab;
  vocab.reserve(size);
  for (size_t i = 0; i < size; ++i) {
    std::string w;
    size_t v = i;
    do {
      w.push_back(static_cast<char>('a' + v % 26));
      v /= 26;
    } while (v);
    w.push_back('w');  // avoid stopword-shaped single letters
    vocab.push_back(w);
  }
  return vocab;
}

std::vector<UnitInput> make_units(size_t count, const std::vector<std::string>& vocab,
                                  std::mt19937& rng) {
  std::uniform_int_distribution<size_t> len_dist(20, 200);
  std::uniform_int_distribution<size_t> word_dist(0, vocab.size() - 1);
  std::vector<UnitInput> units;
  units.reserve(count);
  for (size_t i = 0; i < count; ++i) {
    std::ostringstream text;
    size_t len = len_dist(rng);
    for (size_t w = 0; w < len; ++w) {
      if (w) text << ' ';
      text << vocab[word_dist(rng)];
    }
    units.push_back(UnitInput{"u" + std::to_string(i), "d" + std::to_string(i),
                              text.str()});
  }
  return units;
}

std::vector<QueryInput> make_queries(size_t count,
                                     const std::vector<std::string>& vocab,
                                     std::mt19937& rng) {
  std::uniform_int_distribution<size_t> len_dist(2, 6);
  std::uniform_int_distribution<size_t> word_dist(0, vocab.size() - 1);
  std::vector<QueryInput> queries;
  for (size_t i = 0; i < count; ++i) {
    std::ostringstream text;
    size_t len = len_dist(rng);
    for (size_t w = 0; w < len; ++w) {
      if (w) text << ' ';
      text << vocab[word_dist(rng)];
    }
    queries.push_back(QueryInput{"q" + std::to_string(i), text.str()});
  }
  return queries;
}

bool same_results(const std::vector<RankedResult>& a,
                  const std::vector<RankedResult>& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].entries.size() != b[i].entries.size()) return false;
    for (size_t j = 0; j < a[i].entries.size(); ++j)
      if (a[i].entries[j].unit_id != b[i].entries[j].unit_id ||
          a[i].entries[j].score != b[i].entries[j].score)
        return false;
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  size_t n_units = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 20000;
  size_t n_queries = argc > 2 ? std::strtoul(argv[2], nullptr, 10) : 2000;
  int depth = argc > 3 ? std::atoi(argv[3]) : 20;

  std::mt19937 rng(42);
  auto vocab = make_vocab(5000);
  auto units = make_units(n_units, vocab, rng);
  auto queries = make_queries(n_queries, vocab, rng);

  IndexConfig cfg;
  cfg.granularity = Granularity::document;
  cfg.analyzer.stopwords = {"the", "a", "of"};

  std::cout << "units=" << n_units << " queries=" << n_queries << " n=" << depth
            << " threads=" << omp_get_max_threads() << "\n\n";

  double t0 = omp_get_wtime();
  auto serial_index = InvertedIndex::build_serial(units, cfg);
  double t_build_serial = omp_get_wtime() - t0;

  t0 = omp_get_wtime();
  auto parallel_index = InvertedIndex::build(units, cfg);
  double t_build_parallel = omp_get_wtime() - t0;

  t0 = omp_get_wtime();
  auto serial_results = serial_index.retrieve_batch_serial(queries, depth);
  double t_query_serial = omp_get_wtime() - t0;

  t0 = omp_get_wtime();
  auto parallel_results = parallel_index.retrieve_batch(queries, depth);
  double t_query_parallel = omp_get_wtime() - t0;

  bool agree = same_results(serial_results, parallel_results);

  std::printf("%-18s %10s %10s %8s\n", "kernel", "serial(s)", "openmp(s)", "speedup");
  std::printf("%-18s %10.3f %10.3f %7.2fx\n", "index build", t_build_serial,
              t_build_parallel, t_build_serial / t_build_parallel);
  std::printf("%-18s %10.3f %10.3f %7.2fx\n", "batch retrieval", t_query_serial,
              t_query_parallel, t_query_serial / t_query_parallel);
  std::printf("\nresults identical: %s\n", agree ? "yes" : "NO");
  return agree ? 0 : 1;
}
