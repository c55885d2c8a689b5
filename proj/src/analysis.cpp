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

#include "hewer/analysis.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "hewer/errors.hpp"
#include "hewer/fingerprint.hpp"
#include "hewer/porter.hpp"

namespace hewer {

namespace {

constexpr uint32_t kReplacementChar = 0xFFFD;

// Decodes one UTF-8 codepoint starting at i; advances i past it. Invalid
// sequences consume one byte and yield U+FFFD.
uint32_t decode_utf8(std::string_view s, size_t& i) {
  unsigned char c = static_cast<unsigned char>(s[i]);
  if (c < 0x80) {
    ++i;
    return c;
  }
  int extra;
  uint32_t cp;
  if ((c & 0xE0) == 0xC0) {
    extra = 1;
    cp = c & 0x1F;
  } else if ((c & 0xF0) == 0xE0) {
    extra = 2;
    cp = c & 0x0F;
  } else if ((c & 0xF8) == 0xF0) {
    extra = 3;
    cp = c & 0x07;
  } else {
    ++i;
    return kReplacementChar;
  }
  if (i + static_cast<size_t>(extra) >= s.size()) {
    ++i;
    return kReplacementChar;
  }
  for (int k = 1; k <= extra; ++k) {
    unsigned char cc = static_cast<unsigned char>(s[i + static_cast<size_t>(k)]);
    if ((cc & 0xC0) != 0x80) {
      ++i;
      return kReplacementChar;
    }
    cp = (cp << 6) | (cc & 0x3F);
  }
  i += static_cast<size_t>(extra) + 1;
  return cp;
}

bool is_word_cp(uint32_t cp) {
  if (cp < 0x80)
    return std::isalnum(static_cast<int>(cp)) != 0;
  return cp != kReplacementChar;
}

bool is_joiner_cp(uint32_t cp) { return cp == '.' || cp == '\''; }

}  // namespace

std::vector<TokenSpan> tokenize_spans(std::string_view text) {
  std::vector<TokenSpan> out;
  size_t i = 0;
  size_t tok_begin = std::string_view::npos;
  std::string tok;
  // pending joiner ('.' or '\'') seen right after a word char; attached only
  // if the next codepoint is a word char too
  size_t pending_pos = std::string_view::npos;
  char pending_ch = 0;

  auto flush = [&](size_t end_pos) {
    if (!tok.empty()) {
      out.push_back(TokenSpan{tok_begin, end_pos, tok});
      tok.clear();
    }
    tok_begin = std::string_view::npos;
    pending_pos = std::string_view::npos;
  };

  while (i < text.size()) {
    size_t start = i;
    uint32_t cp = decode_utf8(text, i);
    if (is_word_cp(cp)) {
      if (tok.empty()) tok_begin = start;
      if (pending_pos != std::string_view::npos) {
        tok.push_back(pending_ch);
        pending_pos = std::string_view::npos;
      }
      tok.append(text.substr(start, i - start));
    } else if (is_joiner_cp(cp) && !tok.empty() &&
               pending_pos == std::string_view::npos) {
      pending_pos = start;
      pending_ch = static_cast<char>(cp);
    } else {
      flush(pending_pos != std::string_view::npos ? pending_pos : start);
      pending_pos = std::string_view::npos;
    }
  }
  flush(pending_pos != std::string_view::npos ? pending_pos : text.size());
  return out;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  for (auto& span : tokenize_spans(text)) out.push_back(std::move(span.text));
  return out;
}

std::string fold_case(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s)
    out.push_back(
        static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  return out;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return c >= '0' && c <= '9';
  });
}

std::string AnalyzerConfig::fingerprint() const {
  std::ostringstream os;
  os << "lowercase=" << lowercase << ";strip_numbers=" << strip_numbers
     << ";stem=" << stem << ";stop_on_stems=" << stop_on_stems << ";stop=";
  std::vector<std::string> sorted = stopwords;
  std::sort(sorted.begin(), sorted.end());
  for (const auto& w : sorted) os << w << '\n';
  return to_hex(fnv1a64(os.str()));
}

Analyzer::Analyzer(AnalyzerConfig cfg) : cfg_(std::move(cfg)) {
  for (const auto& w : cfg_.stopwords) {
    std::string folded = fold_case(w);
    stop_surface_.insert(folded);
    stop_stems_.insert(cfg_.stem ? porter_stem(folded) : folded);
  }
}

std::string Analyzer::normalize_token(std::string_view token) const {
  std::string t = cfg_.lowercase ? fold_case(token) : std::string(token);
  return cfg_.stem ? porter_stem(t) : t;
}

bool Analyzer::is_stop_surface(std::string_view folded) const {
  return stop_surface_.count(std::string(folded)) > 0;
}

bool Analyzer::is_stop_stem(std::string_view stem) const {
  return stop_stems_.count(std::string(stem)) > 0;
}

std::vector<Term> Analyzer::analyze(std::string_view text) const {
  std::vector<Term> out;
  const bool stopping = cfg_.stopping_enabled();
  for (auto& surface : tokenize(text)) {
    std::string folded = fold_case(surface);
    if (stopping && stop_surface_.count(folded)) continue;
    if (cfg_.strip_numbers && all_digits(folded)) continue;
    std::string base = cfg_.lowercase ? folded : surface;
    std::string stem = cfg_.stem ? porter_stem(base) : base;
    if (stopping && cfg_.stop_on_stems && stop_stems_.count(stem)) continue;
    out.push_back(Term{std::move(surface), std::move(stem)});
  }
  return out;
}

std::vector<std::string> Analyzer::stems(std::string_view text) const {
  std::vector<std::string> out;
  for (auto& term : analyze(text)) out.push_back(std::move(term.stem));
  return out;
}

std::vector<Term> analyze(std::string_view text, const AnalyzerConfig& cfg) {
  return Analyzer(cfg).analyze(text);
}

std::vector<std::string> load_word_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open word list: " + path);
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    size_t a = line.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    size_t b = line.find_last_not_of(" \t");
    line = line.substr(a, b - a + 1);
    if (line.empty() || line[0] == '#') continue;
    words.push_back(line);
  }
  return words;
}

std::string to_hex(uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = digits[v & 0xF];
    v >>= 4;
  }
  return out;
}

}  // namespace hewer
