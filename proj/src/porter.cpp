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

#include "hewer/porter.hpp"

#include <cctype>

namespace hewer {
namespace {

// Works on a lowercased buffer that always equals the current stem; j_ is the
// offset set by the most recent successful ends() and bounds the measure m().
class PorterState {
 public:
  explicit PorterState(std::string w) : w_(std::move(w)) {}

  std::string run() {
    step1a();
    step1b();
    step1c();
    step2();
    step3();
    step4();
    step5();
    return w_;
  }

 private:
  std::string w_;
  int j_ = 0;

  int last() const { return static_cast<int>(w_.size()) - 1; }

  bool cons(int i) const {
    switch (w_[static_cast<size_t>(i)]) {
      case 'a':
      case 'e':
      case 'i':
      case 'o':
      case 'u':
        return false;
      case 'y':
        return i == 0 ? true : !cons(i - 1);
      default:
        return true;
    }
  }

  // m() measures the number of consonant-vowel sequences in w_[0..j_],
  // i.e. the m of [C](VC){m}[V].
  int m() const {
    int n = 0;
    int i = 0;
    while (true) {
      if (i > j_) return n;
      if (!cons(i)) break;
      ++i;
    }
    ++i;
    while (true) {
      while (true) {
        if (i > j_) return n;
        if (cons(i)) break;
        ++i;
      }
      ++i;
      ++n;
      while (true) {
        if (i > j_) return n;
        if (!cons(i)) break;
        ++i;
      }
      ++i;
    }
  }

  bool vowel_in_stem() const {
    for (int i = 0; i <= j_; ++i)
      if (!cons(i)) return true;
    return false;
  }

  bool double_cons(int i) const {
    if (i < 1) return false;
    if (w_[static_cast<size_t>(i)] != w_[static_cast<size_t>(i - 1)]) return false;
    return cons(i);
  }

  // cvc(i): w_[i-2..i] is consonant-vowel-consonant and the final consonant
  // is not w, x or y. Used to restore a final e (hop -> hope style).
  bool cvc(int i) const {
    if (i < 2 || !cons(i) || cons(i - 1) || !cons(i - 2)) return false;
    char c = w_[static_cast<size_t>(i)];
    return c != 'w' && c != 'x' && c != 'y';
  }

  // Sets j_ to the offset just before the suffix on success; leaves it alone
  // on failure.
  bool ends(std::string_view s) {
    int len = static_cast<int>(s.size());
    if (len > static_cast<int>(w_.size())) return false;
    if (w_.compare(w_.size() - s.size(), s.size(), s) != 0) return false;
    j_ = static_cast<int>(w_.size()) - len - 1;
    return true;
  }

  void set_to(std::string_view s) {
    w_.resize(static_cast<size_t>(j_ + 1));
    w_.append(s);
  }

  void r(std::string_view s) {
    if (m() > 0) set_to(s);
  }

  void truncate_to_j() { w_.resize(static_cast<size_t>(j_ + 1)); }

  // caresses -> caress, ponies -> poni, cats -> cat
  void step1a() {
    if (w_.back() != 's') return;
    if (ends("sses")) {
      w_.resize(w_.size() - 2);
    } else if (ends("ies")) {
      set_to("i");
    } else if (w_.size() >= 2 && w_[w_.size() - 2] != 's') {
      w_.resize(w_.size() - 1);
    }
  }

  // feed -> feed, agreed -> agree, plastered -> plaster, motoring -> motor;
  // then conflat -> conflate, hopp -> hop, fil -> file
  void step1b() {
    if (ends("eed")) {
      if (m() > 0) w_.resize(w_.size() - 1);
      return;
    }
    bool removed = false;
    if (ends("ed") && vowel_in_stem()) {
      truncate_to_j();
      removed = true;
    } else if (ends("ing") && vowel_in_stem()) {
      truncate_to_j();
      removed = true;
    }
    if (!removed) return;
    j_ = last();
    if (ends("at")) {
      set_to("ate");
    } else if (ends("bl")) {
      set_to("ble");
    } else if (ends("iz")) {
      set_to("ize");
    } else if (double_cons(last())) {
      char c = w_.back();
      if (c != 'l' && c != 's' && c != 'z') w_.resize(w_.size() - 1);
    } else {
      j_ = last();
      if (m() == 1 && cvc(last())) w_.push_back('e');
    }
  }

  // happy -> happi; sky stays sky (no vowel in stem)
  void step1c() {
    if (ends("y") && vowel_in_stem()) w_.back() = 'i';
  }

  void step2() {
    if (w_.size() < 2) return;
    switch (w_[w_.size() - 2]) {
      case 'a':
        if (ends("ational")) { r("ate"); break; }
        if (ends("tional")) { r("tion"); break; }
        break;
      case 'c':
        if (ends("enci")) { r("ence"); break; }
        if (ends("anci")) { r("ance"); break; }
        break;
      case 'e':
        if (ends("izer")) { r("ize"); break; }
        break;
      case 'l':
        if (ends("bli")) { r("ble"); break; }
        if (ends("alli")) { r("al"); break; }
        if (ends("entli")) { r("ent"); break; }
        if (ends("eli")) { r("e"); break; }
        if (ends("ousli")) { r("ous"); break; }
        break;
      case 'o':
        if (ends("ization")) { r("ize"); break; }
        if (ends("ation")) { r("ate"); break; }
        if (ends("ator")) { r("ate"); break; }
        break;
      case 's':
        if (ends("alism")) { r("al"); break; }
        if (ends("iveness")) { r("ive"); break; }
        if (ends("fulness")) { r("ful"); break; }
        if (ends("ousness")) { r("ous"); break; }
        break;
      case 't':
        if (ends("aliti")) { r("al"); break; }
        if (ends("iviti")) { r("ive"); break; }
        if (ends("biliti")) { r("ble"); break; }
        break;
      case 'g':
        if (ends("logi")) { r("log"); break; }
        break;
      default:
        break;
    }
  }

  void step3() {
    switch (w_.back()) {
      case 'e':
        if (ends("icate")) { r("ic"); break; }
        if (ends("ative")) { r(""); break; }
        if (ends("alize")) { r("al"); break; }
        break;
      case 'i':
        if (ends("iciti")) { r("ic"); break; }
        break;
      case 'l':
        if (ends("ical")) { r("ic"); break; }
        if (ends("ful")) { r(""); break; }
        break;
      case 's':
        if (ends("ness")) { r(""); break; }
        break;
      default:
        break;
    }
  }

  void step4() {
    if (w_.size() < 2) return;
    bool matched = false;
    switch (w_[w_.size() - 2]) {
      case 'a':
        matched = ends("al");
        break;
      case 'c':
        matched = ends("ance") || ends("ence");
        break;
      case 'e':
        matched = ends("er");
        break;
      case 'i':
        matched = ends("ic");
        break;
      case 'l':
        matched = ends("able") || ends("ible");
        break;
      case 'n':
        matched = ends("ant") || ends("ement") || ends("ment") || ends("ent");
        break;
      case 'o':
        matched = (ends("ion") && j_ >= 0 &&
                   (w_[static_cast<size_t>(j_)] == 's' ||
                    w_[static_cast<size_t>(j_)] == 't')) ||
                  ends("ou");
        break;
      case 's':
        matched = ends("ism");
        break;
      case 't':
        matched = ends("ate") || ends("iti");
        break;
      case 'u':
        matched = ends("ous");
        break;
      case 'v':
        matched = ends("ive");
        break;
      case 'z':
        matched = ends("ize");
        break;
      default:
        return;
    }
    if (matched && m() > 1) truncate_to_j();
  }

  void step5() {
    j_ = last();
    if (w_.back() == 'e') {
      int a = m();
      if (a > 1 || (a == 1 && !cvc(last() - 1))) w_.resize(w_.size() - 1);
    }
    j_ = last();
    if (w_.back() == 'l' && double_cons(last()) && m() > 1)
      w_.resize(w_.size() - 1);
  }
};

}  // namespace

std::string porter_stem(std::string_view token) {
  std::string w;
  w.reserve(token.size());
  for (char c : token)
    w.push_back(static_cast<char>(
        std::tolower(static_cast<unsigned char>(c))));
  if (w.size() <= 2) return w;
  return PorterState(std::move(w)).run();
}

}  // namespace hewer
