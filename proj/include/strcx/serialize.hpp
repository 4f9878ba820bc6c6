#pragma once

/* Text grammar for homotopy words and JSON serialization helpers.
 *
 * Word grammar (whitespace, '[', ']' and '|' are separators):
 *   word    := stalk | item+
 *   stalk   := 'e' integer                      e.g.  e0, e-1
 *   item    := letter | period | head-tail
 *   letter  := '(' label ('*' label)* ')' ['^-1']
 *              product notation: first factor is the last-traversed arrow
 *   period  := 'v' | 'v^' count | 'v^inf'       'v^inf' = right tail
 *   head-tail := 'inf^v'                        = left tail (leftmost only)
 * Examples: (c2)(b1*b0),  [(a-1)^-1 | v^inf],  [inf^v | (b1*b0*a-1)],
 *           [inf^v | v^inf],  v^2
 */

#include <json.hpp>

#include "strcx/words.hpp"

namespace strcx {

struct parse_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/* ------------------------------------------------------------------ */
/* writer                                                              */

inline std::string letter_to_text(const gentle_presentation& alg,
                                  const homotopy_letter& l) {
  std::string s = "(" + alg.format_path(l.p) + ")";
  if (l.inverse) s += "^-1";
  return s;
}

inline std::string word_to_text(const gentle_presentation& alg,
                                const homotopy_word& w) {
  if (w.is_stalk()) return "e" + std::to_string(w.stalk_vertex);
  switch (w.species()) {
    case species_t::finite: {
      std::string s;
      for (const homotopy_letter& l : w.core) s += letter_to_text(alg, l);
      return s;
    }
    case species_t::right_infinite:
      return "[" + letter_to_text(alg, w.core.front()) + " | v^inf]";
    case species_t::left_infinite:
      return "[inf^v | " + letter_to_text(alg, w.core.back()) + "]";
    case species_t::two_sided:
      return "[inf^v | v^inf]";
  }
  throw contract_error("word_to_text: unreachable");
}

/* ------------------------------------------------------------------ */
/* parser                                                              */

namespace detail {

class word_parser {
 public:
  word_parser(const gentle_presentation& alg, std::string_view text)
      : alg_(alg), s_(text) {}

  homotopy_word parse() {
    skip_separators();
    if (at_end()) throw parse_error("empty word text");
    if (peek() == 'e') {
      ++i_;
      int v = parse_int();
      skip_separators();
      if (!at_end()) throw parse_error("trailing input after stalk");
      return stalk_word(alg_, v);
    }
    while (!at_end()) {
      parse_item();
      skip_separators();
    }
    return assemble();
  }

 private:
  const gentle_presentation& alg_;
  std::string_view s_;
  size_t i_ = 0;
  bool left_tail_ = false, right_tail_ = false;
  std::vector<homotopy_letter> letters_;

  bool at_end() const { return i_ >= s_.size(); }
  char peek() const { return at_end() ? '\0' : s_[i_]; }

  void skip_separators() {
    while (!at_end()) {
      char c = s_[i_];
      if (c == ' ' || c == '\t' || c == '[' || c == ']' || c == '|')
        ++i_;
      else
        break;
    }
  }

  bool try_eat(std::string_view tok) {
    if (s_.substr(i_, tok.size()) == tok) {
      i_ += tok.size();
      return true;
    }
    return false;
  }

  int parse_int() {
    size_t start = i_;
    if (peek() == '-') ++i_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++i_;
    if (i_ == start || (s_[start] == '-' && i_ == start + 1))
      throw parse_error("expected integer at position " + std::to_string(start));
    return std::stoi(std::string(s_.substr(start, i_ - start)));
  }

  void check_before_letters(const std::string& what) {
    if (right_tail_) throw parse_error(what + " after v^inf");
  }

  void parse_item() {
    check_before_letters("input");
    if (try_eat("inf^v")) {
      if (left_tail_ || !letters_.empty())
        throw parse_error("inf^v must be leftmost");
      left_tail_ = true;
      return;
    }
    if (peek() == 'v') {
      ++i_;
      if (try_eat("^inf")) {
        right_tail_ = true;
        return;
      }
      int count = 1;
      if (peek() == '^') {
        ++i_;
        count = parse_int();
        if (count < 1) throw parse_error("period power must be positive");
      }
      for (int k = 0; k < count; ++k)
        for (int t = 0; t < alg_.r(); ++t)
          letters_.push_back({alg_.period_letter(t), false});
      return;
    }
    if (peek() == '(') {
      parse_letter();
      return;
    }
    throw parse_error("unexpected character '" + std::string(1, peek()) +
                      "' at position " + std::to_string(i_));
  }

  void parse_letter() {
    ++i_; /* '(' */
    std::vector<int> product_ids; /* product notation: last-traversed first */
    while (true) {
      size_t start = i_;
      while (!at_end() && peek() != '*' && peek() != ')') ++i_;
      if (at_end()) throw parse_error("unterminated letter");
      std::string label(s_.substr(start, i_ - start));
      int id = -1;
      for (const arrow& a : alg_.q.arrows)
        if (a.label == label) id = a.id;
      if (id < 0) throw parse_error("unknown arrow label '" + label + "'");
      product_ids.push_back(id);
      if (peek() == ')') {
        ++i_;
        break;
      }
      ++i_; /* '*' */
    }
    std::vector<int> traversal(product_ids.rbegin(), product_ids.rend());
    auto p = alg_.path_from_arrows(traversal);
    if (!p) throw parse_error("letter path is zero in the algebra");
    bool inverse = try_eat("^-1");
    letters_.push_back({*p, inverse});
  }

  homotopy_word assemble() {
    homotopy_word w;
    w.left_tail = left_tail_;
    w.right_tail = right_tail_;
    w.core = letters_;
    /* pure-tail conveniences: v^inf alone starts at v[0], inf^v alone ends
     * at v[r-1] */
    if (w.core.empty() && w.right_tail && !w.left_tail)
      w.core.push_back({alg_.period_letter(0), false});
    if (w.core.empty() && w.left_tail && !w.right_tail)
      w.core.push_back({alg_.period_letter(alg_.r() - 1), false});
    if (w.core.empty() && !w.left_tail && !w.right_tail)
      throw parse_error("no letters in word text");
    std::string why;
    if (!is_valid_word(alg_, w)) {
      homotopy_word c = canonical_form(alg_, w);
      if (!is_valid_word(alg_, c, &why))
        throw parse_error("invalid homotopy word: " + why);
      return c;
    }
    return canonical_form(alg_, w);
  }
};

} /* namespace detail */

inline homotopy_word parse_word(const gentle_presentation& alg,
                                std::string_view text) {
  return detail::word_parser(alg, text).parse();
}

/* ------------------------------------------------------------------ */
/* JSON                                                                */

inline nlohmann::json algebra_to_json(const gentle_presentation& alg) {
  nlohmann::json j;
  j["params"] = {{"r", alg.r()}, {"n", alg.n()}, {"m", alg.m()}};
  j["vertices"] = alg.q.vertices;
  j["arrows"] = nlohmann::json::array();
  for (const arrow& a : alg.q.arrows)
    j["arrows"].push_back(
        {{"id", a.id}, {"label", a.label}, {"src", a.src}, {"tgt", a.tgt}});
  j["relations"] = nlohmann::json::array();
  for (const auto& rel : alg.relations)
    j["relations"].push_back({rel.first, rel.second});
  return j;
}

inline const char* species_name(species_t s) {
  switch (s) {
    case species_t::finite: return "finite";
    case species_t::left_infinite: return "left_infinite";
    case species_t::right_infinite: return "right_infinite";
    case species_t::two_sided: return "two_sided";
  }
  return "?";
}

inline nlohmann::json word_to_json(const gentle_presentation& alg,
                                   const homotopy_word& w) {
  nlohmann::json j;
  j["text"] = word_to_text(alg, w);
  j["species"] = species_name(w.species());
  j["compact"] = is_compact(w);
  return j;
}

} /* namespace strcx */
