#pragma once

/* Homotopy words over Lambda(r,n,m).
 *
 * Every homotopy word is a subwalk of one of the master words
 *   w_l   = a^-1 . v^l . (c-run) . L        (l >= 0)
 *   w_oo  = a^-1 . v . v . v ...
 *   oo_w  = ... v . v . (c-run) . L
 *   oo_w_oo = ... v . v . v ...
 * where v = (c_{n-1}, ..., c_{n-r+1}, B) with B = b_{n-r}...b_0, and
 * L = B a_{-1}...a_{-m}.  Subwalks may cut *inside* a composite letter, so
 * end letters can be proper subruns of B or L; interior letters are always
 * full period letters.  Reading a word left to right crosses each direct
 * letter from target to source; the single admissible inverse letter is a
 * leftmost head (a_{-1}...a_{-d})^-1.
 *
 * Infinite tails are never materialised: a one-sided word stores the single
 * letter at its finite end plus a tail flag (the periodic continuation is
 * forced), and the two-sided word stores nothing but its two flags.
 */

#include <cassert>
#include <set>
#include <tuple>

#include "strcx/algebra.hpp"

namespace strcx {

enum class species_t { finite, left_infinite, right_infinite, two_sided };

struct homotopy_letter {
  path p;
  bool inverse = false;

  bool operator==(const homotopy_letter&) const = default;
  bool operator<(const homotopy_letter& o) const {
    if (inverse != o.inverse) return inverse < o.inverse;
    return p < o.p;
  }
};

struct homotopy_word {
  std::vector<homotopy_letter> core;
  bool left_tail = false;
  bool right_tail = false;
  int stalk_vertex = 0; /* meaningful iff core empty and no tails */

  bool is_stalk() const { return core.empty() && !left_tail && !right_tail; }

  species_t species() const {
    if (left_tail && right_tail) return species_t::two_sided;
    if (left_tail) return species_t::left_infinite;
    if (right_tail) return species_t::right_infinite;
    return species_t::finite;
  }

  bool operator==(const homotopy_word&) const = default;
  bool operator<(const homotopy_word& o) const {
    auto key = [](const homotopy_word& w) {
      return std::make_tuple(w.left_tail, w.right_tail,
                             w.core.empty() ? w.stalk_vertex : 0, w.core);
    };
    return key(*this) < key(o);
  }
};

inline species_t classify(const homotopy_word& w) { return w.species(); }

/* perfect complexes are compact; among the infinite ones exactly the
 * right-infinite are */
inline bool is_compact(const homotopy_word& w) {
  species_t s = w.species();
  return s == species_t::finite || s == species_t::right_infinite;
}

/* ------------------------------------------------------------------ */
/* letter anatomy                                                      */

struct letter_info {
  bool valid = false;
  bool is_c = false;
  int c_slot = -1; /* v[c_slot], 0 <= c_slot < r-1 */
  /* otherwise a consecutive run of the long-letter traversal
   * [a_{-m},...,a_{-1}, b_0,...,b_{n-r}]; indices lo..hi inclusive */
  int lo = -1, hi = -1;
};

/* traversal arrow ids of the long letter */
inline std::vector<int> long_letter_ids(const gentle_presentation& alg) {
  std::vector<int> ids;
  for (int i = alg.m(); i >= 1; --i) ids.push_back(alg.tail_arrow(i));
  for (int t = 0; t <= alg.n() - alg.r(); ++t) ids.push_back(alg.cycle_arrow(t));
  return ids;
}

inline letter_info classify_letter(const gentle_presentation& alg,
                                   const path& p) {
  letter_info info;
  if (p.trivial()) return info;
  if (p.length() == 1 && p.arrows[0] < alg.n() &&
      p.arrows[0] > alg.n() - alg.r()) {
    info.valid = true;
    info.is_c = true;
    info.c_slot = alg.n() - 1 - p.arrows[0];
    return info;
  }
  std::vector<int> lids = long_letter_ids(alg);
  for (size_t start = 0; start + p.arrows.size() <= lids.size(); ++start) {
    if (std::equal(p.arrows.begin(), p.arrows.end(), lids.begin() + start)) {
      info.valid = true;
      info.lo = static_cast<int>(start);
      info.hi = static_cast<int>(start + p.arrows.size()) - 1;
      return info;
    }
  }
  return info;
}

/* full period letter v[t]? (c-arrows are full; the b-composite must be the
 * whole run b_0..b_{n-r}) */
inline bool is_full_period_letter(const gentle_presentation& alg,
                                  const letter_info& i) {
  if (!i.valid) return false;
  if (i.is_c) return true;
  return i.lo == alg.m() && i.hi == alg.m() + alg.n() - alg.r();
}

/* letter that may sit directly left of a right tail: the forced spine
 * successor exists.  Returns the successor period letter. */
inline std::optional<path> spine_successor(const gentle_presentation& alg,
                                           const homotopy_letter& l) {
  if (l.inverse) return alg.period_letter(0); /* head, then v starts */
  letter_info i = classify_letter(alg, l.p);
  if (!i.valid) return std::nullopt;
  if (i.is_c) return alg.period_letter(i.c_slot + 1);
  if (i.lo == alg.m()) return alg.period_letter(0); /* run starts at b_0 */
  return std::nullopt;
}

/* letter that may sit directly right of a left tail */
inline std::optional<path> spine_predecessor(const gentle_presentation& alg,
                                             const homotopy_letter& l) {
  if (l.inverse) return std::nullopt;
  letter_info i = classify_letter(alg, l.p);
  if (!i.valid) return std::nullopt;
  int r = alg.r();
  if (i.is_c) return alg.period_letter((i.c_slot - 1 + r) % r);
  if (i.hi == alg.m() + alg.n() - alg.r())
    return alg.period_letter((r - 2 + r) % r); /* run ends at b_{n-r} */
  return std::nullopt;
}

/* vertex of the shared position between two adjacent letters, seen from the
 * left letter / the right letter */
inline int junction_vertex_left(const gentle_presentation& alg,
                                const homotopy_letter& l) {
  return l.inverse ? alg.tgt(l.p) : alg.src(l.p);
}
inline int junction_vertex_right(const gentle_presentation& alg,
                                 const homotopy_letter& l) {
  return l.inverse ? alg.src(l.p) : alg.tgt(l.p);
}

/* ------------------------------------------------------------------ */
/* validity                                                            */

inline bool is_valid_word(const gentle_presentation& alg,
                          const homotopy_word& w, std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (w.core.empty()) {
    if (w.left_tail != w.right_tail)
      return fail("one-sided word needs its end letter");
    if (!w.left_tail && !alg.is_vertex(w.stalk_vertex))
      return fail("stalk at unknown vertex");
    return true;
  }
  for (size_t i = 0; i < w.core.size(); ++i) {
    const homotopy_letter& l = w.core[i];
    if (l.p.trivial() || !alg.nonzero(l.p)) return fail("bad letter path");
    if (l.inverse) {
      if (i != 0 || w.left_tail) return fail("inverse letter must be leftmost");
      bool head = false;
      for (int d = 1; d <= alg.m(); ++d)
        if (l.p == alg.tail_path(d)) head = true;
      if (!head) return fail("inverse letter is not a head a_{-1}..a_{-d}");
    } else {
      if (!classify_letter(alg, l.p).valid)
        return fail("letter is neither a c-arrow nor a run of the long letter");
    }
  }
  for (size_t i = 0; i + 1 < w.core.size(); ++i) {
    const homotopy_letter& a = w.core[i];
    const homotopy_letter& b = w.core[i + 1];
    if (junction_vertex_left(alg, a) != junction_vertex_right(alg, b))
      return fail("junction vertices disagree");
    if (!a.inverse && !b.inverse) {
      if (alg.compose(a.p, b.p).has_value())
        return fail("consecutive letters compose nonzero");
    } else if (a.inverse && !b.inverse) {
      /* peak: the two outgoing branches must not start with the same arrow */
      if (a.p.arrows.back() == b.p.arrows.back())
        return fail("peak branches coincide");
    } else {
      return fail("invalid orientation pattern");
    }
  }
  if (w.left_tail && !spine_predecessor(alg, w.core.front()))
    return fail("left tail cannot continue from the first letter");
  if (w.right_tail && !spine_successor(alg, w.core.back()))
    return fail("right tail cannot continue from the last letter");
  /* interior letters (including tail-adjacent ones on their inner side)
   * must be full period letters */
  for (size_t i = 0; i < w.core.size(); ++i) {
    bool left_free = (i == 0) && !w.left_tail;
    bool right_free = (i + 1 == w.core.size()) && !w.right_tail;
    if (left_free || right_free) continue;
    if (w.core[i].inverse) continue; /* head handled above */
    if (!is_full_period_letter(alg, classify_letter(alg, w.core[i].p)))
      return fail("interior letter is not a full period letter");
  }
  return true;
}

inline void require_valid(const gentle_presentation& alg,
                          const homotopy_word& w) {
  std::string why;
  if (!is_valid_word(alg, w, &why))
    throw parameter_error("invalid homotopy word: " + why);
}

/* ------------------------------------------------------------------ */
/* canonical form                                                      */

inline homotopy_word flip_word(const homotopy_word& w) {
  homotopy_word out;
  out.left_tail = w.right_tail;
  out.right_tail = w.left_tail;
  out.stalk_vertex = w.stalk_vertex;
  for (auto it = w.core.rbegin(); it != w.core.rend(); ++it)
    out.core.push_back({it->p, !it->inverse});
  return out;
}

/* w and w^-1 name the same complex; prefer the master-oriented one (fewest
 * inverse letters, then lexicographically smaller core).  One-sided words
 * are stored with exactly the single letter at their finite end. */
inline homotopy_word canonical_form(const gentle_presentation& alg,
                                    const homotopy_word& w_in) {
  homotopy_word w = w_in;
  if (w.left_tail && w.right_tail) {
    w.core.clear();
    return w;
  }
  if (w.right_tail && w.core.size() > 1) w.core.resize(1);
  if (w.left_tail && w.core.size() > 1)
    w.core.erase(w.core.begin(), w.core.end() - 1);
  auto inv_count = [](const homotopy_word& x) {
    int c = 0;
    for (const auto& l : x.core) c += l.inverse ? 1 : 0;
    return c;
  };
  homotopy_word f = flip_word(w);
  bool w_ok = is_valid_word(alg, w);
  bool f_ok = is_valid_word(alg, f);
  if (w_ok != f_ok) return w_ok ? w : f;
  if (inv_count(w) != inv_count(f)) return inv_count(w) < inv_count(f) ? w : f;
  return w < f ? w : f;
}

/* ------------------------------------------------------------------ */
/* constructors                                                        */

inline homotopy_word stalk_word(const gentle_presentation& alg, int vertex) {
  if (!alg.is_vertex(vertex)) throw parameter_error("stalk_word: bad vertex");
  homotopy_word w;
  w.stalk_vertex = vertex;
  return w;
}

inline homotopy_word finite_word(const gentle_presentation& alg,
                                 std::vector<homotopy_letter> letters) {
  homotopy_word w;
  w.core = std::move(letters);
  require_valid(alg, w);
  return canonical_form(alg, w);
}

/* ------------------------------------------------------------------ */
/* master words                                                        */

class master_words {
 public:
  explicit master_words(const gentle_presentation& alg) : alg_(alg) {}

  std::vector<homotopy_letter> period() const {
    std::vector<homotopy_letter> v;
    for (int t = 0; t < alg_.r(); ++t)
      v.push_back({alg_.period_letter(t), false});
    return v;
  }

  homotopy_word w_ell(int l) const {
    if (l < 0) throw parameter_error("w_ell: l < 0");
    homotopy_word w;
    if (alg_.m() > 0) w.core.push_back({alg_.tail_path(alg_.m()), true});
    auto v = period();
    for (int i = 0; i < l; ++i)
      w.core.insert(w.core.end(), v.begin(), v.end());
    for (int t = 0; t < alg_.r() - 1; ++t) w.core.push_back(v[t]);
    w.core.push_back({alg_.long_letter(), false});
    require_valid(alg_, w);
    return canonical_form(alg_, w);
  }

  homotopy_word w_inf() const {
    homotopy_word w;
    if (alg_.m() > 0)
      w.core.push_back({alg_.tail_path(alg_.m()), true});
    else
      w.core.push_back({alg_.period_letter(0), false});
    w.right_tail = true;
    require_valid(alg_, w);
    return w;
  }

  homotopy_word inf_w() const {
    homotopy_word w;
    w.core.push_back({alg_.long_letter(), false});
    w.left_tail = true;
    require_valid(alg_, w);
    return w;
  }

  homotopy_word inf_w_inf() const {
    homotopy_word w;
    w.left_tail = w.right_tail = true;
    return w;
  }

 private:
  const gentle_presentation& alg_;
};

/* ------------------------------------------------------------------ */
/* bounded expansion of tails                                          */

struct word_expansion {
  std::vector<homotopy_letter> letters;
  /* index of the anchor position among 0..letters.size(); the realisation
   * places the anchor in cohomological degree `offset` */
  int anchor = 0;
  /* how many letters were materialised from each tail */
  int from_left_tail = 0, from_right_tail = 0;
};

/* materialise `periods_left` / `periods_right` periods of the tails */
inline word_expansion expand_word(const gentle_presentation& alg,
                                  const homotopy_word& w, int periods_left,
                                  int periods_right) {
  word_expansion out;
  int r = alg.r();
  if (w.left_tail && w.right_tail && w.core.empty()) {
    for (int s = -periods_left * r; s < periods_right * r; ++s) {
      int t = ((s % r) + r) % r;
      out.letters.push_back({alg.period_letter(t), false});
    }
    out.anchor = periods_left * r;
    out.from_left_tail = periods_left * r;
    out.from_right_tail = periods_right * r;
    return out;
  }
  std::vector<homotopy_letter> left, right;
  if (w.left_tail) {
    homotopy_letter cur = w.core.front();
    for (int i = 0; i < periods_left * r; ++i) {
      auto prev = spine_predecessor(alg, cur);
      if (!prev) throw contract_error("expand_word: no predecessor");
      cur = {*prev, false};
      left.push_back(cur);
    }
    std::reverse(left.begin(), left.end());
  }
  if (w.right_tail) {
    homotopy_letter cur = w.core.back();
    for (int i = 0; i < periods_right * r; ++i) {
      auto next = spine_successor(alg, cur);
      if (!next) throw contract_error("expand_word: no successor");
      cur = {*next, false};
      right.push_back(cur);
    }
  }
  out.letters = left;
  out.letters.insert(out.letters.end(), w.core.begin(), w.core.end());
  out.letters.insert(out.letters.end(), right.begin(), right.end());
  out.from_left_tail = static_cast<int>(left.size());
  out.from_right_tail = static_cast<int>(right.size());
  /* anchor: leftmost core position unless the word is left-infinite, in
   * which case the rightmost core position is the only stable end */
  if (w.species() == species_t::left_infinite)
    out.anchor = static_cast<int>(out.letters.size());
  else
    out.anchor = static_cast<int>(left.size());
  return out;
}

/* ------------------------------------------------------------------ */
/* enumeration                                                         */

namespace detail {

/* letters that can start a word whose continuation to the right exists:
 * heads, full period letters, and initial runs b_0..b_{x-1} of B */
inline std::vector<homotopy_letter> continuable_starts(
    const gentle_presentation& alg) {
  std::vector<homotopy_letter> out;
  for (int d = 1; d <= alg.m(); ++d) out.push_back({alg.tail_path(d), true});
  for (int t = 0; t < alg.r(); ++t)
    out.push_back({alg.period_letter(t), false});
  std::vector<int> lids = long_letter_ids(alg);
  for (int x = 1; x <= alg.n() - alg.r(); ++x) {
    std::vector<int> ids(lids.begin() + alg.m(), lids.begin() + alg.m() + x);
    out.push_back({*alg.path_from_arrows(ids), false});
  }
  return out;
}

/* letters that can end a word arriving from the left along the spine:
 * full period letters, terminal runs b_x..b_{n-r}, and B extended by an
 * a-part (terminal runs of L reaching b_{n-r}) */
inline std::vector<homotopy_letter> continuable_ends(
    const gentle_presentation& alg) {
  std::vector<homotopy_letter> out;
  for (int t = 0; t < alg.r(); ++t)
    out.push_back({alg.period_letter(t), false});
  std::vector<int> lids = long_letter_ids(alg);
  int len = static_cast<int>(lids.size());
  for (int lo = 0; lo < len; ++lo) {
    if (lo == alg.m()) continue; /* full B is already a period letter */
    std::vector<int> ids(lids.begin() + lo, lids.end());
    out.push_back({*alg.path_from_arrows(ids), false});
  }
  return out;
}

} /* namespace detail */

/* all finite subwords with at most `max_letters` letters, the one-sided
 * words whose canonical end letter is within reach, and the two-sided word;
 * deduplicated by canonical form */
inline std::vector<homotopy_word> enumerate_words(
    const gentle_presentation& alg, int max_letters) {
  if (max_letters < 0) throw parameter_error("enumerate_words: L < 0");
  std::set<homotopy_word> out;
  for (int v : alg.q.vertices) out.insert(stalk_word(alg, v));

  std::vector<int> lids = long_letter_ids(alg);
  int llen = static_cast<int>(lids.size());

  if (max_letters >= 1) {
    /* single letters: every c-arrow and every consecutive run of L */
    for (int t = 0; t < alg.r() - 1; ++t) {
      homotopy_word w;
      w.core = {{alg.period_letter(t), false}};
      out.insert(canonical_form(alg, w));
    }
    for (int lo = 0; lo < llen; ++lo)
      for (int hi = lo; hi < llen; ++hi) {
        std::vector<int> ids(lids.begin() + lo, lids.begin() + hi + 1);
        homotopy_word w;
        w.core = {{*alg.path_from_arrows(ids), false}};
        out.insert(canonical_form(alg, w));
      }
    /* multi-letter words: start, walk the forced spine, choose an end */
    for (const homotopy_letter& start : detail::continuable_starts(alg)) {
      std::vector<homotopy_letter> cur{start};
      while (static_cast<int>(cur.size()) < max_letters) {
        auto next = spine_successor(alg, cur.back());
        if (!next) break;
        /* end variants replacing the full successor */
        letter_info ni = classify_letter(alg, *next);
        if (!ni.is_c) {
          for (const homotopy_letter& e : detail::continuable_ends(alg)) {
            if (classify_letter(alg, e.p).is_c) continue;
            std::vector<homotopy_letter> word = cur;
            word.push_back(e);
            homotopy_word w;
            w.core = word;
            if (is_valid_word(alg, w)) out.insert(canonical_form(alg, w));
          }
        } else {
          std::vector<homotopy_letter> word = cur;
          word.push_back({*next, false});
          homotopy_word w;
          w.core = word;
          if (is_valid_word(alg, w)) out.insert(canonical_form(alg, w));
        }
        cur.push_back({*next, false});
      }
    }
  }

  /* one-sided words: single canonical end letter plus a forced tail */
  int one_sided_reach = std::max(0, max_letters);
  for (const homotopy_letter& start : detail::continuable_starts(alg)) {
    bool pure_phase =
        !start.inverse && is_full_period_letter(alg, classify_letter(alg, start.p));
    if (one_sided_reach == 0 && !pure_phase) continue;
    homotopy_word w;
    w.core = {start};
    w.right_tail = true;
    require_valid(alg, w);
    out.insert(w);
  }
  for (const homotopy_letter& end : detail::continuable_ends(alg)) {
    bool pure_phase = is_full_period_letter(alg, classify_letter(alg, end.p));
    if (one_sided_reach == 0 && !pure_phase) continue;
    homotopy_word w;
    w.core = {end};
    w.left_tail = true;
    require_valid(alg, w);
    out.insert(w);
  }
  {
    homotopy_word w;
    w.left_tail = w.right_tail = true;
    out.insert(w);
  }
  return {out.begin(), out.end()};
}

} /* namespace strcx */
