#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "strcx/words.hpp"

using namespace strcx;

namespace {

const std::vector<algebra_params> kAlgebras = {
    {1, 1, 0}, {2, 2, 0}, {1, 2, 0}, {2, 3, 0}, {2, 3, 1}, {3, 3, 1}};

/* ---- independent oracle: slice explicitly materialised master walks ---- */

struct wstep {
  int arrow;
  bool fwd; /* crossed src -> tgt (only in the inverse head) */
};

std::vector<wstep> direct_letter_steps(const gentle_presentation& alg,
                                       const path& p) {
  std::vector<wstep> s;
  for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it)
    s.push_back({*it, false});
  (void)alg;
  return s;
}

void append_letter(const gentle_presentation& alg, std::vector<wstep>& s,
                   const path& p) {
  auto t = direct_letter_steps(alg, p);
  s.insert(s.end(), t.begin(), t.end());
}

/* reading-order walk of w_l = a^-1 . v^l . (c-run) . L */
std::vector<wstep> master_walk(const gentle_presentation& alg, int l) {
  std::vector<wstep> s;
  for (int i = alg.m(); i >= 1; --i) s.push_back({alg.tail_arrow(i), true});
  for (int k = 0; k < l; ++k)
    for (int t = 0; t < alg.r(); ++t) append_letter(alg, s, alg.period_letter(t));
  for (int t = 0; t < alg.r() - 1; ++t)
    append_letter(alg, s, alg.period_letter(t));
  append_letter(alg, s, alg.long_letter());
  return s;
}

/* regroup a walk slice into homotopy letters: leading forward steps form the
 * inverse head; backward steps split into letters exactly at relations */
homotopy_word word_from_steps(const gentle_presentation& alg,
                              const std::vector<wstep>& st, size_t c1,
                              size_t c2) {
  homotopy_word w;
  size_t i = c1;
  std::vector<int> inv;
  while (i < c2 && st[i].fwd) inv.push_back(st[i++].arrow);
  if (!inv.empty()) {
    auto p = alg.path_from_arrows(inv);
    REQUIRE(p.has_value());
    w.core.push_back({*p, true});
  }
  std::vector<int> cur; /* reading order */
  auto flush = [&]() {
    if (cur.empty()) return;
    std::vector<int> trav(cur.rbegin(), cur.rend());
    auto p = alg.path_from_arrows(trav);
    REQUIRE(p.has_value());
    w.core.push_back({*p, false});
    cur.clear();
  };
  for (; i < c2; ++i) {
    REQUIRE(!st[i].fwd);
    if (!cur.empty() && alg.relations.count({st[i].arrow, cur.back()})) flush();
    cur.push_back(st[i].arrow);
  }
  flush();
  return w;
}

std::set<homotopy_word> brute_finite(const gentle_presentation& alg, int L) {
  std::set<homotopy_word> out;
  for (int v : alg.q.vertices) out.insert(stalk_word(alg, v));
  for (int l = 0; l <= L + 2; ++l) {
    auto walk = master_walk(alg, l);
    size_t N = walk.size();
    for (size_t c1 = 0; c1 < N; ++c1)
      for (size_t c2 = c1 + 1; c2 <= N; ++c2) {
        homotopy_word w = word_from_steps(alg, walk, c1, c2);
        if (static_cast<int>(w.core.size()) > L) continue;
        homotopy_word c = canonical_form(alg, w);
        REQUIRE(is_valid_word(alg, c));
        out.insert(c);
      }
  }
  return out;
}

std::set<homotopy_word> brute_right_infinite(const gentle_presentation& alg) {
  /* cut w_oo at every node in its head + two periods */
  std::vector<wstep> walk;
  for (int i = alg.m(); i >= 1; --i) walk.push_back({alg.tail_arrow(i), true});
  size_t period_len = 0;
  for (int k = 0; k < 4; ++k)
    for (int t = 0; t < alg.r(); ++t) {
      append_letter(alg, walk, alg.period_letter(t));
      if (k == 0) period_len = walk.size() - alg.m();
    }
  size_t region = alg.m() + 2 * period_len;
  std::set<homotopy_word> out;
  for (size_t c = 0; c <= region; ++c) {
    homotopy_word full = word_from_steps(alg, walk, c, walk.size());
    REQUIRE(!full.core.empty());
    homotopy_word w;
    w.core = {full.core.front()};
    w.right_tail = true;
    out.insert(canonical_form(alg, w));
  }
  return out;
}

std::set<homotopy_word> brute_left_infinite(const gentle_presentation& alg) {
  /* cut oo_w at every node in its last two periods + c-run + L */
  std::vector<wstep> walk;
  size_t period_len = 0;
  for (int k = 0; k < 4; ++k)
    for (int t = 0; t < alg.r(); ++t) {
      append_letter(alg, walk, alg.period_letter(t));
      if (k == 0) period_len = walk.size();
    }
  for (int t = 0; t < alg.r() - 1; ++t)
    append_letter(alg, walk, alg.period_letter(t));
  append_letter(alg, walk, alg.long_letter());
  size_t region_start = walk.size() - (walk.size() - 2 * period_len);
  (void)region_start;
  std::set<homotopy_word> out;
  for (size_t c = 2 * period_len + 1; c <= walk.size(); ++c) {
    homotopy_word full = word_from_steps(alg, walk, 0, c);
    REQUIRE(!full.core.empty());
    homotopy_word w;
    w.core = {full.core.back()};
    w.left_tail = true;
    out.insert(canonical_form(alg, w));
  }
  return out;
}

homotopy_letter dl(const gentle_presentation& alg,
                   std::vector<std::string> labels) {
  std::vector<int> ids;
  for (auto it = labels.rbegin(); it != labels.rend(); ++it) {
    for (const arrow& a : alg.q.arrows)
      if (a.label == *it) ids.push_back(a.id);
  }
  auto p = alg.path_from_arrows(ids);
  REQUIRE(p.has_value());
  return {*p, false};
}

} /* namespace */

TEST_CASE("letter classification") {
  auto alg = build_algebra({2, 3, 1});
  CHECK(classify_letter(alg, alg.arrow_path(2)).is_c); /* c2 */
  CHECK(classify_letter(alg, alg.arrow_path(2)).c_slot == 0);
  auto B = alg.period_letter(1);
  auto bi = classify_letter(alg, B);
  REQUIRE(bi.valid);
  CHECK_FALSE(bi.is_c);
  CHECK(is_full_period_letter(alg, bi));
  auto Li = classify_letter(alg, alg.long_letter());
  REQUIRE(Li.valid);
  CHECK(Li.lo == 0);
  CHECK_FALSE(is_full_period_letter(alg, Li));
  /* a c-arrow composed into nothing else; b1 alone is a run, not full */
  auto b1 = classify_letter(alg, alg.arrow_path(1));
  REQUIRE(b1.valid);
  CHECK_FALSE(is_full_period_letter(alg, b1));
}

TEST_CASE("spine successor and predecessor") {
  auto alg = build_algebra({2, 3, 1});
  homotopy_letter head{alg.tail_path(1), true};
  CHECK(spine_successor(alg, head) == alg.period_letter(0));
  homotopy_letter c2{alg.period_letter(0), false};
  CHECK(spine_successor(alg, c2) == alg.period_letter(1));
  homotopy_letter B{alg.period_letter(1), false};
  CHECK(spine_successor(alg, B) == alg.period_letter(0));
  CHECK(spine_predecessor(alg, B) == alg.period_letter(0));
  CHECK(spine_predecessor(alg, c2) == alg.period_letter(1));
  /* long letter ends at b_{n-r}: predecessor defined, successor not */
  homotopy_letter L{alg.long_letter(), false};
  CHECK(spine_predecessor(alg, L) == alg.period_letter(0));
  CHECK_FALSE(spine_successor(alg, L).has_value());
  CHECK_FALSE(spine_predecessor(alg, head).has_value());
}

TEST_CASE("word validity: accepted shapes") {
  auto alg = build_algebra({2, 3, 0});
  homotopy_word w;
  w.core = {dl(alg, {"c2"}), dl(alg, {"b1", "b0"})};
  CHECK(is_valid_word(alg, w));
  w.core = {dl(alg, {"b0"}), dl(alg, {"c2"}), dl(alg, {"b1"})};
  CHECK(is_valid_word(alg, w));
  w.core = {dl(alg, {"b1"})};
  CHECK(is_valid_word(alg, w));
}

TEST_CASE("word validity: rejected shapes") {
  auto alg = build_algebra({2, 3, 0});
  homotopy_word w;
  /* nonzero composite across a junction */
  w.core = {dl(alg, {"b1"}), dl(alg, {"b0"})};
  CHECK_FALSE(is_valid_word(alg, w));
  /* junction vertices disagree */
  w.core = {dl(alg, {"c2"}), dl(alg, {"c2"})};
  CHECK_FALSE(is_valid_word(alg, w));
  /* partial letter in the interior */
  w.core = {dl(alg, {"b0"}), dl(alg, {"c2"}), dl(alg, {"b1"}), dl(alg, {"b0"})};
  CHECK_FALSE(is_valid_word(alg, w));
  /* tail continuation undefined: initial B-run cannot follow a left tail */
  w.core = {dl(alg, {"b0"})};
  w.left_tail = true;
  CHECK_FALSE(is_valid_word(alg, w));
  w = {};
  /* inverse letter not leftmost */
  auto alg231 = build_algebra({2, 3, 1});
  w.core = {dl(alg231, {"c2"}), {alg231.tail_path(1), true}};
  CHECK_FALSE(is_valid_word(alg231, w));
  /* peak whose branches start with the same arrow */
  homotopy_word p;
  p.core = {{alg231.tail_path(1), true}, dl(alg231, {"a-1"})};
  CHECK_FALSE(is_valid_word(alg231, p));
  p.core = {{alg231.tail_path(1), true}, dl(alg231, {"c2"})};
  CHECK(is_valid_word(alg231, p));
}

TEST_CASE("canonical_form identifies a word with its inverse") {
  auto alg = build_algebra({2, 3, 0});
  homotopy_word w;
  w.core = {dl(alg, {"c2"}), dl(alg, {"b1", "b0"})};
  homotopy_word f = flip_word(w);
  CHECK_FALSE(w == f);
  CHECK(canonical_form(alg, w) == w);
  CHECK(canonical_form(alg, f) == w);
  CHECK(canonical_form(alg, canonical_form(alg, f)) == w);
  /* a pure head flips to the direct a-run */
  auto alg231 = build_algebra({2, 3, 1});
  homotopy_word h;
  h.core = {{alg231.tail_path(1), true}};
  homotopy_word c = canonical_form(alg231, h);
  REQUIRE(c.core.size() == 1);
  CHECK_FALSE(c.core[0].inverse);
  CHECK(c.core[0].p == alg231.tail_path(1));
}

TEST_CASE("canonical_form minimises one- and two-sided cores") {
  auto alg = build_algebra({2, 3, 0});
  homotopy_word w;
  w.core = {dl(alg, {"c2"}), dl(alg, {"b1", "b0"}), dl(alg, {"c2"})};
  w.right_tail = true;
  homotopy_word c = canonical_form(alg, w);
  CHECK(c.core.size() == 1);
  CHECK(c.core[0] == dl(alg, {"c2"}));
  CHECK(c.right_tail);
  w.right_tail = false;
  w.left_tail = true;
  c = canonical_form(alg, w);
  CHECK(c.core.size() == 1);
  CHECK(c.core[0] == dl(alg, {"c2"}));
  CHECK(c.left_tail);
  w.right_tail = true;
  c = canonical_form(alg, w);
  CHECK(c.core.empty());
  CHECK(is_valid_word(alg, c));
}

TEST_CASE("species and compactness") {
  auto alg = build_algebra({2, 3, 0});
  master_words mw(alg);
  CHECK(mw.w_ell(0).species() == species_t::finite);
  CHECK(mw.w_inf().species() == species_t::right_infinite);
  CHECK(mw.inf_w().species() == species_t::left_infinite);
  CHECK(mw.inf_w_inf().species() == species_t::two_sided);
  CHECK(is_compact(mw.w_ell(1)));
  CHECK(is_compact(mw.w_inf()));
  CHECK_FALSE(is_compact(mw.inf_w()));
  CHECK_FALSE(is_compact(mw.inf_w_inf()));
  CHECK(stalk_word(alg, 0).is_stalk());
}

TEST_CASE("master words are valid over all test algebras") {
  for (algebra_params ps : kAlgebras) {
    auto alg = build_algebra(ps);
    master_words mw(alg);
    for (int l = 0; l <= 3; ++l) {
      homotopy_word w = mw.w_ell(l);
      CHECK(is_valid_word(alg, w));
      /* head + l*r + (r-1) c's + long letter */
      int expect = (ps.m > 0 ? 1 : 0) + l * ps.r + ps.r;
      CHECK(static_cast<int>(w.core.size()) == expect);
    }
    CHECK(is_valid_word(alg, mw.w_inf()));
    CHECK(is_valid_word(alg, mw.inf_w()));
    CHECK(is_valid_word(alg, mw.inf_w_inf()));
  }
}

TEST_CASE("master word letters: frozen (2,3,1) example") {
  auto alg = build_algebra({2, 3, 1});
  master_words mw(alg);
  homotopy_word w0 = mw.w_ell(0);
  REQUIRE(w0.core.size() == 3);
  CHECK(w0.core[0].inverse);
  CHECK(alg.format_path(w0.core[0].p) == "a-1");
  CHECK(alg.format_path(w0.core[1].p) == "c2");
  CHECK(alg.format_path(w0.core[2].p) == "b1*b0*a-1");
  homotopy_word w1 = mw.w_ell(1);
  REQUIRE(w1.core.size() == 5);
  CHECK(alg.format_path(w1.core[1].p) == "c2");
  CHECK(alg.format_path(w1.core[2].p) == "b1*b0");
  CHECK(alg.format_path(w1.core[3].p) == "c2");
}

TEST_CASE("expand_word materialises forced tails") {
  auto alg = build_algebra({2, 3, 1});
  master_words mw(alg);
  word_expansion e = expand_word(alg, mw.inf_w(), 1, 0);
  REQUIRE(e.letters.size() == 3);
  CHECK(alg.format_path(e.letters[0].p) == "b1*b0");
  CHECK(alg.format_path(e.letters[1].p) == "c2");
  CHECK(alg.format_path(e.letters[2].p) == "b1*b0*a-1");
  CHECK(e.anchor == 3); /* rightmost position */

  word_expansion f = expand_word(alg, mw.w_inf(), 0, 2);
  REQUIRE(f.letters.size() == 5);
  CHECK(f.letters[0].inverse);
  CHECK(alg.format_path(f.letters[1].p) == "c2");
  CHECK(alg.format_path(f.letters[2].p) == "b1*b0");
  CHECK(f.anchor == 0);

  word_expansion g = expand_word(alg, mw.inf_w_inf(), 1, 1);
  REQUIRE(g.letters.size() == 4);
  CHECK(g.anchor == 2);
  CHECK(alg.format_path(g.letters[2].p) == "c2"); /* slot 0 at the anchor */
}

TEST_CASE("enumerate_words matches the walk-slicing oracle: finite part") {
  struct probe {
    algebra_params ps;
    int L;
  };
  for (probe pr : {probe{{1, 1, 0}, 3}, probe{{1, 2, 0}, 4}, probe{{2, 3, 0}, 4},
                   probe{{2, 2, 0}, 4}, probe{{2, 3, 1}, 3}, probe{{3, 3, 1}, 3},
                   probe{{1, 1, 2}, 3}}) {
    auto alg = build_algebra(pr.ps);
    std::set<homotopy_word> expected = brute_finite(alg, pr.L);
    std::set<homotopy_word> got;
    for (const homotopy_word& w : enumerate_words(alg, pr.L))
      if (w.species() == species_t::finite) got.insert(w);
    CHECK(got == expected);
  }
}

TEST_CASE("enumerate_words matches the walk-slicing oracle: one-sided part") {
  for (algebra_params ps : kAlgebras) {
    auto alg = build_algebra(ps);
    std::set<homotopy_word> er, el;
    for (const homotopy_word& w : enumerate_words(alg, 1)) {
      if (w.species() == species_t::right_infinite) er.insert(w);
      if (w.species() == species_t::left_infinite) el.insert(w);
    }
    CHECK(er == brute_right_infinite(alg));
    CHECK(el == brute_left_infinite(alg));
    /* n+m one-sided words on each side */
    CHECK(er.size() == static_cast<size_t>(ps.n + ps.m));
    CHECK(el.size() == static_cast<size_t>(ps.n + ps.m));
  }
}

TEST_CASE("enumerate_words frozen counts and members") {
  auto alg = build_algebra({1, 1, 0});
  auto words = enumerate_words(alg, 3);
  /* stalk, b, bb, bbb, one word per side, the two-sided word */
  CHECK(words.size() == 7);

  auto alg230 = build_algebra({2, 3, 0});
  auto w230 = enumerate_words(alg230, 1);
  std::set<homotopy_word> s(w230.begin(), w230.end());
  auto single = [&](homotopy_letter l) {
    homotopy_word w;
    w.core = {l};
    return canonical_form(alg230, w);
  };
  CHECK(s.count(single(dl(alg230, {"b0"}))));
  CHECK(s.count(single(dl(alg230, {"b1"}))));
  CHECK(s.count(single(dl(alg230, {"c2"}))));
  CHECK(s.count(single(dl(alg230, {"b1", "b0"}))));

  auto alg231 = build_algebra({2, 3, 1});
  auto w231 = enumerate_words(alg231, 1);
  std::set<homotopy_word> t(w231.begin(), w231.end());
  auto single1 = [&](homotopy_letter l) {
    homotopy_word w;
    w.core = {l};
    return canonical_form(alg231, w);
  };
  CHECK(t.count(single1(dl(alg231, {"a-1"}))));
  CHECK(t.count(single1(dl(alg231, {"b0", "a-1"}))));
  CHECK(t.count(single1(dl(alg231, {"b1", "b0", "a-1"}))));
  CHECK(t.count(stalk_word(alg231, -1)));
}

TEST_CASE("enumerated words are valid, canonical, and monotone in L") {
  for (algebra_params ps : kAlgebras) {
    auto alg = build_algebra(ps);
    auto w2 = enumerate_words(alg, 2);
    auto w3 = enumerate_words(alg, 3);
    std::set<homotopy_word> s3(w3.begin(), w3.end());
    CHECK(w2.size() <= w3.size());
    for (const homotopy_word& w : w2) {
      CHECK(is_valid_word(alg, w));
      CHECK(canonical_form(alg, w) == w);
      CHECK(s3.count(w) == 1);
    }
  }
}
