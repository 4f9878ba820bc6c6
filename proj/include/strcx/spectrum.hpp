#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "strcx/arquiver.hpp"

namespace strcx {

/* ------------------------------------------------------------------ */
/* CB-rank tables                                                      */

/* finite regime: rank 0 on the perfect planes, 1 on the four beams, 2 on
 * the two-sided objects; infinite regime: rank 0 on the perfect plane,
 * 1 on both beams of the ladder components, 2 on the two-sided objects */
inline int cb_rank(const ar_chart& chart, const ar_coordinate& c) {
  chart.validate(c);
  switch (c.family) {
    case ar_family::X:
    case ar_family::Y:
    case ar_family::Z:
      return 0;
    case ar_family::Xinf:
    case ar_family::XminusInf:
    case ar_family::Yinf:
    case ar_family::YminusInf:
    case ar_family::ZLadder:
      return 1;
    case ar_family::Zinf:
      return 2;
  }
  throw contract_error("cb_rank: unreachable");
}

struct spectrum_point {
  ar_coordinate coordinate;
  int rank = 0;
  bool compact = false;
};

inline std::vector<spectrum_point> spectrum_points(const ar_chart& chart,
                                                   int bound) {
  std::vector<spectrum_point> out;
  for (const ar_coordinate& c : chart.enumerate_window(bound)) {
    spectrum_point p;
    p.coordinate = c;
    p.rank = cb_rank(chart, c);
    p.compact = is_compact(chart.coordinate_to_complex(c).word);
    out.push_back(p);
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* 1-simple morphisms                                                  */

struct one_simple_morphism {
  ar_coordinate source, target1, target2;
};

inline bool operator==(const one_simple_morphism& a,
                       const one_simple_morphism& b) {
  return a.source == b.source && a.target1 == b.target1 &&
         a.target2 == b.target2;
}

inline bool operator<(const one_simple_morphism& a,
                      const one_simple_morphism& b) {
  if (!(a.source == b.source)) return a.source < b.source;
  if (!(a.target1 == b.target1)) return a.target1 < b.target1;
  return a.target2 < b.target2;
}

/* the rank-1 point determined by the ray of the source and the coray of
 * the second target; instances sharing this key are equivalent */
inline ar_coordinate one_simple_key(const ar_chart& chart,
                                    const one_simple_morphism& h) {
  const ar_coordinate& a = h.source;
  int r = chart.algebra().r();
  if (!chart.finite_regime()) {
    if (a.family == ar_family::X) return ar_Xinf(a.k, a.i);
    if (a.family == ar_family::ZLadder) return ar_ZLadder(a.k, a.i);
    throw parameter_error("one_simple_key: unexpected source family");
  }
  if (a.family == ar_family::X) return ar_Xinf(a.k, a.i);
  if (a.family == ar_family::Y) return ar_Yinf(a.k, a.j);
  if (a.family == ar_family::Z) {
    if (h.target2.family == ar_family::X)
      return ar_XminusInf((a.k + 1) % r, chart.primed(a.i, a.k) - 1);
    if (h.target2.family == ar_family::Y)
      return ar_YminusInf((a.k + 1) % r, chart.dprimed(a.j, a.k) - 1);
  }
  throw parameter_error("one_simple_key: not a 1-simple shape");
}

struct one_simple_class {
  ar_coordinate key;
  std::vector<one_simple_morphism> members;
};

/* all 1-simple instances whose three coordinates have indices within the
 * window, grouped by equivalence class */
template <class F>
std::vector<one_simple_class> enumerate_one_simples(const ar_chart& chart,
                                                    hom_oracle<F>& orc,
                                                    int bound) {
  if (bound < 1) throw parameter_error("enumerate_one_simples: bound < 1");
  const gentle_presentation& alg = chart.algebra();
  int r = alg.r();
  auto inside = [&](int v) { return -bound <= v && v <= bound; };
  std::vector<one_simple_morphism> all;
  auto admit = [&](const one_simple_morphism& h) {
    if (!chart.forward_hammock_member(orc, h.source, h.target1)) return;
    if (!chart.forward_hammock_member(orc, h.source, h.target2)) return;
    all.push_back(h);
  };
  for (int k = 0; k < r; ++k) {
    int k1 = (k + 1) % r;
    for (int i = -bound; i <= bound; ++i)
      for (int j = -bound; j <= bound; ++j) {
        if (chart.finite_regime()) {
          int ip = chart.primed(i, k) - 1;
          int jp = chart.dprimed(j, k) - 1;
          for (int t = -bound; t <= bound; ++t) {
            if (i < j)
              admit({ar_X(k, i, j), ar_X(k, i + 1, j), ar_Z(k, i, t)});
            if (j < i)
              admit({ar_Y(k, i, j), ar_Y(k, i, j + 1), ar_Z(k, t, j)});
            if (inside(i + 1) && inside(ip) && t <= ip)
              admit({ar_Z(k, i, j), ar_Z(k, i + 1, j), ar_X(k1, t, ip)});
            if (inside(j + 1) && inside(jp) && t <= jp)
              admit({ar_Z(k, i, j), ar_Z(k, i, j + 1), ar_Y(k1, jp, t)});
          }
        } else {
          if (i < j)
            admit({ar_X(k, i, j), ar_X(k, i + 1, j), ar_ZLadder(k, i)});
          int jp = chart.primed(j, k) - 1;
          if (inside(j + 1) && inside(jp) && i <= jp)
            admit({ar_ZLadder(k, j), ar_ZLadder(k, j + 1), ar_X(k1, i, jp)});
        }
      }
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  std::map<ar_coordinate, one_simple_class> grouped;
  for (const one_simple_morphism& h : all) {
    ar_coordinate key = one_simple_key(chart, h);
    one_simple_class& cls = grouped[key];
    cls.key = key;
    cls.members.push_back(h);
  }
  std::vector<one_simple_class> out;
  for (auto& [key, cls] : grouped) out.push_back(std::move(cls));
  return out;
}

/* ------------------------------------------------------------------ */
/* basic open sets (F_f)                                               */

struct open_set_query {
  ar_coordinate source;
  std::vector<ar_coordinate> targets;
  std::vector<int> choice; /* basis index per target; empty means all 0 */
};

namespace detail {

/* shared windows for one source, several middles and one test object; the
 * slaving follows plan_windows edge by edge */
template <class F>
bool membership_at(hom_oracle<F>& orc, const string_complex& A,
                   const std::vector<string_complex>& Bs,
                   const std::vector<int>& choice, const string_complex& N,
                   int esc) {
  const gentle_presentation& alg = orc.algebra();
  int margin = orc.margin_for(esc);
  auto acore = core_degree_range(alg, A);
  auto ncore = core_degree_range(alg, N);
  int lo0 = std::min(acore.first, ncore.first);
  int hi0 = std::max(acore.second, ncore.second);
  std::vector<std::pair<int, int>> bcore;
  for (const string_complex& B : Bs) {
    bcore.push_back(core_degree_range(alg, B));
    lo0 = std::min(lo0, bcore.back().first);
    hi0 = std::max(hi0, bcore.back().second);
  }
  int n_hi = N.word.right_tail ? hi0 + margin : ncore.second;
  std::vector<std::pair<int, int>> bwin(Bs.size());
  int b_hi_max = n_hi;
  for (size_t l = 0; l < Bs.size(); ++l) {
    bwin[l].second = Bs[l].word.right_tail ? n_hi + 1 : bcore[l].second;
    b_hi_max = std::max(b_hi_max, bwin[l].second);
  }
  int a_hi = A.word.right_tail ? b_hi_max + 1 : acore.second;
  int a_lo = A.word.left_tail ? lo0 - margin : acore.first;
  int b_lo_min = a_lo;
  for (size_t l = 0; l < Bs.size(); ++l) {
    bwin[l].first = Bs[l].word.left_tail ? a_lo - 1 : bcore[l].first;
    b_lo_min = std::min(b_lo_min, bwin[l].first);
  }
  int n_lo = N.word.left_tail ? b_lo_min - 1 : ncore.first;

  bounded_complex<F> ka = realize_clamped<F>(alg, A, a_lo, a_hi);
  bounded_complex<F> kn = realize_clamped<F>(alg, N, n_lo, n_hi);
  std::vector<bounded_complex<F>> kbs;
  for (size_t l = 0; l < Bs.size(); ++l)
    kbs.push_back(realize_clamped<F>(alg, Bs[l], bwin[l].first, bwin[l].second));
  std::vector<chain_map<F>> fs;
  std::vector<const bounded_complex<F>*> ptrs;
  for (size_t l = 0; l < Bs.size(); ++l) {
    std::vector<chain_map<F>> basis = orc.basis_between(ka, kbs[l]);
    int pick = l < choice.size() ? choice[l] : 0;
    if (pick < 0 || pick >= static_cast<int>(basis.size()))
      throw contract_error("open_set_membership: basis choice out of range");
    fs.push_back(basis[static_cast<size_t>(pick)]);
    ptrs.push_back(&kbs[l]);
  }
  std::vector<chain_map<F>> gs = orc.basis_between(ka, kn);
  for (const chain_map<F>& g : gs)
    if (!orc.factors_through_sum(ka, ptrs, kn, g, fs)) return true;
  return false;
}

} /* namespace detail */

/* F_f(N) != 0 for f = (f_1,...,f_n): A -> B_1 (+) ... (+) B_n, i.e. some
 * class A -> N lies outside the span of composites through f */
template <class F>
bool open_set_membership(const ar_chart& chart, hom_oracle<F>& orc,
                         const open_set_query& q, const ar_coordinate& N) {
  string_complex A = chart.coordinate_to_complex(q.source);
  if (!is_compact(A.word))
    throw parameter_error("open_set_membership: source must be compact");
  if (!chart.forward_hammock_member(orc, q.source, N)) return false;
  std::vector<string_complex> Bs;
  for (const ar_coordinate& t : q.targets)
    Bs.push_back(chart.coordinate_to_complex(t));
  string_complex Nw = chart.coordinate_to_complex(N);
  bool stab = A.word.left_tail || A.word.right_tail || Nw.word.left_tail ||
              Nw.word.right_tail;
  for (const string_complex& B : Bs)
    stab = stab || B.word.left_tail || B.word.right_tail;
  bool first = detail::membership_at(orc, A, Bs, q.choice, Nw, 0);
  if (!stab) return first;
  for (int esc = 1; esc <= orc.max_escalations(); ++esc) {
    bool next = detail::membership_at(orc, A, Bs, q.choice, Nw, esc);
    if (next == first) return first;
    first = next;
  }
  throw contract_error("open_set_membership: unstable window");
}

/* ------------------------------------------------------------------ */
/* Cantor-Bendixson derivative report                                  */

struct stage0_entry {
  ar_coordinate point;
  std::vector<ar_coordinate> open_set;
  bool ok = false;
};

struct stage1_entry {
  ar_coordinate key;
  one_simple_morphism representative;
  int members = 0;
  std::vector<int> choice;
  std::vector<ar_coordinate> isolated;
  bool ok = false;
};

struct stage2_entry {
  ar_coordinate source;
  std::vector<ar_coordinate> isolated;
  bool ok = false;
};

struct derivative_report_t {
  int bound = 0;
  std::vector<spectrum_point> points;
  std::vector<stage0_entry> stage0;
  std::vector<stage1_entry> stage1;
  std::vector<ar_coordinate> rank1_isolated;
  std::vector<stage2_entry> stage2;
  std::vector<std::string> failures;
  int cb = -1;
  bool ok() const { return failures.empty(); }
};

template <class F>
derivative_report_t derivative_report(const ar_chart& chart,
                                      hom_oracle<F>& orc, int bound = 4) {
  if (bound < 2) throw parameter_error("derivative_report: bound < 2");
  derivative_report_t rep;
  rep.bound = bound;
  rep.points = spectrum_points(chart, bound);
  auto fail = [&](const std::string& msg) { rep.failures.push_back(msg); };

  /* stage 0: each rank-0 point is isolated by its AR-triangle functor */
  for (const spectrum_point& p : rep.points) {
    if (p.rank != 0) continue;
    stage0_entry e;
    e.point = p.coordinate;
    mesh_result mesh = chart.mesh_neighbors(p.coordinate);
    open_set_query q{p.coordinate, mesh.targets, {}};
    for (const spectrum_point& n : rep.points)
      if (open_set_membership(chart, orc, q, n.coordinate))
        e.open_set.push_back(n.coordinate);
    e.ok = e.open_set.size() == 1 && e.open_set[0] == p.coordinate;
    if (!e.ok)
      fail("stage 0: AR functor of " + ar_to_text(p.coordinate) +
           " does not isolate it (open set size " +
           std::to_string(e.open_set.size()) + ")");
    rep.stage0.push_back(std::move(e));
  }

  /* stage 1: each class of 1-simple morphisms isolates one rank-1 point */
  std::set<ar_coordinate> isolated1;
  std::set<std::pair<int, int>> seen_families; /* (family, k) of keys */
  for (const one_simple_class& cls :
       enumerate_one_simples(chart, orc, bound)) {
    stage1_entry e;
    e.key = cls.key;
    e.representative = cls.members.front();
    e.members = static_cast<int>(cls.members.size());
    const one_simple_morphism& h = e.representative;
    int d1 = orc.hom_dim(chart.coordinate_to_complex(h.source),
                         chart.coordinate_to_complex(h.target1));
    int d2 = orc.hom_dim(chart.coordinate_to_complex(h.source),
                         chart.coordinate_to_complex(h.target2));
    if (d1 * d2 > 16)
      throw contract_error("derivative_report: too many basis choices");
    for (int c1 = 0; c1 < d1 && !e.ok; ++c1)
      for (int c2 = 0; c2 < d2 && !e.ok; ++c2) {
        open_set_query q{h.source, {h.target1, h.target2}, {c1, c2}};
        std::vector<ar_coordinate> got;
        for (const spectrum_point& n : rep.points)
          if (n.rank >= 1 && open_set_membership(chart, orc, q, n.coordinate))
            got.push_back(n.coordinate);
        if (got.size() == 1 && got[0] == cls.key) {
          e.ok = true;
          e.choice = {c1, c2};
          e.isolated = got;
        } else if (c1 + 1 == d1 && c2 + 1 == d2) {
          e.isolated = got;
        }
      }
    if (!e.ok)
      fail("stage 1: class of " + ar_to_text(cls.key) +
           " does not isolate its point (got " +
           std::to_string(e.isolated.size()) + " members)");
    else {
      isolated1.insert(cls.key);
      seen_families.insert({static_cast<int>(cls.key.family), cls.key.k});
    }
    rep.stage1.push_back(std::move(e));
  }
  rep.rank1_isolated.assign(isolated1.begin(), isolated1.end());
  std::vector<ar_family> rank1_families =
      chart.finite_regime()
          ? std::vector<ar_family>{ar_family::Xinf, ar_family::XminusInf,
                                   ar_family::Yinf, ar_family::YminusInf}
          : std::vector<ar_family>{ar_family::Xinf, ar_family::ZLadder};
  for (ar_family f : rank1_families)
    for (int k = 0; k < chart.algebra().r(); ++k)
      if (!seen_families.count({static_cast<int>(f), k}))
        fail("stage 1: no class isolates a point of family " +
             std::to_string(static_cast<int>(f)) + " at k=" +
             std::to_string(k));

  /* stage 2: per k the Hom-functor of a Z-plane (resp. ladder) source is
   * nonzero on exactly one two-sided point, and these exhaust them */
  std::set<ar_coordinate> isolated2;
  for (int k = 0; k < chart.algebra().r(); ++k) {
    stage2_entry e;
    e.source = chart.finite_regime() ? ar_Z(k, 0, 0) : ar_ZLadder(k, 0);
    for (int k2 = 0; k2 < chart.algebra().r(); ++k2)
      if (chart.forward_hammock_member(orc, e.source, ar_Zinf(k2)))
        e.isolated.push_back(ar_Zinf(k2));
    e.ok = e.isolated.size() == 1;
    if (!e.ok)
      fail("stage 2: source " + ar_to_text(e.source) +
           " sees " + std::to_string(e.isolated.size()) +
           " two-sided points");
    else
      isolated2.insert(e.isolated[0]);
    rep.stage2.push_back(std::move(e));
  }
  if (isolated2.size() != static_cast<size_t>(chart.algebra().r()))
    fail("stage 2: two-sided points not exhausted");

  /* stage 3: nothing is left after removing ranks 0..2 */
  if (rep.failures.empty()) rep.cb = 2;
  return rep;
}

} /* namespace strcx */
