#pragma once

/* String complexes: realizations of homotopy words as complexes of
 * projectives, brutal truncation to bounded windows, suspension, and
 * mapping cones.
 *
 * A word with positions x_0 ... x_k (letter i between x_i and x_{i+1})
 * realizes to one projective P_{vertex(x)} per position, in cohomological
 * degree mu(x) + offset; each direct letter contributes the differential
 * component R_letter : P_{t} -> P_{s} from its left position to its right
 * one (mu goes up by 1), an inverse letter the mirror (mu goes down by 1).
 * The anchor position carrying degree `offset` is the leftmost position,
 * except for left-infinite words (rightmost) and the two-sided word (the
 * expansion's period boundary).
 *
 * Maps P_u -> P_v act by right multiplication: "apply R_p then R_q" is
 * R_{compose(p,q)}, so d^2 entries are exactly the junction composites,
 * which vanish for valid words.
 */

#include <limits>

#include "strcx/fields.hpp"
#include "strcx/words.hpp"

namespace strcx {

struct string_complex {
  homotopy_word word;
  int offset = 0;
  bool operator==(const string_complex&) const = default;
  bool operator<(const string_complex& o) const {
    if (offset != o.offset) return offset < o.offset;
    return word < o.word;
  }
};

inline string_complex realize(const homotopy_word& w, int offset) {
  return {w, offset};
}

/* Sigma^t: lowers degrees by t */
inline string_complex suspend(const string_complex& c, int t = 1) {
  return {c.word, c.offset - t};
}

/* ------------------------------------------------------------------ */
/* formal linear combinations of paths                                 */

template <class F>
struct lin {
  std::map<path, typename F::elem> terms;

  bool zero() const {
    for (const auto& [p, c] : terms)
      if (!F::is_zero(c)) return false;
    return true;
  }
  void add_term(const path& p, typename F::elem c) {
    auto it = terms.find(p);
    if (it == terms.end()) {
      if (!F::is_zero(c)) terms.emplace(p, c);
      return;
    }
    it->second = F::add(it->second, c);
    if (F::is_zero(it->second)) terms.erase(it);
  }
  static lin single(const path& p, typename F::elem c) {
    lin out;
    out.add_term(p, c);
    return out;
  }
  bool operator==(const lin&) const = default;
};

template <class F>
lin<F> add(const lin<F>& a, const lin<F>& b) {
  lin<F> out = a;
  for (const auto& [p, c] : b.terms) out.add_term(p, c);
  return out;
}

template <class F>
lin<F> scale(const lin<F>& a, const typename F::elem& c) {
  lin<F> out;
  for (const auto& [p, e] : a.terms) out.add_term(p, F::mul(e, c));
  return out;
}

template <class F>
lin<F> negate(const lin<F>& a) {
  return scale<F>(a, F::neg(F::one()));
}

/* apply R_first then R_second */
template <class F>
lin<F> then(const gentle_presentation& alg, const lin<F>& first,
            const lin<F>& second) {
  lin<F> out;
  for (const auto& [p, c] : first.terms)
    for (const auto& [q, e] : second.terms)
      if (auto pq = alg.compose(p, q)) out.add_term(*pq, F::mul(c, e));
  return out;
}

/* ------------------------------------------------------------------ */
/* bounded complexes                                                   */

template <class F>
using lin_matrix = std::vector<std::vector<lin<F>>>; /* [row][col] */

template <class F>
struct bounded_complex {
  int lo = 0;
  /* verts[k] = projective summand vertices in degree lo+k, left to right */
  std::vector<std::vector<int>> verts;
  /* d[k]: C^{lo+k} -> C^{lo+k+1}, a |verts[k+1]| x |verts[k]| matrix;
   * d.size() == verts.size() - 1 (empty when verts is empty) */
  std::vector<lin_matrix<F>> d;

  int hi() const { return lo + static_cast<int>(verts.size()) - 1; }
  bool empty() const { return verts.empty(); }
  size_t dim_at(int deg) const {
    if (deg < lo || deg > hi()) return 0;
    return verts[static_cast<size_t>(deg - lo)].size();
  }
  const std::vector<int>& verts_at(int deg) const {
    static const std::vector<int> none;
    if (deg < lo || deg > hi()) return none;
    return verts[static_cast<size_t>(deg - lo)];
  }
  /* matrix of d^deg; empty matrix if out of range */
  const lin_matrix<F>* diff_at(int deg) const {
    int k = deg - lo;
    if (k < 0 || k >= static_cast<int>(d.size())) return nullptr;
    return &d[static_cast<size_t>(k)];
  }
};

template <class F>
bool verify_d2(const gentle_presentation& alg, const bounded_complex<F>& c) {
  for (size_t k = 0; k + 1 < c.d.size(); ++k) {
    size_t nin = c.verts[k].size(), nmid = c.verts[k + 1].size(),
           nout = c.verts[k + 2].size();
    for (size_t row = 0; row < nout; ++row)
      for (size_t col = 0; col < nin; ++col) {
        lin<F> acc;
        for (size_t mid = 0; mid < nmid; ++mid)
          acc = add<F>(acc, then(alg, c.d[k][mid][col], c.d[k + 1][row][mid]));
        if (!acc.zero()) return false;
      }
  }
  return true;
}

/* ------------------------------------------------------------------ */
/* realization of a word window                                        */

struct realized_positions {
  std::vector<homotopy_letter> letters; /* letter i between positions i,i+1 */
  std::vector<int> vertex;              /* per position */
  std::vector<int> degree;              /* per position */
};

inline realized_positions realize_positions(const gentle_presentation& alg,
                                            const string_complex& sc,
                                            int periods_left,
                                            int periods_right) {
  require_valid(alg, sc.word);
  realized_positions out;
  if (sc.word.is_stalk()) {
    out.vertex = {sc.word.stalk_vertex};
    out.degree = {sc.offset};
    return out;
  }
  word_expansion e = expand_word(alg, sc.word, periods_left, periods_right);
  out.letters = e.letters;
  size_t npos = e.letters.size() + 1;
  out.vertex.assign(npos, 0);
  out.degree.assign(npos, 0);
  for (size_t i = 0; i < e.letters.size(); ++i) {
    const homotopy_letter& l = e.letters[i];
    out.vertex[i] = l.inverse ? alg.src(l.p) : alg.tgt(l.p);
    out.vertex[i + 1] = l.inverse ? alg.tgt(l.p) : alg.src(l.p);
  }
  int anchor = e.anchor;
  out.degree[static_cast<size_t>(anchor)] = sc.offset;
  for (int i = anchor - 1; i >= 0; --i)
    out.degree[i] = out.degree[i + 1] - (out.letters[i].inverse ? -1 : 1);
  for (size_t i = static_cast<size_t>(anchor); i + 1 < npos; ++i)
    out.degree[i + 1] = out.degree[i] + (out.letters[i].inverse ? -1 : 1);
  return out;
}

/* degrees spanned by the core positions (tails excluded) */
inline std::pair<int, int> core_degree_range(const gentle_presentation& alg,
                                             const string_complex& sc) {
  realized_positions pos = realize_positions(alg, sc, 0, 0);
  int lo = pos.degree.front(), hi = lo;
  for (int dgr : pos.degree) {
    lo = std::min(lo, dgr);
    hi = std::max(hi, dgr);
  }
  return {lo, hi};
}

/* brutal truncation of the realization to degrees [lo, hi] */
template <class F>
bounded_complex<F> realize_window(const gentle_presentation& alg,
                                  const string_complex& sc, int lo, int hi) {
  if (lo > hi) throw parameter_error("realize_window: lo > hi");
  int radius = std::max(std::abs(lo - sc.offset), std::abs(hi - sc.offset));
  int periods = radius / alg.r() + 3;
  realized_positions pos = realize_positions(alg, sc, periods, periods);

  bounded_complex<F> out;
  out.lo = lo;
  out.verts.assign(static_cast<size_t>(hi - lo + 1), {});
  out.d.assign(static_cast<size_t>(hi - lo), {});
  std::vector<int> index(pos.vertex.size(), -1); /* summand index per position */
  for (size_t i = 0; i < pos.vertex.size(); ++i) {
    int dgr = pos.degree[i];
    if (dgr < lo || dgr > hi) continue;
    index[i] = static_cast<int>(out.verts[static_cast<size_t>(dgr - lo)].size());
    out.verts[static_cast<size_t>(dgr - lo)].push_back(pos.vertex[i]);
  }
  for (size_t k = 0; k + 1 < out.verts.size(); ++k)
    out.d[k].assign(out.verts[k + 1].size(),
                    std::vector<lin<F>>(out.verts[k].size()));
  for (size_t i = 0; i < pos.letters.size(); ++i) {
    const homotopy_letter& l = pos.letters[i];
    size_t from = l.inverse ? i + 1 : i; /* lower-degree position */
    size_t to = l.inverse ? i : i + 1;
    if (index[from] < 0 || index[to] < 0) continue;
    int k = pos.degree[from] - lo;
    if (k < 0 || k >= static_cast<int>(out.d.size())) continue;
    out.d[static_cast<size_t>(k)][static_cast<size_t>(index[to])]
         [static_cast<size_t>(index[from])]
             .add_term(l.p, F::one());
  }
  if (!verify_d2(alg, out))
    throw contract_error("realize_window: differential does not square to zero");
  return out;
}

/* full realization of a finite-word complex */
template <class F>
bounded_complex<F> realize_bounded(const gentle_presentation& alg,
                                   const string_complex& sc) {
  if (sc.word.species() != species_t::finite && !sc.word.is_stalk())
    throw parameter_error("realize_bounded: word is not finite");
  auto [lo, hi] = core_degree_range(alg, sc);
  return realize_window<F>(alg, sc, lo, hi);
}

/* Sigma^t at the bounded level: degrees drop by t, differential gains
 * the sign (-1)^t */
template <class F>
bounded_complex<F> shift_bounded(const bounded_complex<F>& c, int t) {
  bounded_complex<F> out = c;
  out.lo -= t;
  if (t % 2 != 0)
    for (auto& mat : out.d)
      for (auto& row : mat)
        for (auto& e : row) e = negate<F>(e);
  return out;
}

/* ------------------------------------------------------------------ */
/* chain maps and cones                                                */

template <class F>
struct chain_map {
  /* comp[deg]: |B_deg| x |A_deg| matrix, a degree-0 collection A -> B */
  std::map<int, lin_matrix<F>> comp;

  const lin_matrix<F>* at(int deg) const {
    auto it = comp.find(deg);
    return it == comp.end() ? nullptr : &it->second;
  }
};

template <class F>
lin<F> map_entry(const chain_map<F>& f, int deg, size_t row, size_t col) {
  const lin_matrix<F>* m = f.at(deg);
  if (!m || row >= m->size() || col >= (*m)[row].size()) return {};
  return (*m)[row][col];
}

/* d_B f = f d_A in all degrees covered by both windows */
template <class F>
bool is_chain_map(const gentle_presentation& alg, const bounded_complex<F>& a,
                  const bounded_complex<F>& b, const chain_map<F>& f) {
  int lo = std::min(a.lo, b.lo), hi = std::max(a.hi(), b.hi());
  for (int deg = lo; deg < hi; ++deg) {
    size_t na = a.dim_at(deg), nb1 = b.dim_at(deg + 1);
    for (size_t row = 0; row < nb1; ++row)
      for (size_t col = 0; col < na; ++col) {
        lin<F> acc;
        const lin_matrix<F>* da = a.diff_at(deg);
        const lin_matrix<F>* db = b.diff_at(deg);
        for (size_t mid = 0; mid < b.dim_at(deg); ++mid)
          if (db)
            acc = add<F>(acc, then(alg, map_entry(f, deg, mid, col),
                                   (*db)[row][mid]));
        for (size_t mid = 0; mid < a.dim_at(deg + 1); ++mid)
          if (da)
            acc = add<F>(acc, negate<F>(then(alg, (*da)[mid][col],
                                             map_entry(f, deg + 1, row, mid))));
        if (!acc.zero()) return false;
      }
  }
  return true;
}

/* cone(f: A -> B): C^i = A^{i+1} (+) B^i, d = [[-d_A, 0], [f, d_B]] */
template <class F>
bounded_complex<F> mapping_cone(const gentle_presentation& alg,
                                const bounded_complex<F>& a,
                                const bounded_complex<F>& b,
                                const chain_map<F>& f) {
  bounded_complex<F> out;
  if (a.empty() && b.empty()) return out;
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  if (!a.empty()) {
    lo = std::min(lo, a.lo - 1);
    hi = std::max(hi, a.hi() - 1);
  }
  if (!b.empty()) {
    lo = std::min(lo, b.lo);
    hi = std::max(hi, b.hi());
  }
  out.lo = lo;
  out.verts.assign(static_cast<size_t>(hi - lo + 1), {});
  for (int deg = lo; deg <= hi; ++deg) {
    auto& v = out.verts[static_cast<size_t>(deg - lo)];
    for (int u : a.verts_at(deg + 1)) v.push_back(u);
    for (int u : b.verts_at(deg)) v.push_back(u);
  }
  out.d.assign(static_cast<size_t>(hi - lo), {});
  for (int deg = lo; deg < hi; ++deg) {
    size_t na = a.dim_at(deg + 1), nb = b.dim_at(deg);
    size_t na2 = a.dim_at(deg + 2), nb2 = b.dim_at(deg + 1);
    lin_matrix<F> m(na2 + nb2, std::vector<lin<F>>(na + nb));
    const lin_matrix<F>* da = a.diff_at(deg + 1);
    const lin_matrix<F>* db = b.diff_at(deg);
    for (size_t row = 0; row < na2; ++row)
      for (size_t col = 0; col < na; ++col)
        if (da) m[row][col] = negate<F>((*da)[row][col]);
    for (size_t row = 0; row < nb2; ++row)
      for (size_t col = 0; col < na; ++col)
        m[na2 + row][col] = map_entry(f, deg + 1, row, col);
    for (size_t row = 0; row < nb2; ++row)
      for (size_t col = 0; col < nb; ++col)
        if (db) m[na2 + row][na + col] = (*db)[row][col];
    out.d[static_cast<size_t>(deg - lo)] = std::move(m);
  }
  if (!verify_d2(alg, out))
    throw contract_error("mapping_cone: differential does not square to zero");
  return out;
}

/* (A (+) B)^deg with the A-summands listed first */
template <class F>
bounded_complex<F> direct_sum(const gentle_presentation& alg,
                              const bounded_complex<F>& a,
                              const bounded_complex<F>& b) {
  bounded_complex<F> out;
  if (a.empty() && b.empty()) return out;
  int lo = std::numeric_limits<int>::max();
  int hi = std::numeric_limits<int>::min();
  if (!a.empty()) {
    lo = std::min(lo, a.lo);
    hi = std::max(hi, a.hi());
  }
  if (!b.empty()) {
    lo = std::min(lo, b.lo);
    hi = std::max(hi, b.hi());
  }
  out.lo = lo;
  out.verts.assign(static_cast<size_t>(hi - lo + 1), {});
  for (int deg = lo; deg <= hi; ++deg) {
    auto& v = out.verts[static_cast<size_t>(deg - lo)];
    for (int u : a.verts_at(deg)) v.push_back(u);
    for (int u : b.verts_at(deg)) v.push_back(u);
  }
  out.d.assign(static_cast<size_t>(hi - lo), {});
  for (int deg = lo; deg < hi; ++deg) {
    size_t na = a.dim_at(deg), nb = b.dim_at(deg);
    size_t na2 = a.dim_at(deg + 1), nb2 = b.dim_at(deg + 1);
    lin_matrix<F> m(na2 + nb2, std::vector<lin<F>>(na + nb));
    const lin_matrix<F>* da = a.diff_at(deg);
    const lin_matrix<F>* db = b.diff_at(deg);
    for (size_t row = 0; row < na2; ++row)
      for (size_t col = 0; col < na; ++col)
        if (da) m[row][col] = (*da)[row][col];
    for (size_t row = 0; row < nb2; ++row)
      for (size_t col = 0; col < nb; ++col)
        if (db) m[na2 + row][na + col] = (*db)[row][col];
    out.d[static_cast<size_t>(deg - lo)] = std::move(m);
  }
  if (!verify_d2(alg, out))
    throw contract_error("direct_sum: differential does not square to zero");
  return out;
}

/* [f; g]: A -> B1 (+) B2, matching the summand order of direct_sum */
template <class F>
chain_map<F> stack_maps(const bounded_complex<F>& a,
                        const bounded_complex<F>& b1,
                        const bounded_complex<F>& b2, const chain_map<F>& f,
                        const chain_map<F>& g) {
  chain_map<F> out;
  int lo = std::min(b1.empty() ? a.lo : b1.lo, b2.empty() ? a.lo : b2.lo);
  int hi = std::max(b1.empty() ? a.hi() : b1.hi(),
                    b2.empty() ? a.hi() : b2.hi());
  for (int deg = std::min(lo, a.lo); deg <= std::max(hi, a.hi()); ++deg) {
    size_t na = a.dim_at(deg);
    size_t n1 = b1.dim_at(deg), n2 = b2.dim_at(deg);
    if (na == 0 || n1 + n2 == 0) continue;
    lin_matrix<F> m(n1 + n2, std::vector<lin<F>>(na));
    for (size_t row = 0; row < n1; ++row)
      for (size_t col = 0; col < na; ++col)
        m[row][col] = map_entry(f, deg, row, col);
    for (size_t row = 0; row < n2; ++row)
      for (size_t col = 0; col < na; ++col)
        m[n1 + row][col] = map_entry(g, deg, row, col);
    out.comp[deg] = std::move(m);
  }
  return out;
}

} /* namespace strcx */
