#pragma once

/* Exact linear-algebra oracle for Hom in the homotopy category K(proj):
 * chain maps modulo null-homotopies, factorization, contractibility and
 * isomorphism tests.
 *
 * Unknowns are path-basis coefficients of degreewise maps.  For infinite
 * words the windows are staggered, not symmetric: Hom(A, -) turns A into a
 * homotopy colimit of its bottom truncations and B into a homotopy limit of
 * its top truncations, so only A's bottom cut (when A has a left tail) and
 * B's top cut (when B has a right tail) are truncations that need to be
 * stabilized.  The remaining cuts are slaved exactly: aR = bR + 1 when A has
 * a right tail and bL = aL - 1 when B has a left tail make every dropped
 * chain-map or homotopy equation vacuous, so the finite system equals the
 * infinite one.  A symmetric window is wrong at every size (it inflates
 * Hom(A, A) for one-sided A).
 */

#include <deque>

#include "strcx/complexes.hpp"

namespace strcx {

/* ------------------------------------------------------------------ */
/* dense exact linear algebra                                          */

template <class F>
using fvec = std::vector<typename F::elem>;
template <class F>
using fmat = std::vector<fvec<F>>;

/* row echelon in place; returns rank */
template <class F>
size_t echelonize(fmat<F>& m) {
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t rank = 0;
  for (size_t col = 0; col < cols && rank < rows; ++col) {
    size_t pivot = rank;
    while (pivot < rows && F::is_zero(m[pivot][col])) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[rank], m[pivot]);
    typename F::elem inv = F::div(F::one(), m[rank][col]);
    for (size_t c = col; c < cols; ++c) m[rank][c] = F::mul(m[rank][c], inv);
    for (size_t r = 0; r < rows; ++r) {
      if (r == rank || F::is_zero(m[r][col])) continue;
      typename F::elem factor = m[r][col];
      for (size_t c = col; c < cols; ++c)
        m[r][c] = F::sub(m[r][c], F::mul(factor, m[rank][c]));
    }
    ++rank;
  }
  return rank;
}

template <class F>
size_t rank_of(fmat<F> m) {
  return echelonize<F>(m);
}

/* basis of the right null space of m (ncols columns) */
template <class F>
fmat<F> nullspace_of(fmat<F> m, size_t ncols) {
  size_t rank = echelonize<F>(m);
  std::vector<int> pivot_col(rank, -1);
  std::vector<bool> is_pivot(ncols, false);
  for (size_t r = 0; r < rank; ++r)
    for (size_t c = 0; c < ncols; ++c)
      if (!F::is_zero(m[r][c])) {
        pivot_col[r] = static_cast<int>(c);
        is_pivot[c] = true;
        break;
      }
  fmat<F> basis;
  for (size_t free = 0; free < ncols; ++free) {
    if (is_pivot[free]) continue;
    fvec<F> v(ncols, F::zero());
    v[free] = F::one();
    for (size_t r = 0; r < rank; ++r) {
      int pc = pivot_col[r];
      if (pc >= 0) v[static_cast<size_t>(pc)] = F::neg(m[r][free]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

/* does m x = b admit a solution? */
template <class F>
bool consistent(const fmat<F>& m, const fvec<F>& b) {
  fmat<F> plain = m;
  size_t r0 = echelonize<F>(plain);
  fmat<F> aug = m;
  for (size_t r = 0; r < aug.size(); ++r) aug[r].push_back(b[r]);
  if (aug.empty()) {
    for (const auto& x : b)
      if (!F::is_zero(x)) return false;
    return true;
  }
  return echelonize<F>(aug) == r0;
}

/* ------------------------------------------------------------------ */
/* coordinate bookkeeping                                              */

/* coordinates of degreewise maps: (degree, target summand, source summand,
 * basis path) */
struct map_coord {
  int deg = 0;
  int row = 0; /* summand index in the target complex at degree deg+shift */
  int col = 0; /* summand index in the source complex at degree deg */
  path p;
  bool operator<(const map_coord& o) const {
    return std::tie(deg, row, col, p) < std::tie(o.deg, o.row, o.col, o.p);
  }
  bool operator==(const map_coord&) const = default;
};

class coord_space {
 public:
  int get_or_add(const map_coord& c) {
    auto [it, fresh] = idx_.emplace(c, static_cast<int>(coords_.size()));
    if (fresh) coords_.push_back(c);
    return it->second;
  }
  int find(const map_coord& c) const {
    auto it = idx_.find(c);
    return it == idx_.end() ? -1 : it->second;
  }
  size_t size() const { return coords_.size(); }
  const map_coord& at(size_t i) const { return coords_[i]; }

 private:
  std::vector<map_coord> coords_;
  std::map<map_coord, int> idx_;
};

/* ------------------------------------------------------------------ */
/* the degreewise-map system between two bounded complexes             */

template <class F>
struct hom_system {
  const gentle_presentation& alg;
  const bounded_complex<F>& A;
  const bounded_complex<F>& B;
  coord_space fvars; /* degree-0 map coordinates A^i -> B^i */
  coord_space hvars; /* degree -1 coordinates A^i -> B^{i-1} */

  hom_system(const gentle_presentation& a, const bounded_complex<F>& ka,
             const bounded_complex<F>& kb)
      : alg(a), A(ka), B(kb) {
    if (A.empty() || B.empty()) return;
    for (int deg = std::max(A.lo, B.lo); deg <= std::min(A.hi(), B.hi());
         ++deg)
      for (int row = 0; row < static_cast<int>(B.dim_at(deg)); ++row)
        for (int col = 0; col < static_cast<int>(A.dim_at(deg)); ++col)
          for (const path& p : alg.hom_path_basis(
                   A.verts_at(deg)[static_cast<size_t>(col)],
                   B.verts_at(deg)[static_cast<size_t>(row)]))
            fvars.get_or_add({deg, row, col, p});
    for (int deg = std::max(A.lo, B.lo + 1); deg <= std::min(A.hi(), B.hi() + 1);
         ++deg)
      for (int row = 0; row < static_cast<int>(B.dim_at(deg - 1)); ++row)
        for (int col = 0; col < static_cast<int>(A.dim_at(deg)); ++col)
          for (const path& p : alg.hom_path_basis(
                   A.verts_at(deg)[static_cast<size_t>(col)],
                   B.verts_at(deg - 1)[static_cast<size_t>(row)]))
            hvars.get_or_add({deg, row, col, p});
  }

  /* chain-map equations E f = 0: for every degree i, target summand q' of
   * B^{i+1}, source summand p of A^i and basis path: the coefficient of
   * d_B f^i - f^{i+1} d_A */
  fmat<F> chain_matrix(coord_space& eqs) const {
    std::vector<std::map<int, typename F::elem>> rows;
    auto put = [&](const map_coord& eq, int var, typename F::elem val) {
      int r = eqs.get_or_add(eq);
      if (r >= static_cast<int>(rows.size())) rows.resize(eqs.size());
      auto& cell = rows[static_cast<size_t>(r)][var];
      cell = F::add(cell, val);
    };
    for (size_t v = 0; v < fvars.size(); ++v) {
      const map_coord& c = fvars.at(v);
      /* d_B^i after f^i */
      if (const lin_matrix<F>* db = B.diff_at(c.deg))
        for (size_t q2 = 0; q2 < B.dim_at(c.deg + 1); ++q2)
          for (const auto& [delta, kappa] : (*db)[q2][static_cast<size_t>(c.row)].terms)
            if (auto comp = alg.compose(c.p, delta))
              put({c.deg, static_cast<int>(q2), c.col, *comp},
                  static_cast<int>(v), kappa);
      /* f^{i} after d_A^{i-1}: contributes to equations one degree down */
      if (c.deg - 1 >= A.lo)
        if (const lin_matrix<F>* da = A.diff_at(c.deg - 1))
          for (size_t p2 = 0; p2 < A.dim_at(c.deg - 1); ++p2)
            for (const auto& [delta, kappa] : (*da)[static_cast<size_t>(c.col)][p2].terms)
              if (auto comp = alg.compose(delta, c.p))
                put({c.deg - 1, c.row, static_cast<int>(p2), *comp},
                    static_cast<int>(v), F::neg(kappa));
    }
    fmat<F> m(eqs.size(), fvec<F>(fvars.size(), F::zero()));
    for (size_t r = 0; r < rows.size(); ++r)
      for (const auto& [col, val] : rows[r]) m[r][static_cast<size_t>(col)] = val;
    return m;
  }

  /* Phi: homotopy coordinates -> degree-0 coordinates, h |-> d_B h + h d_A */
  fmat<F> null_matrix(coord_space& fcoords) const {
    std::vector<std::map<int, typename F::elem>> cols(hvars.size());
    for (size_t v = 0; v < hvars.size(); ++v) {
      const map_coord& c = hvars.at(v); /* h^deg: A^deg -> B^{deg-1} */
      if (const lin_matrix<F>* db = B.diff_at(c.deg - 1))
        for (size_t q2 = 0; q2 < B.dim_at(c.deg); ++q2)
          for (const auto& [delta, kappa] : (*db)[q2][static_cast<size_t>(c.row)].terms)
            if (auto comp = alg.compose(c.p, delta)) {
              int r = fcoords.get_or_add(
                  {c.deg, static_cast<int>(q2), c.col, *comp});
              auto& cell = cols[v][r];
              cell = F::add(cell, kappa);
            }
      if (c.deg - 1 >= A.lo)
        if (const lin_matrix<F>* da = A.diff_at(c.deg - 1))
          for (size_t p2 = 0; p2 < A.dim_at(c.deg - 1); ++p2)
            for (const auto& [delta, kappa] : (*da)[static_cast<size_t>(c.col)][p2].terms)
              if (auto comp = alg.compose(delta, c.p)) {
                int r = fcoords.get_or_add(
                    {c.deg - 1, c.row, static_cast<int>(p2), *comp});
                auto& cell = cols[v][r];
                cell = F::add(cell, kappa);
              }
    }
    fmat<F> m(fcoords.size(), fvec<F>(hvars.size(), F::zero()));
    for (size_t v = 0; v < hvars.size(); ++v)
      for (const auto& [r, val] : cols[v]) m[static_cast<size_t>(r)][v] = val;
    return m;
  }

  /* express a chain map in fvar coordinates */
  fvec<F> pack(const chain_map<F>& f) const {
    fvec<F> out(fvars.size(), F::zero());
    for (size_t v = 0; v < fvars.size(); ++v) {
      const map_coord& c = fvars.at(v);
      lin<F> e = map_entry(f, c.deg, static_cast<size_t>(c.row),
                           static_cast<size_t>(c.col));
      auto it = e.terms.find(c.p);
      if (it != e.terms.end()) out[v] = it->second;
    }
    return out;
  }

  chain_map<F> unpack(const fvec<F>& x) const {
    chain_map<F> f;
    for (size_t v = 0; v < fvars.size(); ++v) {
      if (F::is_zero(x[v])) continue;
      const map_coord& c = fvars.at(v);
      auto& m = f.comp[c.deg];
      if (m.empty())
        m.assign(B.dim_at(c.deg), std::vector<lin<F>>(A.dim_at(c.deg)));
      m[static_cast<size_t>(c.row)][static_cast<size_t>(c.col)].add_term(c.p,
                                                                         x[v]);
    }
    return f;
  }
};

/* dim(chain maps), dim(null-homotopic) for two bounded complexes */
template <class F>
std::pair<int, int> hom_dims_bounded(const gentle_presentation& alg,
                                     const bounded_complex<F>& a,
                                     const bounded_complex<F>& b) {
  hom_system<F> sys(alg, a, b);
  if (sys.fvars.size() == 0) return {0, 0};
  coord_space eqs;
  fmat<F> e = sys.chain_matrix(eqs);
  int dim_chain = static_cast<int>(sys.fvars.size()) -
                  static_cast<int>(rank_of<F>(std::move(e)));
  coord_space fcoords;
  fmat<F> phi = sys.null_matrix(fcoords);
  int dim_null = static_cast<int>(rank_of<F>(std::move(phi)));
  return {dim_chain, dim_null};
}

/* is f (a degree-0 collection) null-homotopic within the windows? */
template <class F>
bool null_homotopic_bounded(const gentle_presentation& alg,
                            const bounded_complex<F>& a,
                            const bounded_complex<F>& b,
                            const chain_map<F>& f) {
  hom_system<F> sys(alg, a, b);
  coord_space fcoords;
  /* seed the coordinate space with the fvar coordinates so pack aligns */
  for (size_t v = 0; v < sys.fvars.size(); ++v) fcoords.get_or_add(sys.fvars.at(v));
  fmat<F> phi = sys.null_matrix(fcoords);
  fvec<F> target(fcoords.size(), F::zero());
  fvec<F> packed = sys.pack(f);
  for (size_t v = 0; v < packed.size(); ++v) target[v] = packed[v];
  return consistent<F>(phi, target);
}

/* does dh + hd = id admit a solution? */
template <class F>
bool contractible_bounded(const gentle_presentation& alg,
                          const bounded_complex<F>& k) {
  if (k.empty()) return true;
  chain_map<F> id;
  for (int deg = k.lo; deg <= k.hi(); ++deg) {
    size_t n = k.dim_at(deg);
    if (n == 0) continue;
    lin_matrix<F> m(n, std::vector<lin<F>>(n));
    for (size_t i = 0; i < n; ++i)
      m[i][i] = lin<F>::single(
          path{k.verts_at(deg)[i], {}}, F::one());
    id.comp[deg] = std::move(m);
  }
  return null_homotopic_bounded(alg, k, k, id);
}

/* composite "apply f: A->B, then t: B->C" */
template <class F>
chain_map<F> compose_maps(const gentle_presentation& alg, const chain_map<F>& f,
                          const chain_map<F>& t) {
  chain_map<F> out;
  for (const auto& [deg, fm] : f.comp) {
    const lin_matrix<F>* tm = t.at(deg);
    if (!tm || tm->empty() || fm.empty()) continue;
    size_t nc = tm->size();          /* C summands */
    size_t nb = fm.size();           /* B summands */
    size_t na = fm[0].size();        /* A summands */
    lin_matrix<F> m(nc, std::vector<lin<F>>(na));
    for (size_t c = 0; c < nc; ++c)
      for (size_t a = 0; a < na; ++a) {
        lin<F> acc;
        for (size_t b = 0; b < nb && b < (*tm)[c].size(); ++b)
          acc = add<F>(acc, then(alg, fm[b][a], (*tm)[c][b]));
        m[c][a] = acc;
      }
    if (!m.empty()) out.comp[deg] = std::move(m);
  }
  return out;
}

/* ------------------------------------------------------------------ */
/* window planning for string complexes                                */

struct hom_window {
  int a_lo = 0, a_hi = -1; /* empty when lo > hi */
  int b_lo = 0, b_hi = -1;
};

inline hom_window plan_windows(const gentle_presentation& alg,
                               const string_complex& A,
                               const string_complex& B, int margin) {
  auto [alo, ahi] = core_degree_range(alg, A);
  auto [blo, bhi] = core_degree_range(alg, B);
  int lo0 = std::min(alo, blo), hi0 = std::max(ahi, bhi);
  hom_window w;
  w.a_lo = A.word.left_tail ? lo0 - margin : alo;
  w.b_hi = B.word.right_tail ? hi0 + margin : bhi;
  w.a_hi = A.word.right_tail ? w.b_hi + 1 : ahi;
  w.b_lo = B.word.left_tail ? w.a_lo - 1 : blo;
  return w;
}

template <class F>
bounded_complex<F> realize_clamped(const gentle_presentation& alg,
                                   const string_complex& sc, int lo, int hi) {
  if (lo > hi) return bounded_complex<F>{};
  return realize_window<F>(alg, sc, lo, hi);
}

/* ------------------------------------------------------------------ */
/* reports and the oracle                                              */

struct hom_report {
  int dim_chain_maps = 0;
  int dim_null_homotopic = 0;
  int hom_dim = 0;
  hom_window window;
  int margin = 0; /* plan_windows margin that produced the window */
  bool stabilized = false;
};

template <class F = field_rational>
class hom_oracle {
 public:
  explicit hom_oracle(const gentle_presentation& alg, int max_escalations = 8)
      : alg_(alg), max_esc_(max_escalations) {}

  const gentle_presentation& algebra() const { return alg_; }

  hom_report hom(const string_complex& A, const string_complex& B) {
    auto key = std::make_tuple(A.word, B.word, B.offset - A.offset);
    auto it = memo_.find(key);
    if (it != memo_.end()) {
      /* the memo key is translation-invariant but the stored window holds
       * absolute degrees; re-plan it for the offsets at hand */
      hom_report rep = it->second;
      rep.window = plan_windows(alg_, A, B, rep.margin);
      return rep;
    }
    hom_report rep = compute(A, B);
    memo_.emplace(key, rep);
    return rep;
  }

  int hom_dim(const string_complex& A, const string_complex& B) {
    return hom(A, B).hom_dim;
  }

  struct basis_result {
    std::vector<chain_map<F>> maps;
    bounded_complex<F> ka, kb;
    hom_report report;
  };

  /* chain maps whose classes form a basis of Hom_K(A, B) at the stabilized
   * window */
  basis_result hom_basis(const string_complex& A, const string_complex& B) {
    hom_report rep = hom(A, B);
    basis_result out;
    out.report = rep;
    out.ka = realize_clamped<F>(alg_, A, rep.window.a_lo, rep.window.a_hi);
    out.kb = realize_clamped<F>(alg_, B, rep.window.b_lo, rep.window.b_hi);
    out.maps = basis_on(out.ka, out.kb);
    if (static_cast<int>(out.maps.size()) != rep.hom_dim)
      throw contract_error("hom_basis: size disagrees with hom_dim");
    return out;
  }

  /* chain-map class representatives on caller-supplied windows */
  std::vector<chain_map<F>> basis_between(const bounded_complex<F>& ka,
                                          const bounded_complex<F>& kb) {
    return basis_on(ka, kb);
  }

  /* the escalation schedule used for window stabilization */
  int margin_for(int esc) const { return margin_at(esc); }
  int max_escalations() const { return max_esc_; }

  /* does every class A -> C factor through B (i.e. lie in the span of
   * composites through the Hom_K(A,B) basis)? */
  bool factors_all(const string_complex& A, const string_complex& B,
                   const string_complex& C) {
    bool first = factors_all_at(A, B, C, 0);
    if (!needs_stabilization(A, B, C)) return first;
    for (int esc = 1; esc <= max_esc_; ++esc) {
      bool next = factors_all_at(A, B, C, esc);
      if (next == first) return first;
      first = next;
    }
    throw contract_error("factors_all: unstable window");
  }

  /* [g] in span{ [t o f] : t in Hom(B,C) } for one given f, all on shared
   * windows */
  bool factors_through(const bounded_complex<F>& ka,
                       const bounded_complex<F>& kb,
                       const bounded_complex<F>& kc, const chain_map<F>& g,
                       const std::vector<chain_map<F>>& fs) {
    /* unknowns: one chain map t_i: B -> C per f_i, plus a homotopy h: A -> C.
     * equations: chain(t_i) = 0 and sum_i t_i o f_i + d h + h d = g */
    hom_system<F> tsys(alg_, kb, kc);
    hom_system<F> gsys(alg_, ka, kc);
    size_t nt = tsys.fvars.size();
    size_t nf = fs.size();
    size_t nh = gsys.hvars.size();
    size_t ncols = nt * nf + nh;

    std::vector<std::map<int, typename F::elem>> rows;
    coord_space eqcoords;
    auto put = [&](int row, size_t col, typename F::elem val) {
      if (row >= static_cast<int>(rows.size()))
        rows.resize(static_cast<size_t>(row) + 1);
      auto& cell = rows[static_cast<size_t>(row)][static_cast<int>(col)];
      cell = F::add(cell, val);
    };
    /* block 1: chain equations for each t_i */
    coord_space teqs;
    fmat<F> tchain = tsys.chain_matrix(teqs);
    size_t tchain_rows = tchain.size();
    for (size_t i = 0; i < nf; ++i)
      for (size_t r = 0; r < tchain_rows; ++r)
        for (size_t c = 0; c < nt; ++c)
          if (!F::is_zero(tchain[r][c]))
            put(static_cast<int>(i * tchain_rows + r), i * nt + c,
                tchain[r][c]);
    int base = static_cast<int>(nf * tchain_rows);
    /* block 2: sum t_i o f_i + d_C h + h d_A = g, coordinates of A->C maps */
    auto coord_row = [&](const map_coord& c) {
      return base + eqcoords.get_or_add(c);
    };
    for (size_t i = 0; i < nf; ++i) {
      const chain_map<F>& f = fs[i];
      for (size_t v = 0; v < nt; ++v) {
        const map_coord& tc = tsys.fvars.at(v); /* t^deg: B -> C */
        /* composite with f^deg entries into B summand tc.col */
        for (size_t acol = 0; acol < ka.dim_at(tc.deg); ++acol) {
          lin<F> fe = map_entry(f, tc.deg, static_cast<size_t>(tc.col), acol);
          for (const auto& [psi, kappa] : fe.terms)
            if (auto comp = alg_.compose(psi, tc.p))
              put(coord_row({tc.deg, tc.row, static_cast<int>(acol), *comp}),
                  i * nt + v, kappa);
        }
      }
    }
    for (size_t v = 0; v < nh; ++v) {
      const map_coord& hc = gsys.hvars.at(v); /* h^deg: A^deg -> C^{deg-1} */
      if (const lin_matrix<F>* dc = kc.diff_at(hc.deg - 1))
        for (size_t q2 = 0; q2 < kc.dim_at(hc.deg); ++q2)
          for (const auto& [delta, kappa] :
               (*dc)[q2][static_cast<size_t>(hc.row)].terms)
            if (auto comp = alg_.compose(hc.p, delta))
              put(coord_row({hc.deg, static_cast<int>(q2), hc.col, *comp}),
                  nt * nf + v, kappa);
      if (hc.deg - 1 >= ka.lo)
        if (const lin_matrix<F>* da = ka.diff_at(hc.deg - 1))
          for (size_t p2 = 0; p2 < ka.dim_at(hc.deg - 1); ++p2)
            for (const auto& [delta, kappa] :
                 (*da)[static_cast<size_t>(hc.col)][p2].terms)
              if (auto comp = alg_.compose(delta, hc.p))
                put(coord_row({hc.deg - 1, hc.row, static_cast<int>(p2), *comp}),
                    nt * nf + v, kappa);
    }
    /* right-hand side from g */
    fvec<F> packed = gsys.pack(g);
    for (size_t v = 0; v < gsys.fvars.size(); ++v)
      if (!F::is_zero(packed[v]))
        (void)coord_row(gsys.fvars.at(v)); /* ensure the row exists */
    size_t nrows = std::max(rows.size(),
                            static_cast<size_t>(base) + eqcoords.size());
    fmat<F> m(nrows, fvec<F>(ncols, F::zero()));
    for (size_t r = 0; r < rows.size(); ++r)
      for (const auto& [col, val] : rows[r]) m[r][static_cast<size_t>(col)] = val;
    fvec<F> rhs(nrows, F::zero());
    for (size_t v = 0; v < gsys.fvars.size(); ++v)
      if (!F::is_zero(packed[v]))
        rhs[static_cast<size_t>(base + eqcoords.find(gsys.fvars.at(v)))] =
            packed[v];
    return consistent<F>(m, rhs);
  }

  /* [g] in span{ sum_l t_l o f_l }: factorization through a direct sum of
   * (possibly distinct) middles, with one component f_l: A -> B_l each and an
   * independent unknown t_l: B_l -> C per summand */
  bool factors_through_sum(const bounded_complex<F>& ka,
                           const std::vector<const bounded_complex<F>*>& kbs,
                           const bounded_complex<F>& kc, const chain_map<F>& g,
                           const std::vector<chain_map<F>>& fs) {
    if (kbs.size() != fs.size())
      throw contract_error("factors_through_sum: arity mismatch");
    hom_system<F> gsys(alg_, ka, kc);
    std::deque<hom_system<F>> tsys;
    for (const bounded_complex<F>* kb : kbs) tsys.emplace_back(alg_, *kb, kc);
    size_t ncols = 0;
    std::vector<size_t> tbase;
    for (const auto& s : tsys) {
      tbase.push_back(ncols);
      ncols += s.fvars.size();
    }
    size_t hbase = ncols;
    ncols += gsys.hvars.size();

    std::vector<std::map<int, typename F::elem>> rows;
    auto put = [&](int row, size_t col, typename F::elem val) {
      if (row >= static_cast<int>(rows.size()))
        rows.resize(static_cast<size_t>(row) + 1);
      auto& cell = rows[static_cast<size_t>(row)][static_cast<int>(col)];
      cell = F::add(cell, val);
    };
    int base = 0;
    for (size_t l = 0; l < tsys.size(); ++l) {
      coord_space teqs;
      fmat<F> tchain = tsys[l].chain_matrix(teqs);
      for (size_t r = 0; r < tchain.size(); ++r)
        for (size_t c = 0; c < tsys[l].fvars.size(); ++c)
          if (!F::is_zero(tchain[r][c]))
            put(base + static_cast<int>(r), tbase[l] + c, tchain[r][c]);
      base += static_cast<int>(tchain.size());
    }
    coord_space eqcoords;
    auto coord_row = [&](const map_coord& c) {
      return base + eqcoords.get_or_add(c);
    };
    for (size_t l = 0; l < tsys.size(); ++l) {
      for (size_t v = 0; v < tsys[l].fvars.size(); ++v) {
        const map_coord& tc = tsys[l].fvars.at(v); /* t_l^deg: B_l -> C */
        for (size_t acol = 0; acol < ka.dim_at(tc.deg); ++acol) {
          lin<F> fe =
              map_entry(fs[l], tc.deg, static_cast<size_t>(tc.col), acol);
          for (const auto& [psi, kappa] : fe.terms)
            if (auto comp = alg_.compose(psi, tc.p))
              put(coord_row({tc.deg, tc.row, static_cast<int>(acol), *comp}),
                  tbase[l] + v, kappa);
        }
      }
    }
    for (size_t v = 0; v < gsys.hvars.size(); ++v) {
      const map_coord& hc = gsys.hvars.at(v); /* h^deg: A^deg -> C^{deg-1} */
      if (const lin_matrix<F>* dc = kc.diff_at(hc.deg - 1))
        for (size_t q2 = 0; q2 < kc.dim_at(hc.deg); ++q2)
          for (const auto& [delta, kappa] :
               (*dc)[q2][static_cast<size_t>(hc.row)].terms)
            if (auto comp = alg_.compose(hc.p, delta))
              put(coord_row({hc.deg, static_cast<int>(q2), hc.col, *comp}),
                  hbase + v, kappa);
      if (hc.deg - 1 >= ka.lo)
        if (const lin_matrix<F>* da = ka.diff_at(hc.deg - 1))
          for (size_t p2 = 0; p2 < ka.dim_at(hc.deg - 1); ++p2)
            for (const auto& [delta, kappa] :
                 (*da)[static_cast<size_t>(hc.col)][p2].terms)
              if (auto comp = alg_.compose(delta, hc.p))
                put(coord_row(
                        {hc.deg - 1, hc.row, static_cast<int>(p2), *comp}),
                    hbase + v, kappa);
    }
    fvec<F> packed = gsys.pack(g);
    for (size_t v = 0; v < gsys.fvars.size(); ++v)
      if (!F::is_zero(packed[v])) (void)coord_row(gsys.fvars.at(v));
    size_t nrows =
        std::max(rows.size(), static_cast<size_t>(base) + eqcoords.size());
    fmat<F> m(nrows, fvec<F>(ncols, F::zero()));
    for (size_t r = 0; r < rows.size(); ++r)
      for (const auto& [col, val] : rows[r])
        m[r][static_cast<size_t>(col)] = val;
    fvec<F> rhs(nrows, F::zero());
    for (size_t v = 0; v < gsys.fvars.size(); ++v)
      if (!F::is_zero(packed[v]))
        rhs[static_cast<size_t>(base + eqcoords.find(gsys.fvars.at(v)))] =
            packed[v];
    return consistent<F>(m, rhs);
  }

  /* shared windows for a chain of maps A_1 -> A_2 -> ... -> A_n; the cut
   * slaving generalizes plan_windows edge by edge */
  std::vector<std::pair<int, int>> plan_chain(
      const std::vector<string_complex>& objs, int margin) const {
    size_t n = objs.size();
    std::vector<std::pair<int, int>> core(n), out(n);
    int lo0 = 0, hi0 = 0;
    for (size_t i = 0; i < n; ++i) {
      core[i] = core_degree_range(alg_, objs[i]);
      lo0 = i ? std::min(lo0, core[i].first) : core[i].first;
      hi0 = i ? std::max(hi0, core[i].second) : core[i].second;
    }
    for (size_t i = n; i-- > 0;)
      out[i].second = objs[i].word.right_tail
                          ? (i + 1 < n ? out[i + 1].second + 1 : hi0 + margin)
                          : core[i].second;
    for (size_t i = 0; i < n; ++i)
      out[i].first = objs[i].word.left_tail
                         ? (i > 0 ? out[i - 1].first - 1 : lo0 - margin)
                         : core[i].first;
    return out;
  }

  /* is some composite of Hom-basis representatives along the chain nonzero
   * in the homotopy quotient? */
  bool composite_nonzero(const std::vector<string_complex>& objs) {
    if (objs.size() < 2)
      throw contract_error("composite_nonzero: need at least two objects");
    bool stab_needed = false;
    for (const string_complex& sc : objs)
      stab_needed = stab_needed || sc.word.left_tail || sc.word.right_tail;
    bool first = composite_nonzero_at(objs, 0);
    if (!stab_needed) return first;
    for (int esc = 1; esc <= max_esc_; ++esc) {
      bool next = composite_nonzero_at(objs, esc);
      if (next == first) return first;
      first = next;
    }
    throw contract_error("composite_nonzero: unstable window");
  }

  /* Isomorphism of string complexes.  Distinct canonical words (or offsets)
   * give non-isomorphic indecomposables, so word equality decides; for
   * perfect complexes the cone route cross-checks. */
  bool is_isomorphic(const string_complex& A, const string_complex& B) {
    homotopy_word ca = canonical_form(alg_, A.word);
    homotopy_word cb = canonical_form(alg_, B.word);
    if (ca == cb && A.offset == B.offset) return true;
    /* the two-sided word is periodic: shifting by the stream period r
     * reproduces the same complex */
    if (ca == cb && ca.species() == species_t::two_sided &&
        (A.offset - B.offset) % alg_.r() == 0)
      return true;
    if (is_compact(ca) && ca.species() == species_t::finite &&
        is_compact(cb) && cb.species() == species_t::finite) {
      bounded_complex<F> ka = realize_bounded<F>(alg_, {ca, A.offset});
      bounded_complex<F> kb = realize_bounded<F>(alg_, {cb, B.offset});
      return isomorphic_bounded(ka, kb);
    }
    return false;
  }

  /* existence of f: K1 -> K2 with contractible cone, searched over small
   * integer combinations of a Hom basis */
  bool isomorphic_bounded(const bounded_complex<F>& k1,
                          const bounded_complex<F>& k2, int max_coeff = 2) {
    if (k1.empty() && k2.empty()) return true;
    if (contractible_bounded(alg_, k1) && contractible_bounded(alg_, k2))
      return true;
    /* cone contractibility only depends on the homotopy class of f, so
     * search small integer combinations of class representatives */
    std::vector<chain_map<F>> reps = basis_on(k1, k2);
    if (reps.empty()) return false;
    if (reps.size() > 6)
      throw contract_error("isomorphic_bounded: hom space too large");
    std::vector<int> lambda(reps.size(), -max_coeff);
    while (true) {
      bool all_zero = true;
      for (int l : lambda) all_zero = all_zero && l == 0;
      if (!all_zero) {
        chain_map<F> f;
        bool nonempty = false;
        for (size_t i = 0; i < reps.size(); ++i) {
          if (lambda[i] == 0) continue;
          for (const auto& [deg, m] : reps[i].comp) {
            auto& target = f.comp[deg];
            if (target.empty())
              target.assign(m.size(),
                            std::vector<lin<F>>(m.empty() ? 0 : m[0].size()));
            for (size_t r = 0; r < m.size(); ++r)
              for (size_t c = 0; c < m[r].size(); ++c)
                target[r][c] = add<F>(
                    target[r][c], scale<F>(m[r][c], F::from_int(lambda[i])));
            nonempty = true;
          }
        }
        if (nonempty) {
          bounded_complex<F> cone = mapping_cone(alg_, k1, k2, f);
          if (contractible_bounded(alg_, cone)) return true;
        }
      }
      size_t i = 0;
      while (i < lambda.size() && lambda[i] == max_coeff) lambda[i++] = -max_coeff;
      if (i == lambda.size()) break;
      ++lambda[i];
    }
    return false;
  }

 private:
  const gentle_presentation& alg_;
  int max_esc_;
  std::map<std::tuple<homotopy_word, homotopy_word, int>, hom_report> memo_;

  int margin_at(int esc) const { return 2 * alg_.r() + esc * alg_.r(); }

  hom_report compute(const string_complex& A, const string_complex& B) {
    bool stab_needed = A.word.left_tail || B.word.right_tail;
    hom_report prev = compute_at(A, B, 0);
    if (!stab_needed) {
      prev.stabilized = true;
      return prev;
    }
    /* the raw (chain, null) pair keeps growing when the window adds
     * null-homotopic diagonal maps, but the quotient dimension settles;
     * demand agreement across three consecutive windows */
    int agreements = 0;
    for (int esc = 1; esc <= max_esc_; ++esc) {
      hom_report next = compute_at(A, B, esc);
      agreements = next.hom_dim == prev.hom_dim ? agreements + 1 : 0;
      if (agreements >= 2) {
        next.stabilized = true;
        return next;
      }
      prev = next;
    }
    throw contract_error("hom_dim: unstable window");
  }

  hom_report compute_at(const string_complex& A, const string_complex& B,
                        int esc) {
    hom_window w = plan_windows(alg_, A, B, margin_at(esc));
    bounded_complex<F> ka = realize_clamped<F>(alg_, A, w.a_lo, w.a_hi);
    bounded_complex<F> kb = realize_clamped<F>(alg_, B, w.b_lo, w.b_hi);
    auto [chain, null] = hom_dims_bounded(alg_, ka, kb);
    hom_report rep;
    rep.dim_chain_maps = chain;
    rep.dim_null_homotopic = null;
    rep.hom_dim = chain - null;
    rep.window = w;
    rep.margin = margin_at(esc);
    if (rep.hom_dim < 0) throw contract_error("hom_dim: negative quotient");
    return rep;
  }

  bool needs_stabilization(const string_complex& A, const string_complex& B,
                           const string_complex& C) const {
    return A.word.left_tail || B.word.left_tail || B.word.right_tail ||
           C.word.right_tail;
  }

  struct triple_window {
    int a_lo, a_hi, b_lo, b_hi, c_lo, c_hi;
  };

  triple_window plan_triple(const string_complex& A, const string_complex& B,
                            const string_complex& C, int margin) const {
    auto [alo, ahi] = core_degree_range(alg_, A);
    auto [blo, bhi] = core_degree_range(alg_, B);
    auto [clo, chi] = core_degree_range(alg_, C);
    int lo0 = std::min({alo, blo, clo}), hi0 = std::max({ahi, bhi, chi});
    triple_window w{};
    w.c_hi = C.word.right_tail ? hi0 + margin : chi;
    w.b_hi = B.word.right_tail ? w.c_hi + 1 : bhi;
    w.a_hi = A.word.right_tail ? w.b_hi + 1 : ahi;
    w.a_lo = A.word.left_tail ? lo0 - margin : alo;
    w.b_lo = B.word.left_tail ? w.a_lo - 1 : blo;
    w.c_lo = C.word.left_tail ? w.b_lo - 1 : clo;
    return w;
  }

  bool factors_all_at(const string_complex& A, const string_complex& B,
                      const string_complex& C, int esc) {
    triple_window w = plan_triple(A, B, C, margin_at(esc));
    bounded_complex<F> ka = realize_clamped<F>(alg_, A, w.a_lo, w.a_hi);
    bounded_complex<F> kb = realize_clamped<F>(alg_, B, w.b_lo, w.b_hi);
    bounded_complex<F> kc = realize_clamped<F>(alg_, C, w.c_lo, w.c_hi);
    /* Hom(A,B) basis on these windows */
    std::vector<chain_map<F>> fs = basis_on(ka, kb);
    std::vector<chain_map<F>> gs = basis_on(ka, kc);
    for (const chain_map<F>& g : gs)
      if (!factors_through(ka, kb, kc, g, fs)) return false;
    return true;
  }

  bool composite_nonzero_at(const std::vector<string_complex>& objs,
                            int esc) {
    std::vector<std::pair<int, int>> win = plan_chain(objs, margin_at(esc));
    std::vector<bounded_complex<F>> ks;
    for (size_t i = 0; i < objs.size(); ++i)
      ks.push_back(
          realize_clamped<F>(alg_, objs[i], win[i].first, win[i].second));
    std::vector<std::vector<chain_map<F>>> bases;
    for (size_t i = 0; i + 1 < ks.size(); ++i) {
      bases.push_back(basis_on(ks[i], ks[i + 1]));
      if (bases.back().empty()) return false;
    }
    /* try all index tuples over the step bases (dims are tiny) */
    std::vector<size_t> pick(bases.size(), 0);
    size_t combos = 1;
    for (const auto& b : bases) combos *= b.size();
    if (combos > 256)
      throw contract_error("composite_nonzero: too many basis combinations");
    while (true) {
      chain_map<F> acc = bases[0][pick[0]];
      for (size_t i = 1; i < bases.size(); ++i)
        acc = compose_maps(alg_, acc, bases[i][pick[i]]);
      if (!null_homotopic_bounded(alg_, ks.front(), ks.back(), acc))
        return true;
      size_t i = 0;
      while (i < pick.size() && pick[i] + 1 == bases[i].size()) pick[i++] = 0;
      if (i == pick.size()) break;
      ++pick[i];
    }
    return false;
  }

  std::vector<chain_map<F>> basis_on(const bounded_complex<F>& ka,
                                     const bounded_complex<F>& kb) {
    std::vector<chain_map<F>> out;
    hom_system<F> sys(alg_, ka, kb);
    if (sys.fvars.size() == 0) return out;
    coord_space eqs;
    fmat<F> e = sys.chain_matrix(eqs);
    fmat<F> kernel = nullspace_of<F>(std::move(e), sys.fvars.size());
    coord_space fcoords;
    for (size_t v = 0; v < sys.fvars.size(); ++v)
      fcoords.get_or_add(sys.fvars.at(v));
    fmat<F> phi = sys.null_matrix(fcoords);
    fmat<F> span;
    size_t ncols = fcoords.size();
    for (size_t c = 0; c < sys.hvars.size(); ++c) {
      fvec<F> row(ncols, F::zero());
      for (size_t r = 0; r < ncols; ++r) row[r] = phi[r][c];
      span.push_back(std::move(row));
    }
    size_t current = rank_of<F>(span);
    for (const fvec<F>& k : kernel) {
      fvec<F> row(ncols, F::zero());
      for (size_t v = 0; v < k.size(); ++v) row[v] = k[v];
      fmat<F> trial = span;
      trial.push_back(row);
      if (rank_of<F>(std::move(trial)) > current) {
        ++current;
        span.push_back(row);
        out.push_back(sys.unpack(k));
      }
    }
    return out;
  }
};

} /* namespace strcx */
