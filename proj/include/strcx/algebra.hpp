#pragma once

/* Bound-quiver presentation of the gentle algebras Lambda(r,n,m) and exact
 * path arithmetic modulo the r quadratic zero-relations.
 *
 * Vertex set {-m,...,n-1}.  Tail arrows a_{-i}: -i -> -i+1 (1 <= i <= m).
 * Cycle arrows sit at positions t = 0..n-1, going t -> t+1 (mod n); position
 * t is labelled b_t for t <= n-r and c_t otherwise (for r = n the single
 * b-arrow b_0 doubles as c_0).
 *
 * Paths are stored in traversal order (first-traversed arrow first); the
 * product pq traverses q first.  The relation set consists of the traversal
 * pairs (cycle[t], cycle[t+1 mod n]) for n-r <= t <= n-1, which degenerates
 * to b_0*b_{n-1} at r = 1 and to all consecutive cycle pairs at r = n.
 */

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace strcx {

struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct contract_error : std::logic_error {
  using std::logic_error::logic_error;
};

struct algebra_params {
  int r = 1;
  int n = 1;
  int m = 0;
  bool operator==(const algebra_params&) const = default;
};

struct arrow {
  int id = -1;
  std::string label;
  int src = 0;
  int tgt = 0;
};

struct quiver {
  std::vector<int> vertices;
  std::vector<arrow> arrows; /* arrows[i].id == i */
};

/* A (possibly trivial) path.  `base` is the source vertex; `arrows` lists
 * arrow ids in traversal order.  Only nonzero paths of the algebra are ever
 * represented; zero is std::nullopt at the API level. */
struct path {
  int base = 0;
  std::vector<int> arrows;

  bool trivial() const { return arrows.empty(); }
  int length() const { return static_cast<int>(arrows.size()); }
  bool operator==(const path&) const = default;
  bool operator<(const path& o) const {
    if (base != o.base) return base < o.base;
    return arrows < o.arrows;
  }
};

enum class gldim_t { finite, infinite };

struct resolution_summary {
  /* syzygy_vertices[k] = vertices of the projective cover at resolution
   * step k (step 0 covers the simple itself). */
  std::vector<std::vector<int>> syzygy_vertices;
  bool periodic = false;
  bool terminated = false; /* resolution reached zero within the depth */
};

class gentle_presentation {
 public:
  algebra_params params;
  quiver q;
  /* zero-relations as traversal pairs: (first arrow, second arrow) */
  std::set<std::pair<int, int>> relations;

  int r() const { return params.r; }
  int n() const { return params.n; }
  int m() const { return params.m; }

  bool is_vertex(int v) const { return v >= -params.m && v <= params.n - 1; }

  /* arrow id of cycle position t (0 <= t < n); ids 0..n-1 are the cycle */
  int cycle_arrow(int t) const { return t; }
  /* arrow id of a_{-i} (1 <= i <= m) */
  int tail_arrow(int i) const { return params.n - 1 + i; }

  const arrow& arr(int id) const { return q.arrows.at(static_cast<size_t>(id)); }

  int src(const path& p) const {
    return p.trivial() ? p.base : arr(p.arrows.front()).src;
  }
  int tgt(const path& p) const {
    return p.trivial() ? p.base : arr(p.arrows.back()).tgt;
  }

  path trivial_path(int v) const {
    if (!is_vertex(v)) throw parameter_error("trivial_path: unknown vertex");
    return path{v, {}};
  }

  path arrow_path(int id) const {
    const arrow& a = arr(id);
    return path{a.src, {id}};
  }

  /* path from a traversal-ordered arrow sequence; throws if ill-formed,
   * returns nullopt if the sequence hits a relation */
  std::optional<path> path_from_arrows(const std::vector<int>& ids) const {
    if (ids.empty()) throw parameter_error("path_from_arrows: empty");
    path p{arr(ids.front()).src, ids};
    for (size_t i = 0; i + 1 < ids.size(); ++i) {
      if (arr(ids[i]).tgt != arr(ids[i + 1]).src)
        throw parameter_error("path_from_arrows: not composable");
    }
    if (!nonzero(p)) return std::nullopt;
    return p;
  }

  /* nonzero <=> no relation occurs as a (consecutive) subpath */
  bool nonzero(const path& p) const {
    for (size_t i = 0; i + 1 < p.arrows.size(); ++i)
      if (relations.count({p.arrows[i], p.arrows[i + 1]})) return false;
    return true;
  }

  /* pq: q traversed first; nullopt encodes zero */
  std::optional<path> compose(const path& p, const path& q) const {
    if (tgt(q) != src(p)) return std::nullopt;
    if (p.trivial()) return q;
    if (q.trivial()) return p;
    path out{q.base, q.arrows};
    out.arrows.insert(out.arrows.end(), p.arrows.begin(), p.arrows.end());
    if (!nonzero(out)) return std::nullopt;
    return out;
  }

  /* all nonzero paths with source v = basis of the projective Lambda e_v,
   * ordered by (length, arrow sequence) */
  std::vector<path> projective_basis(int v) const {
    if (!is_vertex(v)) throw parameter_error("projective_basis: unknown vertex");
    std::vector<path> basis{trivial_path(v)};
    std::vector<path> frontier = basis;
    while (!frontier.empty()) {
      std::vector<path> next;
      for (const path& p : frontier) {
        for (const arrow& a : q.arrows) {
          if (a.src != tgt(p)) continue;
          path ext = p;
          ext.arrows.push_back(a.id);
          if (!p.trivial() &&
              relations.count({p.arrows.back(), a.id}))
            continue;
          next.push_back(ext);
        }
      }
      basis.insert(basis.end(), next.begin(), next.end());
      frontier = std::move(next);
    }
    std::sort(basis.begin(), basis.end(), [](const path& a, const path& b) {
      if (a.length() != b.length()) return a.length() < b.length();
      return a.arrows < b.arrows;
    });
    return basis;
  }

  /* basis of Hom(P_u, P_v): paths v -> u (maps act by right multiplication) */
  std::vector<path> hom_path_basis(int u, int v) const {
    std::vector<path> out;
    for (const path& p : projective_basis(v))
      if (tgt(p) == u) out.push_back(p);
    return out;
  }

  /* For a monomial algebra the first syzygy of the simple at v is the direct
   * sum of the uniserial modules Lambda*alpha over arrows alpha out of v, and
   * Omega(Lambda*alpha) = Lambda*beta for the unique beta with (alpha,beta) a
   * relation (zero if none).  Syzygy states are therefore arrow multisets
   * advanced by a deterministic successor map. */
  std::optional<int> syzygy_successor(int arrow_id) const {
    for (const auto& rel : relations)
      if (rel.first == arrow_id) return rel.second;
    return std::nullopt;
  }

  resolution_summary resolve_simple(int v, int depth) const {
    if (!is_vertex(v)) throw parameter_error("resolve_simple: unknown vertex");
    if (depth < 1) throw parameter_error("resolve_simple: depth < 1");
    resolution_summary out;
    out.syzygy_vertices.push_back({v});
    std::multiset<int> state;
    for (const arrow& a : q.arrows)
      if (a.src == v) state.insert(a.id);
    std::set<std::multiset<int>> seen;
    for (int k = 1; k <= depth; ++k) {
      if (state.empty()) {
        out.terminated = true;
        break;
      }
      if (!seen.insert(state).second) {
        out.periodic = true;
        break;
      }
      std::vector<int> cover;
      for (int id : state) cover.push_back(arr(id).tgt);
      out.syzygy_vertices.push_back(cover);
      std::multiset<int> next;
      for (int id : state)
        if (auto s = syzygy_successor(id)) next.insert(*s);
      state = std::move(next);
    }
    return out;
  }

  gldim_t gldim_class() const {
    /* states cycle or die within #arrows steps; 2(n+m)+4 is a safe depth */
    int depth = 2 * (params.n + params.m) + 4;
    for (int v : q.vertices) {
      resolution_summary s = resolve_simple(v, depth);
      if (s.periodic) return gldim_t::infinite;
      if (!s.terminated)
        throw contract_error("resolve_simple: neither periodic nor terminated");
    }
    return gldim_t::finite;
  }

  /* letter v[t] of the master period, t = 0..r-1:
   * (c_{n-1}, c_{n-2}, ..., c_{n-r+1}, b_{n-r}...b_0) */
  path period_letter(int t) const {
    int rr = params.r, nn = params.n;
    if (t < 0 || t >= rr) throw parameter_error("period_letter: bad index");
    if (t < rr - 1) return arrow_path(cycle_arrow(nn - 1 - t));
    std::vector<int> ids;
    for (int i = 0; i <= nn - rr; ++i) ids.push_back(cycle_arrow(i));
    return *path_from_arrows(ids);
  }

  /* the a-part a_{-1}...a_{-depth} as a path -depth -> 0 (depth >= 1) */
  path tail_path(int depth) const {
    if (depth < 1 || depth > params.m)
      throw parameter_error("tail_path: bad depth");
    std::vector<int> ids;
    for (int i = depth; i >= 1; --i) ids.push_back(tail_arrow(i));
    return *path_from_arrows(ids);
  }

  /* the long letter b_{n-r}...b_0 a_{-1}...a_{-m} */
  path long_letter() const {
    path b = period_letter(params.r - 1);
    if (params.m == 0) return b;
    return *compose(b, tail_path(params.m));
  }

  std::string format_path(const path& p) const {
    if (p.trivial()) return "e" + std::to_string(p.base);
    std::string s;
    /* product notation: last-traversed factor first */
    for (auto it = p.arrows.rbegin(); it != p.arrows.rend(); ++it) {
      if (!s.empty()) s += "*";
      s += arr(*it).label;
    }
    return s;
  }
};

inline gentle_presentation build_algebra(algebra_params params) {
  if (params.r < 1 || params.n < params.r || params.m < 0)
    throw parameter_error("build_algebra: need 1 <= r <= n, m >= 0");
  gentle_presentation alg;
  alg.params = params;
  for (int v = -params.m; v <= params.n - 1; ++v) alg.q.vertices.push_back(v);
  for (int t = 0; t < params.n; ++t) {
    arrow a;
    a.id = t;
    a.src = t;
    a.tgt = (t + 1) % params.n;
    a.label = (t <= params.n - params.r ? "b" : "c") + std::to_string(t);
    alg.q.arrows.push_back(a);
  }
  for (int i = 1; i <= params.m; ++i) {
    arrow a;
    a.id = params.n - 1 + i;
    a.src = -i;
    a.tgt = -i + 1;
    a.label = "a-" + std::to_string(i);
    alg.q.arrows.push_back(a);
  }
  for (int t = params.n - params.r; t <= params.n - 1; ++t)
    alg.relations.insert({t, (t + 1) % params.n});
  return alg;
}

} /* namespace strcx */
