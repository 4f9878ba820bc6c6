#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "strcx/spectrum.hpp"

namespace strcx {

/* one contract check: a short machine-readable id, a human name, the
 * outcome, and a one-line summary (counts on success, first failure
 * otherwise) */
struct verify_result {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
};

struct verify_options {
  int max_word_letters = 12; /* word enumeration cap for the d^2 check */
  int sweep_bound = 4;       /* window for the exhaustive hom sweep */
  int report_bound = 4;      /* window for the stratification report */
  int triangle_span = 3;     /* boundary triangles at |a| <= span */
  int min_triples = 200;     /* factorization triples per algebra */
  int min_suspensions = 50;  /* suspension samples per algebra */
};

namespace verify_detail {

using rat = field_rational;
using fp = field_fp<32003>;

inline std::string coord_pair(const ar_coordinate& a, const ar_coordinate& b) {
  return ar_to_text(a) + " -> " + ar_to_text(b);
}

/* exhaustive pairwise sweep over a coordinate window: hom dimensions,
 * the dimension caps, the hammock/oracle agreement, and self-homs */
struct sweep_summary {
  long pairs = 0;
  long nonzero = 0;
  std::vector<int> dims;
  std::string cap_failure;    /* empty = ok */
  std::string hammock_failure;
  std::string self_failure;
  bool dims_ok() const { return cap_failure.empty() && self_failure.empty(); }
};

template <class F>
sweep_summary hom_sweep(const gentle_presentation& alg, const ar_chart& ch,
                        int bound) {
  sweep_summary out;
  hom_oracle<F> orc(alg);
  std::vector<ar_coordinate> coords = ch.enumerate_window(bound);
  std::vector<string_complex> words;
  words.reserve(coords.size());
  for (const ar_coordinate& c : coords)
    words.push_back(ch.coordinate_to_complex(c));
  int r = alg.r();
  for (size_t a = 0; a < coords.size(); ++a) {
    bool pa = ch.perfect_family(coords[a].family);
    for (size_t b = 0; b < coords.size(); ++b) {
      bool pb = ch.perfect_family(coords[b].family);
      int d = orc.hom_dim(words[a], words[b]);
      ++out.pairs;
      if (d > 0) ++out.nonzero;
      out.dims.push_back(d);
      int cap = (pa && pb && r == 1) ? 2 : 1;
      if (d > cap && out.cap_failure.empty())
        out.cap_failure = coord_pair(coords[a], coords[b]) +
                          " dim=" + std::to_string(d);
      bool h = ch.forward_hammock_member(orc, coords[a], coords[b]);
      if (h != (d > 0) && out.hammock_failure.empty())
        out.hammock_failure = coord_pair(coords[a], coords[b]);
    }
    if (!pa && orc.hom_dim(words[a], words[a]) != 1 &&
        out.self_failure.empty())
      out.self_failure = ar_to_text(coords[a]);
  }
  return out;
}

inline verify_result check_words(const gentle_presentation& alg,
                                 int max_letters) {
  verify_result out{1, "word realization squares to zero", false, ""};
  long count = 0;
  for (const homotopy_word& w : enumerate_words(alg, max_letters)) {
    string_complex sc = realize(w, 0);
    auto [lo, hi] = core_degree_range(alg, sc);
    /* realize_window raises if the differential fails d^2 = 0 */
    realize_window<rat>(alg, sc, lo - 2, hi + 2);
    ++count;
  }
  bool long_ok =
      alg.path_from_arrows(long_letter_ids(alg)).has_value();
  out.passed = count > 0 && long_ok;
  std::ostringstream os;
  os << count << " words realized, long letter "
     << (long_ok ? "nonzero" : "zero");
  out.detail = os.str();
  return out;
}

inline verify_result check_suspension(const gentle_presentation& alg,
                                      const ar_chart& ch, int min_samples) {
  verify_result out{4, "suspension matches the coordinate shift", false, ""};
  long samples = 0;
  std::string bad;
  for (const ar_coordinate& c : ch.enumerate_window(4)) {
    string_complex lhs = ch.coordinate_to_complex(ch.suspend(c));
    string_complex rhs = suspend(ch.coordinate_to_complex(c), 1);
    bool ok;
    if (c.family == ar_family::Zinf)
      /* the two-sided object is r-periodic */
      ok = lhs.word == rhs.word && (lhs.offset - rhs.offset) % alg.r() == 0;
    else
      ok = lhs == rhs;
    ++samples;
    if (!ok && bad.empty()) bad = ar_to_text(c);
  }
  /* pinned index-table instances */
  if (alg.params == algebra_params{2, 3, 1}) {
    if (ch.suspend(ar_X(1, 0, 0)) != ar_X(0, 3, 3) && bad.empty())
      bad = "X:1:0:0 table";
    if (ch.suspend(ar_Y(1, 0, 0)) != ar_Y(0, -1, -1) && bad.empty())
      bad = "Y:1:0:0 table";
  }
  if (alg.params == algebra_params{1, 1, 0}) {
    for (int b = -2; b <= 2; ++b)
      if (ch.suspend(ar_ZLadder(0, b)) != ar_ZLadder(0, b + 1) && bad.empty())
        bad = "ladder table";
  }
  out.passed = bad.empty() && samples >= min_samples;
  out.detail = bad.empty() ? std::to_string(samples) + " samples"
                           : "mismatch at " + bad;
  return out;
}

inline verify_result check_triangles(const gentle_presentation& alg,
                                     const ar_chart& ch, hom_oracle<rat>& orc,
                                     int span) {
  verify_result out{5, "boundary triangles close", false, ""};
  long checked = 0;
  std::string bad;
  for (int k = 0; k < alg.r() && bad.empty(); ++k) {
    for (int a = -span; a <= span && bad.empty(); ++a) {
      int row = 0;
      for (const auto& tri : ch.boundary_triangles(k, a, a)) {
        ++row;
        string_complex A = ch.coordinate_to_complex(tri[0]);
        string_complex B = ch.coordinate_to_complex(tri[1]);
        string_complex C = ch.coordinate_to_complex(tri[2]);
        bool ok;
        if (row <= 4) {
          /* bounded source: the cone realizes the third term */
          auto bb = orc.hom_basis(A, B);
          if (bb.maps.size() != 1) {
            ok = false;
          } else {
            bounded_complex<rat> cone =
                mapping_cone(alg, bb.ka, bb.kb, bb.maps[0]);
            bounded_complex<rat> kc =
                realize_window<rat>(alg, C, cone.lo, cone.hi());
            ok = orc.isomorphic_bounded(cone, kc);
          }
        } else {
          /* unbounded terms: connecting identities instead of the cone */
          ok = orc.hom_dim(A, B) > 0 && orc.hom_dim(B, C) > 0 &&
               !orc.composite_nonzero({A, B, C}) &&
               orc.hom_dim(C, suspend(A, 1)) > 0;
        }
        ++checked;
        if (!ok && bad.empty()) {
          std::ostringstream os;
          os << "k=" << k << " a=" << a << " row " << row;
          bad = os.str();
        }
      }
    }
  }
  out.passed = bad.empty();
  out.detail = bad.empty() ? std::to_string(checked) + " triangles" : bad;
  return out;
}

/* factorization along extended rays and corays: for ordered collinear
 * triples A -> B -> C every map A -> C factors through B.  Collinearity is
 * the alignment hypothesis: nonzero hom alone admits suspension-level
 * mismatches (ray maps composed with socle-type maps vanish) for which no
 * factorization exists. */
inline verify_result check_factorization(const gentle_presentation& alg,
                                         const ar_chart& ch,
                                         hom_oracle<rat>& orc,
                                         int min_triples) {
  verify_result out{6, "maps factor along rays and corays", false, ""};
  long tested = 0;
  std::string bad;
  for (const ar_coordinate& A : ch.enumerate_window(2)) {
    std::vector<std::vector<ar_coordinate>> lines;
    try {
      lines.push_back(ch.extended_ray(A, 12));
    } catch (const parameter_error&) {
    }
    try {
      lines.push_back(ch.extended_coray(A, 12));
    } catch (const parameter_error&) {
    }
    string_complex wa = ch.coordinate_to_complex(A);
    for (const auto& line : lines)
      for (size_t t = 1; t < line.size() && bad.empty(); ++t) {
        /* an r = 1 extended ray can return to its anchor; the wrapped
         * copy sits one suspension level up and is excluded */
        if (line[t] == A) continue;
        for (size_t u = t + 1; u < line.size(); ++u) {
          if (line[u] == A || line[u] == line[t]) continue;
          ++tested;
          if (!orc.factors_all(wa, ch.coordinate_to_complex(line[t]),
                               ch.coordinate_to_complex(line[u]))) {
            bad = ar_to_text(A) + " -> " + ar_to_text(line[t]) + " -> " +
                  ar_to_text(line[u]);
            break;
          }
        }
      }
    if (!bad.empty()) break;
  }
  out.passed = bad.empty() && tested >= min_triples;
  out.detail = bad.empty() ? std::to_string(tested) + " collinear triples"
                           : "does not factor: " + bad;
  return out;
}

inline verify_result check_composites(const gentle_presentation& alg,
                                      const ar_chart& ch,
                                      hom_oracle<rat>& orc) {
  verify_result out{7, "ray and coray composites are nonzero", false, ""};
  std::vector<std::vector<ar_coordinate>> seqs;
  for (int k = 0; k < alg.r(); ++k) {
    if (ch.finite_regime()) {
      seqs.push_back(ch.extended_ray(ar_X(k, 0, 0), 11));
      seqs.push_back(ch.extended_ray(ar_XminusInf(k, 0), 7));
      seqs.push_back(ch.extended_coray(ar_Y(k, 0, 0), 11));
      seqs.push_back(ch.extended_coray(ar_YminusInf(k, 0), 7));
    } else {
      seqs.push_back(ch.extended_ray(ar_X(k, 0, 0), alg.n() - alg.r() + 3));
      seqs.push_back(ch.extended_ray(ar_ZLadder(k, 0), 6));
    }
  }
  long runs = 0;
  std::string bad;
  for (const auto& seq : seqs) {
    for (size_t t = 0; t + 1 < seq.size() && bad.empty(); ++t) {
      size_t e = std::min(seq.size(), t + 6);
      std::vector<string_complex> objs;
      for (size_t q = t; q < e; ++q)
        objs.push_back(ch.coordinate_to_complex(seq[q]));
      ++runs;
      if (!orc.composite_nonzero(objs))
        bad = ar_to_text(seq[t]) + " .. " + ar_to_text(seq[e - 1]);
    }
    if (!bad.empty()) break;
  }
  out.passed = bad.empty();
  out.detail = bad.empty() ? std::to_string(runs) + " composite runs"
                           : "vanishing composite " + bad;
  return out;
}

inline verify_result check_stratification(const ar_chart& ch,
                                          hom_oracle<rat>& orc, int bound) {
  verify_result out{8, "stratification certifies CB = 2", false, ""};
  derivative_report_t rep = derivative_report(ch, orc, bound);
  out.passed = rep.ok() && rep.cb == 2;
  std::ostringstream os;
  if (out.passed)
    os << "CB = 2 (" << rep.points.size() << " points, "
       << rep.stage1.size() << " rank-1 classes, " << rep.stage2.size()
       << " rank-2 functors)";
  else
    os << (rep.failures.empty() ? "cb != 2" : rep.failures.front());
  out.detail = os.str();
  return out;
}

inline verify_result check_regime(const gentle_presentation& alg,
                                  const ar_chart& ch) {
  verify_result out{9, "resolution regime routes the chart", false, ""};
  bool expect_infinite = alg.r() == alg.n();
  bool gldim_ok =
      (alg.gldim_class() == gldim_t::infinite) == expect_infinite;
  int depth = 2 * (alg.n() + alg.m()) + 4;
  bool periodic_any = false, all_decided = true;
  for (int v : alg.q.vertices) {
    resolution_summary s = alg.resolve_simple(v, depth);
    if (s.periodic) periodic_any = true;
    if (!s.periodic && !s.terminated) all_decided = false;
  }
  bool chart_ok = ch.finite_regime() == !expect_infinite;
  bool gate_ok;
  try {
    ch.validate(expect_infinite ? ar_Y(0, 0, 0) : ar_ZLadder(0, 0));
    gate_ok = false; /* the off-regime family must be rejected */
  } catch (const parameter_error&) {
    gate_ok = true;
  }
  out.passed = gldim_ok && all_decided && (periodic_any == expect_infinite) &&
               chart_ok && gate_ok;
  out.detail = out.passed
                   ? std::string(expect_infinite ? "periodic resolutions, "
                                                 : "finite resolutions, ") +
                         (ch.finite_regime() ? "Y/Z chart" : "ladder chart")
                   : "regime disagreement";
  return out;
}

inline verify_result check_beam_limits(const gentle_presentation& alg,
                                       const ar_chart& ch,
                                       hom_oracle<rat>& orc) {
  verify_result out{10, "beam homs stabilize along the ray", false, ""};
  long checks = 0;
  std::string bad;
  for (const ar_coordinate& c : ch.enumerate_window(1)) {
    if (!ch.compact_family(c.family)) continue;
    string_complex C = ch.coordinate_to_complex(c);
    for (int k = 0; k < alg.r() && bad.empty(); ++k) {
      for (int a = -1; a <= 1; ++a) {
        int beam =
            orc.hom_dim(C, ch.coordinate_to_complex(ar_Xinf(k, a)));
        int agree = 0;
        bool found = false;
        for (int j = a; j <= a + 24 && !found; ++j) {
          int d = orc.hom_dim(C, ch.coordinate_to_complex(ar_X(k, a, j)));
          agree = d == beam ? agree + 1 : 0;
          if (agree == 3) found = true;
        }
        ++checks;
        if (!found && bad.empty())
          bad = ar_to_text(c) + " vs " + ar_to_text(ar_Xinf(k, a));
      }
    }
    if (!bad.empty()) break;
  }
  out.passed = bad.empty();
  out.detail = bad.empty() ? std::to_string(checks) + " beams reached"
                           : "no stabilization: " + bad;
  return out;
}

} /* namespace verify_detail */

inline std::vector<verify_result> run_verification(
    const algebra_params& params, const verify_options& opt = {}) {
  using namespace verify_detail;
  gentle_presentation alg = build_algebra(params);
  ar_chart ch(alg);
  hom_oracle<rat> orc(alg);
  std::vector<verify_result> out;

  auto guarded = [&](auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const std::exception& e) {
      verify_result r;
      r.id = out.empty() ? 0 : out.back().id + 1;
      r.name = "exception";
      r.passed = false;
      r.detail = e.what();
      out.push_back(r);
    }
  };

  guarded([&] { return check_words(alg, opt.max_word_letters); });

  sweep_summary rs;
  guarded([&] {
    rs = hom_sweep<rat>(alg, ch, opt.sweep_bound);
    verify_result r{2, "hom dimensions respect the caps", rs.dims_ok(), ""};
    r.detail = rs.dims_ok()
                   ? std::to_string(rs.pairs) + " pairs, " +
                         std::to_string(rs.nonzero) + " nonzero"
                   : (!rs.cap_failure.empty() ? "cap: " + rs.cap_failure
                                              : "self: " + rs.self_failure);
    return r;
  });
  guarded([&] {
    verify_result r{3, "hammocks agree with the oracle",
                    rs.hammock_failure.empty(), ""};
    r.detail = r.passed ? std::to_string(rs.pairs) + " pairs"
                        : "disagreement: " + rs.hammock_failure;
    return r;
  });

  guarded([&] { return check_suspension(alg, ch, opt.min_suspensions); });
  guarded([&] { return check_triangles(alg, ch, orc, opt.triangle_span); });
  guarded([&] { return check_factorization(alg, ch, orc, opt.min_triples); });
  guarded([&] { return check_composites(alg, ch, orc); });
  guarded([&] { return check_stratification(ch, orc, opt.report_bound); });
  guarded([&] { return check_regime(alg, ch); });
  guarded([&] { return check_beam_limits(alg, ch, orc); });

  guarded([&] {
    sweep_summary fs = hom_sweep<fp>(alg, ch, opt.sweep_bound);
    bool same = fs.dims == rs.dims && fs.dims_ok() &&
                fs.hammock_failure.empty();
    verify_result r{11, "prime field agrees with the rationals", same, ""};
    r.detail = same ? std::to_string(fs.pairs) + " dimensions match at p=32003"
                    : "field disagreement";
    return r;
  });

  return out;
}

inline bool all_passed(const std::vector<verify_result>& results) {
  for (const verify_result& r : results)
    if (!r.passed) return false;
  return !results.empty();
}

} /* namespace strcx */
