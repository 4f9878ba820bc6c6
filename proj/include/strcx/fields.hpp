#pragma once

/* Exact coefficient fields for the linear-algebra oracle: arbitrary-precision
 * rationals (the default, no failure modes) and the prime field F_32003 used
 * as a fast cross-check. */

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

namespace strcx {

struct field_rational {
  using elem = boost::multiprecision::cpp_rational;
  static elem zero() { return 0; }
  static elem one() { return 1; }
  static elem from_int(long v) { return v; }
  static bool is_zero(const elem& a) { return a == 0; }
  static elem add(const elem& a, const elem& b) { return a + b; }
  static elem sub(const elem& a, const elem& b) { return a - b; }
  static elem mul(const elem& a, const elem& b) { return a * b; }
  static elem div(const elem& a, const elem& b) { return a / b; }
  static elem neg(const elem& a) { return -a; }
  static std::string to_string(const elem& a) { return a.str(); }
};

template <long P>
struct field_fp {
  using elem = long;
  static constexpr long p = P;
  static elem norm(long v) {
    v %= P;
    return v < 0 ? v + P : v;
  }
  static elem zero() { return 0; }
  static elem one() { return 1; }
  static elem from_int(long v) { return norm(v); }
  static bool is_zero(const elem& a) { return norm(a) == 0; }
  static elem add(const elem& a, const elem& b) { return norm(a + b); }
  static elem sub(const elem& a, const elem& b) { return norm(a - b); }
  static elem mul(const elem& a, const elem& b) { return norm(a * b); }
  static elem neg(const elem& a) { return norm(-a); }
  static elem inv(const elem& a) {
    /* extended Euclid */
    long t = 0, nt = 1, r = P, nr = norm(a);
    while (nr != 0) {
      long q = r / nr;
      long tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    return norm(t);
  }
  static elem div(const elem& a, const elem& b) { return mul(a, inv(b)); }
  static std::string to_string(const elem& a) { return std::to_string(norm(a)); }
};

using field_check = field_fp<32003>;

} /* namespace strcx */
