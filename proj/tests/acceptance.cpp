#include <cstdio>

#include "strcx/verify.hpp"

using namespace strcx;

/* one line per criterion per algebra; nonzero exit on any failure */
int main() {
  const std::vector<algebra_params> algebras = {
      {1, 1, 0}, {2, 2, 0}, {3, 3, 1}, {1, 2, 0}, {2, 3, 0}, {2, 3, 1}};
  bool ok = true;
  for (const algebra_params& p : algebras) {
    std::printf("algebra (%d,%d,%d)\n", p.r, p.n, p.m);
    std::vector<verify_result> results = run_verification(p);
    for (const verify_result& r : results) {
      std::printf("  [%s] %2d %s — %s\n", r.passed ? "pass" : "FAIL", r.id,
                  r.name.c_str(), r.detail.c_str());
      ok = ok && r.passed;
    }
  }
  std::printf("%s\n", ok ? "acceptance: all criteria passed"
                         : "acceptance: FAILURES");
  return ok ? 0 : 1;
}
