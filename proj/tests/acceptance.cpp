#include <cstdio>

#include "refspin/repro.hpp"

// One line per acceptance criterion; nonzero exit on any failure.
int main() {
  int failed = 0;
  for (const auto& c : refspin::run_acceptance()) {
    std::printf("[%s] criterion %d: %s (tol %g) %s [%.3fs]\n", c.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), c.tol,
                c.detail.c_str(), c.seconds);
    failed += c.pass ? 0 : 1;
  }
  std::printf("%d of 10 criteria failed\n", failed);
  return failed == 0 ? 0 : 1;
}
