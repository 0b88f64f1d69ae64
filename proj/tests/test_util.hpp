#pragma once

// Minimal check harness shared by the test executables: counted checks,
// always-on (independent of NDEBUG), nonzero exit on any failure.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

namespace testutil {

inline int g_checks = 0;
inline int g_failures = 0;

inline void report(bool ok, const std::string& what, const char* file,
                   int line) {
  ++g_checks;
  if (!ok) {
    ++g_failures;
    std::fprintf(stderr, "[FAIL] %s:%d  %s\n", file, line, what.c_str());
  }
}

inline bool close_abs(double a, double b, double tol) {
  return std::abs(a - b) <= tol;
}

inline bool close_rel(double a, double b, double tol) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= tol * (scale > 0.0 ? scale : 1.0);
}

inline int finish(const char* name) {
  if (g_failures == 0) {
    std::printf("%s: %d checks passed\n", name, g_checks);
    return 0;
  }
  std::printf("%s: %d/%d checks FAILED\n", name, g_failures, g_checks);
  return 1;
}

}  // namespace testutil

#define CHECK(cond) ::testutil::report((cond), #cond, __FILE__, __LINE__)
#define CHECK_MSG(cond, msg) \
  ::testutil::report((cond), std::string(#cond) + "  [" + (msg) + "]", \
                     __FILE__, __LINE__)
#define CHECK_NEAR(a, b, tol) \
  ::testutil::report(::testutil::close_abs((a), (b), (tol)), \
                     std::string(#a " ~ " #b) + " (abs " + \
                         std::to_string((double)(a)) + " vs " + \
                         std::to_string((double)(b)) + ")", \
                     __FILE__, __LINE__)
#define CHECK_REL(a, b, tol) \
  ::testutil::report(::testutil::close_rel((a), (b), (tol)), \
                     std::string(#a " ~ " #b) + " (rel " + \
                         std::to_string((double)(a)) + " vs " + \
                         std::to_string((double)(b)) + ")", \
                     __FILE__, __LINE__)
#define CHECK_THROWS(expr, ExType)                                     \
  do {                                                                 \
    bool caught = false;                                               \
    try {                                                              \
      (void)(expr);                                                    \
    } catch (const ExType&) {                                          \
      caught = true;                                                   \
    } catch (...) {                                                    \
    }                                                                  \
    ::testutil::report(caught, #expr " throws " #ExType, __FILE__,     \
                       __LINE__);                                      \
  } while (0)
