#include "bo/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace bo::kernels {

namespace {

std::atomic<Backend> g_backend{
#ifdef _OPENMP
    Backend::OpenMP
#else
    Backend::Serial
#endif
};

constexpr std::size_t kChunk = 8192;  // reduction granularity, fixed for determinism

inline std::size_t chunk_count(std::size_t n) { return (n + kChunk - 1) / kChunk; }

}  // namespace

Backend backend() { return g_backend.load(std::memory_order_relaxed); }
void set_backend(Backend b) { g_backend.store(b, std::memory_order_relaxed); }

int thread_count() {
#ifdef _OPENMP
  return backend() == Backend::OpenMP ? omp_get_max_threads() : 1;
#else
  return 1;
#endif
}

// Elementwise loops are identical arithmetic per element in both backends,
// so results are bitwise equal; only the iteration partitioning differs.
#ifdef _OPENMP
#define BO_OMP_FOR _Pragma("omp parallel for schedule(static)")
#else
#define BO_OMP_FOR
#endif

#define BO_ELEMENTWISE(body)                          \
  do {                                                \
    if (backend() == Backend::OpenMP) {               \
      BO_OMP_FOR                                      \
      for (std::ptrdiff_t i = 0;                      \
           i < static_cast<std::ptrdiff_t>(n); ++i) { \
        body;                                         \
      }                                               \
    } else {                                          \
      for (std::ptrdiff_t i = 0;                      \
           i < static_cast<std::ptrdiff_t>(n); ++i) { \
        body;                                         \
      }                                               \
    }                                                 \
  } while (0)

void scale(const double* x, double a, double* y, std::size_t n) {
  BO_ELEMENTWISE(y[i] = a * x[i]);
}

void square(const double* x, double* y, std::size_t n) {
  BO_ELEMENTWISE(y[i] = x[i] * x[i]);
}

void multiply(const double* x, const double* y, double* z, std::size_t n) {
  BO_ELEMENTWISE(z[i] = x[i] * y[i]);
}

void add(const double* x, const double* y, double* z, std::size_t n) {
  BO_ELEMENTWISE(z[i] = x[i] + y[i]);
}

void sub(const double* x, const double* y, double* z, std::size_t n) {
  BO_ELEMENTWISE(z[i] = x[i] - y[i]);
}

void axpby(double a, const double* x, double b, const double* y, double* z,
           std::size_t n) {
  BO_ELEMENTWISE(z[i] = a * x[i] + b * y[i]);
}

void cmul(const cplx* x, const cplx* table, cplx* y, std::size_t n) {
  BO_ELEMENTWISE(y[i] = x[i] * table[i]);
}

void cscale(const cplx* x, double a, cplx* y, std::size_t n) {
  BO_ELEMENTWISE(y[i] = a * x[i]);
}

void czero_tail(cplx* x, std::size_t keep, std::size_t n) {
  if (keep + 1 >= n) return;
  std::fill(x + keep + 1, x + n, cplx{0.0, 0.0});
}

void nonlinear_combine(const cplx* x, const double* k, std::size_t keep,
                       cplx* r, std::size_t n) {
  BO_ELEMENTWISE(r[i] = (static_cast<std::size_t>(i) <= keep)
                            ? cplx(0.0, -0.5 * k[i]) * x[i]
                            : cplx(0.0, 0.0));
  r[n - 1] = cplx(0.0, 0.0);
}

void stage_axpy_mul(const cplx* a, double h, const cplx* k1, const cplx* e,
                    cplx* out, std::size_t n) {
  BO_ELEMENTWISE(out[i] = e[i] * (a[i] + h * k1[i]));
}

void stage_axpy(const cplx* ea, double h, const cplx* k2, cplx* out,
                std::size_t n) {
  BO_ELEMENTWISE(out[i] = ea[i] + h * k2[i]);
}

void rk4_combine(cplx* a, double dt, const cplx* k1, const cplx* k2,
                 const cplx* k3, const cplx* k4, const cplx* e,
                 const cplx* e2, std::size_t n) {
  const double w = dt / 6.0;
  BO_ELEMENTWISE(a[i] = e2[i] * a[i] +
                        w * (e2[i] * k1[i] + 2.0 * e[i] * (k2[i] + k3[i]) +
                             k4[i]));
}

// ---- reductions ----
// Chunk partials are each computed by a plain serial loop; partials are then
// combined in chunk order. Identical result for both backends and any thread
// count.

namespace {

template <typename F>
double chunked_reduce_sum(std::size_t n, F&& per_chunk) {
  const std::size_t nc = chunk_count(n);
  if (nc == 0) return 0.0;
  std::vector<double> partial(nc);
  if (backend() == Backend::OpenMP) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nc); ++c) {
      const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
      partial[c] = per_chunk(lo, std::min(lo + kChunk, n));
    }
  } else {
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t lo = c * kChunk;
      partial[c] = per_chunk(lo, std::min(lo + kChunk, n));
    }
  }
  double acc = 0.0;
  for (double p : partial) acc += p;
  return acc;
}

}  // namespace

double sum(const double* x, std::size_t n) {
  return chunked_reduce_sum(n, [x](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i];
    return s;
  });
}

double sum_sq(const double* x, std::size_t n) {
  return chunked_reduce_sum(n, [x](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i] * x[i];
    return s;
  });
}

double sum_cube(const double* x, std::size_t n) {
  return chunked_reduce_sum(n, [x](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += x[i] * x[i] * x[i];
    return s;
  });
}

double max_abs(const double* x, std::size_t n) {
  const std::size_t nc = chunk_count(n);
  if (nc == 0) return 0.0;
  std::vector<double> partial(nc);
  auto per_chunk = [x](std::size_t lo, std::size_t hi) {
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) m = std::max(m, std::abs(x[i]));
    return m;
  };
  if (backend() == Backend::OpenMP) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (std::ptrdiff_t c = 0; c < static_cast<std::ptrdiff_t>(nc); ++c) {
      const std::size_t lo = static_cast<std::size_t>(c) * kChunk;
      partial[c] = per_chunk(lo, std::min(lo + kChunk, n));
    }
  } else {
    for (std::size_t c = 0; c < nc; ++c) {
      const std::size_t lo = c * kChunk;
      partial[c] = per_chunk(lo, std::min(lo + kChunk, n));
    }
  }
  double m = 0.0;
  for (double p : partial) m = std::max(m, p);
  return m;
}

bool all_finite(const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(x[i])) return false;
  }
  return true;
}

double weighted_mod2(const cplx* c, const double* w, std::size_t n) {
  return chunked_reduce_sum(n, [c, w](std::size_t lo, std::size_t hi) {
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += w[i] * std::norm(c[i]);
    return s;
  });
}

}  // namespace bo::kernels
