// Serial and OpenMP backends must agree bitwise: elementwise kernels apply
// identical per-element arithmetic, reductions share one fixed chunk
// decomposition.

#include "bo/kernels.hpp"

#include <random>
#include <vector>

#include "test_util.hpp"

using namespace bo::kernels;

namespace {

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = d(rng);
  return v;
}

std::vector<cplx> random_cvec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(d(rng), d(rng));
  return v;
}

template <typename F>
void both_backends(F&& f) {
  set_backend(Backend::Serial);
  auto a = f();
  set_backend(Backend::OpenMP);
  auto b = f();
  CHECK(a == b);  // bitwise
  set_backend(Backend::OpenMP);
}

}  // namespace

int main() {
  const std::size_t n = 100003;  // not a chunk multiple on purpose
  const auto x = random_vec(n, 1);
  const auto y = random_vec(n, 2);
  const auto cx = random_cvec(n, 3);
  const auto ct = random_cvec(n, 4);

  both_backends([&] {
    std::vector<double> z(n);
    multiply(x.data(), y.data(), z.data(), n);
    return z;
  });
  both_backends([&] {
    std::vector<double> z(n);
    axpby(0.3, x.data(), -1.7, y.data(), z.data(), n);
    return z;
  });
  both_backends([&] {
    std::vector<cplx> z(n);
    cmul(cx.data(), ct.data(), z.data(), n);
    return z;
  });
  both_backends([&] { return std::vector<double>{sum(x.data(), n)}; });
  both_backends([&] { return std::vector<double>{sum_sq(x.data(), n)}; });
  both_backends([&] { return std::vector<double>{sum_cube(x.data(), n)}; });
  both_backends([&] { return std::vector<double>{max_abs(x.data(), n)}; });
  both_backends([&] {
    std::vector<double> w(n, 0.5);
    return std::vector<double>{weighted_mod2(cx.data(), w.data(), n)};
  });

  // reduction correctness against a compensated reference
  set_backend(Backend::Serial);
  long double ref = 0.0L;
  for (double v : x) ref += static_cast<long double>(v) * v;
  CHECK_REL(sum_sq(x.data(), n), static_cast<double>(ref), 1e-13);

  std::vector<double> with_nan = x;
  CHECK(all_finite(with_nan.data(), n));
  with_nan[n / 2] = std::nan("");
  CHECK(!all_finite(with_nan.data(), n));

  // tail zeroing
  std::vector<cplx> z = cx;
  czero_tail(z.data(), 10, n);
  CHECK(z[10] == cx[10]);
  CHECK(z[11] == cplx(0.0, 0.0));

  return testutil::finish("test_kernels");
}
