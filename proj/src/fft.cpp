#include "bo/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>

namespace bo::fft {

namespace {
// FFTW's planner is not thread-safe; execution through the new-array
// interface is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

template <typename T>
T* FftwAllocator<T>::allocate(std::size_t n) {
  void* p = fftw_malloc(n * sizeof(T));
  if (!p) throw std::bad_alloc();
  return static_cast<T*>(p);
}

template <typename T>
void FftwAllocator<T>::deallocate(T* p, std::size_t) noexcept {
  fftw_free(p);
}

template struct FftwAllocator<double>;
template struct FftwAllocator<cplx>;

Plans::Plans(std::size_t n) : n_(n) {
  RealVec real_buf(n);
  ComplexVec cplx_buf(n / 2 + 1);
  std::lock_guard<std::mutex> lock(planner_mutex());
  r2c_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), real_buf.data(),
                              reinterpret_cast<fftw_complex*>(cplx_buf.data()),
                              FFTW_ESTIMATE);
  c2r_ = fftw_plan_dft_c2r_1d(static_cast<int>(n),
                              reinterpret_cast<fftw_complex*>(cplx_buf.data()),
                              real_buf.data(), FFTW_ESTIMATE);
  if (!r2c_ || !c2r_) throw std::runtime_error("fftw plan creation failed");
}

Plans::~Plans() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(r2c_));
  fftw_destroy_plan(static_cast<fftw_plan>(c2r_));
}

void Plans::forward(const double* in, cplx* out) const {
  fftw_execute_dft_r2c(static_cast<fftw_plan>(r2c_), const_cast<double*>(in),
                       reinterpret_cast<fftw_complex*>(out));
}

void Plans::backward(const cplx* in, double* out) const {
  ComplexVec scratch(in, in + bins());
  fftw_execute_dft_c2r(static_cast<fftw_plan>(c2r_),
                       reinterpret_cast<fftw_complex*>(scratch.data()), out);
}

void Plans::backward_destructive(cplx* in, double* out) const {
  fftw_execute_dft_c2r(static_cast<fftw_plan>(c2r_),
                       reinterpret_cast<fftw_complex*>(in), out);
}

std::shared_ptr<const Plans> Plans::get(std::size_t n) {
  static std::mutex cache_mutex;
  static std::map<std::size_t, std::weak_ptr<const Plans>> cache;
  std::lock_guard<std::mutex> lock(cache_mutex);
  auto& slot = cache[n];
  if (auto p = slot.lock()) return p;
  auto p = std::make_shared<const Plans>(n);
  slot = p;
  return p;
}

}  // namespace bo::fft
