#pragma once

// RAII wrapper around FFTW's 1d real transforms. One Plans object per
// transform size, shared through a global cache; execution uses the
// new-array interface, so a single plan serves any number of concurrently
// used buffers. All buffers must come from the aligned allocator below.
//
// Plans are created with FFTW_ESTIMATE: planning is then deterministic,
// which experiment reproducibility relies on.

#include <complex>
#include <cstddef>
#include <memory>
#include <vector>

namespace bo::fft {

using cplx = std::complex<double>;

// std::vector allocator backed by fftw_malloc (maximal SIMD alignment)
template <typename T>
struct FftwAllocator {
  using value_type = T;
  FftwAllocator() = default;
  template <typename U>
  FftwAllocator(const FftwAllocator<U>&) {}
  T* allocate(std::size_t n);
  void deallocate(T* p, std::size_t) noexcept;
  bool operator==(const FftwAllocator&) const { return true; }
  bool operator!=(const FftwAllocator&) const { return false; }
};

using RealVec = std::vector<double, FftwAllocator<double>>;
using ComplexVec = std::vector<cplx, FftwAllocator<cplx>>;

class Plans {
 public:
  explicit Plans(std::size_t n);
  ~Plans();
  Plans(const Plans&) = delete;
  Plans& operator=(const Plans&) = delete;

  std::size_t size() const { return n_; }
  std::size_t bins() const { return n_ / 2 + 1; }

  // r2c; input preserved
  void forward(const double* in, cplx* out) const;
  // c2r; input preserved (copied to a scratch internally)
  void backward(const cplx* in, double* out) const;
  // c2r destroying `in` (hot path; avoids the scratch copy)
  void backward_destructive(cplx* in, double* out) const;

  static std::shared_ptr<const Plans> get(std::size_t n);

 private:
  std::size_t n_;
  void* r2c_;  // fftw_plan
  void* c2r_;
};

}  // namespace bo::fft
