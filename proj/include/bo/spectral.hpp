#pragma once

// Discrete surrogate for the real line: a periodic grid on [-L, L) with N
// equispaced nodes and the Fourier multiplier calculus on it.
//
// Spectrum convention (all real fields, half-complex storage, bins 0..N/2):
//   c_m = dx * sum_j f(x_j) exp(-i k_m x_j),   k_m = pi*m/L,
// so a constant field has c_0 = 2L and cos(k_1 x) has c_1 = L. Bin N/2 is
// the sign-ambiguous Nyquist mode: odd multipliers (Hilbert transform, odd
// derivatives, the dispersion symbol) treat it as zero, even ones keep it.
//
// Norms:  ||f||_Hs^2 = (1/2L) sum_m (1+k_m^2)^s |c_m|^2  over the full
// ladder m in [-N/2, N/2); at s=0 this is Parseval-consistent with
// dx*sum f^2.

#include <complex>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <vector>

#include "bo/fft.hpp"

namespace bo {

using cplx = std::complex<double>;
using RealVec = fft::RealVec;
using ComplexVec = fft::ComplexVec;

// configuration / precondition violations (CLI maps these to exit 2)
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class SpectralGrid {
 public:
  SpectralGrid(double half_length, std::size_t size);

  double half_length() const { return half_length_; }
  std::size_t size() const { return size_; }
  double dx() const { return 2.0 * half_length_ / static_cast<double>(size_); }
  double node(std::size_t j) const {
    return -half_length_ + dx() * static_cast<double>(j);
  }
  std::size_t bins() const { return size_ / 2 + 1; }
  // k at half-spectrum bin b in [0, N/2]
  double wavenumber(std::size_t b) const {
    return kPi * static_cast<double>(b) / half_length_;
  }
  std::size_t dealias_keep() const { return size_ / 3; }
  std::shared_ptr<const fft::Plans> plans() const;

  bool same_as(const SpectralGrid& o) const {
    return half_length_ == o.half_length_ && size_ == o.size_;
  }

  static constexpr double kPi = 3.14159265358979323846;

 private:
  double half_length_;
  std::size_t size_;
  mutable std::shared_ptr<const fft::Plans> plans_;
};

using GridPtr = std::shared_ptr<const SpectralGrid>;

GridPtr make_grid(double half_length, std::size_t size);

struct NormSpec {
  double s = 0.0;  // Sobolev index, s >= 0
  explicit NormSpec(double s_in) : s(s_in) {
    if (!(s >= 0.0)) throw ConfigError("NormSpec: s < 0 is out of scope");
  }
};

// Real samples on a grid with a lazily cached spectrum. Treat instances as
// immutable values; the lazy cache makes a single instance not safe to share
// across threads, but distinct instances are independent.
class Field {
 public:
  explicit Field(GridPtr grid);                   // zero field
  Field(GridPtr grid, RealVec values);
  static Field from_spectrum(GridPtr grid, const ComplexVec& spectrum);

  const SpectralGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  const RealVec& values() const { return values_; }
  const ComplexVec& spectrum() const;             // physical convention, lazy
  // ladder coefficient c_m, m in [-N/2, N/2)
  cplx coeff(long m) const;

  Field& operator+=(const Field& o);
  Field& operator-=(const Field& o);
  Field& operator*=(double a);

 private:
  GridPtr grid_;
  RealVec values_;
  mutable ComplexVec spectrum_;
  mutable bool have_spectrum_ = false;
};

Field operator+(Field a, const Field& b);
Field operator-(Field a, const Field& b);
Field operator*(double a, Field f);

// transforms (physical convention)
ComplexVec analyze(const Field& f);
Field synthesize(GridPtr grid, const ComplexVec& spectrum);

// Fourier multiplier operators
Field hilbert(const Field& f);                    // symbol -i sgn(k), sgn(0)=0
Field derivative(const Field& f, int order = 1);  // (ik)^order, order <= 4
Field dealias(const Field& f);                    // 2/3 rule: zero |m| > N/3
ComplexVec dealias_spectrum(const SpectralGrid& g, ComplexVec spectrum);

// dispersion multiplier of H d_xx per bin: i*k|k| (zero at bin 0 and Nyquist)
ComplexVec dispersion_symbol(const SpectralGrid& g);
// exact free evolution u_t + H u_xx = 0 over time t
Field linear_evolve(const Field& f, double t);

// norms
double l2_norm(const Field& f);                   // sqrt(dx * sum f^2)
double linf_norm(const Field& f);
double sobolev_norm(const Field& f, const NormSpec& spec);
double mean(const Field& f);                      // (1/2L) int f

// fraction of sum|c_m|^2 carried by modes |m| > N/3
double dealias_tail_fraction(const Field& f);

// zero-pad resample onto a finer grid with the same half-length
Field resample(const Field& f, GridPtr to);
// zero all modes with |k| < k_min (frequency-split diagnostics)
Field highpass(const Field& f, double k_min);

}  // namespace bo
