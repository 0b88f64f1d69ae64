#include "bo/spectral.hpp"

#include <cmath>

#include "bo/kernels.hpp"

namespace bo {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// physical spectrum <-> raw fftw half-spectrum: c_m = dx * (-1)^m * raw_m
void raw_to_physical(const cplx* raw, cplx* phys, std::size_t bins, double dx) {
  for (std::size_t m = 0; m < bins; ++m) {
    const double sgn = (m & 1) ? -dx : dx;
    phys[m] = sgn * raw[m];
  }
}

void physical_to_raw(const cplx* phys, cplx* raw, std::size_t bins,
                     double inv_2l) {
  for (std::size_t m = 0; m < bins; ++m) {
    const double sgn = (m & 1) ? -inv_2l : inv_2l;
    raw[m] = sgn * phys[m];
  }
}

}  // namespace

SpectralGrid::SpectralGrid(double half_length, std::size_t size)
    : half_length_(half_length), size_(size) {
  if (!(half_length > 0.0)) throw ConfigError("grid: half_length must be > 0");
  if (!is_power_of_two(size) || size < 8)
    throw ConfigError("grid: N must be a power of two >= 8");
}

std::shared_ptr<const fft::Plans> SpectralGrid::plans() const {
  if (!plans_) plans_ = fft::Plans::get(size_);
  return plans_;
}

GridPtr make_grid(double half_length, std::size_t size) {
  return std::make_shared<const SpectralGrid>(half_length, size);
}

Field::Field(GridPtr grid)
    : grid_(std::move(grid)), values_(grid_->size(), 0.0) {}

Field::Field(GridPtr grid, RealVec values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (values_.size() != grid_->size())
    throw ConfigError("field: sample count does not match grid size");
}

Field Field::from_spectrum(GridPtr grid, const ComplexVec& spectrum) {
  Field f = synthesize(grid, spectrum);
  f.spectrum_ = spectrum;
  f.have_spectrum_ = true;
  return f;
}

const ComplexVec& Field::spectrum() const {
  if (!have_spectrum_) {
    spectrum_ = analyze(*this);
    have_spectrum_ = true;
  }
  return spectrum_;
}

cplx Field::coeff(long m) const {
  const auto& c = spectrum();
  const long half = static_cast<long>(grid_->size() / 2);
  if (m < -half || m >= half) throw ConfigError("coeff: mode out of range");
  if (m >= 0) return c[static_cast<std::size_t>(m)];
  if (m == -half) return c[static_cast<std::size_t>(half)];
  return std::conj(c[static_cast<std::size_t>(-m)]);
}

Field& Field::operator+=(const Field& o) {
  if (!grid_->same_as(o.grid())) throw ConfigError("field: grid mismatch");
  kernels::add(values_.data(), o.values_.data(), values_.data(),
               values_.size());
  have_spectrum_ = false;
  return *this;
}

Field& Field::operator-=(const Field& o) {
  if (!grid_->same_as(o.grid())) throw ConfigError("field: grid mismatch");
  kernels::sub(values_.data(), o.values_.data(), values_.data(),
               values_.size());
  have_spectrum_ = false;
  return *this;
}

Field& Field::operator*=(double a) {
  kernels::scale(values_.data(), a, values_.data(), values_.size());
  have_spectrum_ = false;
  return *this;
}

Field operator+(Field a, const Field& b) { return a += b; }
Field operator-(Field a, const Field& b) { return a -= b; }
Field operator*(double a, Field f) { return f *= a; }

ComplexVec analyze(const Field& f) {
  const auto& g = f.grid();
  ComplexVec raw(g.bins());
  g.plans()->forward(f.values().data(), raw.data());
  ComplexVec phys(g.bins());
  raw_to_physical(raw.data(), phys.data(), g.bins(), g.dx());
  return phys;
}

Field synthesize(GridPtr grid, const ComplexVec& spectrum) {
  if (spectrum.size() != grid->bins())
    throw ConfigError("synthesize: spectrum size does not match grid");
  ComplexVec raw(grid->bins());
  physical_to_raw(spectrum.data(), raw.data(), grid->bins(),
                  1.0 / (2.0 * grid->half_length()));
  RealVec out(grid->size());
  grid->plans()->backward_destructive(raw.data(), out.data());
  return Field(grid, std::move(out));
}

namespace {

// apply a diagonal multiplier to the physical spectrum and resynthesize
template <typename Mul>
Field apply_multiplier(const Field& f, Mul&& mul) {
  const auto& g = f.grid();
  ComplexVec c = f.spectrum();
  for (std::size_t m = 0; m < g.bins(); ++m) c[m] *= mul(m);
  return Field::from_spectrum(f.grid_ptr(), c);
}

}  // namespace

Field hilbert(const Field& f) {
  const std::size_t nyq = f.grid().bins() - 1;
  return apply_multiplier(f, [nyq](std::size_t m) {
    if (m == 0 || m == nyq) return cplx{0.0, 0.0};
    return cplx{0.0, -1.0};
  });
}

namespace {

// (ik)^order without std::pow (which is NaN-prone at k=0 for complex args)
inline cplx ik_power(double k, int order) {
  switch (order) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, k};
    case 2: return {-k * k, 0.0};
    case 3: return {0.0, -k * k * k};
    default: return {k * k * k * k, 0.0};
  }
}

}  // namespace

Field derivative(const Field& f, int order) {
  if (order < 0 || order > 4)
    throw ConfigError("derivative: order must be in [0, 4]");
  const auto& g = f.grid();
  const std::size_t nyq = g.bins() - 1;
  const bool odd = (order % 2) != 0;
  return apply_multiplier(f, [&g, nyq, order, odd](std::size_t m) {
    if (odd && m == nyq) return cplx{0.0, 0.0};
    return ik_power(g.wavenumber(m), order);
  });
}

ComplexVec dealias_spectrum(const SpectralGrid& g, ComplexVec spectrum) {
  kernels::czero_tail(spectrum.data(), g.dealias_keep(), g.bins());
  return spectrum;
}

Field dealias(const Field& f) {
  return Field::from_spectrum(f.grid_ptr(),
                              dealias_spectrum(f.grid(), f.spectrum()));
}

ComplexVec dispersion_symbol(const SpectralGrid& g) {
  ComplexVec sym(g.bins(), cplx{0.0, 0.0});
  for (std::size_t m = 1; m + 1 < g.bins(); ++m) {
    const double k = g.wavenumber(m);
    sym[m] = cplx{0.0, k * k};  // i*k|k| with k >= 0 on stored bins
  }
  return sym;
}

Field linear_evolve(const Field& f, double t) {
  const auto sym = dispersion_symbol(f.grid());
  return apply_multiplier(
      f, [&](std::size_t m) { return std::exp(-sym[m] * t); });
}

double l2_norm(const Field& f) {
  const double s = kernels::sum_sq(f.values().data(), f.size());
  return std::sqrt(s * f.grid().dx());
}

double linf_norm(const Field& f) {
  return kernels::max_abs(f.values().data(), f.size());
}

double sobolev_norm(const Field& f, const NormSpec& spec) {
  const auto& g = f.grid();
  const auto& c = f.spectrum();
  std::vector<double> w(g.bins());
  for (std::size_t m = 0; m < g.bins(); ++m) {
    const double k = g.wavenumber(m);
    const double weight = std::pow(1.0 + k * k, spec.s);
    // double-count interior bins for the conjugate ladder partners
    w[m] = (m == 0 || m + 1 == g.bins()) ? weight : 2.0 * weight;
  }
  const double s2 = kernels::weighted_mod2(c.data(), w.data(), g.bins());
  return std::sqrt(s2 / (2.0 * g.half_length()));
}

double mean(const Field& f) {
  return kernels::sum(f.values().data(), f.size()) /
         static_cast<double>(f.size());
}

double dealias_tail_fraction(const Field& f) {
  const auto& g = f.grid();
  const auto& c = f.spectrum();
  const std::size_t keep = g.dealias_keep();
  double total = 0.0, tail = 0.0;
  for (std::size_t m = 0; m < g.bins(); ++m) {
    const double w = (m == 0 || m + 1 == g.bins()) ? 1.0 : 2.0;
    const double p = w * std::norm(c[m]);
    total += p;
    if (m > keep) tail += p;
  }
  return total > 0.0 ? tail / total : 0.0;
}

Field resample(const Field& f, GridPtr to) {
  const auto& from = f.grid();
  if (to->half_length() != from.half_length())
    throw ConfigError("resample: grids must share the half-length");
  if (to->size() < from.size())
    throw ConfigError("resample: target grid must be at least as fine");
  if (to->size() == from.size()) return f;
  const auto& c = f.spectrum();
  ComplexVec cbig(to->bins(), cplx{0.0, 0.0});
  // copy strictly below the source Nyquist; its content is sign-ambiguous
  for (std::size_t m = 0; m + 1 < from.bins(); ++m) cbig[m] = c[m];
  return Field::from_spectrum(std::move(to), cbig);
}

Field highpass(const Field& f, double k_min) {
  return apply_multiplier(f, [&](std::size_t m) {
    return f.grid().wavenumber(m) < k_min ? 0.0 : 1.0;
  });
}

}  // namespace bo
