#include "bo/solver.hpp"

#include <algorithm>
#include <cmath>

#include "bo/kernels.hpp"

namespace bo {

namespace {

// IFRK4 machinery on raw fftw half-spectra (unnormalized); all diagonal
// multipliers commute with the physical-convention phase/scale factors.
class IfRk4 {
 public:
  IfRk4(GridPtr grid, bool dealias_on, int dispersion_sign, int nonlinear_sign)
      : grid_(std::move(grid)),
        plans_(grid_->plans()),
        n_(grid_->size()),
        bins_(grid_->bins()),
        keep_(dealias_on ? grid_->dealias_keep() : bins_ - 1),
        disp_sign_(dispersion_sign),
        nl_sign_(nonlinear_sign),
        k_(bins_),
        e_(bins_),
        e2_(bins_),
        a_(bins_),
        stage_(bins_),
        k1_(bins_),
        k2_(bins_),
        k3_(bins_),
        k4_(bins_),
        prod_(bins_),
        u_(n_),
        w_(n_) {
    for (std::size_t m = 0; m < bins_; ++m) k_[m] = grid_->wavenumber(m);
  }

  void seed(const Field& u0) {
    plans_->forward(u0.values().data(), a_.data());
    dt_tables_ = 0.0;
  }

  Field field() const {
    ComplexVec tmp = a_;
    RealVec out(n_);
    plans_->backward_destructive(tmp.data(), out.data());
    const double inv = 1.0 / static_cast<double>(n_);
    kernels::scale(out.data(), inv, out.data(), n_);
    return Field(grid_, std::move(out));
  }

  bool finite() const {
    return kernels::all_finite(reinterpret_cast<const double*>(a_.data()),
                               2 * bins_);
  }

  void step(double dt) {
    if (dt != dt_tables_) build_tables(dt);
    const double h2 = 0.5 * dt;
    nonlinear(a_, k1_);
    kernels::stage_axpy_mul(a_.data(), h2, k1_.data(), e_.data(),
                            stage_.data(), bins_);  // E(a + dt/2 k1)
    nonlinear(stage_, k2_);
    kernels::cmul(a_.data(), e_.data(), stage_.data(), bins_);  // Ea
    kernels::stage_axpy(stage_.data(), h2, k2_.data(), stage_.data(), bins_);
    nonlinear(stage_, k3_);
    kernels::cmul(a_.data(), e2_.data(), stage_.data(), bins_);  // E2 a
    kernels::cmul(k3_.data(), e_.data(), k4_.data(), bins_);     // E k3 (tmp)
    kernels::stage_axpy(stage_.data(), dt, k4_.data(), stage_.data(), bins_);
    nonlinear(stage_, k4_);
    kernels::rk4_combine(a_.data(), dt, k1_.data(), k2_.data(), k3_.data(),
                         k4_.data(), e_.data(), e2_.data(), bins_);
  }

 private:
  void build_tables(double dt) {
    for (std::size_t m = 0; m < bins_; ++m) {
      const bool active = m > 0 && m + 1 < bins_;
      const double th = active ? disp_sign_ * k_[m] * k_[m] * dt : 0.0;
      e2_[m] = cplx{std::cos(th), -std::sin(th)};  // exp(-i k^2 dt)
      const double th2 = 0.5 * th;
      e_[m] = cplx{std::cos(th2), -std::sin(th2)};
    }
    dt_tables_ = dt;
  }

  // r = -s_nl/2 * i k dealias(fft(u^2)), u = ifft(spec)/n
  void nonlinear(const ComplexVec& spec, ComplexVec& r) {
    prod_ = spec;
    plans_->backward_destructive(prod_.data(), u_.data());
    const double inv = 1.0 / static_cast<double>(n_);
    kernels::scale(u_.data(), inv, u_.data(), n_);
    kernels::square(u_.data(), w_.data(), n_);
    plans_->forward(w_.data(), prod_.data());
    kernels::nonlinear_combine(prod_.data(), k_.data(), keep_, r.data(),
                               bins_);
    // nonlinear_sign -1 integrates the reversed flow, 0 disables the term
    if (nl_sign_ != 1)
      kernels::cscale(r.data(), static_cast<double>(nl_sign_), r.data(),
                      bins_);
  }

  GridPtr grid_;
  std::shared_ptr<const fft::Plans> plans_;
  std::size_t n_, bins_, keep_;
  int disp_sign_, nl_sign_;
  std::vector<double> k_;
  ComplexVec e_, e2_, a_, stage_, k1_, k2_, k3_, k4_, prod_;
  RealVec u_, w_;
  double dt_tables_ = 0.0;
};

}  // namespace

double SolverConfig::resolved_dt(double u0_linf, double dx) const {
  if (dt > 0.0) return dt;
  return std::min(dt_max, cfl * dx / (1.0 + u0_linf));
}

void SolverConfig::validate() const {
  if (!(t_final > 0.0)) throw ConfigError("solver: t_final must be > 0");
  if (dt < 0.0) throw ConfigError("solver: dt must be >= 0");
  if (dt > t_final) throw ConfigError("solver: requires 0 < dt <= T");
  for (std::size_t i = 0; i < sample_times.size(); ++i) {
    const double t = sample_times[i];
    if (t < 0.0 || t > t_final + 1e-12)
      throw ConfigError("solver: sample times must lie in [0, T]");
    if (i > 0 && t <= sample_times[i - 1])
      throw ConfigError("solver: sample times must be strictly increasing");
  }
}

Conserved conserved_quantities(const Field& u) {
  const auto& g = u.grid();
  Conserved c;
  c.mass = kernels::sum(u.values().data(), u.size()) * g.dx();
  c.momentum = kernels::sum_sq(u.values().data(), u.size()) * g.dx();
  // <u, H u_x> via Parseval: (1/2L) sum |k| |c_m|^2 over the full ladder
  const auto& spec = u.spectrum();
  std::vector<double> w(g.bins());
  for (std::size_t m = 0; m < g.bins(); ++m) {
    const double dbl = (m == 0 || m + 1 == g.bins()) ? 1.0 : 2.0;
    w[m] = dbl * g.wavenumber(m);
  }
  const double quad =
      kernels::weighted_mod2(spec.data(), w.data(), g.bins()) /
      (2.0 * g.half_length());
  const double cubic = kernels::sum_cube(u.values().data(), u.size()) * g.dx();
  c.energy = -0.5 * quad - cubic / 6.0;
  return c;
}

const TrajectorySample& Trajectory::at(double t) const {
  for (const auto& s : samples)
    if (std::abs(s.t - t) < 1e-9) return s;
  throw ConfigError("trajectory: no sample at requested time");
}

Field rhs_nonlinear(const Field& u, bool dealias_on) {
  const auto& g = u.grid();
  // square in physical space, transform, then -1/2 ik with the 2/3 mask
  RealVec w(g.size());
  kernels::square(u.values().data(), w.data(), g.size());
  Field sq(u.grid_ptr(), std::move(w));
  ComplexVec cs = sq.spectrum();
  const std::size_t keep = dealias_on ? g.dealias_keep() : g.bins() - 1;
  ComplexVec r(g.bins());
  std::vector<double> k(g.bins());
  for (std::size_t m = 0; m < g.bins(); ++m) k[m] = g.wavenumber(m);
  kernels::nonlinear_combine(cs.data(), k.data(), keep, r.data(), g.bins());
  return Field::from_spectrum(u.grid_ptr(), r);
}

Field step(const Field& u, double dt, bool dealias_on) {
  const bool back = dt < 0.0;
  IfRk4 rk(u.grid_ptr(), dealias_on, back ? -1 : +1, back ? -1 : +1);
  rk.seed(u);
  rk.step(std::abs(dt));
  return rk.field();
}

namespace {

Trajectory run_evolve(IfRk4& rk, const Field& u0, const SolverConfig& cfg) {
  cfg.validate();
  const auto& g = u0.grid();
  if (dealias_tail_fraction(u0) > 1e-8)
    throw ConfigError(
        "evolve: initial datum unresolved (dealias band carries > 1e-8 of "
        "the L2 mass)");
  const double dt = cfg.resolved_dt(linf_norm(u0), g.dx());

  Trajectory traj;
  rk.seed(u0);
  double t = 0.0;
  std::size_t steps = 0;
  auto record = [&](double at) {
    Field u = rk.field();
    if (dealias_tail_fraction(u) > 1e-8) traj.resolution_warning = true;
    Conserved inv = conserved_quantities(u);
    traj.samples.push_back({at, std::move(u), inv});
  };

  for (double target : cfg.sample_times) {
    if (target <= 1e-14) {
      record(0.0);
      continue;
    }
    const double span = target - t;
    auto nfull = static_cast<std::size_t>(
        std::floor(span / dt * (1.0 + 1e-12)));
    double rem = span - static_cast<double>(nfull) * dt;
    if (rem < 1e-12) rem = 0.0;
    for (std::size_t i = 0; i < nfull; ++i) {
      rk.step(dt);
      ++steps;
      if (!rk.finite())
        throw DivergenceError(steps, "evolve: NaN detected at step " +
                                         std::to_string(steps));
    }
    if (rem > 0.0) {
      rk.step(rem);
      ++steps;
      if (!rk.finite())
        throw DivergenceError(steps, "evolve: NaN detected at step " +
                                         std::to_string(steps));
    }
    t = target;
    record(target);
  }
  traj.steps_taken = steps;
  return traj;
}

}  // namespace

Trajectory evolve(const Field& u0, const SolverConfig& cfg) {
  IfRk4 rk(u0.grid_ptr(), cfg.dealias, cfg.dispersion_sign,
           cfg.nonlinear_sign);
  return run_evolve(rk, u0, cfg);
}

LowTrajectory evolve_low(const BumpProfile& bp, const PacketSpec& spec,
                         GridPtr grid, const SolverConfig& cfg) {
  LowTrajectory out;
  Field u0 = low_bump(bp, spec, grid);
  out.traj = evolve(u0, cfg);
  const Field& ref = u0;
  for (const auto& s : out.traj.samples) {
    LowSample d;
    d.t = s.t;
    d.l2_k0 = l2_norm(s.u);
    Field d1 = derivative(s.u, 1);
    d.l2_k1 = l2_norm(d1);
    d.l2_k2 = l2_norm(derivative(s.u, 2));
    d.dx_linf = linf_norm(d1);
    d.drift_l2 = l2_norm(s.u - ref);
    out.diagnostics.push_back(d);
  }
  return out;
}

// ---- soliton ----------------------------------------------------------------

double soliton_speed(double half_length, double c) {
  const double sigma = SpectralGrid::kPi / half_length;
  return sigma / std::tanh(sigma / c);
}

namespace {
// Poisson-kernel periodization of 4c/(1+c^2 x^2):
//   sum_images = (2 sigma / c) (1 - r^2) / (1 - 2 r cos(sigma x) + r^2),
// with r = exp(-sigma/c)
inline double poisson_profile(double theta, double r) {
  return (1.0 - r * r) / (1.0 - 2.0 * r * std::cos(theta) + r * r);
}
}  // namespace

Field soliton_field(GridPtr grid, double c, double t, bool exact_speed) {
  const double L = grid->half_length();
  const double sigma = SpectralGrid::kPi / L;
  const double r = std::exp(-sigma / c);
  const double v = exact_speed ? soliton_speed(L, c) : c;
  const double amp = -2.0 * sigma / c;
  RealVec vals(grid->size());
  for (std::size_t j = 0; j < vals.size(); ++j) {
    const double th = sigma * (grid->node(j) + v * t);  // left-moving
    vals[j] = amp * poisson_profile(th, r);
  }
  return Field(std::move(grid), std::move(vals));
}

Field soliton_time_derivative(GridPtr grid, double c) {
  const double L = grid->half_length();
  const double sigma = SpectralGrid::kPi / L;
  const double r = std::exp(-sigma / c);
  const double v = soliton_speed(L, c);
  const double amp = -2.0 * sigma / c;
  RealVec vals(grid->size());
  for (std::size_t j = 0; j < vals.size(); ++j) {
    const double th = sigma * grid->node(j);
    const double den = 1.0 - 2.0 * r * std::cos(th) + r * r;
    // d/dt at t=0 of amp*(1-r^2)/den(theta + sigma v t)
    vals[j] = -amp * (1.0 - r * r) * 2.0 * r * std::sin(th) * sigma * v /
              (den * den);
  }
  return Field(std::move(grid), std::move(vals));
}

}  // namespace bo
