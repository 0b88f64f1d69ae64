#pragma once

// Time stepping for u_t + H u_xx + u u_x = 0: exact linear propagator in
// Fourier space, classical RK4 on the dealiased conservative nonlinearity
// -1/2 d_x(u^2) (integrating-factor RK4). The packet's lambda^2-fast phase
// lives entirely in the exact factor, so dt is set by the slow nonlinear
// dynamics.

#include <optional>
#include <vector>

#include "bo/profiles.hpp"
#include "bo/spectral.hpp"

namespace bo {

struct DivergenceError : std::runtime_error {
  std::size_t step_index;
  DivergenceError(std::size_t step, const std::string& what)
      : std::runtime_error(what), step_index(step) {}
};

struct SolverConfig {
  double dt = 0.0;       // 0 => automatic min(dt_max, cfl*dx/(1+max|u0|))
  double dt_max = 1e-3;
  double cfl = 0.5;
  double t_final = 1.0;
  std::vector<double> sample_times;  // sorted, within [0, t_final]
  bool dealias = true;
  // set both to -1 to integrate the time-reversed flow (test hook)
  int dispersion_sign = +1;
  int nonlinear_sign = +1;

  double resolved_dt(double u0_linf, double dx) const;
  void validate() const;
};

struct Conserved {
  double mass = 0.0;      // int u
  double momentum = 0.0;  // int u^2
  double energy = 0.0;    // -1/2 int u H(u_x) - 1/6 int u^3 (flow invariant)
};

Conserved conserved_quantities(const Field& u);

struct TrajectorySample {
  double t;
  Field u;
  Conserved invariants;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;
  bool resolution_warning = false;  // dealias-tail criterion failed mid-run
  std::size_t steps_taken = 0;
  const TrajectorySample& at(double t) const;
};

// one conservative-form nonlinear evaluation: -1/2 d_x dealias(u^2)
Field rhs_nonlinear(const Field& u, bool dealias_on = true);

// single IFRK4 step (negative dt integrates backwards)
Field step(const Field& u, double dt, bool dealias_on = true);

Trajectory evolve(const Field& u0, const SolverConfig& cfg);

// decay diagnostics recorded along the u_low evolution
struct LowSample {
  double t;
  double l2_k0, l2_k1, l2_k2;  // ||d_x^k u_low||_L2, k = 0,1,2
  double dx_linf;              // ||d_x u_low||_Linf
  double drift_l2;             // ||u_low(t) - u_low(0)||_L2
};

struct LowTrajectory {
  Trajectory traj;
  std::vector<LowSample> diagnostics;
};

LowTrajectory evolve_low(const BumpProfile& bp, const PacketSpec& spec,
                         GridPtr grid, const SolverConfig& cfg);

// ---- algebraic soliton oracle ----------------------------------------------
// Under this sign convention the traveling wave is the depression profile
// -4c/(1+c^2(x+ct)^2); its exact periodization is the Poisson-kernel form
// below, an exact periodic traveling wave at c = 1 with speed
// V = sigma*coth(sigma/c), sigma = pi/L (V -> c as L -> inf).
double soliton_speed(double half_length, double c);
Field soliton_field(GridPtr grid, double c, double t,
                    bool exact_speed = true);
Field soliton_time_derivative(GridPtr grid, double c);  // at t = 0

}  // namespace bo
