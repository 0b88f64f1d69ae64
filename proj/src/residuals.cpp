#include "bo/residuals.hpp"

#include <cmath>

#include "bo/kernels.hpp"

namespace bo {

namespace {

struct PacketSamples {
  RealVec env;    // a * phi_lambda  (a = lambda^(-(1+delta)/2 - s) > 0)
  RealVec cosp;   // cos(Phi)
  RealVec sinp;   // sin(Phi)
};

PacketSamples sample_packet(const BumpProfile& bp, const PacketSpec& spec,
                            const SpectralGrid& g, double t) {
  PacketSamples p{RealVec(g.size()), RealVec(g.size()), RealVec(g.size())};
  const double sc = spec.scale();
  const double a = spec.packet_amplitude();
  const double lam = spec.lambda;
  const double ph0 = -lam * lam * t + spec.omega * t + spec.alpha;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.node(j);
    p.env[j] = a * bp.phi(x / sc);
    const double ph = ph0 + lam * x;
    p.cosp[j] = std::cos(ph);
    p.sinp[j] = std::sin(ph);
  }
  return p;
}

Field pointwise(GridPtr g, RealVec v) { return Field(std::move(g), std::move(v)); }

// common F2..F5 assembly; `low_now`/`low_init` are the low-frequency part at
// times t and 0 (the static bump twice for ap1)
ResidualParts assemble(const BumpProfile& bp, const PacketSpec& spec,
                       GridPtr grid, double t, const Field& low_now,
                       const Field& low_init, bool with_f1) {
  spec.validate();
  const auto& g = *grid;
  const std::size_t n = g.size();
  const double lam = spec.lambda;
  PacketSamples p = sample_packet(bp, spec, g, t);

  // u_h = -env cos(Phi)
  RealVec uh(n), tmp(n);
  for (std::size_t j = 0; j < n; ++j) uh[j] = -p.env[j] * p.cosp[j];
  Field f_uh = pointwise(grid, uh);

  // F3 = u_h d_x u_h
  Field duh = derivative(f_uh, 1);
  RealVec f3(n);
  kernels::multiply(f_uh.values().data(), duh.values().data(), f3.data(), n);

  // F4 = H d_xx u_h - lambda^2 env sin(Phi)   (commutator against the
  // real-line value of H d_xx cos Phi)
  Field hd2uh = hilbert(derivative(f_uh, 2));
  RealVec f4(n);
  for (std::size_t j = 0; j < n; ++j)
    f4[j] = hd2uh.values()[j] - lam * lam * p.env[j] * p.sinp[j];

  // F2 = -cos(Phi) d_x { low * a phi_lambda };  a phi_lambda = env
  RealVec prod(n);
  kernels::multiply(low_now.values().data(), p.env.data(), prod.data(), n);
  Field dprod = derivative(pointwise(grid, prod), 1);
  RealVec f2(n);
  for (std::size_t j = 0; j < n; ++j)
    f2[j] = -p.cosp[j] * dprod.values()[j];

  // F5 = env (omega + lambda low_now) sin(Phi); for ap1 the plateau identity
  // phi*phitilde = phi cancels it exactly, for ap2 this equals
  // lambda^((1-delta)/2 - s) (u_low(t) - u_low(0)) phi_lambda sin(Phi)
  RealVec f5(n);
  if (with_f1) {
    for (std::size_t j = 0; j < n; ++j)
      f5[j] = p.env[j] * (spec.omega + lam * low_now.values()[j]) * p.sinp[j];
  } else {
    for (std::size_t j = 0; j < n; ++j)
      f5[j] = p.env[j] * lam *
              (low_now.values()[j] - low_init.values()[j]) * p.sinp[j];
  }

  ResidualParts parts{Field(grid), std::nullopt, pointwise(grid, f2),
                      pointwise(grid, f3), pointwise(grid, f4),
                      pointwise(grid, f5)};

  if (with_f1) {
    // F1 = H d_xx U + U d_x U for the static low bump
    Field du = derivative(low_now, 1);
    RealVec f1(n);
    Field hd2u = hilbert(derivative(low_now, 2));
    for (std::size_t j = 0; j < n; ++j)
      f1[j] = hd2u.values()[j] + low_now.values()[j] * du.values()[j];
    parts.f1 = pointwise(grid, f1);

    // direct evaluation: analytic d_t u_ap plus spectral space operators
    RealVec uap(n);
    kernels::add(low_now.values().data(), f_uh.values().data(), uap.data(), n);
    Field f_uap = pointwise(grid, uap);
    Field duap = derivative(f_uap, 1);
    Field hd2uap = hilbert(derivative(f_uap, 2));
    RealVec tot(n);
    for (std::size_t j = 0; j < n; ++j) {
      const double dt_uap =
          -p.env[j] * (lam * lam - spec.omega) * p.sinp[j];
      tot[j] = dt_uap + hd2uap.values()[j] +
               f_uap.values()[j] * duap.values()[j];
    }
    parts.total = pointwise(grid, tot);

    RealVec sum(n);
    for (std::size_t j = 0; j < n; ++j)
      sum[j] = parts.f1->values()[j] + f2[j] + f3[j] + f4[j] + f5[j];
    kernels::sub(parts.total.values().data(), sum.data(), tmp.data(), n);
    parts.sum_err_linf = kernels::max_abs(tmp.data(), n);
    parts.cancellation_scale = lam * lam * linf_norm(f_uh);
  } else {
    // ap2: F1 vanishes because u_low solves the equation; the total is the
    // sum of the remaining terms
    RealVec tot(n);
    for (std::size_t j = 0; j < n; ++j)
      tot[j] = f2[j] + f3[j] + f4[j] + f5[j];
    parts.total = pointwise(grid, tot);
    parts.cancellation_scale = lam * lam * linf_norm(f_uh);
  }
  return parts;
}

}  // namespace

ResidualParts residual_ap1(const BumpProfile& bp, const PacketSpec& spec,
                           GridPtr grid, double t) {
  Field u = low_bump(bp, spec, grid);
  return assemble(bp, spec, grid, t, u, u, true);
}

ResidualParts residual_ap2(const BumpProfile& bp, const PacketSpec& spec,
                           GridPtr grid, double t, const Trajectory& low) {
  const Field& now_c = low.at(t).u;
  const Field& init_c = low.at(0.0).u;
  Field now = resample(now_c, grid);
  Field init = resample(init_c, grid);
  return assemble(bp, spec, grid, t, now, init, false);
}

Field commutator_field(const BumpProfile& bp, const PacketSpec& spec,
                       GridPtr grid) {
  spec.validate();
  if (SpectralGrid::kPi / grid->dx() < 4.0 * spec.lambda)
    throw ConfigError("commutator: grid violates pi/dx >= 4*lambda");
  const auto& g = *grid;
  const double sc = spec.scale();
  RealVec prod(g.size()), modulated(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double x = g.node(j);
    const double envelope = bp.phi(x / sc);
    prod[j] = envelope * std::cos(spec.lambda * x + spec.alpha);
    modulated[j] = envelope * std::sin(spec.lambda * x + spec.alpha);
  }
  // H(phi_lambda cos) spectrally minus phi_lambda * (H cos) analytically
  Field h = hilbert(pointwise(grid, prod));
  RealVec out(g.size());
  kernels::sub(h.values().data(), modulated.data(), out.data(), g.size());
  return pointwise(std::move(grid), std::move(out));
}

}  // namespace bo
