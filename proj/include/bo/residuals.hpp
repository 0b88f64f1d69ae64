#pragma once

// Residual F = (d_t + H d_xx) u_ap + u_ap d_x u_ap for both ansaetze, with
// the per-term decomposition F1..F5, and the Hilbert-commutator field.
//
// Time derivatives are analytic (the packet part in closed form, the u_low
// part through its own equation), so the measured F is the continuum object
// rather than time-discretization noise. Spatial operators are spectral; the
// carrier cos(Phi) is not periodic on the box, so H d_xx cos(Phi) enters
// through its real-line value -lambda^2 sin(Phi).

#include <optional>

#include "bo/profiles.hpp"
#include "bo/solver.hpp"
#include "bo/spectral.hpp"

namespace bo {

struct ResidualParts {
  Field total;             // direct evaluation of F
  std::optional<Field> f1; // absent for ap2 (u_low solves the equation)
  Field f2, f3, f4, f5;
  double sum_err_linf = 0.0;      // || total - sum F_i ||_Linf  (ap1 only)
  double cancellation_scale = 0.0;  // lambda^2 ||u_h||_Linf, conditioning of
                                    // the direct route
};

ResidualParts residual_ap1(const BumpProfile& bp, const PacketSpec& spec,
                           GridPtr grid, double t);

// u_low trajectory must carry samples at 0 and t on a (possibly coarser)
// grid with the same half-length; it is resampled onto `grid` here.
// solver_err_hint, when provided, is recorded by callers as the stand-in for
// the omitted F1 (the solver's own error on u_low).
ResidualParts residual_ap2(const BumpProfile& bp, const PacketSpec& spec,
                           GridPtr grid, double t, const Trajectory& low);

// [H, phi_lambda] cos(lambda x + alpha) at t = 0
Field commutator_field(const BumpProfile& bp, const PacketSpec& spec,
                       GridPtr grid);

}  // namespace bo
