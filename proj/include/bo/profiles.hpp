#pragma once

// The cutoff pair (phi, phitilde), scaled bumps, the oscillatory packet and
// both assembled approximate solutions.
//
// phi is 1 on |x| <= 1 and 0 beyond |x| >= 2; phitilde is 1 on |x| <= 2 and 0
// beyond |x| >= 3, so phitilde is identically one on the support of phi and
// phi*phitilde == phi holds exactly, plateau sample by plateau sample. The
// transition is the exp(-1/t) smoothstep, fixed here so every run of the lab
// reproduces the same reference constants.
//
// Scaling convention: f_lambda(x) = f(x / lambda^(1+delta)).

#include <cstddef>

#include "bo/spectral.hpp"

namespace bo {

class BumpProfile {
 public:
  static BumpProfile make();  // builds the pair and its quadrature constants

  double phi(double x) const { return plateau(x, 1.0); }
  double phitilde(double x) const { return plateau(x, 2.0); }
  double phi_prime(double x) const { return plateau_prime(x, 1.0); }
  double phitilde_prime(double x) const { return plateau_prime(x, 2.0); }

  double phi_l2() const { return phi_l2_; }
  double phitilde_l2() const { return phitilde_l2_; }

  // smoothstep: 1 for t <= 0, 0 for t >= 1, exp(-1/t)-mollified in between
  static double smoothstep(double t);
  static double smoothstep_prime(double t);

  // ||f||_L2 of either bump by midpoint quadrature with n cells (test oracle)
  static double quadrature_l2(bool wide, std::size_t n);

  // frozen reference value of ||phi||_L2; quadrature converged to < 1e-15
  static constexpr double kPhiL2 = 1.6767261271736367;

 private:
  BumpProfile(double phi_l2, double phitilde_l2)
      : phi_l2_(phi_l2), phitilde_l2_(phitilde_l2) {}
  static double plateau(double x, double r);        // psi(|x| - r)
  static double plateau_prime(double x, double r);
  double phi_l2_;
  double phitilde_l2_;
};

struct PacketSpec {
  double lambda = 64.0;  // carrier frequency, >= 8
  double delta = 0.5;    // scaling exponent, in (0, 1)
  double s = 1.0;        // Sobolev index, > 0
  double omega = 1.0;    // modulation speed
  double alpha = 0.0;    // phase offset

  void validate() const;
  // interaction-tracking regime: requires 1 - s < delta < 1; returns true
  // when |omega| exceeds the 0.1*lambda^((1-delta)/2) smallness threshold (a
  // warning, not an error: separation runs use omega = +-1 at desk scale).
  bool interaction_regime_warns() const;

  double scale() const;                // lambda^(1+delta)
  double packet_amplitude() const;     // lambda^(-(1+delta)/2 - s)
};

// grid policies ------------------------------------------------------------
struct GridOverride {
  double half_length = 0.0;  // 0 = policy value
  std::size_t size = 0;      // 0 = policy value
};

// packet-resolving grid: L = ceil(9 lambda^(1+delta)), smallest power-of-two
// N with pi/dx >= 4 lambda, N >= 2^12
GridPtr packet_grid(const PacketSpec& spec, const GridOverride& ov = {});
// low-frequency grid for u_low evolutions: same L, N = 2^12
GridPtr low_grid(const PacketSpec& spec, const GridOverride& ov = {});

// field constructors --------------------------------------------------------

// U_{lambda,omega}(x) = -omega/lambda * phitilde_lambda(x)
Field low_bump(const BumpProfile& bp, const PacketSpec& spec, GridPtr grid);

// Phi = -lambda^2 t + lambda x + omega t + alpha, sampled on the grid
Field phase(const PacketSpec& spec, GridPtr grid, double t);

// u_h(t) = -lambda^(-(1+delta)/2 - s) phi_lambda cos(Phi); dt is the exact
// time derivative of the same expression
struct PacketPair {
  Field u;
  Field dt;
};
PacketPair packet(const BumpProfile& bp, const PacketSpec& spec, GridPtr grid,
                  double t);

// (ap1): U + u_h, with its analytic time derivative
PacketPair assemble_ap1(const BumpProfile& bp, const PacketSpec& spec,
                        GridPtr grid, double t);

// interaction initial data: -omega/lambda phitilde_lambda
//                         - lambda^(-(1+delta)/2-s) phi_lambda cos(lambda x)
Field interaction_initial_data(const BumpProfile& bp, const PacketSpec& spec,
                            GridPtr grid);

// (ap2): u_low(t) - lambda^(-(1+delta)/2-s) phi_lambda cos(-lambda^2 t +
// lambda x - lambda t u_low(0,x)); u_low fields must live on `grid`
Field assemble_ap2(const BumpProfile& bp, const PacketSpec& spec, GridPtr grid,
                   double t, const Field& u_low_now, const Field& u_low_init);

}  // namespace bo
