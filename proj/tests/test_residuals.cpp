#include "bo/residuals.hpp"

#include <cmath>

#include "test_util.hpp"

using namespace bo;

int main() {
  const BumpProfile bp = BumpProfile::make();
  const PacketSpec spec{16.0, 0.5, 1.0, 1.0, 0.0};
  GridPtr g = packet_grid(spec);

  // F5 vanishes identically for (ap1): the plateau identity is exact in
  // floating point, for every t and omega
  for (double t : {0.0, 0.4, 1.0}) {
    for (double omega : {1.0, -1.0, 0.3}) {
      PacketSpec s2 = spec;
      s2.omega = omega;
      ResidualParts p = residual_ap1(bp, s2, g, t);
      CHECK_NEAR(linf_norm(p.f5), 0.0, 0.0);
    }
  }

  // omega = 0 kills F1 and F2 exactly
  {
    PacketSpec s0 = spec;
    s0.omega = 0.0;
    ResidualParts p = residual_ap1(bp, s0, g, 0.7);
    CHECK_NEAR(linf_norm(*p.f1), 0.0, 0.0);
    CHECK_NEAR(linf_norm(p.f2), 0.0, 0.0);
  }

  // sum consistency: the direct evaluation equals the per-term sum up to the
  // conditioning of the lambda^2-sized cancellation in the direct route
  {
    for (double lam : {16.0, 32.0}) {
      PacketSpec s2 = spec;
      s2.lambda = lam;
      GridPtr g2 = packet_grid(s2);
      ResidualParts p = residual_ap1(bp, s2, g2, 0.7);
      double scale = linf_norm(p.f4);
      scale = std::max(scale, linf_norm(p.f3));
      scale = std::max(scale, linf_norm(*p.f1));
      scale = std::max(scale, p.cancellation_scale);
      CHECK_MSG(p.sum_err_linf < 1e-12 * scale,
                "sum_err = " + std::to_string(p.sum_err_linf));
    }
  }

  // on the plateau of phi_lambda, F reduces to F3 + F4 when omega = 0
  {
    PacketSpec s0 = spec;
    s0.omega = 0.0;
    ResidualParts p = residual_ap1(bp, s0, g, 0.0);
    double worst = 0.0;
    const double sc = s0.scale();
    for (std::size_t j = 0; j < g->size(); ++j) {
      if (std::abs(g->node(j)) > 0.9 * sc) continue;  // inside the plateau
      worst = std::max(worst, std::abs(p.total.values()[j] -
                                       p.f3.values()[j] - p.f4.values()[j]));
    }
    CHECK(worst < 1e-12 * linf_norm(p.f4));
  }

  // measured term norms against the per-term decay bounds (constants O(1))
  {
    ResidualParts p = residual_ap1(bp, spec, g, 0.7);
    const double lam = spec.lambda;
    // F4 ~ sqrt(2) ||phi'|| lambda^{-delta-s}
    const double f4 = l2_norm(p.f4);
    const double f4_pred = std::sqrt(2.0) * 1.8101218639699 *
                           std::pow(lam, -spec.delta - spec.s);
    CHECK_REL(f4, f4_pred, 0.05);
    // F3 <= c lambda^{(1-delta)/2 - 2s}
    CHECK(l2_norm(p.f3) <
          2.0 * std::pow(lam, (1.0 - spec.delta) / 2.0 - 2.0 * spec.s));
    // F1 <= c (omega^2 lambda^{-(5+delta)/2} + |omega| lambda^{-(5+3delta)/2})
    const double f1_bound = std::pow(lam, -(5.0 + spec.delta) / 2.0) +
                            std::pow(lam, -(5.0 + 3.0 * spec.delta) / 2.0);
    CHECK(l2_norm(*p.f1) < 10.0 * f1_bound);
    // F2 <= c |omega| lambda^{-2-delta-s}
    CHECK(l2_norm(p.f2) < 10.0 * std::pow(lam, -2.0 - spec.delta - spec.s));
  }

  // ap2: with omega = 0, u_low stays 0 and F equals ap1's F with U = 0
  {
    PacketSpec s0 = spec;
    s0.omega = 0.0;
    GridPtr gl = low_grid(s0);
    SolverConfig sc;
    sc.dt = 1e-3;
    sc.t_final = 0.5;
    sc.sample_times = {0.0, 0.5};
    Trajectory low = evolve(low_bump(bp, s0, gl), sc);
    ResidualParts p2 = residual_ap2(bp, s0, g, 0.5, low);
    ResidualParts p1 = residual_ap1(bp, s0, g, 0.5);
    CHECK_REL(l2_norm(p2.total), l2_norm(p1.total), 1e-12);
    CHECK_NEAR(linf_norm(p2.f5), 0.0, 0.0);
  }

  // ap2 F5 obeys the drift-based bound
  {
    GridPtr gl = low_grid(spec);
    SolverConfig sc;
    sc.dt = 1e-3;
    sc.t_final = 0.7;
    sc.sample_times = {0.0, 0.7};
    Trajectory low = evolve(low_bump(bp, spec, gl), sc);
    ResidualParts p = residual_ap2(bp, spec, g, 0.7, low);
    const double bound = std::pow(spec.lambda,
                                  (1.0 - spec.delta) / 2.0 - spec.s) *
                         std::abs(spec.omega) *
                         std::pow(spec.lambda, -2.0 - spec.delta);
    CHECK(l2_norm(p.f5) < bound);  // strictly smaller: drift is edge-localized
    CHECK(!p.f1.has_value());
  }

  // commutator with a constant envelope is zero; the carrier must sit on a
  // grid wavenumber for the box-periodic check to make sense
  {
    GridPtr gc = packet_grid(spec);
    const double lam_snap =
        gc->wavenumber(static_cast<std::size_t>(std::llround(
            spec.lambda * gc->half_length() / SpectralGrid::kPi)));
    Field f(gc, [&] {
      RealVec v(gc->size());
      for (std::size_t j = 0; j < gc->size(); ++j)
        v[j] = std::cos(lam_snap * gc->node(j));
      return v;
    }());
    Field hc = hilbert(f);
    double worst = 0.0;
    for (std::size_t j = 0; j < gc->size(); ++j) {
      const double x = gc->node(j);
      worst = std::max(worst, std::abs(hc.values()[j] -
                                       std::sin(lam_snap * x)));
    }
    CHECK(worst < 1e-9);

    PacketSpec s8{8.0, 0.5, 1.0, 0.0, 0.0};
    GridPtr g8 = packet_grid(s8);
    double norms[3];
    int i = 0;
    for (double alpha : {0.0, 0.785398163397448, 1.570796326794897}) {
      PacketSpec sa = s8;
      sa.alpha = alpha;
      norms[i++] = l2_norm(commutator_field(bp, sa, g8));
    }
    CHECK(norms[0] > 1e-10);  // above the roundoff floor at lambda = 8
    CHECK_REL(norms[0], norms[1], 0.05);
    CHECK_REL(norms[0], norms[2], 0.05);

    // super-polynomial onset: lambda 8 -> 12 slope far below -4
    PacketSpec s12 = s8;
    s12.lambda = 12.0;
    GridPtr g12 = packet_grid(s12);
    const double n12 = l2_norm(commutator_field(bp, s12, g12));
    const double slope = std::log2(n12 / norms[0]) / std::log2(12.0 / 8.0);
    CHECK_MSG(slope < -8.0, "onset slope = " + std::to_string(slope));
  }

  return testutil::finish("test_residuals");
}
