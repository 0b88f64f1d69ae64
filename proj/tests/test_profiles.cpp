#include "bo/profiles.hpp"

#include <cmath>

#include "test_util.hpp"

using namespace bo;

int main() {
  const BumpProfile bp = BumpProfile::make();

  // plateau / support geometry
  CHECK_NEAR(bp.phi(0.0), 1.0, 0.0);
  CHECK_NEAR(bp.phi(0.999), 1.0, 0.0);
  CHECK_NEAR(bp.phi(2.5), 0.0, 0.0);
  CHECK_NEAR(bp.phi(-2.5), 0.0, 0.0);
  CHECK(bp.phi(1.5) > 0.0 && bp.phi(1.5) < 1.0);
  CHECK_NEAR(bp.phitilde(2.0), 1.0, 0.0);
  CHECK_NEAR(bp.phitilde(3.1), 0.0, 0.0);

  // phitilde == 1 on supp phi, so phi*phitilde == phi pointwise
  {
    double worst = 0.0;
    for (int i = 0; i <= 4000; ++i) {
      const double x = -4.0 + 8.0 * i / 4000.0;
      worst = std::max(worst,
                       std::abs(bp.phi(x) * bp.phitilde(x) - bp.phi(x)));
    }
    CHECK(worst < 1e-15);
  }

  // frozen reference constant vs an independent Richardson pair
  {
    const double q1 = BumpProfile::quadrature_l2(false, 1u << 14);
    const double q2 = BumpProfile::quadrature_l2(false, 1u << 15);
    CHECK_NEAR(q1, q2, 1e-14);  // flat-ended integrand: already converged
    CHECK_NEAR(bp.phi_l2(), BumpProfile::kPhiL2, 1e-14);
    CHECK(bp.phi_l2() > std::sqrt(2.0) && bp.phi_l2() < 2.0);
  }

  // smoothstep derivative vs central differences
  {
    double worst = 0.0;
    for (int i = 1; i < 100; ++i) {
      const double t = i / 100.0;
      const double h = 1e-6;
      const double fd =
          (BumpProfile::smoothstep(t + h) - BumpProfile::smoothstep(t - h)) /
          (2.0 * h);
      worst = std::max(worst, std::abs(fd - BumpProfile::smoothstep_prime(t)));
    }
    CHECK(worst < 1e-7);
  }

  const PacketSpec spec{16.0, 0.5, 1.0, 1.0, 0.0};
  GridPtr g = packet_grid(spec);
  const double sc = spec.scale();

  // low bump: plateau value and L2 scaling
  {
    Field u = low_bump(bp, spec, g);
    CHECK_NEAR(linf_norm(u), 1.0 / spec.lambda, 1e-15);
    const double expect = std::abs(spec.omega) / spec.lambda *
                          std::pow(spec.lambda, (1.0 + spec.delta) / 2.0) *
                          bp.phitilde_l2();
    CHECK_REL(l2_norm(u), expect, 1e-6);  // quadrature vs grid sampling

    PacketSpec zero = spec;
    zero.omega = 0.0;
    CHECK_NEAR(linf_norm(low_bump(bp, zero, g)), 0.0, 0.0);

    // scaling covariance: values at x = scale*y equal -omega/lambda phit(y)
    double worst = 0.0;
    for (std::size_t j = 0; j < g->size(); ++j) {
      const double y = g->node(j) / sc;
      worst = std::max(worst, std::abs(u.values()[j] +
                                       spec.omega / spec.lambda *
                                           bp.phitilde(y)));
    }
    CHECK(worst < 1e-14);
  }

  // phase: t = 0 gives lambda x; omega enters linearly as omega t
  {
    Field p0 = phase(spec, g, 0.0);
    CHECK_NEAR(p0.values()[10], spec.lambda * g->node(10), 1e-9);
    PacketSpec pplus = spec, pminus = spec;
    pplus.omega = 1.0;
    pminus.omega = -1.0;
    const double t = 0.7;
    Field d = phase(pplus, g, t) - phase(pminus, g, t);
    CHECK_NEAR(linf_norm(d), 2.0 * t, 1e-12);
  }

  // packet: amplitude bound and the normalized-norm limit
  {
    PacketPair pk = packet(bp, spec, g, 0.0);
    CHECK(linf_norm(pk.u) <= spec.packet_amplitude() * (1.0 + 1e-12));
    const double norm =
        sobolev_norm(pk.u, NormSpec(spec.s)) *
        std::pow(spec.lambda, -(1.0 + spec.delta) / 2.0 - spec.s) /
        spec.packet_amplitude();
    CHECK_REL(norm, bp.phi_l2() / std::sqrt(2.0), 0.01);  // lambda = 16
    const double l2 = l2_norm(pk.u) / spec.packet_amplitude() *
                      std::pow(spec.lambda, -(1.0 + spec.delta) / 2.0);
    CHECK_REL(l2, bp.phi_l2() / std::sqrt(2.0), 0.01);
  }

  // ap1 with omega = 0 is the pure packet; t = 0 equals the interaction initial data
  {
    PacketSpec zero = spec;
    zero.omega = 0.0;
    Field diff = assemble_ap1(bp, zero, g, 0.3).u - packet(bp, zero, g, 0.3).u;
    CHECK_NEAR(linf_norm(diff), 0.0, 0.0);

    Field d2 = assemble_ap1(bp, spec, g, 0.0).u - interaction_initial_data(bp, spec, g);
    CHECK_NEAR(linf_norm(d2), 0.0, 0.0);
  }

  // the interaction initial data: omega = +-1 difference is twice the low bump
  {
    PacketSpec pp = spec, pm = spec;
    pp.omega = 1.0;
    pm.omega = -1.0;
    Field d = interaction_initial_data(bp, pp, g) - interaction_initial_data(bp, pm, g);
    const double expect = 2.0 / spec.lambda *
                          std::pow(spec.lambda, (1.0 + spec.delta) / 2.0) *
                          bp.phitilde_l2();
    CHECK_REL(l2_norm(d), expect, 1e-6);
  }

  // ap2 at t = 0 equals the interaction initial data; the plateau identity makes its phase
  // equal Phi on supp phi; omega = 0 reduces ap2 to the free packet
  {
    Field ul0 = low_bump(bp, spec, g);
    Field a2 = assemble_ap2(bp, spec, g, 0.0, ul0, ul0);
    Field d = a2 - interaction_initial_data(bp, spec, g);
    CHECK_NEAR(linf_norm(d), 0.0, 1e-15);

    const double t = 0.42;
    Field a2t = assemble_ap2(bp, spec, g, t, ul0, ul0);
    Field a1t = assemble_ap1(bp, spec, g, t).u;
    // identical wherever phi_lambda is supported; elsewhere ap2 = ap1 = U
    double worst = 0.0;
    for (std::size_t j = 0; j < g->size(); ++j)
      worst = std::max(worst, std::abs(a2t.values()[j] - a1t.values()[j]));
    CHECK(worst < 1e-13);

    PacketSpec zero = spec;
    zero.omega = 0.0;
    Field z(g);
    Field a2z = assemble_ap2(bp, zero, g, t, z, z);
    Field pkz = packet(bp, zero, g, t).u;
    double w2 = 0.0;
    for (std::size_t j = 0; j < g->size(); ++j)
      w2 = std::max(w2, std::abs(a2z.values()[j] - pkz.values()[j]));
    CHECK(w2 < 1e-15);
  }

  // preconditions
  {
    CHECK_THROWS((PacketSpec{4.0, 0.5, 1.0, 0.0, 0.0}.validate()), ConfigError);
    CHECK_THROWS((PacketSpec{16.0, 1.5, 1.0, 0.0, 0.0}.validate()), ConfigError);
    CHECK_THROWS(low_bump(bp, spec, make_grid(16.0, 256)), ConfigError);
    CHECK_THROWS(packet(bp, spec, make_grid(spec.scale() * 9.0, 64), 0.0),
                 ConfigError);
    PacketSpec bad = spec;
    bad.s = 0.4;
    bad.delta = 0.5;  // violates 1 - s < delta
    CHECK_THROWS(bad.interaction_regime_warns(), ConfigError);
    PacketSpec warn = spec;  // omega = 1 exceeds 0.1 lambda^{1/4} at 16
    CHECK(warn.interaction_regime_warns());
  }

  return testutil::finish("test_profiles");
}
