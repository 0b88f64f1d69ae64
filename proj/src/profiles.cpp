#include "bo/profiles.hpp"

#include <cmath>

namespace bo {

namespace {
inline double mollifier(double t) {  // exp(-1/t) on t > 0, else 0
  return t > 0.0 ? std::exp(-1.0 / t) : 0.0;
}
}  // namespace

double BumpProfile::smoothstep(double t) {
  if (t <= 0.0) return 1.0;
  if (t >= 1.0) return 0.0;
  const double a = mollifier(1.0 - t);
  const double b = mollifier(t);
  return a / (a + b);
}

double BumpProfile::smoothstep_prime(double t) {
  if (t <= 0.0 || t >= 1.0) return 0.0;
  const double a = mollifier(1.0 - t);
  const double b = mollifier(t);
  const double ap = a / ((1.0 - t) * (1.0 - t));  // d/dt exp(-1/(1-t))
  const double bp = b / (t * t);
  return -(ap * b + a * bp) / ((a + b) * (a + b));
}

double BumpProfile::plateau(double x, double r) {
  return smoothstep(std::abs(x) - r);
}

double BumpProfile::plateau_prime(double x, double r) {
  const double d = smoothstep_prime(std::abs(x) - r);
  return x < 0.0 ? -d : d;
}

double BumpProfile::quadrature_l2(bool wide, std::size_t n) {
  const double r = wide ? 2.0 : 1.0;
  const double b = r + 1.0;  // support radius
  double acc = 0.0;
  const double h = 2.0 * b / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = -b + h * (static_cast<double>(i) + 0.5);
    const double v = plateau(x, r);
    acc += v * v;
  }
  return std::sqrt(acc * h);
}

BumpProfile BumpProfile::make() {
  // midpoint rule; the integrand is flat at both ends, so 2^15 cells are
  // already converged to machine precision
  return BumpProfile(quadrature_l2(false, 1u << 15),
                     quadrature_l2(true, 1u << 15));
}

void PacketSpec::validate() const {
  if (!(lambda >= 8.0)) throw ConfigError("spec: requires lambda >= 8");
  if (!(delta > 0.0 && delta < 1.0))
    throw ConfigError("spec: requires 0 < delta < 1");
  if (!(s > 0.0)) throw ConfigError("spec: requires s > 0");
}

bool PacketSpec::interaction_regime_warns() const {
  validate();
  if (!(1.0 - s < delta))
    throw ConfigError("spec: requires 1 - s < delta < 1");
  return std::abs(omega) > 0.1 * std::pow(lambda, (1.0 - delta) / 2.0);
}

double PacketSpec::scale() const { return std::pow(lambda, 1.0 + delta); }

double PacketSpec::packet_amplitude() const {
  return std::pow(lambda, -(1.0 + delta) / 2.0 - s);
}

GridPtr packet_grid(const PacketSpec& spec, const GridOverride& ov) {
  spec.validate();
  const double L =
      ov.half_length > 0.0 ? ov.half_length : std::ceil(9.0 * spec.scale());
  if (L < 9.0 * spec.scale() * (1.0 - 1e-12))
    throw ConfigError("grid: requires L >= 9 lambda^(1+delta)");
  std::size_t n = ov.size;
  if (n == 0) {
    n = 1u << 12;
    while (SpectralGrid::kPi * static_cast<double>(n) / (2.0 * L) <
           4.0 * spec.lambda)
      n *= 2;
  }
  auto g = make_grid(L, n);
  if (SpectralGrid::kPi / g->dx() < 4.0 * spec.lambda)
    throw ConfigError("grid: pi/dx >= 4*lambda violated (packet unresolved)");
  return g;
}

GridPtr low_grid(const PacketSpec& spec, const GridOverride& ov) {
  spec.validate();
  const double L =
      ov.half_length > 0.0 ? ov.half_length : std::ceil(9.0 * spec.scale());
  const std::size_t n = ov.size ? ov.size : (1u << 12);
  return make_grid(L, n);
}

Field low_bump(const BumpProfile& bp, const PacketSpec& spec, GridPtr grid) {
  spec.validate();
  if (grid->half_length() < 3.0 * 3.0 * spec.scale())
    throw ConfigError("low_bump: support exceeds box (requires L >= 9 lambda^(1+delta))");
  const double sc = spec.scale();
  const double amp = -spec.omega / spec.lambda;
  RealVec v(grid->size());
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = amp * bp.phitilde(grid->node(j) / sc);
  return Field(std::move(grid), std::move(v));
}

Field phase(const PacketSpec& spec, GridPtr grid, double t) {
  RealVec v(grid->size());
  const double c0 = -spec.lambda * spec.lambda * t + spec.omega * t + spec.alpha;
  for (std::size_t j = 0; j < v.size(); ++j)
    v[j] = c0 + spec.lambda * grid->node(j);
  return Field(std::move(grid), std::move(v));
}

PacketPair packet(const BumpProfile& bp, const PacketSpec& spec, GridPtr grid,
                  double t) {
  spec.validate();
  if (SpectralGrid::kPi / grid->dx() < 4.0 * spec.lambda)
    throw ConfigError("packet: grid violates pi/dx >= 4*lambda");
  const double sc = spec.scale();
  const double amp = spec.packet_amplitude();
  const double lam = spec.lambda;
  const double phase0 = -lam * lam * t + spec.omega * t + spec.alpha;
  RealVec u(grid->size()), du(grid->size());
  for (std::size_t j = 0; j < u.size(); ++j) {
    const double x = grid->node(j);
    const double env = amp * bp.phi(x / sc);
    const double ph = phase0 + lam * x;
    u[j] = -env * std::cos(ph);
    du[j] = -env * (lam * lam - spec.omega) * std::sin(ph);
  }
  Field fu(grid, std::move(u));
  Field fdu(std::move(grid), std::move(du));
  return {std::move(fu), std::move(fdu)};
}

PacketPair assemble_ap1(const BumpProfile& bp, const PacketSpec& spec,
                        GridPtr grid, double t) {
  PacketPair p = packet(bp, spec, grid, t);
  p.u += low_bump(bp, spec, std::move(grid));
  return p;  // dt of the static low bump is zero
}

Field interaction_initial_data(const BumpProfile& bp, const PacketSpec& spec,
                            GridPtr grid) {
  PacketSpec at0 = spec;
  at0.alpha = 0.0;
  return assemble_ap1(bp, at0, std::move(grid), 0.0).u;
}

Field assemble_ap2(const BumpProfile& bp, const PacketSpec& spec, GridPtr grid,
                   double t, const Field& u_low_now, const Field& u_low_init) {
  spec.validate();
  if (!u_low_now.grid().same_as(*grid) || !u_low_init.grid().same_as(*grid))
    throw ConfigError("assemble_ap2: u_low fields must live on the target grid");
  const double sc = spec.scale();
  const double amp = spec.packet_amplitude();
  const double lam = spec.lambda;
  RealVec v(grid->size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double x = grid->node(j);
    const double ph = -lam * lam * t + lam * x - lam * t * u_low_init.values()[j];
    v[j] = u_low_now.values()[j] - amp * bp.phi(x / sc) * std::cos(ph);
  }
  return Field(std::move(grid), std::move(v));
}

}  // namespace bo
