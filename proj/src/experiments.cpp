#include "bo/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <sstream>

namespace bo {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

void require_finite(const RunRecord& r) {
  for (const auto& [name, v] : r.cols)
    if (!std::isfinite(v))
      throw std::runtime_error("record has non-finite quantity: " + name);
}

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double rel_spread(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  const double mx = *std::max_element(v.begin(), v.end());
  const double mn = *std::min_element(v.begin(), v.end());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) /
                      static_cast<double>(v.size());
  return mean != 0.0 ? (mx - mn) / mean : 0.0;
}

double max_rel_dev_from_mean(const std::vector<double>& v) {
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) /
                      static_cast<double>(v.size());
  double dev = 0.0;
  for (double x : v) dev = std::max(dev, std::abs(x / mean - 1.0));
  return dev;
}

}  // namespace

double RunRecord::get(const std::string& name) const {
  for (const auto& [n, v] : cols)
    if (n == name) return v;
  throw std::runtime_error("record: no column " + name);
}

SlopeFit fit_slope(const std::vector<std::pair<double, double>>& pts) {
  if (pts.size() < 3) throw ConfigError("fit_slope: needs >= 3 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [lam, q] : pts) {
    if (!(q > 0.0)) throw ConfigError("fit_slope: non-positive quantity");
    const double x = std::log(lam), y = std::log(q);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double n = static_cast<double>(pts.size());
  SlopeFit fit;
  fit.points = pts.size();
  fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - fit.slope * sx) / n;
  double ss = 0.0;
  for (const auto& [lam, q] : pts) {
    const double r = std::log(q) - (fit.slope * std::log(lam) + intercept);
    ss += r * r;
  }
  fit.rms = std::sqrt(ss / n);
  return fit;
}

double local_log2_slope(double l0, double q0, double l1, double q1) {
  return std::log2(q1 / q0) / std::log2(l1 / l0);
}

// ---- hsnorm-limit -----------------------------------------------------------

ExperimentResult exp_hsnorm_limit(const BumpProfile& bp,
                                  const HsNormConfig& cfg,
                                  const Tolerances& tol) {
  ExperimentResult out;
  out.name = "hsnorm-limit";
  const double target = bp.phi_l2() / std::sqrt(2.0);
  const double lam_max =
      *std::max_element(cfg.lambdas.begin(), cfg.lambdas.end());

  for (double s : cfg.s_list) {
    std::vector<double> at_max;
    for (double lam : cfg.lambdas) {
      PacketSpec gspec{lam, cfg.delta, 1.0, 0.0, 0.0};
      GridPtr g = packet_grid(gspec, cfg.grid);
      const double sc = gspec.scale();
      for (double alpha : cfg.alphas) {
        const auto t0 = Clock::now();
        // phi_lambda(x) cos(lambda x + alpha), the norm-limit object (s is a
        // norm index here, so the s > 0 packet regime does not apply)
        RealVec v(g->size());
        for (std::size_t j = 0; j < v.size(); ++j) {
          const double x = g->node(j);
          v[j] = bp.phi(x / sc) * std::cos(lam * x + alpha);
        }
        const double norm =
            sobolev_norm(Field(g, std::move(v)), NormSpec(s)) *
            std::pow(lam, -(1.0 + cfg.delta) / 2.0 - s);
        RunRecord r;
        r.experiment = out.name;
        r.cols = {{"lambda", lam},
                  {"delta", cfg.delta},
                  {"s", s},
                  {"alpha", alpha},
                  {"L", g->half_length()},
                  {"N", static_cast<double>(g->size())},
                  {"normalized_hs", norm},
                  {"target", target},
                  {"ratio", norm / target}};
        r.wall_seconds = seconds_since(t0);
        require_finite(r);
        out.records.push_back(std::move(r));
        if (lam == lam_max) at_max.push_back(norm);
      }
    }
    const std::string suffix = "_s" + fmt(s);
    Verdict v1;
    v1.name = "hsnorm_limit" + suffix;
    v1.measured = at_max.front() / target;
    v1.target = 1.0;
    v1.tol = tol.hsnorm_rel;
    v1.pass = std::abs(v1.measured - 1.0) <= tol.hsnorm_rel;
    v1.detail = "normalized Hs norm over ||phi||/sqrt(2) at lambda = " +
                fmt(lam_max);
    out.verdicts.push_back(v1);
    Verdict v2;
    v2.name = "hsnorm_alpha_uniform" + suffix;
    v2.measured = rel_spread(at_max);
    v2.target = 0.0;
    v2.tol = tol.hsnorm_alpha_rel;
    v2.pass = v2.measured <= tol.hsnorm_alpha_rel;
    v2.detail = "alpha spread of the normalized norm at lambda = " +
                fmt(lam_max);
    out.verdicts.push_back(v2);
  }
  return out;
}

// ---- commutator -------------------------------------------------------------

ExperimentResult exp_commutator_decay(const BumpProfile& bp,
                                      const CommutatorConfig& cfg,
                                      const Tolerances& tol) {
  ExperimentResult out;
  out.name = "commutator";
  std::vector<std::pair<double, double>> ladder;  // alpha = first entry
  std::map<double, std::vector<double>> by_lambda;

  for (double lam : cfg.lambdas) {
    PacketSpec spec{lam, cfg.delta, 1.0, 0.0, 0.0};
    GridPtr g = packet_grid(spec, cfg.grid);
    for (double alpha : cfg.alphas) {
      const auto t0 = Clock::now();
      spec.alpha = alpha;
      const double nrm = l2_norm(commutator_field(bp, spec, g));
      RunRecord r;
      r.experiment = out.name;
      r.cols = {{"lambda", lam},
                {"delta", cfg.delta},
                {"alpha", alpha},
                {"L", g->half_length()},
                {"N", static_cast<double>(g->size())},
                {"l2_norm", nrm}};
      r.wall_seconds = seconds_since(t0);
      require_finite(r);
      out.records.push_back(std::move(r));
      by_lambda[lam].push_back(nrm);
      if (alpha == cfg.alphas.front()) ladder.emplace_back(lam, nrm);
    }
  }

  // headline criterion: local slope at the 32 -> 64 octave below the bound,
  // and the norm still decreasing at 128
  auto value_at = [&](double lam) -> const double* {
    for (const auto& [l, q] : ladder)
      if (l == lam) return &q;
    return nullptr;
  };
  Verdict v1;
  v1.name = "commutator_slope_at_64";
  v1.target = tol.commutator_slope_bound;
  v1.tol = 0.0;
  const double* q32 = value_at(32.0);
  const double* q64 = value_at(64.0);
  if (q32 && q64) {
    v1.measured = local_log2_slope(32.0, *q32, 64.0, *q64);
    v1.pass = v1.measured < tol.commutator_slope_bound;
    v1.detail = "local log2 slope across 32 -> 64";
  } else {
    v1.detail = "ladder does not contain 32 and 64";
  }
  out.verdicts.push_back(v1);

  Verdict v2;
  v2.name = "commutator_decreasing_at_128";
  const double* q128 = value_at(128.0);
  if (q64 && q128) {
    v2.measured = *q128 / *q64;
    v2.target = 1.0;
    v2.pass = *q128 < *q64;
    v2.detail = "norm(128)/norm(64) < 1";
  } else {
    v2.detail = "ladder does not contain 64 and 128";
  }
  out.verdicts.push_back(v2);

  // alpha uniformity where the signal is above the roundoff floor
  Verdict v3;
  v3.name = "commutator_alpha_uniform";
  v3.measured = rel_spread(by_lambda.begin()->second);
  v3.target = 0.0;
  v3.tol = tol.commutator_alpha_rel;
  v3.pass = v3.measured <= tol.commutator_alpha_rel;
  v3.detail = "alpha spread at lambda = " + fmt(by_lambda.begin()->first);
  out.verdicts.push_back(v3);

  // supplementary: super-polynomial onset on the sub-floor ladder
  double steepest = 0.0;
  bool have_onset = false;
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (ladder[i].first > 12.5) continue;
    have_onset = true;
    steepest = std::min(steepest,
                        local_log2_slope(ladder[i - 1].first,
                                         ladder[i - 1].second,
                                         ladder[i].first, ladder[i].second));
  }
  if (have_onset) {
    Verdict v4;
    v4.name = "commutator_onset_supplementary";
    v4.measured = steepest;
    v4.target = -8.0;
    v4.pass = steepest < -8.0;
    v4.detail =
        "steepest local slope on lambda <= 12 (above the double-precision "
        "floor)";
    out.verdicts.push_back(v4);
  }
  return out;
}

// ---- residual scaling -------------------------------------------------------

namespace {

double richardson_low_error(const BumpProfile& bp, const PacketSpec& spec,
                            GridPtr grid, double t_max, double dt) {
  SolverConfig c1;
  c1.dt = dt;
  c1.t_final = std::max(t_max, dt);
  c1.sample_times = {c1.t_final};
  SolverConfig c2 = c1;
  c2.dt = dt / 2.0;
  Field u0 = low_bump(bp, spec, grid);
  Trajectory t1 = evolve(u0, c1);
  Trajectory t2 = evolve(u0, c2);
  return l2_norm(t1.samples.back().u - t2.samples.back().u);
}

}  // namespace

ExperimentResult exp_residual_scaling(const BumpProfile& bp,
                                      const ResidualConfig& cfg,
                                      const Tolerances& tol) {
  ExperimentResult out;
  out.name = cfg.refined ? "residual-ap2" : "residual-ap1";
  std::vector<std::pair<double, double>> sup_f;  // per lambda, max over t
  double worst_f5 = 0.0;
  bool ap2_below_ap1 = true;

  for (double lam : cfg.lambdas) {
    PacketSpec spec{lam, cfg.delta, cfg.s, cfg.omega, 0.0};
    GridPtr g = packet_grid(spec, cfg.grid);
    double sup_here = 0.0;

    Trajectory low;
    double solver_err = 0.0;
    if (cfg.refined) {
      GridPtr gl = low_grid(spec, {});
      std::vector<double> times = cfg.times;
      if (times.empty() || times.front() > 0.0)
        times.insert(times.begin(), 0.0);
      SolverConfig sc;
      sc.dt = cfg.solver.dt;
      sc.t_final = std::max(times.back(), 1e-3);
      sc.sample_times = times;
      low = evolve(low_bump(bp, spec, gl), sc);
      solver_err = richardson_low_error(
          bp, spec, gl, sc.t_final,
          sc.dt > 0.0 ? sc.dt : sc.resolved_dt(std::abs(spec.omega / lam),
                                               gl->dx()));
    }

    for (double t : cfg.times) {
      const auto t0 = Clock::now();
      RunRecord r;
      r.experiment = out.name;
      if (!cfg.refined) {
        ResidualParts p = residual_ap1(bp, spec, g, t);
        const double ftot = l2_norm(p.total);
        sup_here = std::max(sup_here, ftot);
        worst_f5 = std::max(worst_f5, linf_norm(p.f5));
        r.cols = {{"lambda", lam},
                  {"delta", cfg.delta},
                  {"s", cfg.s},
                  {"omega", cfg.omega},
                  {"t", t},
                  {"L", g->half_length()},
                  {"N", static_cast<double>(g->size())},
                  {"F_l2", ftot},
                  {"F1_l2", l2_norm(*p.f1)},
                  {"F2_l2", l2_norm(p.f2)},
                  {"F3_l2", l2_norm(p.f3)},
                  {"F4_l2", l2_norm(p.f4)},
                  {"F5_l2", l2_norm(p.f5)},
                  {"F5_linf", linf_norm(p.f5)},
                  {"sum_err_linf", p.sum_err_linf},
                  {"cancel_scale", p.cancellation_scale}};
      } else {
        ResidualParts p = residual_ap2(bp, spec, g, t, low);
        ResidualParts p1 = residual_ap1(bp, spec, g, t);
        const double ftot = l2_norm(p.total);
        const double ftot1 = l2_norm(p1.total);
        sup_here = std::max(sup_here, ftot);
        if (ftot > ftot1) ap2_below_ap1 = false;
        r.cols = {{"lambda", lam},
                  {"delta", cfg.delta},
                  {"s", cfg.s},
                  {"omega", cfg.omega},
                  {"t", t},
                  {"L", g->half_length()},
                  {"N", static_cast<double>(g->size())},
                  {"F_l2", ftot},
                  {"F2_l2", l2_norm(p.f2)},
                  {"F3_l2", l2_norm(p.f3)},
                  {"F4_l2", l2_norm(p.f4)},
                  {"F5_l2", l2_norm(p.f5)},
                  {"ap1_F_l2", ftot1},
                  {"ulow_solver_err_l2", solver_err}};
      }
      r.wall_seconds = seconds_since(t0);
      require_finite(r);
      out.records.push_back(std::move(r));
    }
    sup_f.emplace_back(lam, sup_here);
  }

  const double dominant =
      -std::min(cfg.delta, 1.0 - cfg.delta) / 2.0 - cfg.s;
  SlopeFit fit = fit_slope(sup_f);
  Verdict v1;
  v1.name = out.name + "_slope";
  v1.measured = fit.slope;
  v1.target = dominant;
  v1.tol = tol.residual_slope_tol;
  v1.pass = std::abs(fit.slope - dominant) <= tol.residual_slope_tol;
  v1.detail = "fitted slope of sup_t ||F||_L2, rms " + fmt(fit.rms);
  out.verdicts.push_back(v1);

  if (!cfg.refined) {
    Verdict v2;
    v2.name = "residual_ap1_f5_vanishes";
    v2.measured = worst_f5;
    v2.target = 0.0;
    v2.tol = tol.f5_abs;
    v2.pass = worst_f5 <= tol.f5_abs;
    v2.detail = "max |F5| over the ladder (plateau cancellation)";
    out.verdicts.push_back(v2);
  } else {
    Verdict v2;
    v2.name = "residual_ap2_below_ap1";
    v2.measured = ap2_below_ap1 ? 1.0 : 0.0;
    v2.target = 1.0;
    v2.pass = ap2_below_ap1;
    v2.detail = "refined total ||F|| <= (ap1) total at every ladder point";
    out.verdicts.push_back(v2);
  }
  return out;
}

// ---- u_low bounds -----------------------------------------------------------

ExperimentResult exp_ulow_bounds(const BumpProfile& bp, const UlowConfig& cfg,
                                 const Tolerances& tol) {
  ExperimentResult out;
  out.name = "ulow";
  std::vector<std::pair<double, double>> sup_l2, sup_dinf, sup_drift;

  for (double lam : cfg.lambdas) {
    PacketSpec spec{lam, cfg.delta, 1.0, cfg.omega, 0.0};
    GridPtr g = low_grid(spec, cfg.grid);
    std::vector<double> times = cfg.times;
    if (times.empty() || times.front() > 0.0) times.insert(times.begin(), 0.0);
    SolverConfig sc;
    sc.dt = cfg.solver.dt;
    sc.t_final = times.back();
    sc.sample_times = times;
    const auto t0 = Clock::now();
    LowTrajectory lt;
    try {
      lt = evolve_low(bp, spec, g, sc);
    } catch (const DivergenceError& e) {
      std::ostringstream os;
      os << e.what() << " [ladder point lambda=" << lam << "]";
      throw DivergenceError(e.step_index, os.str());
    }
    const double wall = seconds_since(t0);

    double m_l2 = 0, m_dinf = 0, m_drift = 0;
    for (std::size_t i = 0; i < lt.diagnostics.size(); ++i) {
      const LowSample& d = lt.diagnostics[i];
      RunRecord r;
      r.experiment = out.name;
      r.cols = {{"lambda", lam},
                {"delta", cfg.delta},
                {"omega", cfg.omega},
                {"t", d.t},
                {"L", g->half_length()},
                {"N", static_cast<double>(g->size())},
                {"l2_k0", d.l2_k0},
                {"l2_k1", d.l2_k1},
                {"l2_k2", d.l2_k2},
                {"dx_linf", d.dx_linf},
                {"drift_l2", d.drift_l2}};
      r.wall_seconds = i == 0 ? wall : 0.0;
      require_finite(r);
      out.records.push_back(std::move(r));
      if (d.t > 0.0) {
        m_l2 = std::max(m_l2, d.l2_k0);
        m_dinf = std::max(m_dinf, d.dx_linf);
        m_drift = std::max(m_drift, d.drift_l2);
      }
    }
    sup_l2.emplace_back(lam, m_l2);
    sup_dinf.emplace_back(lam, m_dinf);
    sup_drift.emplace_back(lam, m_drift);
  }

  struct Bound {
    const char* name;
    std::vector<std::pair<double, double>>* pts;
    double target_slope;  // exponent of the decay bound
  };
  const double d = cfg.delta;
  Bound bounds[] = {{"l2", &sup_l2, -(1.0 - d) / 2.0},
                    {"dx_linf", &sup_dinf, -(2.0 + d)},
                    {"drift", &sup_drift, -(2.0 + d)}};
  for (const Bound& b : bounds) {
    SlopeFit fit = fit_slope(*b.pts);
    Verdict v;
    v.name = std::string("ulow_slope_") + b.name;
    v.measured = fit.slope;
    v.target = b.target_slope;
    v.tol = tol.ulow_slope_tol;
    v.pass = std::abs(fit.slope - b.target_slope) <= tol.ulow_slope_tol;
    v.detail = "fitted slope of sup_t quantity, rms " + fmt(fit.rms);
    out.verdicts.push_back(v);

    std::vector<double> consts;
    for (const auto& [lam, q] : *b.pts)
      consts.push_back(q / (std::abs(cfg.omega) *
                            std::pow(lam, b.target_slope)));
    Verdict vc;
    vc.name = std::string("ulow_const_") + b.name;
    vc.measured = max_rel_dev_from_mean(consts);
    vc.target = 0.0;
    vc.tol = tol.ulow_const_rel;
    vc.pass = vc.measured <= tol.ulow_const_rel;
    vc.detail = "spread of the measured constant against the decay bound";
    out.verdicts.push_back(vc);
  }

  // supplementary: the drift inequality itself is respected even where the
  // spec's sharpness target is not (the measured constant only decreases)
  std::vector<double> cds;
  for (const auto& [lam, q] : sup_drift)
    cds.push_back(q / (std::abs(cfg.omega) * std::pow(lam, -(2.0 + d))));
  Verdict vb;
  vb.name = "ulow_drift_bound_upheld_supplementary";
  vb.measured = *std::max_element(cds.begin(), cds.end());
  vb.target = cds.front();
  vb.pass = vb.measured <= cds.front() * (1.0 + 1e-9);
  vb.detail = "drift-bound constant never exceeds its smallest-lambda value";
  out.verdicts.push_back(vb);
  return out;
}

// ---- interaction solves (shared) ----------------------------------------------

const Trajectory& SolveCache::get(const BumpProfile& bp,
                                  const PacketSpec& spec, GridPtr grid,
                                  const std::vector<double>& times,
                                  const SolverOverride& solver) {
  std::ostringstream key;
  key.precision(17);
  key << spec.lambda << '/' << spec.delta << '/' << spec.s << '/' << spec.omega
      << '/' << grid->half_length() << '/' << grid->size() << '/' << solver.dt;
  for (double t : times) key << ',' << t;
  auto it = cache_.find(key.str());
  if (it != cache_.end()) return it->second;

  SolverConfig sc;
  sc.dt = solver.dt;
  sc.t_final = times.back();
  sc.sample_times = times;
  Field u0 = interaction_initial_data(bp, spec, grid);
  try {
    Trajectory traj = evolve(u0, sc);
    return cache_.emplace(key.str(), std::move(traj)).first->second;
  } catch (const DivergenceError& e) {
    std::ostringstream os;
    os << e.what() << " [ladder point lambda=" << spec.lambda
       << " omega=" << spec.omega << "]";
    throw DivergenceError(e.step_index, os.str());
  }
}

namespace {

std::vector<double> with_zero(std::vector<double> times) {
  std::sort(times.begin(), times.end());
  if (times.empty() || times.front() > 0.0) times.insert(times.begin(), 0.0);
  return times;
}

Field main_term(const BumpProfile& bp, const PacketSpec& spec, GridPtr grid,
                double t) {
  PacketSpec ps = spec;
  ps.alpha = 0.0;
  return packet(bp, ps, std::move(grid), t).u;
}

}  // namespace

// ---- ansatz error (full solve vs explicit main term) --------------------------

ExperimentResult exp_ansatz_error(const BumpProfile& bp,
                                  const AnsatzErrorConfig& cfg,
                                  const Tolerances& tol, SolveCache& cache) {
  ExperimentResult out;
  out.name = "ansatz-error";
  const std::vector<double> times = with_zero(cfg.times);

  // err[omega][t] per lambda
  std::map<double, std::map<double, std::vector<double>>> err_by_t;
  std::vector<double> lams;

  for (double lam : cfg.lambdas) {
    lams.push_back(lam);
    for (double omega : cfg.omegas) {
      PacketSpec spec{lam, cfg.delta, cfg.s, omega, 0.0};
      const bool warn = spec.interaction_regime_warns();
      GridPtr g = packet_grid(spec, cfg.grid);
      const auto t0 = Clock::now();
      const Trajectory& traj = cache.get(bp, spec, g, times, cfg.solver);
      double wall = seconds_since(t0);
      for (double t : cfg.times) {
        const Field& u = traj.at(t).u;
        Field diff = u - main_term(bp, spec, g, t);
        const double err = sobolev_norm(diff, NormSpec(cfg.s));
        const double bound = std::pow(lam, -1.0 / 48.0) +
                             std::abs(omega) * std::pow(lam, -0.25);
        RunRecord r;
        r.experiment = out.name;
        r.cols = {{"lambda", lam},
                  {"delta", cfg.delta},
                  {"s", cfg.s},
                  {"omega", omega},
                  {"t", t},
                  {"L", g->half_length()},
                  {"N", static_cast<double>(g->size())},
                  {"err_hs", err},
                  {"hs_norm", sobolev_norm(u, NormSpec(cfg.s))},
                  {"bound_units", bound},
                  {"c_ratio", err / bound},
                  {"omega_warn", warn ? 1.0 : 0.0}};
        r.wall_seconds = wall;
        wall = 0.0;
        require_finite(r);
        out.records.push_back(std::move(r));
        err_by_t[t][omega].push_back(err);
      }
    }
  }

  bool monotone = true;
  double cdev = 0.0;
  for (double t : cfg.times) {
    std::vector<double> cs;
    for (std::size_t i = 0; i < lams.size(); ++i) {
      double worst = 0.0;
      for (double omega : cfg.omegas)
        worst = std::max(worst, err_by_t[t][omega][i]);
      const double bound = std::pow(lams[i], -1.0 / 48.0) +
                           std::pow(lams[i], -0.25);
      cs.push_back(worst / bound);
      if (i > 0) {
        for (double omega : cfg.omegas)
          if (err_by_t[t][omega][i] >= err_by_t[t][omega][i - 1])
            monotone = false;
      }
    }
    cdev = std::max(cdev, max_rel_dev_from_mean(cs));
  }

  Verdict v1;
  v1.name = "tracking_error_monotone";
  v1.measured = monotone ? 1.0 : 0.0;
  v1.target = 1.0;
  v1.pass = monotone;
  v1.detail = "||u - main term||_Hs decreases along the ladder for each t";
  out.verdicts.push_back(v1);

  Verdict v2;
  v2.name = "tracking_constant_stability";
  v2.measured = cdev;
  v2.target = 0.0;
  v2.tol = tol.tracking_cstab_rel;
  v2.pass = cdev <= tol.tracking_cstab_rel;
  v2.detail =
      "spread of err / (lambda^{-1/48} + |omega| lambda^{-1/4}); the -1/48 "
      "exponent itself is unfittable at desk scale";
  out.verdicts.push_back(v2);
  return out;
}

// ---- separation ---------------------------------------------------------------

ExperimentResult exp_separation(const BumpProfile& bp,
                                const SeparationConfig& cfg,
                                const Tolerances& tol, SolveCache& cache) {
  ExperimentResult out;
  out.name = "separation";
  const std::vector<double> times = with_zero(cfg.times);
  const double target_c = std::sqrt(2.0) * bp.phi_l2();

  std::vector<std::pair<double, double>> d0_points;
  std::vector<double> sup_hs;  // per ladder point
  double worst_ratio_dev = 0.0, worst_ratio_dev_hi = 0.0;
  double standin_gap = 0.0, standin_budget = 0.0;
  bool standin_ok = true;

  for (std::size_t idx = 0; idx < cfg.n_list.size(); ++idx) {
    const int n = cfg.n_list[idx];
    const double lam = std::pow(2.0, n);
    const bool largest = idx + 1 == cfg.n_list.size();
    PacketSpec plus{lam, cfg.delta, cfg.s, std::abs(cfg.omega), 0.0};
    PacketSpec minus = plus;
    minus.omega = -plus.omega;
    plus.interaction_regime_warns();  // validates 1 - s < delta < 1
    GridPtr g = packet_grid(plus, cfg.grid);

    const auto t0 = Clock::now();
    const Trajectory& tp = cache.get(bp, plus, g, times, cfg.solver);
    const Trajectory& tm = cache.get(bp, minus, g, times, cfg.solver);
    double wall = seconds_since(t0);

    double hs_sup = 0.0;
    for (double t : times) {
      const Field& up = tp.at(t).u;
      const Field& um = tm.at(t).u;
      Field diff = up - um;
      const NormSpec ns(cfg.s);
      const double d = sobolev_norm(diff, ns);
      const double d_hi = sobolev_norm(highpass(diff, lam / 2.0), ns);
      Field standin_f =
          main_term(bp, plus, g, t) - main_term(bp, minus, g, t);
      const double standin = sobolev_norm(standin_f, ns);
      const double target = target_c * std::abs(std::sin(t));
      const double hp = sobolev_norm(up, ns);
      const double hm = sobolev_norm(um, ns);
      const double ep = sobolev_norm(up - main_term(bp, plus, g, t), ns);
      const double em = sobolev_norm(um - main_term(bp, minus, g, t), ns);
      hs_sup = std::max({hs_sup, hp, hm});

      RunRecord r;
      r.experiment = out.name;
      r.cols = {{"n", static_cast<double>(n)},
                {"lambda", lam},
                {"delta", cfg.delta},
                {"s", cfg.s},
                {"t", t},
                {"L", g->half_length()},
                {"N", static_cast<double>(g->size())},
                {"d_hs", d},
                {"d_high_hs", d_hi},
                {"standin_hs", standin},
                {"target", target},
                {"ratio", target > 0.0 ? d / target : 0.0},
                {"ratio_high", target > 0.0 ? d_hi / target : 0.0},
                {"hs_plus", hp},
                {"hs_minus", hm},
                {"err_plus", ep},
                {"err_minus", em}};
      r.wall_seconds = wall;
      wall = 0.0;
      require_finite(r);
      out.records.push_back(std::move(r));

      if (t == 0.0) d0_points.emplace_back(lam, d);
      if (largest && t > 0.0) {
        worst_ratio_dev = std::max(worst_ratio_dev, std::abs(d / target - 1.0));
        worst_ratio_dev_hi =
            std::max(worst_ratio_dev_hi, std::abs(d_hi / target - 1.0));
        if (std::abs(d - standin) > std::max(1e-300, ep + em))
          standin_ok = false;
        if (std::abs(d - standin) > standin_gap) {
          standin_gap = std::abs(d - standin);
          standin_budget = ep + em;
        }
      }
    }
    sup_hs.push_back(hs_sup);
  }

  Verdict v1;
  v1.name = "separation_d0_slope";
  v1.target = -(1.0 - cfg.delta) / 2.0;
  v1.tol = tol.sep_d0_slope_tol;
  if (d0_points.size() >= 3) {
    v1.measured = fit_slope(d0_points).slope;
    v1.detail = "initial distance d(0) vanishes with the low-bump exponent";
  } else if (d0_points.size() == 2) {
    v1.measured =
        local_log2_slope(d0_points[0].first, d0_points[0].second,
                         d0_points[1].first, d0_points[1].second);
    v1.detail = "two-point ladder: local slope instead of a least-squares fit";
  } else {
    throw ConfigError("separation: needs at least two ladder points");
  }
  v1.pass = std::abs(v1.measured - v1.target) <= v1.tol;
  out.verdicts.push_back(v1);

  Verdict v2;
  v2.name = "separation_match";
  v2.measured = worst_ratio_dev;
  v2.target = 0.0;
  v2.tol = tol.separation_rel;
  v2.pass = worst_ratio_dev <= tol.separation_rel;
  v2.detail =
      "full Hs distance vs sqrt(2)|sin t| ||phi|| at the largest lambda "
      "(carries the O(lambda^{-(1-delta)/2}) low-frequency difference)";
  out.verdicts.push_back(v2);

  Verdict v3;
  v3.name = "separation_match_highpass_supplementary";
  v3.measured = worst_ratio_dev_hi;
  v3.target = 0.0;
  v3.tol = tol.separation_rel;
  v3.pass = worst_ratio_dev_hi <= tol.separation_rel;
  v3.detail = "high-frequency part (|k| > lambda/2) of the same distance";
  out.verdicts.push_back(v3);

  Verdict v4;
  v4.name = "separation_uniform_bound";
  v4.measured = *std::max_element(sup_hs.begin(), sup_hs.end());
  v4.target = sup_hs.front();
  v4.tol = tol.uniform_bound_rel;
  v4.pass = v4.measured <= sup_hs.front() * (1.0 + tol.uniform_bound_rel);
  v4.detail =
      "sup_t Hs norm over the ladder never exceeds its smallest-lambda value "
      "by more than the tolerance (uniform bound: no growth in lambda)";
  out.verdicts.push_back(v4);

  Verdict v5;
  v5.name = "separation_standin_agreement";
  v5.measured = standin_gap;
  v5.target = standin_budget;
  v5.pass = standin_ok;
  v5.detail =
      "|d - analytic stand-in| within the measured tracking error bars at "
      "the largest lambda";
  out.verdicts.push_back(v5);
  return out;
}

// ---- soliton ------------------------------------------------------------------

ExperimentResult exp_soliton_check(const SolitonConfig& cfg,
                                   const Tolerances& tol) {
  ExperimentResult out;
  out.name = "soliton-check";
  const double L = cfg.half_length;
  std::size_t n = cfg.size;
  if (n == 0) {
    // resolve the Poisson-kernel tail: modes decay like exp(-m pi/(L c))
    n = 1u << 12;
    while (static_cast<double>(n) / 2.0 * SpectralGrid::kPi / (L * cfg.c) <
           40.0)
      n *= 2;
  }
  GridPtr g = make_grid(L, n);

  const auto t0 = Clock::now();
  Field u0 = soliton_field(g, cfg.c, 0.0);
  // substitution oracle: residual d_t u + H u_xx + u u_x of the exact
  // solution at t = 0 (u u_x = -rhs_nonlinear)
  Field res = soliton_time_derivative(g, cfg.c) + hilbert(derivative(u0, 2)) -
              rhs_nonlinear(u0, false);
  const double res_l2 = l2_norm(res);

  SolverConfig sc;
  sc.dt = cfg.solver.dt;
  sc.t_final = cfg.t_final;
  sc.sample_times = {0.0, cfg.t_final};
  Trajectory traj = evolve(u0, sc);
  const Field& uT = traj.at(cfg.t_final).u;
  const double err_exact =
      l2_norm(uT - soliton_field(g, cfg.c, cfg.t_final, true));
  const double err_c =
      l2_norm(uT - soliton_field(g, cfg.c, cfg.t_final, false));
  const Conserved c0 = traj.samples.front().invariants;
  const Conserved c1 = traj.samples.back().invariants;

  RunRecord r;
  r.experiment = out.name;
  r.cols = {{"c", cfg.c},
            {"L", L},
            {"N", static_cast<double>(n)},
            {"t", cfg.t_final},
            {"shape_err_c", err_c},
            {"shape_err_exact", err_exact},
            {"residual0_l2", res_l2},
            {"mass_drift", std::abs(c1.mass - c0.mass)},
            {"momentum_drift_rel",
             std::abs(c1.momentum - c0.momentum) / std::abs(c0.momentum)},
            {"energy_drift_rel",
             std::abs(c1.energy - c0.energy) / std::abs(c0.energy)}};
  r.wall_seconds = seconds_since(t0);
  require_finite(r);
  out.records.push_back(std::move(r));

  Verdict v;
  v.name = "soliton_shape";
  v.measured = err_c;
  v.target = 0.0;
  v.tol = tol.soliton_l2;
  v.pass = err_c <= tol.soliton_l2;
  v.detail = "L2 shape error at t = " + fmt(cfg.t_final) +
             " against the speed-c translate";
  out.verdicts.push_back(v);
  return out;
}

}  // namespace bo
