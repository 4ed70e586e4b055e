#include "sqglc/dynamics.hpp"

#include <cmath>
#include <memory>

namespace sqglc {

namespace {

// phi1(z) = (e^z - 1)/z, phi2(z) = (e^z - 1 - z)/z^2, with a series fallback
// for small |z| where the direct formulas cancel catastrophically.
double phi1(double z) {
  if (std::abs(z) < 1e-4) {
    return 1.0 + z * (0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z / 120.0)));
  }
  return std::expm1(z) / z;
}

double phi2(double z) {
  if (std::abs(z) < 1e-4) {
    return 0.5 + z * (1.0 / 6.0 + z * (1.0 / 24.0 + z * (1.0 / 120.0 + z / 720.0)));
  }
  return (std::expm1(z) - z) / (z * z);
}

// Per-mode ETD2RK weights for the semigroup exp(-coeff |k|^{2s} t).
struct EtdTables {
  std::vector<double> decay;  // e^{z}, z = -coeff |k|^{2s} dt
  std::vector<double> w1;     // dt phi1(z)
  std::vector<double> w2;     // dt phi2(z)
};

EtdTables build_etd(const SpectralGrid& grid, double coeff, double s,
                    double dt) {
  const int n = grid.n();
  EtdTables t;
  t.decay.resize(grid.size());
  t.w1.resize(grid.size());
  t.w2.resize(grid.size());
  for (int i = 0; i < n; ++i) {
    const double ki = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double kj = grid.wavenumber(j);
      const double k2 = ki * ki + kj * kj;
      const double z = -coeff * ((k2 == 0.0) ? 0.0 : std::pow(k2, s)) * dt;
      const size_t idx = grid.index(i, j);
      t.decay[idx] = std::exp(z);
      t.w1[idx] = dt * phi1(z);
      t.w2[idx] = dt * phi2(z);
    }
  }
  return t;
}

// The stepping loop asks for the same handful of weight tables every cycle.
const EtdTables& make_etd(const SpectralGrid& grid, double coeff, double s,
                          double dt) {
  struct Key {
    int n;
    double coeff, s, dt;
    bool operator==(const Key& o) const {
      return n == o.n && coeff == o.coeff && s == o.s && dt == o.dt;
    }
  };
  // unique_ptr entries keep returned references valid across cache churn
  thread_local std::vector<std::pair<Key, std::unique_ptr<EtdTables>>> cache;
  const Key key{grid.n(), coeff, s, dt};
  for (auto& entry : cache) {
    if (entry.first == key) return *entry.second;
  }
  if (cache.size() >= 8) cache.erase(cache.begin());
  cache.emplace_back(key,
                     std::make_unique<EtdTables>(build_etd(grid, coeff, s, dt)));
  return *cache.back().second;
}

SpectralField apply_tables(const std::vector<double>& w,
                           const SpectralField& f) {
  SpectralField out(f.grid_ptr(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.coeffs(c);
    auto dst = out.coeffs_mut(c);
    for (size_t i = 0; i < src.size(); ++i) dst[i] = w[i] * src[i];
  }
  return out;
}

// Generic ETD2RK step: stage a = E f + dt phi1 N(f), then
// f+ = a + dt phi2 (N(a) - N(f)).
template <typename Rhs>
SpectralField etd2rk(const SpectralField& f, const EtdTables& t, Rhs&& rhs) {
  const SpectralField n1 = rhs(f);
  SpectralField stage = apply_tables(t.decay, f) + apply_tables(t.w1, n1);
  const SpectralField n2 = rhs(stage);
  return stage + apply_tables(t.w2, n2 - n1);
}

// div(u theta) with dealiased products; exact conservative advection.
SpectralField advection_div(const SpectralField& u, const SpectralField& f) {
  return derivative(product_dealiased(u.component(0), f), 0) +
         derivative(product_dealiased(u.component(1), f), 1);
}

// u.grad f per component (3-component f), dealiased.
SpectralField advection_dot(const SpectralField& u, const SpectralField& f) {
  std::vector<SpectralField> parts;
  parts.reserve(f.components());
  for (int c = 0; c < f.components(); ++c) {
    const auto fc = f.component(c);
    parts.push_back(product_dealiased(u.component(0), derivative(fc, 0)) +
                    product_dealiased(u.component(1), derivative(fc, 1)));
  }
  return pack_components(parts);
}

// Director nonlinearity at a stage value (not necessarily unit norm):
// gamma (|grad d|^2 d [+ penalty]) - u.grad d.  Only the elastic part carries
// gamma; the transport term does not.
SpectralField director_rhs(const SpectralField& dfield, const SpectralField& u,
                           const ModelParams& params) {
  auto gp = grad_products(dfield);
  SpectralField scalar = gp.gradsq;
  if (params.epsilon) {
    const double inv_eps2 = 1.0 / (*params.epsilon * *params.epsilon);
    scalar += inv_eps2 * product_dealiased(dfield.component(2),
                                           dfield.component(2));
  }
  std::vector<SpectralField> parts;
  parts.reserve(3);
  for (int c = 0; c < 3; ++c) {
    parts.push_back(product_dealiased(scalar, dfield.component(c)));
  }
  if (params.epsilon) {
    const double inv_eps2 = 1.0 / (*params.epsilon * *params.epsilon);
    parts[2] -= inv_eps2 * dfield.component(2);
  }
  SpectralField g = params.gamma * pack_components(parts);
  g -= advection_dot(u, dfield);
  return g;
}

}  // namespace

std::string to_string(ForcingMode mode) {
  switch (mode) {
    case ForcingMode::F1:
      return "f1";
    case ForcingMode::F2:
      return "f2";
    case ForcingMode::None:
      return "none";
  }
  return "?";
}

void ModelParams::validate() const {
  if (!(a > 0.0 && a <= 1.0)) {
    throw ValidationError("a must lie in (0,1], got " + std::to_string(a));
  }
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw ValidationError("alpha must lie in [0,1], got " +
                          std::to_string(alpha));
  }
  if (!(nu > 0.0) || !(lambda > 0.0) || !(gamma > 0.0)) {
    throw ValidationError("nu, lambda, gamma must be positive");
  }
  if (!(dt > 0.0)) throw ValidationError("dt must be positive");
  if (!(t_final > 0.0)) throw ValidationError("t_final must be positive");
  if (n < 8 || n % 2 != 0) {
    throw ValidationError("n must be even and >= 8, got " + std::to_string(n));
  }
  if (epsilon && !(*epsilon > 0.0)) {
    throw ValidationError("epsilon must be positive when set");
  }
  if (!(cfl_limit > 0.0)) throw ValidationError("cfl_limit must be positive");
}

std::vector<std::string> ModelParams::flags() const {
  std::vector<std::string> out;
  if (!(a > 0.5 && a < 1.0) || alpha != 0.5) {
    out.push_back(
        "parameters outside the regime assumed by the regularity theory "
        "(a in (1/2,1), alpha = 1/2)");
  }
  if (nu != 1.0 || lambda != 1.0 || gamma != 1.0) {
    out.push_back(
        "energy-law diagnostics are normalized to nu = lambda = gamma = 1");
  }
  return out;
}

SpectralField forcing_term(const DirectorField& d, const ModelParams& params) {
  if (params.forcing == ForcingMode::None) {
    return zero_field(d.grid_ptr());
  }
  const SpectralField raw =
      params.epsilon ? curl_div_xi_tilde(d) : curl_div_xi(d);
  if (params.forcing == ForcingMode::F2) return raw;
  return fractional_laplacian(raw, params.alpha - 1.0);
}

SpectralField theta_rhs(const SimState& state, const ModelParams& params) {
  const auto u = biot_savart(state.theta, params.alpha);
  return params.lambda * forcing_term(state.d, params) -
         advection_div(u, state.theta);
}

SpectralField theta_tendency(const SimState& state, const ModelParams& params) {
  return theta_rhs(state, params) -
         params.nu * fractional_laplacian(state.theta, params.a);
}

SpectralField step_theta(const SimState& state, const ModelParams& params,
                         double dt) {
  const auto& grid = state.theta.grid();
  const EtdTables& tables = make_etd(grid, params.nu, params.a, dt);
  // d is frozen over the substep, so the forcing is a constant of the stage.
  const SpectralField forcing = params.lambda * forcing_term(state.d, params);
  auto rhs = [&](const SpectralField& theta) {
    const auto u = biot_savart(theta, params.alpha);
    return forcing - advection_div(u, theta);
  };
  SpectralField out = etd2rk(state.theta, tables, rhs);
  if (!out.all_finite()) {
    throw StepRejectedError("step_theta: non-finite value at t=" +
                            std::to_string(state.t));
  }
  return out;
}

DirectorField step_director(const SimState& state, const ModelParams& params,
                            double dt, double* defect_out) {
  const auto& grid = state.d.field().grid();
  const EtdTables& tables = make_etd(grid, params.gamma, 1.0, dt);
  // u is frozen from the current temperature over the whole director substep.
  const auto u = biot_savart(state.theta, params.alpha);
  auto rhs = [&](const SpectralField& d) {
    return director_rhs(d, u, params);
  };
  SpectralField out = etd2rk(state.d.field(), tables, rhs);
  if (!out.all_finite()) {
    throw StepRejectedError("step_director: non-finite value at t=" +
                            std::to_string(state.t));
  }
  if (defect_out != nullptr) *defect_out = unit_norm_defect(out);
  return normalize_pointwise(out);
}

SpectralField ferromagnet_rhs(const SimState& state,
                              const ModelParams& params) {
  if (!params.epsilon) {
    throw MissingEpsilonError("ferromagnet_rhs: epsilon not set");
  }
  const auto u = biot_savart(state.theta, params.alpha);
  return director_rhs(state.d.field(), u, params);
}

SpectralField vorticity_rhs_direct(const SpectralField& omega,
                                   const DirectorField& d, double nu,
                                   double lambda) {
  // Stream function route for the velocity: psi = (-Delta)^{-1} omega,
  // u = (-d2 psi, d1 psi).
  const auto psi = fractional_laplacian(omega, -1.0);
  const auto grad_psi = differential_op(psi, Diff::Grad);
  const auto u = pack_components(
      {-1.0 * grad_psi.component(1), grad_psi.component(0)});

  // Non-conservative advection u.grad omega.
  const auto adv = product_dealiased(u.component(0), derivative(omega, 0)) +
                   product_dealiased(u.component(1), derivative(omega, 1));

  // curl div Xi contracted from A(grad d):
  // (d11 - d22) A11 + d12 (A12 + A21).
  const auto am = a_matrix(d);
  const auto curl_xi =
      derivative(derivative(am.a11, 0), 0) -
      derivative(derivative(am.a11, 1), 1) +
      derivative(derivative(am.a12 + am.a21, 0), 1);

  return -1.0 * adv + nu * differential_op(omega, Diff::Laplacian) +
         lambda * curl_xi;
}

RunResult run_simulation(const ModelParams& params, SpectralField theta0,
                         DirectorField d0, const RunOptions& options) {
  params.validate();
  if (options.monitor_energy && params.lambda != params.gamma) {
    throw ValidationError(
        "run_simulation: lambda must equal gamma while the energy-law "
        "monitor is enabled");
  }
  if (theta0.components() != 1) {
    throw ComponentMismatchError("run_simulation: theta0 must be scalar");
  }
  if (theta0.n() != params.n || d0.n() != params.n) {
    throw GridMismatchError("run_simulation: initial data grid != params.n");
  }

  SimState state;
  state.theta = apply_dealias_mask(remove_mean(std::move(theta0)));
  state.d = std::move(d0);
  state.t = 0.0;
  state.step_index = 0;

  const int64_t steps =
      std::max<int64_t>(1, std::llround(params.t_final / params.dt));
  const double h = kDomainLength / params.n;

  EnergyReport report;
  report.p_list = options.p_list;
  report.theta0_norm_thm = lp_norm(state.theta, 2.0 / (2.0 * params.a - 1.0));
  report.theta0_norm_semigroup =
      lp_norm(state.theta, 2.0 * params.a / (2.0 * params.a - 1.0));

  std::vector<double> acc_theta(options.p_list.size(), 0.0);
  std::vector<double> acc_gradd(options.p_list.size(), 0.0);

  auto record = [&](double defect) {
    EnergySample s;
    s.t = state.t;
    const EnergyTriple e = energies(state, params);
    s.e1 = e.e1;
    s.e2 = e.e2;
    s.dissipation = e.dissipation;
    s.balance_residual = balance_residual(state, params);
    s.max_theta = state.theta.max_abs();
    s.max_grad_d = max_grad_d(state.d);
    s.lp_theta_acc = acc_theta;
    s.lp_gradd_acc = acc_gradd;
    s.projection_defect = defect;
    report.append(s);
    if (options.on_sample) options.on_sample(state, report.samples.back());
  };

  record(0.0);

  for (int64_t step = 0; step < steps; ++step) {
    // Advective CFL check on the velocity entering this cycle.
    const auto u = biot_savart(state.theta, params.alpha);
    const double umax = u.max_abs();
    const double cfl = umax * params.dt / h;
    if (cfl > params.cfl_limit) {
      throw CflViolationError("CFL violation at step " + std::to_string(step) +
                              ": max|u| dt / h = " + std::to_string(cfl) +
                              " > " + std::to_string(params.cfl_limit));
    }

    state.theta = step_theta(state, params, 0.5 * params.dt);
    double defect = 0.0;
    state.d = step_director(state, params, params.dt, &defect);
    state.theta = step_theta(state, params, 0.5 * params.dt);

    ++state.step_index;
    state.t = state.step_index * params.dt;
    report.max_projection_defect =
        std::max(report.max_projection_defect, defect);

    accumulate_lp(acc_theta, acc_gradd, state, options.p_list, params.dt);

    if ((options.cadence > 0 && state.step_index % options.cadence == 0) ||
        step + 1 == steps) {
      record(defect);
    }
  }

  return {std::move(state), std::move(report)};
}

}  // namespace sqglc
