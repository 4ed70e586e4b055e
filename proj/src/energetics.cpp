#include "sqglc/energetics.hpp"

#include <cmath>
#include <limits>

namespace sqglc {

namespace {

double grad_energy(const DirectorField& d) {
  double acc = 0.0;
  for (int m = 0; m < 3; ++m) {
    const auto dm = d.component(m);
    for (int axis = 0; axis < 2; ++axis) {
      const auto g = derivative(dm, axis);
      acc += inner_product(g, g);
    }
  }
  return acc;
}

// Pointwise |grad d| samples on the grid.
std::vector<double> grad_magnitude(const DirectorField& d) {
  const int n = d.n();
  const size_t m = static_cast<size_t>(n) * n;
  std::vector<double> mag(m, 0.0);
  for (int c = 0; c < 3; ++c) {
    const auto dm = d.component(c);
    for (int axis = 0; axis < 2; ++axis) {
      const auto g = derivative(dm, axis).physical();
      for (size_t i = 0; i < m; ++i) mag[i] += g[i] * g[i];
    }
  }
  for (auto& v : mag) v = std::sqrt(v);
  return mag;
}

double cell_area(int n) {
  const double h = kDomainLength / n;
  return h * h;
}

}  // namespace

EnergyTriple energies(const SimState& state, const ModelParams& params) {
  const double theta_l2 = inner_product(state.theta, state.theta);
  const double grad_d = grad_energy(state.d);

  const auto half_weighted =
      fractional_laplacian(state.theta, 0.5 * (params.alpha - 1.0));
  const double e2_theta = inner_product(half_weighted, half_weighted);

  const auto diss_weighted = fractional_laplacian(
      state.theta, 0.5 * (params.alpha - 1.0 + params.a));
  const auto tau = tension(state.d);
  const double dissipation =
      inner_product(tau, tau) + inner_product(diss_weighted, diss_weighted);

  return {theta_l2 + grad_d, e2_theta + grad_d, dissipation};
}

double balance_residual(const SimState& state, const ModelParams& params) {
  if (params.forcing == ForcingMode::None) return 0.0;

  const SpectralField raw =
      params.epsilon ? curl_div_xi_tilde(state.d) : curl_div_xi(state.d);

  double forcing_pairing = 0.0;
  if (params.forcing == ForcingMode::F1) {
    const auto f1 = fractional_laplacian(raw, params.alpha - 1.0);
    forcing_pairing = inner_product(f1, state.theta);
  } else {
    const auto weighted = fractional_laplacian(state.theta, params.alpha - 1.0);
    forcing_pairing = inner_product(raw, weighted);
  }

  const auto u = biot_savart(state.theta, params.alpha);
  double transport = 0.0;
  for (int m = 0; m < 3; ++m) {
    const auto dm = state.d.component(m);
    const auto adv = product_dealiased(u.component(0), derivative(dm, 0)) +
                     product_dealiased(u.component(1), derivative(dm, 1));
    transport += inner_product(adv, differential_op(dm, Diff::Laplacian));
  }
  return forcing_pairing + transport;
}

double max_grad_d(const DirectorField& d) {
  const auto mag = grad_magnitude(d);
  double m = 0.0;
  for (double v : mag) m = std::max(m, v);
  return m;
}

double lp_integral_theta(const SpectralField& theta, double p) {
  const auto vals = theta.physical();
  double acc = 0.0;
  for (double v : vals) acc += std::pow(std::abs(v), p);
  return acc * cell_area(theta.n());
}

double lp_integral_grad_d(const DirectorField& d, double p) {
  const auto mag = grad_magnitude(d);
  double acc = 0.0;
  for (double v : mag) acc += std::pow(v, p);
  return acc * cell_area(d.n());
}

void EnergyReport::append(EnergySample sample) {
  if (!samples.empty() && !(sample.t > samples.back().t)) {
    throw ValidationError("EnergyReport: timestamps must strictly increase");
  }
  const double probe[] = {sample.e1,        sample.e2,
                          sample.dissipation, sample.balance_residual,
                          sample.max_theta, sample.max_grad_d};
  for (double v : probe) {
    if (!std::isfinite(v)) {
      throw ValidationError("EnergyReport: non-finite diagnostic value");
    }
  }
  samples.push_back(std::move(sample));
}

void accumulate_lp(std::vector<double>& theta_acc,
                   std::vector<double>& gradd_acc, const SimState& state,
                   const std::vector<double>& p_list, double dt) {
  for (size_t i = 0; i < p_list.size(); ++i) {
    theta_acc[i] += dt * lp_integral_theta(state.theta, p_list[i]);
    gradd_acc[i] += dt * lp_integral_grad_d(state.d, p_list[i]);
  }
}

double regularity_threshold(double a) {
  if (!(a > 0.5)) {
    throw InvalidAError("regularity threshold undefined for a <= 1/2 (a=" +
                        std::to_string(a) + ")");
  }
  if (!(a <= 1.0)) {
    throw InvalidAError("a must lie in (1/2,1], got " + std::to_string(a));
  }
  return (2.0 * a + 2.0) / (2.0 * a - 1.0);
}

RegularityVerdict regularity_hypotheses_check(const ModelParams& params,
                                              const EnergyReport& report) {
  RegularityVerdict verdict;
  verdict.p_star = regularity_threshold(params.a);

  auto window_growth = [&](auto accessor, size_t pi) {
    // Increment over the second half of the run divided by the increment over
    // the first half; ~1 means steady accumulation, >1 growth.
    if (report.samples.size() < 3) return 1.0;
    const size_t mid = report.samples.size() / 2;
    const double a0 = accessor(report.samples.front(), pi);
    const double am = accessor(report.samples[mid], pi);
    const double a1 = accessor(report.samples.back(), pi);
    const double first = am - a0;
    const double second = a1 - am;
    if (first <= 0.0) return second > 0.0 ? std::numeric_limits<double>::infinity() : 1.0;
    return second / first;
  };

  auto theta_at = [](const EnergySample& s, size_t pi) {
    return pi < s.lp_theta_acc.size() ? s.lp_theta_acc[pi] : 0.0;
  };
  auto gradd_at = [](const EnergySample& s, size_t pi) {
    return pi < s.lp_gradd_acc.size() ? s.lp_gradd_acc[pi] : 0.0;
  };

  for (size_t i = 0; i < report.p_list.size(); ++i) {
    const double p = report.p_list[i];
    RegularityEntry te;
    te.p = p;
    te.satisfies_threshold = p > verdict.p_star;
    te.accumulated =
        report.samples.empty() ? 0.0 : theta_at(report.samples.back(), i);
    te.window_growth = window_growth(theta_at, i);
    verdict.theta_entries.push_back(te);

    RegularityEntry ge;
    ge.p = p;
    ge.satisfies_threshold = p > 4.0;
    ge.accumulated =
        report.samples.empty() ? 0.0 : gradd_at(report.samples.back(), i);
    ge.window_growth = window_growth(gradd_at, i);
    verdict.gradd_entries.push_back(ge);
  }
  return verdict;
}

namespace {

// Recursion maps; the caller guards the "arbitrarily large" branches.
double p_update(double m, double a) {
  return (2.0 + 2.0 * a) * m / (4.0 + 4.0 * a - (2.0 * a - 1.0) * m);
}

double q_update(double m) { return 4.0 * m / (8.0 - m); }

}  // namespace

BootstrapResult bootstrap_iterate(double p0, double q0, double a,
                                  int max_iters, double target) {
  if (!(a > 0.5 && a <= 1.0)) {
    throw InvalidAError("bootstrap_iterate: a must lie in (1/2,1], got " +
                        std::to_string(a));
  }
  if (!(p0 >= 1.0 && q0 >= 1.0)) {
    throw ValidationError("bootstrap_iterate: exponents must be >= 1");
  }

  BootstrapResult result;
  result.p_star = regularity_threshold(a);
  const double p_inf_threshold = (4.0 * a + 4.0) / (2.0 * a - 1.0);

  double p = p0, q = q0;
  bool p_inf = false, q_inf = false;
  result.trajectory.push_back({p, q, false, false, '0'});

  const bool hypotheses_ok = p0 > result.p_star && q0 > 4.0;

  auto min_exponent = [&]() {
    if (p_inf && q_inf) return std::numeric_limits<double>::infinity();
    if (p_inf) return q;
    if (q_inf) return p;
    return std::min(p, q);
  };
  auto done = [&]() {
    const bool p_big = p_inf || p > target;
    const bool q_big = q_inf || q > target;
    return p_big && q_big;
  };

  auto q_step = [&]() -> bool {  // returns false when the sequence stalls
    if (q_inf) return true;
    const double m = min_exponent();
    const double before = q;
    if (m >= 8.0) {
      q_inf = true;
      q = std::numeric_limits<double>::infinity();
    } else {
      q = q_update(m);
    }
    result.trajectory.push_back({p, q, p_inf, q_inf, 'q'});
    return q_inf || q > before;
  };
  auto p_step = [&]() -> bool {
    if (p_inf) return true;
    const double m = min_exponent();
    const double before = p;
    if (m >= p_inf_threshold) {
      p_inf = true;
      p = std::numeric_limits<double>::infinity();
    } else {
      p = p_update(m, a);
    }
    result.trajectory.push_back({p, q, p_inf, q_inf, 'p'});
    return p_inf || p > before;
  };

  int iters = 0;
  while (!done() && iters < max_iters) {
    // Phase 1: hold p, iterate q up to the magnitude of p.
    while (!q_inf && q < (p_inf ? target + 1.0 : p) && iters < max_iters) {
      ++iters;
      if (!q_step()) {
        result.stalled = !hypotheses_ok;
        result.diverged = false;
        return result;
      }
    }
    if (done() || iters >= max_iters) break;
    // Phase 2: hold q, improve p once.
    ++iters;
    if (!p_step()) {
      result.stalled = !hypotheses_ok;
      result.diverged = false;
      return result;
    }
    if (done() || iters >= max_iters) break;
    // Phase 3: hold p, improve q once.
    ++iters;
    if (!q_step()) {
      result.stalled = !hypotheses_ok;
      result.diverged = false;
      return result;
    }
  }

  result.diverged = done();
  result.stalled = !result.diverged && !hypotheses_ok;
  return result;
}

}  // namespace sqglc
