#ifndef SQGLC_ENERGETICS_HPP_
#define SQGLC_ENERGETICS_HPP_

#include <functional>
#include <string>
#include <vector>

#include "sqglc/model.hpp"

namespace sqglc {

struct EnergyTriple {
  double e1;           // int theta^2 + |grad d|^2
  double e2;           // int |(-Delta)^{(alpha-1)/2} theta|^2 + |grad d|^2
  double dissipation;  // int |tau(d)|^2 + |(-Delta)^{(alpha-1+a)/2} theta|^2
};

EnergyTriple energies(const SimState& state, const ModelParams& params);

// Left side of the basic energy law, assembled with dealiased products:
//   F1 mode:  int F1(d) theta        + int (u.grad d) . Laplacian d
//   F2 mode:  int F2(d) (-Dlt)^{a-1}theta + int (u.grad d) . Laplacian d
// (forcing None reports 0; no balance is claimed for the unforced system).
double balance_residual(const SimState& state, const ModelParams& params);

// Pointwise |grad d| maxima and L^p quadrature helpers.
double max_grad_d(const DirectorField& d);
double lp_integral_theta(const SpectralField& theta, double p);
double lp_integral_grad_d(const DirectorField& d, double p);

// One time-stamped diagnostics record (CSV row).
struct EnergySample {
  double t = 0.0;
  double e1 = 0.0;
  double e2 = 0.0;
  double dissipation = 0.0;
  double balance_residual = 0.0;
  double max_theta = 0.0;
  double max_grad_d = 0.0;
  std::vector<double> lp_theta_acc;
  std::vector<double> lp_gradd_acc;
  double projection_defect = 0.0;  // diagnostic, not part of the CSV schema
};

struct EnergyReport {
  std::vector<double> p_list;
  std::vector<EnergySample> samples;
  std::string splitting = "strang(theta-half,d-full,theta-half)";
  // Two exponents compete as the natural initial-data class, 2/(2a-1) and
  // the semigroup-decay exponent 2a/(2a-1); both norms are reported.
  double theta0_norm_thm = 0.0;
  double theta0_norm_semigroup = 0.0;
  double max_projection_defect = 0.0;

  // Enforces strictly increasing timestamps and finite values.
  void append(EnergySample sample);
};

// Space-time L^p accumulators: adds dt * int |theta|^p and dt * int |grad d|^p
// for every p in p_list.
void accumulate_lp(std::vector<double>& theta_acc,
                   std::vector<double>& gradd_acc, const SimState& state,
                   const std::vector<double>& p_list, double dt);

// Informational check of the regularity hypotheses: reports the threshold
// p* = (2a+2)/(2a-1), the accumulated space-time norms, and window-over-window
// growth.  Discrete norms are always finite; no proof is implied.
struct RegularityEntry {
  double p = 0.0;
  bool satisfies_threshold = false;
  double accumulated = 0.0;
  double window_growth = 0.0;  // second-half increment / first-half increment
};

struct RegularityVerdict {
  double p_star = 0.0;
  std::vector<RegularityEntry> theta_entries;
  std::vector<RegularityEntry> gradd_entries;
};

RegularityVerdict regularity_hypotheses_check(const ModelParams& params,
                                              const EnergyReport& report);

double regularity_threshold(double a);  // (2a+2)/(2a-1); InvalidA if a <= 1/2

// Bootstrap recursion for the space-time integrability exponents.  The
// "arbitrarily large" branches map to a distinguished +infinity marker.
struct BootstrapStep {
  double p = 0.0;
  double q = 0.0;
  bool p_infinite = false;
  bool q_infinite = false;
  char phase = '0';  // '0' start, 'q' q-update, 'p' p-update
};

struct BootstrapResult {
  std::vector<BootstrapStep> trajectory;
  bool diverged = false;  // both exponents exceeded target (or +inf)
  bool stalled = false;   // hypotheses failed and the sequence stopped improving
  double p_star = 0.0;
};

BootstrapResult bootstrap_iterate(double p0, double q0, double a,
                                  int max_iters = 200, double target = 100.0);

}  // namespace sqglc

#endif
