#ifndef SQGLC_DYNAMICS_HPP_
#define SQGLC_DYNAMICS_HPP_

#include <functional>

#include "sqglc/energetics.hpp"
#include "sqglc/model.hpp"

namespace sqglc {

// Coupling term on the temperature equation (unscaled by lambda):
//   F1: (-Delta)^{alpha-1} curl div Xi,   F2: curl div Xi,   None: 0.
// In ferromagnet mode (epsilon set) the tilde stress tensor replaces Xi.
SpectralField forcing_term(const DirectorField& d, const ModelParams& params);

// N(theta, d) = lambda F(d) - div(u theta), conservative advection (exact for
// divergence-free u), dealiased.  Always zero-mean.
SpectralField theta_rhs(const SimState& state, const ModelParams& params);

// N(theta, d) - nu (-Delta)^a theta; the full tendency used by cross-assembly
// regression checks (the stepping itself treats the dissipation exactly).
SpectralField theta_tendency(const SimState& state, const ModelParams& params);

// One ETD2RK step of the temperature equation over dt: exact semigroup
// e^{-nu |k|^{2a} dt} plus phi-function weights on the nonlinearity.
// StepRejected on non-finite values.
SpectralField step_theta(const SimState& state, const ModelParams& params,
                         double dt);

// One ETD2RK step of the director equation (heat semigroup e^{-gamma |k|^2 dt},
// nonlinearity G = |grad d|^2 d - u.grad d, penalty terms in ferromagnet
// mode), followed by projection to the sphere.  The unit-norm defect of the
// unprojected update is written to defect_out when non-null.
DirectorField step_director(const SimState& state, const ModelParams& params,
                            double dt, double* defect_out = nullptr);

// G_ferro = (|grad d|^2 + d3^2/eps^2) d - (d3/eps^2) e3 - u.grad d.
// MissingEpsilon unless params.epsilon is set.
SpectralField ferromagnet_rhs(const SimState& state, const ModelParams& params);

// Independent assembly of the reference vorticity-mode tendency
//   -u.grad w + nu Laplacian w + lambda curl div Xi,
// with u recovered from the stream function and curl div Xi contracted from
// the quadratic matrix A(grad d).  Used as the regression oracle against the
// family tendency at (a=1, alpha=0, F2).
SpectralField vorticity_rhs_direct(const SpectralField& omega,
                                   const DirectorField& d, double nu = 1.0,
                                   double lambda = 1.0);

struct RunOptions {
  int cadence = 10;  // diagnostics every this many cycles
  std::vector<double> p_list;
  bool monitor_energy = true;  // requires lambda == gamma
  std::function<void(const SimState&, const EnergySample&)> on_sample;
};

struct RunResult {
  SimState state;
  EnergyReport report;
};

// Advances theta and d to t_final with Strang splitting (theta half step,
// d full step, theta half step; u frozen over the director substep).  The
// advective CFL bound max|u| dt / h <= cfl_limit is checked every cycle.
RunResult run_simulation(const ModelParams& params, SpectralField theta0,
                         DirectorField d0, const RunOptions& options = {});

}  // namespace sqglc

#endif
