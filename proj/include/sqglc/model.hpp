#ifndef SQGLC_MODEL_HPP_
#define SQGLC_MODEL_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "sqglc/director.hpp"

namespace sqglc {

enum class ForcingMode { F1, F2, None };

std::string to_string(ForcingMode mode);

// Full parameterization of the coupled system:
//   d_t theta + u.grad theta + nu (-Delta)^a theta = lambda F(d)
//   u = grad^perp (-Delta)^{-1+alpha} theta
//   d_t d + u.grad d = gamma (Delta d + |grad d|^2 d)   [+ penalty terms when
//                                                        epsilon is set]
struct ModelParams {
  double a = 0.75;
  double alpha = 0.5;
  double nu = 1.0;
  double lambda = 1.0;
  double gamma = 1.0;
  ForcingMode forcing = ForcingMode::F1;
  std::optional<double> epsilon;  // ferromagnet penalty scale
  double dt = 1e-3;
  double t_final = 0.5;
  int n = 64;
  double cfl_limit = 0.5;

  void validate() const;

  // Advisory notes for parameter choices outside the regime the analysis
  // assumes (a in (1/2,1), alpha = 1/2, unit coefficients).  Flagged, never
  // forbidden.
  std::vector<std::string> flags() const;
};

struct SimState {
  double t = 0.0;
  int64_t step_index = 0;
  SpectralField theta;
  DirectorField d;
};

}  // namespace sqglc

#endif
