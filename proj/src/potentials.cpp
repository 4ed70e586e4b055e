#include "sqglc/potentials.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sqglc/parallel.hpp"
#include "sqglc/spectral.hpp"

namespace sqglc {

namespace {

struct Idx {
  int it, ix, iy;
};

Idx unpack(const SpaceTimeLattice& g, size_t flat) {
  const int iy = static_cast<int>(flat % g.nx);
  const int ix = static_cast<int>((flat / g.nx) % g.nx);
  const int it = static_cast<int>(flat / (static_cast<size_t>(g.nx) * g.nx));
  return {it, ix, iy};
}

double axis_distance(const SpaceTimeLattice& g, int i1, int i2) {
  double d = std::abs(i1 - i2) * g.dx;
  if (g.periodic_space) {
    const double period = g.space_extent();
    d = std::fmod(d, period);
    d = std::min(d, period - d);
  }
  return d;
}

// Dyadic radius ladder: smallest resolves one cell, largest covers the
// lattice diameter in the delta metric.
std::vector<double> dyadic_radii(const SpaceTimeLattice& g, double a) {
  const double r0 = std::min(g.dx, std::pow(g.dt, 1.0 / (2.0 * a)));
  const double space_diam =
      g.periodic_space ? 0.5 * g.space_extent() * std::sqrt(2.0)
                       : g.space_extent() * std::sqrt(2.0);
  const double rmax = 2.0 * std::max(space_diam,
                                     std::pow(g.nt * g.dt, 1.0 / (2.0 * a)));
  std::vector<double> radii;
  for (double r = r0; r < 2.0 * rmax; r *= 2.0) radii.push_back(r);
  return radii;
}

}  // namespace

void SpaceTimeLattice::validate() const {
  if (nt < 1 || nx < 1) throw ValidationError("lattice: empty dimensions");
  if (!(dt > 0.0) || !(dx > 0.0)) {
    throw ValidationError("lattice: spacings must be positive");
  }
  if (values.size() != size()) {
    throw ValidationError("lattice: value count does not match dimensions");
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError("lattice: non-finite value");
  }
}

double lattice_delta(const SpaceTimeLattice& g, int it1, int ix1, int iy1,
                     int it2, int ix2, int iy2, double a) {
  const double dx0 = axis_distance(g, ix1, ix2);
  const double dx1 = axis_distance(g, iy1, iy2);
  const double space = std::sqrt(dx0 * dx0 + dx1 * dx1);
  const double time = std::pow(std::abs(it1 - it2) * g.dt, 1.0 / (2.0 * a));
  return std::max(space, time);
}

SpaceTimeLattice riesz_potential(const SpaceTimeLattice& f, double beta,
                                 double a) {
  f.validate();
  if (!(beta > 0.0 && beta < 2.0 + 2.0 * a)) {
    throw UnsupportedBetaError("riesz_potential: beta must lie in (0, 2+2a)");
  }
  const double exponent = beta - (2.0 + 2.0 * a);
  const double cell = f.cell_volume();
  // Volume-matched delta-cylinder for the singular cell: |Q_rho| =
  // 2 pi rho^{2+2a} = cell, integrated in closed form:
  // int_{Q_rho} delta^{beta-(2+2a)} = 2 pi (2+2a) rho^beta / beta.
  const double rho = std::pow(cell / (2.0 * M_PI), 1.0 / (2.0 + 2.0 * a));
  const double singular_weight =
      2.0 * M_PI * (2.0 + 2.0 * a) * std::pow(rho, beta) / beta;

  SpaceTimeLattice out = f;
  const size_t n = f.size();
  parallel_for(0, static_cast<int>(n), [&](int zi) {
    const Idx z = unpack(f, zi);
    double acc = f.values[zi] * singular_weight;
    for (size_t wi = 0; wi < n; ++wi) {
      if (wi == static_cast<size_t>(zi)) continue;
      const Idx w = unpack(f, wi);
      const double d =
          lattice_delta(f, z.it, z.ix, z.iy, w.it, w.ix, w.iy, a);
      acc += f.values[wi] * std::pow(d, exponent) * cell;
    }
    out.values[zi] = acc;
  });
  return out;
}

SpaceTimeLattice maximal_operator(const SpaceTimeLattice& f,
                                  double alpha_order, double a) {
  f.validate();
  if (!(alpha_order >= 0.0 && alpha_order < 2.0 + 2.0 * a)) {
    throw UnsupportedParametersError(
        "maximal_operator: order must lie in [0, 2+2a)");
  }
  const auto radii = dyadic_radii(f, a);
  const size_t n = f.size();
  const size_t shells = radii.size();

  SpaceTimeLattice out = f;
  parallel_for(0, static_cast<int>(n), [&](int zi) {
    const Idx z = unpack(f, zi);
    // shell index = smallest dyadic radius strictly greater than delta
    std::vector<double> sums(shells, 0.0);
    std::vector<size_t> counts(shells, 0);
    for (size_t wi = 0; wi < n; ++wi) {
      const Idx w = unpack(f, wi);
      const double d =
          lattice_delta(f, z.it, z.ix, z.iy, w.it, w.ix, w.iy, a);
      size_t shell = 0;
      while (shell < shells && !(d < radii[shell])) ++shell;
      if (shell >= shells) continue;
      sums[shell] += std::abs(f.values[wi]);
      counts[shell] += 1;
    }
    double best = 0.0;
    double run_sum = 0.0;
    size_t run_count = 0;
    for (size_t s = 0; s < shells; ++s) {
      run_sum += sums[s];
      run_count += counts[s];
      if (run_count == 0) continue;
      best = std::max(best, std::pow(radii[s], alpha_order) * run_sum /
                                static_cast<double>(run_count));
    }
    out.values[zi] = best;
  });
  return out;
}

namespace {

// Shared cylinder-sup core for Morrey/Campanato style norms.
template <typename RadiusRange>
double cylinder_norm_sup(const SpaceTimeLattice& f, double p, double lambda,
                         double a, bool subtract_mean,
                         const RadiusRange& radii, int stride_space,
                         int stride_time, size_t min_samples,
                         bool* any_cylinder) {
  const double cell = f.cell_volume();
  double sup = 0.0;
  if (any_cylinder != nullptr) *any_cylinder = false;

  std::vector<size_t> members;
  for (int ct = 0; ct < f.nt; ct += stride_time) {
    for (int cx = 0; cx < f.nx; cx += stride_space) {
      for (int cy = 0; cy < f.nx; cy += stride_space) {
        for (double r : radii) {
          members.clear();
          for (size_t wi = 0; wi < f.size(); ++wi) {
            const Idx w = unpack(f, wi);
            if (lattice_delta(f, ct, cx, cy, w.it, w.ix, w.iy, a) < r) {
              members.push_back(wi);
            }
          }
          if (members.size() < min_samples) continue;
          if (any_cylinder != nullptr) *any_cylinder = true;
          double mean = 0.0;
          if (subtract_mean) {
            for (size_t wi : members) mean += f.values[wi];
            mean /= static_cast<double>(members.size());
          }
          double integral = 0.0;
          for (size_t wi : members) {
            integral += std::pow(std::abs(f.values[wi] - mean), p);
          }
          integral *= cell;
          sup = std::max(sup,
                         std::pow(r, lambda - (2.0 + 2.0 * a)) * integral);
        }
      }
    }
  }
  return sup;
}

}  // namespace

double morrey_campanato_norm(const SpaceTimeLattice& f, double p,
                             double lambda, double a, NormFlavor flavor,
                             int center_stride) {
  f.validate();
  if (!(p >= 1.0)) throw UnsupportedParametersError("norm: p must be >= 1");
  if (flavor == NormFlavor::Morrey &&
      !(lambda >= 0.0 && lambda <= 2.0 + 2.0 * a)) {
    throw UnsupportedParametersError("morrey: lambda must lie in [0, 2+2a]");
  }
  if (flavor == NormFlavor::Campanato &&
      !(lambda > -p && lambda < 2.0 + 2.0 * a)) {
    throw UnsupportedParametersError(
        "campanato: lambda must lie in (-p, 2+2a)");
  }
  return cylinder_norm_sup(f, p, lambda, a,
                           flavor == NormFlavor::Campanato,
                           dyadic_radii(f, a), center_stride, center_stride,
                           1, nullptr);
}

double campanato_seminorm(const SpaceTimeLattice& f,
                          const std::vector<double>& r_list, double p,
                          double lambda, double a) {
  f.validate();
  const double r_min = 2.0 * std::pow(f.dt, 1.0 / (2.0 * a));
  const double r_max = 0.25 * f.space_extent();
  for (double r : r_list) {
    if (!(r > r_min && r < r_max)) {
      throw ValidationError(
          "campanato_seminorm: radii must lie in (2 dt^{1/2a}, extent/4)");
    }
  }
  bool any = false;
  const double sup =
      cylinder_norm_sup(f, p, lambda, a, true, r_list, 4, 4, 8, &any);
  if (!any) {
    throw InsufficientResolutionError(
        "campanato_seminorm: no cylinder holds 8 space-time samples");
  }
  return sup;
}

HedbergReport hedberg_check(const SpaceTimeLattice& f, double p, double lambda,
                            double beta, double a) {
  f.validate();
  if (!(p >= 1.0) || !(lambda > 0.0 && lambda <= 2.0 + 2.0 * a) ||
      !(beta > 0.0 && beta < lambda / p)) {
    throw UnsupportedParametersError(
        "hedberg_check: need p >= 1, lambda in (0,2+2a], 0 < beta < lambda/p");
  }
  for (double v : f.values) {
    if (v < 0.0) {
      throw UnsupportedParametersError("hedberg_check: f must be nonnegative");
    }
  }

  // Constant assembled from the dyadic-shell sums of the proof, with lattice
  // allowances: kappa_d = 2pi 2^{2+2a} bounds the measure of a shell-covering
  // cylinder on the lattice, the leading 2^beta covers rounding the optimal
  // split radius up to the next dyadic level, and the last term is the
  // closed-form singular-cell integral.
  const double dim = 2.0 + 2.0 * a;
  const double lp = lambda / p;
  const double kappa_d = 2.0 * M_PI * std::pow(2.0, dim);
  const double c1 = kappa_d * std::pow(2.0, dim) / (1.0 - std::pow(2.0, -beta));
  const double c2 = kappa_d * std::pow(2.0, dim - lp) *
                    std::pow(2.0, beta - lp) /
                    (1.0 - std::pow(2.0, beta - lp));
  const double c_sing = 2.0 * M_PI * dim / beta;
  const double constant = std::pow(2.0, beta) * (c1 + c2) + c_sing;

  const auto potential = riesz_potential(f, beta, a);
  const auto m_zero = maximal_operator(f, 0.0, a);
  const auto m_frac = maximal_operator(f, lp, a);

  HedbergReport report;
  report.constant = constant;
  const double theta_exp = beta * p / lambda;
  for (size_t i = 0; i < f.size(); ++i) {
    const double denom = constant * std::pow(m_frac.values[i], theta_exp) *
                         std::pow(m_zero.values[i], 1.0 - theta_exp);
    if (denom <= 0.0) continue;
    report.max_ratio = std::max(report.max_ratio, potential.values[i] / denom);
    ++report.points;
  }
  return report;
}

PoincareReport poincare_check(const SpaceTimeLattice& theta, double beta,
                              double p, double a,
                              const std::vector<double>& r_list) {
  theta.validate();
  if (!theta.periodic_space) {
    throw UnsupportedParametersError(
        "poincare_check: spectral (-Delta)^beta needs a periodic lattice");
  }
  if (theta.nx < 8 || theta.nx % 2 != 0) {
    throw InsufficientResolutionError("poincare_check: nx must be even >= 8");
  }

  // (-Delta)^beta slice by slice; physical wavenumbers are 2pi/L k, so the
  // torus-grid multiplier picks up (2pi/L)^{2beta}.
  const int nx = theta.nx;
  const int nt = theta.nt;
  const double wavenumber_scale =
      std::pow(2.0 * M_PI / theta.space_extent(), 2.0 * beta);
  auto grid = SpectralGrid::make(nx);
  SpaceTimeLattice frac = theta;
  for (int it = 0; it < nt; ++it) {
    std::vector<double> slice(static_cast<size_t>(nx) * nx);
    for (int ix = 0; ix < nx; ++ix)
      for (int iy = 0; iy < nx; ++iy)
        slice[grid->index(ix, iy)] = theta.at(it, ix, iy);
    auto field = SpectralField::from_physical(grid, std::move(slice), 1);
    auto lap = fractional_laplacian(field, beta).physical();
    for (int ix = 0; ix < nx; ++ix)
      for (int iy = 0; iy < nx; ++iy)
        frac.at(it, ix, iy) = wavenumber_scale * lap[grid->index(ix, iy)];
  }

  // centered time differences on interior slices
  SpaceTimeLattice dtheta = theta;
  for (int it = 1; it + 1 < nt; ++it) {
    for (int ix = 0; ix < nx; ++ix) {
      for (int iy = 0; iy < nx; ++iy) {
        dtheta.at(it, ix, iy) =
            (theta.at(it + 1, ix, iy) - theta.at(it - 1, ix, iy)) /
            (2.0 * theta.dt);
      }
    }
  }

  PoincareReport report;
  double field_scale = 0.0;
  for (double v : theta.values) field_scale = std::max(field_scale, std::abs(v));
  // Oscillations at the rounding level of the field count as exactly zero
  // (constant inputs produce lhs ~ (1 ulp)^p against an identically zero rhs).
  const double lhs_floor = std::pow(1e-12 * (1.0 + field_scale), p);
  std::vector<size_t> members;
  for (double r : r_list) {
    const int t_halo = static_cast<int>(std::ceil(std::pow(r, 2.0 * a) /
                                                  theta.dt)) + 1;
    for (int ct = t_halo; ct < nt - t_halo; ct += 2) {
      for (int cx = 0; cx < nx; cx += 4) {
        for (int cy = 0; cy < nx; cy += 4) {
          members.clear();
          for (size_t wi = 0; wi < theta.size(); ++wi) {
            const Idx w = unpack(theta, wi);
            if (lattice_delta(theta, ct, cx, cy, w.it, w.ix, w.iy, a) < r) {
              members.push_back(wi);
            }
          }
          if (members.size() < 8) continue;
          double mean = 0.0;
          for (size_t wi : members) mean += theta.values[wi];
          mean /= static_cast<double>(members.size());
          double lhs = 0.0, rhs = 0.0;
          for (size_t wi : members) {
            lhs += std::pow(std::abs(theta.values[wi] - mean), p);
            rhs += std::pow(r, 2.0 * beta * p) *
                       std::pow(std::abs(frac.values[wi]), p) +
                   std::pow(r, 2.0 * a * p) *
                       std::pow(std::abs(dtheta.values[wi]), p);
          }
          ++report.cylinders;
          if (lhs <= static_cast<double>(members.size()) * lhs_floor) {
            continue;  // ratio 0 by convention
          }
          const double ratio = (rhs > 0.0)
                                   ? lhs / rhs
                                   : std::numeric_limits<double>::infinity();
          report.max_ratio = std::max(report.max_ratio, ratio);
        }
      }
    }
  }
  if (report.cylinders == 0) {
    throw InsufficientResolutionError(
        "poincare_check: no admissible cylinder for the given radii");
  }
  return report;
}

KernelBoundReport kernel_bound_check(const FractionalHeatKernel& kernel,
                                     int t_samples, int r_samples) {
  if (t_samples < 2 || r_samples < 2) {
    throw ValidationError("kernel_bound_check: need at least 2 samples");
  }
  const double a = kernel.a();
  KernelBoundReport report;
  // t log-spaced in [0.01, 2], r linearly spaced in [0, 4] (the origin itself
  // is excluded since t > 0).
  for (int i = 0; i < t_samples; ++i) {
    const double t =
        0.01 * std::pow(200.0, i / static_cast<double>(t_samples - 1));
    for (int j = 0; j < r_samples; ++j) {
      const double r = 4.0 * j / static_cast<double>(r_samples - 1);
      const double delta = std::max(r, std::pow(t, 1.0 / (2.0 * a)));
      const double d2 = delta * delta;
      report.sup_value_delta2 =
          std::max(report.sup_value_delta2, kernel.at_radius(t, r) * d2);
      report.sup_gradient_delta3 =
          std::max(report.sup_gradient_delta3,
                   kernel.gradient_magnitude(t, r) * d2 * delta);
      report.sup_time_delta2 =
          std::max(report.sup_time_delta2,
                   t * std::abs(kernel.time_derivative(t, r)) * d2);
      ++report.samples;
    }
  }
  return report;
}

}  // namespace sqglc
