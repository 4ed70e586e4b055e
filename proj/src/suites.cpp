#include "sqglc/suites.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "sqglc/io.hpp"
#include "sqglc/potentials.hpp"

namespace sqglc {

namespace {

std::string num(double v) {
  std::ostringstream out;
  out.precision(12);
  out << v;
  return out.str();
}

void write_rows(const std::string& out_dir, const std::string& file,
                const std::vector<std::array<std::string, 3>>& rows) {
  if (out_dir.empty()) return;
  std::filesystem::create_directories(out_dir);
  std::ofstream out(std::filesystem::path(out_dir) / file, std::ios::binary);
  out << "# " << kVersion << "\n";
  out << "quantity,value,threshold\n";
  for (const auto& r : rows) out << r[0] << ',' << r[1] << ',' << r[2] << "\n";
}

SpaceTimeLattice make_lattice(int nt, int nx, double dt, double dx,
                              bool periodic) {
  SpaceTimeLattice g;
  g.nt = nt;
  g.nx = nx;
  g.dt = dt;
  g.dx = dx;
  g.periodic_space = periodic;
  g.values.assign(static_cast<size_t>(nt) * nx * nx, 0.0);
  return g;
}

// Fixed box indicator used by the Riesz-potential corpus.
SpaceTimeLattice box_indicator(int scale) {
  const int nt = 6 * scale, nx = 12 * scale;
  auto f = make_lattice(nt, nx, 0.06 / scale, 0.12 / scale, false);
  for (int it = 0; it < nt; ++it)
    for (int ix = 0; ix < nx; ++ix)
      for (int iy = 0; iy < nx; ++iy) {
        const double t = it * f.dt, x = ix * f.dx, y = iy * f.dx;
        if (t >= 0.06 && t < 0.24 && x >= 0.24 && x < 0.72 && y >= 0.24 &&
            y < 0.72) {
          f.at(it, ix, iy) = 1.0;
        }
      }
  return f;
}

}  // namespace

std::vector<SuiteResult> run_kernel_suite(double a, const std::string& out_dir) {
  std::vector<SuiteResult> results;
  std::vector<std::array<std::string, 3>> rows;
  FractionalHeatKernel kernel(a);

  // closed forms where available
  if (a == 1.0 || a == 0.5) {
    double worst = 0.0;
    for (double t : {0.25, 0.5, 1.0, 2.0}) {
      for (double r = 0.0; r <= 6.0; r += 0.37) {
        const double want =
            (a == 1.0)
                ? std::exp(-r * r / (4.0 * t)) / (4.0 * M_PI * t)
                : t / (2.0 * M_PI * std::pow(t * t + r * r, 1.5));
        worst = std::max(worst, std::abs(kernel.at_radius(t, r) - want));
      }
    }
    results.push_back({"kernel closed form (a=" + num(a) + ")", worst < 1e-6,
                       "max |p - exact| = " + num(worst)});
    rows.push_back({"closed_form_dev", num(worst), "1e-6"});
  }

  // scaling law
  double scaling_worst = 0.0;
  for (double t : {0.3, 0.8, 1.7}) {
    for (double r : {0.1, 0.7, 1.9, 4.2}) {
      const double lhs = kernel.at_radius(t, r);
      const double rhs = std::pow(t, -1.0 / a) *
                         kernel.profile(std::pow(t, -1.0 / (2.0 * a)) * r);
      scaling_worst = std::max(scaling_worst, std::abs(lhs - rhs));
    }
  }
  results.push_back({"kernel scaling law", scaling_worst < 1e-6,
                     "max dev = " + num(scaling_worst)});
  rows.push_back({"scaling_dev", num(scaling_worst), "1e-6"});

  // unit mass
  double mass_worst = 0.0;
  for (double t : {0.5, 1.0, 2.0}) {
    mass_worst = std::max(mass_worst, std::abs(kernel.mass(t) - 1.0));
  }
  results.push_back(
      {"kernel mass", mass_worst < 1e-6, "max |mass-1| = " + num(mass_worst)});
  rows.push_back({"mass_dev", num(mass_worst), "1e-6"});

  // semigroup identity
  const double conv = kernel.convolve_at(1.0, 0.5, {0.3, 0.2}, 30.0, 700);
  const double semi_dev =
      std::abs(conv - kernel.at_radius(1.0, std::sqrt(0.3 * 0.3 + 0.2 * 0.2)));
  results.push_back(
      {"kernel semigroup identity", semi_dev < 1e-5, "dev = " + num(semi_dev)});
  rows.push_back({"semigroup_dev", num(semi_dev), "1e-5"});

  // pointwise bound ratios: finite and refinement-stable within 10%
  const auto coarse = kernel_bound_check(kernel, 12, 24);
  const auto fine = kernel_bound_check(kernel, 24, 48);
  const bool stable =
      std::isfinite(fine.sup_value_delta2) &&
      std::isfinite(fine.sup_gradient_delta3) &&
      std::isfinite(fine.sup_time_delta2) &&
      fine.sup_value_delta2 <= 1.1 * coarse.sup_value_delta2 &&
      fine.sup_gradient_delta3 <= 1.1 * coarse.sup_gradient_delta3 &&
      fine.sup_time_delta2 <= 1.1 * coarse.sup_time_delta2;
  results.push_back({"kernel bound ratios stable", stable,
                     "sup p d^2 = " + num(fine.sup_value_delta2) +
                         ", sup |grad p| d^3 = " + num(fine.sup_gradient_delta3) +
                         ", sup t|dp/dt| d^2 = " + num(fine.sup_time_delta2)});
  rows.push_back({"sup_value_delta2", num(fine.sup_value_delta2), "finite"});
  rows.push_back({"sup_gradient_delta3", num(fine.sup_gradient_delta3), "finite"});
  rows.push_back({"sup_time_delta2", num(fine.sup_time_delta2), "finite"});

  write_rows(out_dir, "kernel_ratios.csv", rows);
  return results;
}

std::vector<SuiteResult> run_riesz_suite(double a, const std::string& out_dir) {
  std::vector<SuiteResult> results;
  std::vector<std::array<std::string, 3>> rows;

  // far field of a single-cell source against the one-term expansion
  {
    auto f = make_lattice(9, 21, 0.01, 0.1, false);
    f.at(4, 10, 10) = 1.0;
    auto pot = riesz_potential(f, 1.0, a);
    const double d = lattice_delta(f, 4, 10, 10, 4, 20, 10, a);
    const double far = f.cell_volume() * std::pow(d, 1.0 - (2.0 + 2.0 * a));
    const double rel = std::abs(pot.at(4, 20, 10) - far) / far;
    results.push_back({"riesz far field (2%)", rel < 0.02,
                       "relative deviation = " + num(rel)});
    rows.push_back({"far_field_rel", num(rel), "0.02"});
  }

  // improved integrability: L^{p~} norm finite and refinement-stable
  {
    const double p = 2.0, lambda = 3.0, beta = 0.7;
    const double p_tilde = p * lambda / (lambda - p * beta);
    double norms[2];
    for (int scale : {1, 2}) {
      auto f = box_indicator(scale);
      auto pot = riesz_potential(f, beta, a);
      double acc = 0.0;
      for (double v : pot.values) acc += std::pow(std::abs(v), p_tilde);
      norms[scale - 1] = std::pow(acc * f.cell_volume(), 1.0 / p_tilde);
    }
    const double drift = std::abs(norms[1] - norms[0]) / norms[0];
    results.push_back({"riesz improved integrability stable (20%)",
                       std::isfinite(norms[1]) && drift < 0.2,
                       "L^{p~} norm = " + num(norms[1]) +
                           ", refinement drift = " + num(drift)});
    rows.push_back({"lp_tilde_norm", num(norms[1]), "finite"});
    rows.push_back({"lp_tilde_drift", num(drift), "0.2"});
  }

  // Holder continuity of I_beta f for beta > lambda/p
  {
    const double p = 2.0, lambda = 3.0, beta = 1.8;
    const double exponent = beta - lambda / p;
    double quotients[2];
    for (int scale : {1, 2}) {
      auto f = box_indicator(scale);
      auto pot = riesz_potential(f, beta, a);
      double worst = 0.0;
      const int nt = f.nt, nx = f.nx;
      for (int t1 = 0; t1 < nt; ++t1) {
        for (int x1 = 0; x1 < nx; x1 += 2) {
          for (int y1 = 0; y1 < nx; y1 += 2) {
            const double d = lattice_delta(f, t1, x1, y1, nt / 2, nx / 2,
                                           nx / 2, a);
            if (d <= 0.0 || d >= 1.0) continue;
            const double diff = std::abs(pot.at(t1, x1, y1) -
                                         pot.at(nt / 2, nx / 2, nx / 2));
            worst = std::max(worst, diff / std::pow(d, exponent));
          }
        }
      }
      quotients[scale - 1] = worst;
    }
    const bool ok = std::isfinite(quotients[1]) &&
                    quotients[1] < 1.5 * quotients[0] + 1e-12;
    results.push_back({"riesz Holder quotient stable", ok,
                       "coarse = " + num(quotients[0]) +
                           ", fine = " + num(quotients[1])});
    rows.push_back({"holder_quotient", num(quotients[1]), "stable"});
  }

  write_rows(out_dir, "riesz_ratios.csv", rows);
  return results;
}

std::vector<SuiteResult> run_poincare_suite(double a,
                                            const std::string& out_dir) {
  std::vector<SuiteResult> results;
  std::vector<std::array<std::string, 3>> rows;
  const int nx = 32, nt = 20;
  const double L = 2.0 * M_PI;

  auto g = make_lattice(nt, nx, 0.05, L / nx, true);
  for (int it = 0; it < nt; ++it)
    for (int ix = 0; ix < nx; ++ix)
      for (int iy = 0; iy < nx; ++iy)
        g.at(it, ix, iy) = std::cos(2.0 * M_PI * ix / nx);

  const auto rep = poincare_check(g, 0.5, 2.0, a, {0.35, 0.5});
  results.push_back({"poincare cosine corpus (ratio < 32)",
                     std::isfinite(rep.max_ratio) && rep.max_ratio < 32.0,
                     "max ratio = " + num(rep.max_ratio) + " over " +
                         std::to_string(rep.cylinders) + " cylinders"});
  rows.push_back({"cosine_max_ratio", num(rep.max_ratio), "32"});

  for (auto& v : g.values) v += 3.0;
  const auto rep2 = poincare_check(g, 0.5, 2.0, a, {0.35, 0.5});
  const double shift_dev = std::abs(rep2.max_ratio - rep.max_ratio);
  results.push_back({"poincare shift invariance", shift_dev < 1e-10,
                     "|ratio(theta+c) - ratio(theta)| = " + num(shift_dev)});
  rows.push_back({"shift_invariance_dev", num(shift_dev), "1e-10"});

  write_rows(out_dir, "poincare_ratios.csv", rows);
  return results;
}

std::vector<SuiteResult> run_hedberg_suite(double a,
                                           const std::string& out_dir) {
  std::vector<SuiteResult> results;
  std::vector<std::array<std::string, 3>> rows;

  auto f = make_lattice(8, 16, 0.02, 0.12, false);
  f.at(4, 8, 8) = 1.0;
  const auto rep1 = hedberg_check(f, 2.0, 3.0, 0.7, a);
  results.push_back({"hedberg single-cell (ratio <= 1)",
                     rep1.max_ratio <= 1.0 && rep1.max_ratio > 0.0,
                     "max ratio = " + num(rep1.max_ratio) +
                         " with derived c = " + num(rep1.constant)});
  rows.push_back({"indicator_max_ratio", num(rep1.max_ratio), "1"});

  for (size_t i = 0; i < f.values.size(); ++i) {
    const size_t it = i / (16 * 16), ix = (i / 16) % 16, iy = i % 16;
    f.values[i] =
        1.5 + std::sin(0.4 * it) + std::cos(0.5 * ix) * std::sin(0.3 * iy);
  }
  const auto rep2 = hedberg_check(f, 2.0, 3.0, 0.7, a);
  results.push_back({"hedberg smooth corpus (ratio <= 1)",
                     rep2.max_ratio <= 1.0,
                     "max ratio = " + num(rep2.max_ratio)});
  rows.push_back({"smooth_max_ratio", num(rep2.max_ratio), "1"});

  write_rows(out_dir, "hedberg_ratios.csv", rows);
  return results;
}

}  // namespace sqglc
