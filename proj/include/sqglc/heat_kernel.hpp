#ifndef SQGLC_HEAT_KERNEL_HPP_
#define SQGLC_HEAT_KERNEL_HPP_

#include <array>
#include <vector>

#include "sqglc/errors.hpp"

namespace sqglc {

// A space-time point under the fractional parabolic metric.
struct ParabolicPoint {
  double t = 0.0;
  std::array<double, 2> x{0.0, 0.0};
};

// Fractional parabolic metric delta((t,x),(t',x')) = max(|x-x'|, |t-t'|^{1/2a}).
double delta_metric(double t1, const std::array<double, 2>& x1, double t2,
                    const std::array<double, 2>& x2, double a);

inline double delta_metric(const ParabolicPoint& z1, const ParabolicPoint& z2,
                           double a) {
  return delta_metric(z1.t, z1.x, z2.t, z2.x, a);
}

// Fundamental solution p_a of d_t + (-Delta)^a on R^2.  The unit-time radial
// profile p_a(1, r) is tabulated once (Gauss-Kronrod quadrature of the
// Bessel-J0 inverse Fourier integral, asymptotic power series in the far
// field) and everything else follows from the exact scaling law
// p_a(t, x) = t^{-1/a} p_a(1, t^{-1/2a} x).
class FractionalHeatKernel {
public:
  explicit FractionalHeatKernel(double a);

  double a() const { return a_; }

  // p_a(1, r) via the table / far-field series.
  double profile(double r) const;

  double operator()(double t, const std::array<double, 2>& x) const;
  double at_radius(double t, double r) const;

  // |grad_x p_a| and d_t p_a by centered differences on the evaluated kernel.
  double gradient_magnitude(double t, double r) const;
  double time_derivative(double t, double r) const;

  // Numeric int p_a(t, x) dx (radial quadrature over the table plus the
  // integrated far-field series).
  double mass(double t) const;

  // Spatial convolution (p_a(t-s) * p_a(s))(x) by 2D Simpson quadrature on the
  // tabulated kernel; validates the semigroup identity.
  double convolve_at(double t, double s, const std::array<double, 2>& x,
                     double box_half_width, int points_per_axis) const;

  double table_limit() const { return r_table_max_; }

private:
  double series_tail_value(double r) const;  // far-field p_a(1,r)
  double series_tail_mass(double r) const;   // 2pi int_r^inf p_a(1,s) s ds

  static double interpolate(const std::vector<double>& table, double offset,
                            double dr, double r);

  double a_;
  double fine_dr_ = 0.0;
  double coarse_dr_ = 0.0;
  double r_fine_max_ = 0.0;
  double r_table_max_ = 0.0;
  std::vector<double> fine_table_;         // p_a(1, r) on [0, r_fine_max]
  std::vector<double> coarse_table_;       // p_a(1, r) on [r_fine_max, max]
  std::vector<double> tail_coefficients_;  // A_m: p ~ sum A_m r^{-2-2am}
};

}  // namespace sqglc

#endif
