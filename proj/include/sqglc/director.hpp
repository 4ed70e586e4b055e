#ifndef SQGLC_DIRECTOR_HPP_
#define SQGLC_DIRECTOR_HPP_

#include "sqglc/spectral.hpp"

namespace sqglc {

// Orientation field d: torus -> S^2, held as three scalar components on a
// shared grid.  Constructed through project_to_sphere so the pointwise unit
// constraint holds at the grid nodes.
class DirectorField {
public:
  DirectorField() = default;

  explicit DirectorField(SpectralField f) : field_(std::move(f)) {
    if (field_.components() != 3) {
      throw ComponentMismatchError("DirectorField: three components required");
    }
  }

  static DirectorField constant(std::shared_ptr<const SpectralGrid> grid,
                                double d1, double d2, double d3);

  const SpectralField& field() const { return field_; }
  SpectralField component(int c) const { return field_.component(c); }
  const std::shared_ptr<const SpectralGrid>& grid_ptr() const {
    return field_.grid_ptr();
  }
  int n() const { return field_.n(); }

  // max over grid points of ||d(x)| - 1|.
  double unit_norm_defect() const;

private:
  SpectralField field_;
};

// Xi = grad d (.) grad d - 1/2 |grad d|^2 Id, symmetric trace-free; only the
// two independent entries are stored (xi22 = -xi11, xi21 = xi12).
struct StressTensor {
  SpectralField xi11;
  SpectralField xi12;
};

// The quadratic matrix contracted against the kernel derivatives in the
// Duhamel representation: [[ d1d.d2d, -d1d.d1d ], [ d2d.d2d, -d1d.d2d ]].
struct AMatrix {
  SpectralField a11;
  SpectralField a12;
  SpectralField a21;
  SpectralField a22;
};

// Entries e_ij = sum_m (d_i d_m)(d_j d_m), assembled once and shared by the
// tensor builders; gradsq = e11 + e22 = |grad d|^2.
struct GradProducts {
  SpectralField e11;
  SpectralField e12;
  SpectralField e22;
  SpectralField gradsq;
};

GradProducts grad_products(const DirectorField& d);

// Same entries for a raw 3-component field (time-stepper stage values are not
// yet projected back to the sphere).
GradProducts grad_products(const SpectralField& d);

StressTensor stress_tensor(const DirectorField& d);

// tau(d) = Laplacian d + |grad d|^2 d (vanishes on harmonic maps).
SpectralField tension(const DirectorField& d);

AMatrix a_matrix(const DirectorField& d);

// curl div Xi = d1 (div Xi)_2 - d2 (div Xi)_1, zero-mean by construction.
SpectralField curl_div_xi(const DirectorField& d);

// Ferromagnet stress: Xi~_ij = ((|grad m|^2 + m3^2)/2) delta_ij - d_i m . d_j m.
SpectralField curl_div_xi_tilde(const DirectorField& d);

// Pointwise normalization v/|v| on the grid, band-limit through the dealias
// mask, normalize once more.  DegeneratePoint if |v(x)| < 1e-6 anywhere.
DirectorField project_to_sphere(const SpectralField& v);

// Pointwise normalization only (exactly idempotent).  The time stepper uses
// this between steps: re-running the band-limit every step turns the
// projection into a slowly converging alternating-projection pair whose
// per-step slide does not shrink with dt.
DirectorField normalize_pointwise(const SpectralField& v);

// Defect max||v(x)|-1| of an arbitrary 3-component field.
double unit_norm_defect(const SpectralField& v);

}  // namespace sqglc

#endif
