#ifndef SQGLC_FIELD_HPP_
#define SQGLC_FIELD_HPP_

#include <complex>
#include <memory>
#include <span>
#include <vector>

#include "sqglc/grid.hpp"

namespace sqglc {

// A real-valued field on the torus held as Fourier coefficients, with the
// convention  f(x) = sum_k c(k) exp(i k.x).  Real-valuedness is encoded by
// conjugate symmetry c(-k) = conj(c(k)) per component.  components is 1 for
// scalars, 2 for velocities, 3 for director fields.
//
// A field built from physical samples keeps those samples around until the
// coefficients are next mutated; snapshot I/O relies on this to round-trip
// physical values bit-exactly through transform boundaries.
class SpectralField {
public:
  SpectralField() = default;

  SpectralField(std::shared_ptr<const SpectralGrid> grid, int components)
      : grid_(std::move(grid)), components_(components) {
    if (components_ < 1 || components_ > 3) {
      throw ComponentMismatchError("SpectralField: components must be 1..3");
    }
    coeffs_.assign(static_cast<size_t>(components_) * grid_->size(), {0.0, 0.0});
  }

  static SpectralField from_physical(std::shared_ptr<const SpectralGrid> grid,
                                     std::vector<double> values, int components);

  const SpectralGrid& grid() const { return *grid_; }
  const std::shared_ptr<const SpectralGrid>& grid_ptr() const { return grid_; }
  int components() const { return components_; }
  int n() const { return grid_->n(); }
  bool empty() const { return coeffs_.empty(); }

  std::complex<double> coeff(int comp, int i, int j) const {
    return coeffs_[plane(comp) + grid_->index(i, j)];
  }

  void set_coeff(int comp, int i, int j, std::complex<double> v) {
    invalidate_physical();
    coeffs_[plane(comp) + grid_->index(i, j)] = v;
  }

  std::span<const std::complex<double>> coeffs(int comp) const {
    return {coeffs_.data() + plane(comp), static_cast<size_t>(grid_->size())};
  }

  std::span<std::complex<double>> coeffs_mut(int comp) {
    invalidate_physical();
    return {coeffs_.data() + plane(comp), static_cast<size_t>(grid_->size())};
  }

  // Physical-space samples, components * n * n, row-major per component.
  // Returns the exact construction-time samples when still valid.
  std::vector<double> physical() const;

  // max over grid points and components of |f(x)|.
  double max_abs() const;

  bool all_finite() const;

  // Extract one component as a scalar field.
  SpectralField component(int comp) const;

  SpectralField& operator+=(const SpectralField& other);
  SpectralField& operator-=(const SpectralField& other);
  SpectralField& operator*=(double s);

  friend SpectralField operator+(SpectralField a, const SpectralField& b) {
    a += b;
    return a;
  }
  friend SpectralField operator-(SpectralField a, const SpectralField& b) {
    a -= b;
    return a;
  }
  friend SpectralField operator*(double s, SpectralField a) {
    a *= s;
    return a;
  }

private:
  size_t plane(int comp) const {
    return static_cast<size_t>(comp) * grid_->size();
  }
  void invalidate_physical() { physical_cache_.reset(); }

  std::shared_ptr<const SpectralGrid> grid_;
  int components_ = 0;
  std::vector<std::complex<double>> coeffs_;
  std::shared_ptr<const std::vector<double>> physical_cache_;
};

}  // namespace sqglc

#endif
