#ifndef SQGLC_GRID_HPP_
#define SQGLC_GRID_HPP_

#include <cmath>
#include <memory>
#include <vector>

#include "sqglc/errors.hpp"

namespace sqglc {

inline constexpr double kDomainLength = 2.0 * M_PI;

// Uniform periodic N x N grid on [0,2pi)^2 together with its integer
// wavenumber lattice k in {-n/2,...,n/2-1}^2 (FFT storage order) and the
// 2/3-rule dealias mask (keep |k_j| <= n/3 on both axes).
class SpectralGrid {
public:
  explicit SpectralGrid(int n) : n_(n) {
    if (n < 8 || n % 2 != 0) {
      throw ValidationError("SpectralGrid: n must be even and >= 8, got " +
                            std::to_string(n));
    }
    wavenumbers_.resize(n);
    for (int i = 0; i < n; ++i) {
      wavenumbers_[i] = (i < n / 2) ? i : i - n;
    }
    mask_.assign(static_cast<size_t>(n) * n, false);
    mask_count_ = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const int ki = wavenumbers_[i];
        const int kj = wavenumbers_[j];
        // |k| <= n/3 as an exact integer comparison.
        if (3 * std::abs(ki) <= n && 3 * std::abs(kj) <= n) {
          mask_[index(i, j)] = true;
          ++mask_count_;
        }
      }
    }
  }

  int n() const { return n_; }
  int size() const { return n_ * n_; }
  double spacing() const { return kDomainLength / n_; }

  // Integer wavenumber carried by storage index i in [0,n).
  int wavenumber(int i) const { return wavenumbers_[i]; }

  size_t index(int i, int j) const {
    return static_cast<size_t>(i) * n_ + j;
  }

  bool masked_in(int i, int j) const { return mask_[index(i, j)]; }
  int mask_count() const { return mask_count_; }

  // Largest |k| kept by the dealias mask (per axis).
  int mask_kmax() const { return n_ / 3; }

  // Shared grids keyed by n; grids are immutable and pure functions of n.
  static std::shared_ptr<const SpectralGrid> make(int n);

private:
  int n_;
  std::vector<int> wavenumbers_;
  std::vector<bool> mask_;
  int mask_count_;
};

}  // namespace sqglc

#endif
