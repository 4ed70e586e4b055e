#ifndef SQGLC_TESTS_HELPERS_HPP_
#define SQGLC_TESTS_HELPERS_HPP_

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "sqglc/director.hpp"
#include "sqglc/spectral.hpp"

namespace sqglc::testing {

// f(x) = amp * cos(k1 x1 + k2 x2) built from physical samples.
inline SpectralField cosine_field(int n, int k1, int k2, double amp = 1.0) {
  auto grid = SpectralGrid::make(n);
  std::vector<double> v(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x1 = kDomainLength * i / n;
      const double x2 = kDomainLength * j / n;
      v[grid->index(i, j)] = amp * std::cos(k1 * x1 + k2 * x2);
    }
  }
  return SpectralField::from_physical(grid, std::move(v), 1);
}

inline SpectralField sine_field(int n, int k1, int k2, double amp = 1.0) {
  auto grid = SpectralGrid::make(n);
  std::vector<double> v(static_cast<size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x1 = kDomainLength * i / n;
      const double x2 = kDomainLength * j / n;
      v[grid->index(i, j)] = amp * std::sin(k1 * x1 + k2 * x2);
    }
  }
  return SpectralField::from_physical(grid, std::move(v), 1);
}

inline SpectralField constant_field(int n, double c) {
  auto grid = SpectralGrid::make(n);
  std::vector<double> v(static_cast<size_t>(n) * n, c);
  return SpectralField::from_physical(grid, std::move(v), 1);
}

// Random zero-mean field band-limited to |k|_inf <= kmax, deterministic in
// the seed, normalized to max_abs = amp.
inline SpectralField random_bandlimited(int n, int kmax, uint64_t seed,
                                        double amp = 1.0) {
  auto grid = SpectralGrid::make(n);
  SpectralField f(grid, 1);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (int i = 0; i < n; ++i) {
    const int ki = grid->wavenumber(i);
    if (std::abs(ki) > kmax) continue;
    for (int j = 0; j < n; ++j) {
      const int kj = grid->wavenumber(j);
      if (std::abs(kj) > kmax) continue;
      if (ki == 0 && kj == 0) continue;
      if (ki < 0 || (ki == 0 && kj < 0)) continue;
      const double decay = 1.0 / (1.0 + ki * ki + kj * kj);
      const std::complex<double> z(normal(rng) * decay, normal(rng) * decay);
      f.set_coeff(0, i, j, z);
      f.set_coeff(0, (n - i) % n, (n - j) % n, std::conj(z));
    }
  }
  const double m = f.max_abs();
  if (m > 0) f *= amp / m;
  return f;
}

// Smooth random unit director: north pole plus a band-limited perturbation,
// projected back to the sphere.
inline DirectorField random_director(int n, int kmax, uint64_t seed,
                                     double amp = 0.4) {
  auto grid = SpectralGrid::make(n);
  std::vector<SpectralField> parts;
  for (int c = 0; c < 3; ++c) {
    auto p = random_bandlimited(n, kmax, seed + 1000 * (c + 1), amp);
    if (c == 2) p += constant_field(n, 1.0);
    parts.push_back(std::move(p));
  }
  return project_to_sphere(pack_components(parts));
}

// Harmonic geodesic d = (cos x1, sin x1, 0); an exact steady harmonic map.
inline DirectorField harmonic_geodesic(int n) {
  return DirectorField(pack_components(
      {cosine_field(n, 1, 0), sine_field(n, 1, 0), constant_field(n, 0.0)}));
}

inline double max_dev(const SpectralField& f, const SpectralField& g) {
  auto a = f.physical();
  auto b = g.physical();
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline double rel_err(double got, double want) {
  return std::abs(got - want) / std::max(1.0, std::abs(want));
}

}  // namespace sqglc::testing

#endif
