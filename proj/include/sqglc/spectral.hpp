#ifndef SQGLC_SPECTRAL_HPP_
#define SQGLC_SPECTRAL_HPP_

#include <vector>

#include "sqglc/field.hpp"

namespace sqglc {

enum class Diff { Grad, PerpGrad, Div, Curl, Laplacian };

// (-Delta)^s: multiplier |k|^{2s}; the k=0 mode is annihilated.  Negative
// powers require a zero-mean input (NonZeroMean otherwise).
SpectralField fractional_laplacian(const SpectralField& f, double s);

// u = grad^perp (-Delta)^{-1+alpha} theta, i.e. per mode
// u(k) = i (-k2, k1) |k|^{2(alpha-1)} theta(k), u(0) = 0.  Divergence-free by
// construction.  Requires zero mean when alpha < 1.
SpectralField biot_savart(const SpectralField& theta, double alpha);

// Exact Fourier symbols:
//   Grad:      scalar -> (i k1 f, i k2 f)
//   PerpGrad:  scalar -> (i k2 f, -i k1 f)      (curl o PerpGrad = -Laplacian)
//   Div:       (u1,u2) -> i (k1 u1 + k2 u2)
//   Curl:      (u1,u2) -> i (k1 u2 - k2 u1)
//   Laplacian: per component -> -|k|^2
SpectralField differential_op(const SpectralField& f, Diff op);

// Partial derivative along one axis (0 or 1), applied per component.
SpectralField derivative(const SpectralField& f, int axis);

// Pointwise product of two scalar fields evaluated on a 3/2 zero-padded grid
// and truncated back through the dealias mask, so that the retained modes are
// the exact convolution of the inputs (no aliasing into the mask band).
SpectralField product_dealiased(const SpectralField& f, const SpectralField& g);

// Zero every Fourier mode outside the dealias mask.
SpectralField apply_dealias_mask(SpectralField f);

// Discrete integral of a scalar field over the torus: (2pi)^2 c(0).
double integrate(const SpectralField& f);

// Parseval pairing (2pi)^2 sum_k f(k) conj(g(k)), summed over components.
double inner_product(const SpectralField& f, const SpectralField& g);

double l2_norm(const SpectralField& f);

// L^p norm via the physical-space trapezoidal (= rectangle, periodic) rule.
double lp_norm(const SpectralField& f, double p);

SpectralField zero_field(std::shared_ptr<const SpectralGrid> grid,
                         int components = 1);

// Zero the mean mode of every component.
SpectralField remove_mean(SpectralField f);

// Assemble a multi-component field from scalar parts (shared grid).
SpectralField pack_components(const std::vector<SpectralField>& parts);

}  // namespace sqglc

#endif
