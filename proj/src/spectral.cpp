#include "sqglc/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <mutex>

#include "sqglc/parallel.hpp"

namespace sqglc {

namespace {

// FFTW's planner is not thread-safe; executions on distinct buffers are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// One c2c plan pair per grid size with an internal scratch buffer.  Cached
// thread-locally, so each worker owns its plans and never shares them.
class FftPlan {
public:
  explicit FftPlan(int n) : n_(n) {
    buf_ = fftw_alloc_complex(static_cast<size_t>(n) * n);
    std::lock_guard<std::mutex> lock(planner_mutex());
    fwd_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(n, n, buf_, buf_, FFTW_BACKWARD, FFTW_ESTIMATE);
  }

  ~FftPlan() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(fwd_);
    fftw_destroy_plan(bwd_);
    fftw_free(buf_);
  }

  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  // physical samples -> coefficients (divides by n^2).
  void forward(const std::complex<double>* in, std::complex<double>* out) {
    const size_t m = static_cast<size_t>(n_) * n_;
    auto* b = reinterpret_cast<std::complex<double>*>(buf_);
    std::copy(in, in + m, b);
    fftw_execute(fwd_);
    const double scale = 1.0 / static_cast<double>(m);
    for (size_t i = 0; i < m; ++i) out[i] = b[i] * scale;
  }

  // coefficients -> physical samples (unscaled backward transform).
  void backward(const std::complex<double>* in, std::complex<double>* out) {
    const size_t m = static_cast<size_t>(n_) * n_;
    auto* b = reinterpret_cast<std::complex<double>*>(buf_);
    std::copy(in, in + m, b);
    fftw_execute(bwd_);
    std::copy(b, b + m, out);
  }

private:
  int n_;
  fftw_complex* buf_;
  fftw_plan fwd_;
  fftw_plan bwd_;
};

FftPlan& plan_for(int n) {
  thread_local std::map<int, std::unique_ptr<FftPlan>> cache;
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<FftPlan>(n);
  return *slot;
}

void require_scalar(const SpectralField& f, const char* who) {
  if (f.components() != 1) {
    throw ComponentMismatchError(std::string(who) + ": scalar field required");
  }
}

void require_same_grid(const SpectralField& f, const SpectralField& g,
                       const char* who) {
  if (f.n() != g.n()) {
    throw GridMismatchError(std::string(who) + ": grid sizes differ (" +
                            std::to_string(f.n()) + " vs " +
                            std::to_string(g.n()) + ")");
  }
}

// NonZeroMean check used by negative-power multipliers.
void require_zero_mean(const SpectralField& f, const char* who) {
  for (int c = 0; c < f.components(); ++c) {
    auto cs = f.coeffs(c);
    double max_abs = 0.0;
    for (const auto& z : cs) max_abs = std::max(max_abs, std::abs(z));
    const double mean = std::abs(cs[0]);
    if (mean > 1e-12 * std::max(max_abs, 1e-300)) {
      throw NonZeroMeanError(std::string(who) +
                             ": field has nonzero mean mode (|c0|=" +
                             std::to_string(mean) + ")");
    }
  }
}

// Copy coefficients between grids of size n_src and n_dst, matching integer
// wavenumbers; modes absent from the destination are dropped, missing ones
// are zero.  Used for 3/2-rule padding and truncation.
void regrid(const SpectralGrid& src, const std::complex<double>* in,
            const SpectralGrid& dst, std::complex<double>* out) {
  const int ns = src.n();
  const int nd = dst.n();
  std::fill(out, out + dst.size(), std::complex<double>(0.0, 0.0));
  const int half = std::min(ns, nd) / 2;
  for (int i = 0; i < ns; ++i) {
    const int ki = src.wavenumber(i);
    if (ki < -half || ki >= half) continue;
    const int di = ki >= 0 ? ki : ki + nd;
    for (int j = 0; j < ns; ++j) {
      const int kj = src.wavenumber(j);
      if (kj < -half || kj >= half) continue;
      const int dj = kj >= 0 ? kj : kj + nd;
      out[dst.index(di, dj)] = in[src.index(i, j)];
    }
  }
}

}  // namespace

std::shared_ptr<const SpectralGrid> SpectralGrid::make(int n) {
  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const SpectralGrid>> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_shared<const SpectralGrid>(n);
  return slot;
}

SpectralField SpectralField::from_physical(
    std::shared_ptr<const SpectralGrid> grid, std::vector<double> values,
    int components) {
  SpectralField f(grid, components);
  const int n = grid->n();
  const size_t m = static_cast<size_t>(n) * n;
  if (values.size() != m * components) {
    throw ValidationError("from_physical: value count does not match grid");
  }
  std::vector<std::complex<double>> tmp(m);
  auto& plan = plan_for(n);
  for (int c = 0; c < components; ++c) {
    for (size_t i = 0; i < m; ++i) tmp[i] = {values[c * m + i], 0.0};
    plan.forward(tmp.data(), f.coeffs_.data() + c * m);
  }
  f.physical_cache_ =
      std::make_shared<const std::vector<double>>(std::move(values));
  return f;
}

std::vector<double> SpectralField::physical() const {
  if (physical_cache_) return *physical_cache_;
  const int n = grid_->n();
  const size_t m = static_cast<size_t>(n) * n;
  std::vector<double> out(m * components_);
  std::vector<std::complex<double>> tmp(m);
  auto& plan = plan_for(n);
  for (int c = 0; c < components_; ++c) {
    plan.backward(coeffs_.data() + c * m, tmp.data());
    for (size_t i = 0; i < m; ++i) out[c * m + i] = tmp[i].real();
  }
  return out;
}

double SpectralField::max_abs() const {
  const auto values = physical();
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

bool SpectralField::all_finite() const {
  for (const auto& z : coeffs_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

SpectralField SpectralField::component(int comp) const {
  SpectralField out(grid_, 1);
  const size_t m = grid_->size();
  std::copy(coeffs_.begin() + plane(comp), coeffs_.begin() + plane(comp) + m,
            out.coeffs_.begin());
  return out;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
  require_same_grid(*this, other, "operator+");
  if (components_ != other.components_) {
    throw ComponentMismatchError("operator+: component counts differ");
  }
  invalidate_physical();
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
  require_same_grid(*this, other, "operator-");
  if (components_ != other.components_) {
    throw ComponentMismatchError("operator-: component counts differ");
  }
  invalidate_physical();
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= other.coeffs_[i];
  return *this;
}

SpectralField& SpectralField::operator*=(double s) {
  invalidate_physical();
  for (auto& z : coeffs_) z *= s;
  return *this;
}

SpectralField zero_field(std::shared_ptr<const SpectralGrid> grid,
                         int components) {
  return SpectralField(std::move(grid), components);
}

SpectralField remove_mean(SpectralField f) {
  for (int c = 0; c < f.components(); ++c) f.set_coeff(c, 0, 0, {0.0, 0.0});
  return f;
}

SpectralField pack_components(const std::vector<SpectralField>& parts) {
  if (parts.empty()) throw ValidationError("pack_components: empty input");
  SpectralField out(parts[0].grid_ptr(), static_cast<int>(parts.size()));
  for (size_t c = 0; c < parts.size(); ++c) {
    require_scalar(parts[c], "pack_components");
    require_same_grid(parts[0], parts[c], "pack_components");
    auto dst = out.coeffs_mut(static_cast<int>(c));
    auto src = parts[c].coeffs(0);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

SpectralField fractional_laplacian(const SpectralField& f, double s) {
  if (s < 0.0) require_zero_mean(f, "fractional_laplacian");
  const auto& grid = f.grid();
  const int n = grid.n();
  SpectralField out(f.grid_ptr(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.coeffs(c);
    auto dst = out.coeffs_mut(c);
    parallel_for(0, n, [&](int i) {
      const double ki = grid.wavenumber(i);
      for (int j = 0; j < n; ++j) {
        const double kj = grid.wavenumber(j);
        const double k2 = ki * ki + kj * kj;
        const size_t idx = grid.index(i, j);
        dst[idx] = (k2 == 0.0) ? std::complex<double>(0.0, 0.0)
                               : std::pow(k2, s) * src[idx];
      }
    });
  }
  return out;
}

SpectralField biot_savart(const SpectralField& theta, double alpha) {
  require_scalar(theta, "biot_savart");
  if (alpha < 1.0) require_zero_mean(theta, "biot_savart");
  const auto& grid = theta.grid();
  const int n = grid.n();
  SpectralField u(theta.grid_ptr(), 2);
  auto src = theta.coeffs(0);
  auto u1 = u.coeffs_mut(0);
  auto u2 = u.coeffs_mut(1);
  parallel_for(0, n, [&](int i) {
    const double ki = grid.wavenumber(i);
    for (int j = 0; j < n; ++j) {
      const double kj = grid.wavenumber(j);
      const double k2 = ki * ki + kj * kj;
      const size_t idx = grid.index(i, j);
      if (k2 == 0.0) {
        u1[idx] = u2[idx] = {0.0, 0.0};
        continue;
      }
      const std::complex<double> w =
          std::complex<double>(0.0, std::pow(k2, alpha - 1.0)) * src[idx];
      u1[idx] = -kj * w;
      u2[idx] = ki * w;
    }
  });
  return u;
}

SpectralField derivative(const SpectralField& f, int axis) {
  const auto& grid = f.grid();
  const int n = grid.n();
  SpectralField out(f.grid_ptr(), f.components());
  for (int c = 0; c < f.components(); ++c) {
    auto src = f.coeffs(c);
    auto dst = out.coeffs_mut(c);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double k = grid.wavenumber(axis == 0 ? i : j);
        const size_t idx = grid.index(i, j);
        dst[idx] = std::complex<double>(0.0, k) * src[idx];
      }
    }
  }
  return out;
}

SpectralField differential_op(const SpectralField& f, Diff op) {
  switch (op) {
    case Diff::Grad: {
      if (f.components() != 1) {
        throw ComponentMismatchError("differential_op: grad needs a scalar");
      }
      return pack_components({derivative(f, 0), derivative(f, 1)});
    }
    case Diff::PerpGrad: {
      if (f.components() != 1) {
        throw ComponentMismatchError(
            "differential_op: perp_grad needs a scalar");
      }
      return pack_components({derivative(f, 1), -1.0 * derivative(f, 0)});
    }
    case Diff::Div: {
      if (f.components() != 2) {
        throw ComponentMismatchError(
            "differential_op: div needs two components");
      }
      return derivative(f.component(0), 0) + derivative(f.component(1), 1);
    }
    case Diff::Curl: {
      if (f.components() != 2) {
        throw ComponentMismatchError(
            "differential_op: curl needs two components");
      }
      return derivative(f.component(1), 0) - derivative(f.component(0), 1);
    }
    case Diff::Laplacian: {
      const auto& grid = f.grid();
      const int n = grid.n();
      SpectralField out(f.grid_ptr(), f.components());
      for (int c = 0; c < f.components(); ++c) {
        auto src = f.coeffs(c);
        auto dst = out.coeffs_mut(c);
        for (int i = 0; i < n; ++i) {
          const double ki = grid.wavenumber(i);
          for (int j = 0; j < n; ++j) {
            const double kj = grid.wavenumber(j);
            const size_t idx = grid.index(i, j);
            dst[idx] = -(ki * ki + kj * kj) * src[idx];
          }
        }
      }
      return out;
    }
  }
  throw ValidationError("differential_op: unknown op");
}

SpectralField apply_dealias_mask(SpectralField f) {
  const auto& grid = f.grid();
  const int n = grid.n();
  for (int c = 0; c < f.components(); ++c) {
    auto cs = f.coeffs_mut(c);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (!grid.masked_in(i, j)) cs[grid.index(i, j)] = {0.0, 0.0};
      }
    }
  }
  return f;
}

SpectralField product_dealiased(const SpectralField& f,
                                const SpectralField& g) {
  require_same_grid(f, g, "product_dealiased");
  require_scalar(f, "product_dealiased");
  require_scalar(g, "product_dealiased");

  const auto& grid = f.grid();
  const int n = grid.n();

  // A product with an identically zero factor is identically zero; the
  // transforms would reproduce exact zeros anyway.
  auto is_zero = [](const SpectralField& h) {
    for (const auto& z : h.coeffs(0)) {
      if (z.real() != 0.0 || z.imag() != 0.0) return false;
    }
    return true;
  };
  if (is_zero(f) || is_zero(g)) return zero_field(f.grid_ptr());

  const int np = 3 * n / 2;
  const auto padded = SpectralGrid::make(np);
  const size_t mp = static_cast<size_t>(np) * np;

  // Scratch shared across calls; the stepping loop runs this pipeline many
  // times per cycle.
  thread_local std::vector<std::complex<double>> fa, ga, fp, gp;
  fa.resize(mp);
  ga.resize(mp);
  fp.resize(mp);
  gp.resize(mp);
  regrid(grid, f.coeffs(0).data(), *padded, fa.data());
  regrid(grid, g.coeffs(0).data(), *padded, ga.data());

  auto& plan = plan_for(np);
  plan.backward(fa.data(), fp.data());
  plan.backward(ga.data(), gp.data());

  // Workers must address this thread's scratch, not their own thread-local
  // instances, so hand them plain pointers.
  auto* fp_data = fp.data();
  const auto* gp_data = gp.data();
  parallel_for(0, np, [fp_data, gp_data, np](int i) {
    const size_t row = static_cast<size_t>(i) * np;
    for (size_t j = 0; j < static_cast<size_t>(np); ++j) {
      fp_data[row + j] *= gp_data[row + j];
    }
  });

  plan.forward(fp.data(), fa.data());

  SpectralField out(f.grid_ptr(), 1);
  regrid(*padded, fa.data(), grid, out.coeffs_mut(0).data());
  return apply_dealias_mask(std::move(out));
}

double integrate(const SpectralField& f) {
  require_scalar(f, "integrate");
  return kDomainLength * kDomainLength * f.coeffs(0)[0].real();
}

double inner_product(const SpectralField& f, const SpectralField& g) {
  require_same_grid(f, g, "inner_product");
  if (f.components() != g.components()) {
    throw ComponentMismatchError("inner_product: component counts differ");
  }
  double acc = 0.0;
  for (int c = 0; c < f.components(); ++c) {
    auto fc = f.coeffs(c);
    auto gc = g.coeffs(c);
    for (size_t i = 0; i < fc.size(); ++i) {
      acc += fc[i].real() * gc[i].real() + fc[i].imag() * gc[i].imag();
    }
  }
  return kDomainLength * kDomainLength * acc;
}

double l2_norm(const SpectralField& f) {
  return std::sqrt(std::max(0.0, inner_product(f, f)));
}

double lp_norm(const SpectralField& f, double p) {
  const auto values = f.physical();
  const int n = f.n();
  const size_t m = static_cast<size_t>(n) * n;
  const double cell = (kDomainLength / n) * (kDomainLength / n);
  // For multi-component fields the pointwise magnitude is the euclidean norm.
  double acc = 0.0;
  for (size_t i = 0; i < m; ++i) {
    double s2 = 0.0;
    for (int c = 0; c < f.components(); ++c) {
      s2 += values[c * m + i] * values[c * m + i];
    }
    acc += std::pow(std::sqrt(s2), p);
  }
  return std::pow(acc * cell, 1.0 / p);
}

}  // namespace sqglc
