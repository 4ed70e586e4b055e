#include "sqglc/director.hpp"

#include <cmath>

namespace sqglc {

namespace {

constexpr double kDegenerateFloor = 1e-6;

}  // namespace

DirectorField DirectorField::constant(std::shared_ptr<const SpectralGrid> grid,
                                      double d1, double d2, double d3) {
  const double norm = std::sqrt(d1 * d1 + d2 * d2 + d3 * d3);
  if (norm < kDegenerateFloor) {
    throw DegeneratePointError("DirectorField::constant: zero direction");
  }
  const size_t m = grid->size();
  std::vector<double> v(3 * m);
  std::fill(v.begin(), v.begin() + m, d1 / norm);
  std::fill(v.begin() + m, v.begin() + 2 * m, d2 / norm);
  std::fill(v.begin() + 2 * m, v.end(), d3 / norm);
  return DirectorField(SpectralField::from_physical(grid, std::move(v), 3));
}

double unit_norm_defect(const SpectralField& v) {
  if (v.components() != 3) {
    throw ComponentMismatchError("unit_norm_defect: three components required");
  }
  const auto values = v.physical();
  const size_t m = static_cast<size_t>(v.n()) * v.n();
  double defect = 0.0;
  for (size_t i = 0; i < m; ++i) {
    const double norm = std::sqrt(values[i] * values[i] +
                                  values[m + i] * values[m + i] +
                                  values[2 * m + i] * values[2 * m + i]);
    defect = std::max(defect, std::abs(norm - 1.0));
  }
  return defect;
}

double DirectorField::unit_norm_defect() const {
  return sqglc::unit_norm_defect(field_);
}

namespace {

void normalize_values(std::vector<double>& vals, size_t m) {
  for (size_t i = 0; i < m; ++i) {
    const double norm = std::sqrt(vals[i] * vals[i] +
                                  vals[m + i] * vals[m + i] +
                                  vals[2 * m + i] * vals[2 * m + i]);
    if (norm < kDegenerateFloor) {
      throw DegeneratePointError(
          "project_to_sphere: |v| < 1e-6 at a grid point (|v|=" +
          std::to_string(norm) + ")");
    }
    vals[i] /= norm;
    vals[m + i] /= norm;
    vals[2 * m + i] /= norm;
  }
}

}  // namespace

DirectorField normalize_pointwise(const SpectralField& v) {
  if (v.components() != 3) {
    throw ComponentMismatchError(
        "normalize_pointwise: three components required");
  }
  const size_t m = static_cast<size_t>(v.n()) * v.n();
  auto vals = v.physical();
  normalize_values(vals, m);
  return DirectorField(
      SpectralField::from_physical(v.grid_ptr(), std::move(vals), 3));
}

DirectorField project_to_sphere(const SpectralField& v) {
  if (v.components() != 3) {
    throw ComponentMismatchError("project_to_sphere: three components required");
  }
  const auto grid = v.grid_ptr();
  const size_t m = static_cast<size_t>(v.n()) * v.n();

  // Normalize in physical space, truncate through the mask, normalize once
  // more.  The truncation defect is a monitored diagnostic, not silently
  // absorbed; the final normalization restores |d| = 1 at the nodes.
  auto vals = v.physical();
  normalize_values(vals, m);
  auto limited = apply_dealias_mask(
      SpectralField::from_physical(grid, std::move(vals), 3));
  auto vals2 = limited.physical();
  normalize_values(vals2, m);
  return DirectorField(SpectralField::from_physical(grid, std::move(vals2), 3));
}

GradProducts grad_products(const SpectralField& d) {
  if (d.components() != 3) {
    throw ComponentMismatchError("grad_products: three components required");
  }
  const auto grid = d.grid_ptr();
  SpectralField e11 = zero_field(grid);
  SpectralField e12 = zero_field(grid);
  SpectralField e22 = zero_field(grid);
  for (int mcomp = 0; mcomp < 3; ++mcomp) {
    const auto dm = d.component(mcomp);
    const auto d1 = derivative(dm, 0);
    const auto d2 = derivative(dm, 1);
    e11 += product_dealiased(d1, d1);
    e12 += product_dealiased(d1, d2);
    e22 += product_dealiased(d2, d2);
  }
  SpectralField gradsq = e11 + e22;
  return {std::move(e11), std::move(e12), std::move(e22), std::move(gradsq)};
}

GradProducts grad_products(const DirectorField& d) {
  return grad_products(d.field());
}

StressTensor stress_tensor(const DirectorField& d) {
  auto gp = grad_products(d);
  // xi11 = e11 - gradsq/2 = (e11 - e22)/2, exactly trace-free.
  SpectralField xi11 = 0.5 * (gp.e11 - gp.e22);
  return {std::move(xi11), std::move(gp.e12)};
}

SpectralField tension(const DirectorField& d) {
  const auto gradsq = grad_products(d).gradsq;
  std::vector<SpectralField> parts;
  parts.reserve(3);
  for (int m = 0; m < 3; ++m) {
    const auto dm = d.component(m);
    parts.push_back(differential_op(dm, Diff::Laplacian) +
                    product_dealiased(gradsq, dm));
  }
  return pack_components(parts);
}

AMatrix a_matrix(const DirectorField& d) {
  auto gp = grad_products(d);
  return {gp.e12, -1.0 * gp.e11, gp.e22, -1.0 * gp.e12};
}

SpectralField curl_div_xi(const DirectorField& d) {
  const auto xi = stress_tensor(d);
  // (div Xi)_1 = d1 xi11 + d2 xi12, (div Xi)_2 = d1 xi12 - d2 xi11.
  const auto div1 = derivative(xi.xi11, 0) + derivative(xi.xi12, 1);
  const auto div2 = derivative(xi.xi12, 0) - derivative(xi.xi11, 1);
  return derivative(div2, 0) - derivative(div1, 1);
}

SpectralField curl_div_xi_tilde(const DirectorField& d) {
  auto gp = grad_products(d);
  const auto d3 = d.component(2);
  const auto trace = gp.gradsq + product_dealiased(d3, d3);
  const auto t11 = 0.5 * trace - gp.e11;
  const auto t22 = 0.5 * trace - gp.e22;
  const auto t12 = -1.0 * gp.e12;
  const auto div1 = derivative(t11, 0) + derivative(t12, 1);
  const auto div2 = derivative(t12, 0) + derivative(t22, 1);
  return derivative(div2, 0) - derivative(div1, 1);
}

}  // namespace sqglc
