#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "sqglc/io.hpp"

namespace sqglc {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

std::string format_p_label(double p) {
  if (p == std::floor(p) && std::abs(p) < 1e6) {
    return std::to_string(static_cast<long long>(p));
  }
  std::ostringstream out;
  out << p;
  return out.str();
}

void write_energy_csv(const EnergyReport& report, const std::string& preamble,
                      const std::string& path) {
  std::ofstream out(path, std::ios::binary);  // fixed '\n' line endings
  if (!out) throw ValidationError("cannot open CSV for writing: " + path);

  out << "# " << kVersion << "\n";
  out << "# splitting = " << report.splitting << "\n";
  out << "# theta0_norm_thm = " << fmt(report.theta0_norm_thm) << "\n";
  out << "# theta0_norm_semigroup = " << fmt(report.theta0_norm_semigroup)
      << "\n";
  out << "# max_projection_defect = " << fmt(report.max_projection_defect)
      << "\n";
  {
    std::istringstream lines(preamble);
    std::string line;
    while (std::getline(lines, line)) out << "# " << line << "\n";
  }

  out << "t,E1,E2,D,balance_residual,max_theta,max_grad_d";
  for (double p : report.p_list) out << ",L" << format_p_label(p) << "_theta_acc";
  for (double p : report.p_list) out << ",L" << format_p_label(p) << "_gradd_acc";
  out << "\n";

  for (const auto& s : report.samples) {
    out << fmt(s.t) << ',' << fmt(s.e1) << ',' << fmt(s.e2) << ','
        << fmt(s.dissipation) << ',' << fmt(s.balance_residual) << ','
        << fmt(s.max_theta) << ',' << fmt(s.max_grad_d);
    for (double v : s.lp_theta_acc) out << ',' << fmt(v);
    for (double v : s.lp_gradd_acc) out << ',' << fmt(v);
    out << "\n";
  }
  if (!out) throw ValidationError("CSV write failed: " + path);
}

}  // namespace sqglc
