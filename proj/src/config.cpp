#include <algorithm>
#include <cctype>
#include <fstream>
#include <random>
#include <sstream>

#include "sqglc/io.hpp"

namespace sqglc {

namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_double(const std::string& value, int line) {
  try {
    size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) + ": expected a number, got '" +
                     value + "'");
  }
}

int64_t parse_int(const std::string& value, int line) {
  try {
    size_t used = 0;
    const int64_t v = std::stoll(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return v;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line) +
                     ": expected an integer, got '" + value + "'");
  }
}

std::vector<double> parse_list(const std::string& value, int line) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_double(item, line));
  }
  return out;
}

}  // namespace

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("config file not found: " + path);

  RunConfig config;
  std::string section;
  std::string raw;
  int line = 0;

  while (std::getline(in, raw)) {
    ++line;
    std::string text = raw;
    const size_t hash = text.find('#');
    if (hash != std::string::npos) text = text.substr(0, hash);
    text = trim(text);
    if (text.empty()) continue;

    if (text.front() == '[') {
      if (text.back() != ']') {
        throw ParseError("line " + std::to_string(line) +
                         ": malformed section header '" + text + "'");
      }
      section = trim(text.substr(1, text.size() - 2));
      if (section != "model" && section != "initial" && section != "output") {
        throw ParseError("line " + std::to_string(line) + ": unknown section [" +
                         section + "]");
      }
      continue;
    }

    const size_t eq = text.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line) +
                       ": expected key = value, got '" + text + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ParseError("line " + std::to_string(line) + ": empty key or value");
    }

    auto unknown = [&]() -> ParseError {
      return ParseError("line " + std::to_string(line) + ": unknown key '" +
                        key + "' in section [" + section + "]");
    };

    if (section == "model") {
      if (key == "a") config.params.a = parse_double(value, line);
      else if (key == "alpha") config.params.alpha = parse_double(value, line);
      else if (key == "nu") config.params.nu = parse_double(value, line);
      else if (key == "lambda") config.params.lambda = parse_double(value, line);
      else if (key == "gamma") config.params.gamma = parse_double(value, line);
      else if (key == "epsilon") config.params.epsilon = parse_double(value, line);
      else if (key == "n") config.params.n = static_cast<int>(parse_int(value, line));
      else if (key == "dt") config.params.dt = parse_double(value, line);
      else if (key == "t_final") config.params.t_final = parse_double(value, line);
      else if (key == "cfl_limit") config.params.cfl_limit = parse_double(value, line);
      else if (key == "forcing") {
        if (value == "f1") config.params.forcing = ForcingMode::F1;
        else if (value == "f2") config.params.forcing = ForcingMode::F2;
        else if (value == "none") config.params.forcing = ForcingMode::None;
        else
          throw ParseError("line " + std::to_string(line) +
                           ": forcing must be f1, f2 or none");
      } else {
        throw unknown();
      }
    } else if (section == "initial") {
      if (key == "theta") {
        if (value == "zero") config.theta_init = ThetaInit::Zero;
        else if (value == "gaussian_vortex" || value == "gaussian_vortex_theta")
          config.theta_init = ThetaInit::GaussianVortex;
        else if (value == "random_bandlimited")
          config.theta_init = ThetaInit::RandomBandlimited;
        else if (value == "from_snapshot")
          config.theta_init = ThetaInit::FromSnapshot;
        else
          throw ParseError("line " + std::to_string(line) +
                           ": unknown theta preset '" + value + "'");
      } else if (key == "d") {
        if (value == "constant") config.d_init = DirectorInit::Constant;
        else if (value == "harmonic_geodesic" || value == "harmonic_geodesic_d")
          config.d_init = DirectorInit::HarmonicGeodesic;
        else if (value == "random_bandlimited")
          config.d_init = DirectorInit::RandomBandlimited;
        else if (value == "from_snapshot")
          config.d_init = DirectorInit::FromSnapshot;
        else
          throw ParseError("line " + std::to_string(line) +
                           ": unknown director preset '" + value + "'");
      } else if (key == "seed") {
        config.seed = static_cast<uint64_t>(parse_int(value, line));
      } else if (key == "kmax") {
        config.kmax = static_cast<int>(parse_int(value, line));
      } else if (key == "amplitude") {
        config.amplitude = parse_double(value, line);
      } else if (key == "theta_snapshot") {
        config.theta_snapshot = value;
      } else if (key == "d_snapshot") {
        config.d_snapshot = value;
      } else {
        throw unknown();
      }
    } else if (section == "output") {
      if (key == "directory") config.output_directory = value;
      else if (key == "cadence") config.cadence = static_cast<int>(parse_int(value, line));
      else if (key == "snapshot_cadence")
        config.snapshot_cadence = static_cast<int>(parse_int(value, line));
      else if (key == "p_list") config.p_list = parse_list(value, line);
      else throw unknown();
    } else {
      throw ParseError("line " + std::to_string(line) +
                       ": key '" + key + "' outside any section");
    }
  }

  config.params.validate();
  if (config.cadence < 0 || config.snapshot_cadence < 0) {
    throw ValidationError("cadence values must be nonnegative");
  }
  if (config.kmax < 1) throw ValidationError("kmax must be >= 1");
  for (double p : config.p_list) {
    if (!(p >= 1.0)) throw ValidationError("p_list entries must be >= 1");
  }
  if (config.theta_init == ThetaInit::FromSnapshot) {
    if (!std::filesystem::exists(config.theta_snapshot)) {
      throw ValidationError("theta_snapshot path not resolvable: " +
                            config.theta_snapshot);
    }
  }
  if (config.d_init == DirectorInit::FromSnapshot) {
    if (!std::filesystem::exists(config.d_snapshot)) {
      throw ValidationError("d_snapshot path not resolvable: " +
                            config.d_snapshot);
    }
  }
  return config;
}

std::string RunConfig::echo() const {
  std::ostringstream out;
  out.precision(17);
  out << "[model]\n";
  out << "a = " << params.a << "\n";
  out << "alpha = " << params.alpha << "\n";
  out << "nu = " << params.nu << "\n";
  out << "lambda = " << params.lambda << "\n";
  out << "gamma = " << params.gamma << "\n";
  out << "forcing = " << to_string(params.forcing) << "\n";
  if (params.epsilon) out << "epsilon = " << *params.epsilon << "\n";
  out << "n = " << params.n << "\n";
  out << "dt = " << params.dt << "\n";
  out << "t_final = " << params.t_final << "\n";
  out << "cfl_limit = " << params.cfl_limit << "\n";
  out << "[initial]\n";
  switch (theta_init) {
    case ThetaInit::Zero: out << "theta = zero\n"; break;
    case ThetaInit::GaussianVortex: out << "theta = gaussian_vortex\n"; break;
    case ThetaInit::RandomBandlimited: out << "theta = random_bandlimited\n"; break;
    case ThetaInit::FromSnapshot:
      out << "theta = from_snapshot\ntheta_snapshot = " << theta_snapshot << "\n";
      break;
  }
  switch (d_init) {
    case DirectorInit::Constant: out << "d = constant\n"; break;
    case DirectorInit::HarmonicGeodesic: out << "d = harmonic_geodesic\n"; break;
    case DirectorInit::RandomBandlimited: out << "d = random_bandlimited\n"; break;
    case DirectorInit::FromSnapshot:
      out << "d = from_snapshot\nd_snapshot = " << d_snapshot << "\n";
      break;
  }
  out << "seed = " << seed << "\n";
  out << "kmax = " << kmax << "\n";
  out << "amplitude = " << amplitude << "\n";
  out << "[output]\n";
  out << "directory = " << output_directory << "\n";
  out << "cadence = " << cadence << "\n";
  out << "snapshot_cadence = " << snapshot_cadence << "\n";
  out << "p_list = ";
  for (size_t i = 0; i < p_list.size(); ++i) {
    out << (i ? "," : "") << p_list[i];
  }
  out << "\n";
  return out.str();
}

namespace {

SpectralField gaussian_vortex(std::shared_ptr<const SpectralGrid> grid,
                              double amplitude) {
  const int n = grid->n();
  std::vector<double> v(static_cast<size_t>(n) * n);
  const double sigma = 0.6;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = kDomainLength * i / n - M_PI;
      const double y = kDomainLength * j / n - M_PI;
      v[grid->index(i, j)] =
          amplitude * std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
    }
  }
  auto f = SpectralField::from_physical(grid, std::move(v), 1);
  return apply_dealias_mask(remove_mean(std::move(f)));
}

SpectralField random_scalar(std::shared_ptr<const SpectralGrid> grid, int kmax,
                            uint64_t seed, double amplitude) {
  const int n = grid->n();
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
  if (m > 0.0) f *= amplitude / m;
  return apply_dealias_mask(std::move(f));
}

SpectralField harmonic_geodesic_field(std::shared_ptr<const SpectralGrid> grid) {
  const int n = grid->n();
  const size_t m = grid->size();
  std::vector<double> v(3 * m, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double x = kDomainLength * i / n;
      v[grid->index(i, j)] = std::cos(x);
      v[m + grid->index(i, j)] = std::sin(x);
    }
  }
  return SpectralField::from_physical(grid, std::move(v), 3);
}

}  // namespace

std::pair<SpectralField, DirectorField> initial_conditions(
    const RunConfig& config) {
  auto grid = SpectralGrid::make(config.params.n);

  SpectralField theta;
  switch (config.theta_init) {
    case ThetaInit::Zero:
      theta = zero_field(grid);
      break;
    case ThetaInit::GaussianVortex:
      theta = gaussian_vortex(grid, config.amplitude);
      break;
    case ThetaInit::RandomBandlimited:
      theta = random_scalar(grid, config.kmax, config.seed, config.amplitude);
      break;
    case ThetaInit::FromSnapshot: {
      auto snap = read_snapshot(config.theta_snapshot);
      auto state = state_from_snapshot(snap, config.params.n);
      theta = state.theta;
      break;
    }
  }

  DirectorField d;
  switch (config.d_init) {
    case DirectorInit::Constant:
      d = DirectorField::constant(grid, 0.0, 0.0, 1.0);
      break;
    case DirectorInit::HarmonicGeodesic:
      d = DirectorField(harmonic_geodesic_field(grid));
      break;
    case DirectorInit::RandomBandlimited: {
      std::vector<SpectralField> parts;
      for (int c = 0; c < 3; ++c) {
        auto p = random_scalar(grid, config.kmax,
                               config.seed + 1000 * (c + 1), config.amplitude);
        if (c == 2) {
          const size_t m = grid->size();
          std::vector<double> one(m, 1.0);
          p += SpectralField::from_physical(grid, std::move(one), 1);
        }
        parts.push_back(std::move(p));
      }
      d = project_to_sphere(pack_components(parts));
      break;
    }
    case DirectorInit::FromSnapshot: {
      auto snap = read_snapshot(config.d_snapshot);
      auto state = state_from_snapshot(snap, config.params.n);
      d = state.d;
      break;
    }
  }
  return {std::move(theta), std::move(d)};
}

}  // namespace sqglc
