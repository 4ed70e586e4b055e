#ifndef SQGLC_IO_HPP_
#define SQGLC_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "sqglc/dynamics.hpp"
#include "sqglc/model.hpp"

namespace sqglc {

inline constexpr const char* kVersion = "sqglc 1.0.0";
inline constexpr uint32_t kSnapshotVersion = 1;

enum class ThetaInit { Zero, GaussianVortex, RandomBandlimited, FromSnapshot };
enum class DirectorInit {
  Constant,
  HarmonicGeodesic,
  RandomBandlimited,
  FromSnapshot
};

// Flat key=value config with [model] / [initial] / [output] sections.
// Unknown keys are parse errors; all referenced paths must resolve at load.
struct RunConfig {
  ModelParams params;
  ThetaInit theta_init = ThetaInit::Zero;
  DirectorInit d_init = DirectorInit::HarmonicGeodesic;
  uint64_t seed = 0;
  int kmax = 5;
  double amplitude = 0.5;
  std::string theta_snapshot;
  std::string d_snapshot;
  std::string output_directory = "out";
  int cadence = 10;
  int snapshot_cadence = 0;  // samples between snapshots; 0 = final only
  std::vector<double> p_list = {2.0, 8.0};

  // Full resolved key=value echo, embedded into CSV headers for provenance.
  std::string echo() const;
};

RunConfig load_config(const std::string& path);

// Initial data built from the config presets (deterministic in the seed).
std::pair<SpectralField, DirectorField> initial_conditions(const RunConfig& config);

// --- snapshots -------------------------------------------------------------
// Layout (little-endian): magic "SQGLC001" (8 bytes), u32 version, u32 n,
// f64 a, f64 alpha, f64 t, u64 step, u32 field count, then per field a
// 16-byte zero-padded name, u32 components, and components*n*n f64
// physical-space values (row-major per component).  A trailing u64 FNV-1a
// checksum covers every preceding byte.

struct SnapshotField {
  std::string name;
  uint32_t components = 0;
  std::vector<double> values;
};

struct SnapshotData {
  uint32_t n = 0;
  double a = 0.0;
  double alpha = 0.0;
  double t = 0.0;
  uint64_t step = 0;
  std::vector<SnapshotField> fields;
};

void write_snapshot(const SimState& state, const ModelParams& params,
                    const std::string& path);
SnapshotData read_snapshot(const std::string& path);

// Rebuild a SimState; SizeMismatch unless the snapshot grid matches expected_n
// (pass 0 to accept the stored size).
SimState state_from_snapshot(const SnapshotData& snap, int expected_n);

// --- CSV -------------------------------------------------------------------
// Columns: t, E1, E2, D, balance_residual, max_theta, max_grad_d,
// L{p}_theta_acc..., L{p}_gradd_acc...  A '#'-comment preamble carries the
// code version and the full config echo.
void write_energy_csv(const EnergyReport& report, const std::string& preamble,
                      const std::string& path);

std::string format_p_label(double p);

}  // namespace sqglc

#endif
