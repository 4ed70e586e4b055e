#include <cstring>
#include <fstream>

#include "sqglc/io.hpp"

namespace sqglc {

namespace {

constexpr char kMagic[8] = {'S', 'Q', 'G', 'L', 'C', '0', '0', '1'};

// FNV-1a over the byte stream.
struct Checksum {
  uint64_t state = 14695981039346656037ull;
  void feed(const void* data, size_t count) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < count; ++i) {
      state ^= bytes[i];
      state *= 1099511628211ull;
    }
  }
};

struct Writer {
  std::ofstream out;
  Checksum sum;
  void write(const void* data, size_t count) {
    out.write(static_cast<const char*>(data), count);
    sum.feed(data, count);
  }
  template <typename T>
  void put(const T& v) {
    write(&v, sizeof(T));
  }
};

struct Reader {
  std::ifstream in;
  Checksum sum;
  void read(void* data, size_t count) {
    in.read(static_cast<char*>(data), count);
    if (static_cast<size_t>(in.gcount()) != count) {
      throw TruncatedPayloadError("snapshot: unexpected end of file");
    }
    sum.feed(data, count);
  }
  template <typename T>
  T get() {
    T v;
    read(&v, sizeof(T));
    return v;
  }
};

}  // namespace

void write_snapshot(const SimState& state, const ModelParams& params,
                    const std::string& path) {
  Writer w;
  w.out.open(path, std::ios::binary);
  if (!w.out) throw ValidationError("snapshot: cannot open for writing: " + path);

  w.write(kMagic, sizeof(kMagic));
  w.put<uint32_t>(kSnapshotVersion);
  w.put<uint32_t>(static_cast<uint32_t>(params.n));
  w.put<double>(params.a);
  w.put<double>(params.alpha);
  w.put<double>(state.t);
  w.put<uint64_t>(static_cast<uint64_t>(state.step_index));
  w.put<uint32_t>(2);  // field count

  auto put_field = [&](const char* name, const SpectralField& field) {
    char buf[16] = {0};
    std::strncpy(buf, name, sizeof(buf) - 1);
    w.write(buf, sizeof(buf));
    w.put<uint32_t>(static_cast<uint32_t>(field.components()));
    const auto values = field.physical();
    w.write(values.data(), values.size() * sizeof(double));
  };
  put_field("theta", state.theta);
  put_field("d", state.d.field());

  w.put<uint64_t>(w.sum.state);  // put() feeds the hash too, harmlessly
  if (!w.out) throw ValidationError("snapshot: write failed: " + path);
}

SnapshotData read_snapshot(const std::string& path) {
  Reader r;
  r.in.open(path, std::ios::binary);
  if (!r.in) throw ValidationError("snapshot: cannot open: " + path);

  char magic[8];
  r.read(magic, sizeof(magic));
  if (std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw BadMagicError("snapshot: bad magic in " + path);
  }
  const auto version = r.get<uint32_t>();
  if (version != kSnapshotVersion) {
    throw VersionMismatchError("snapshot: version " + std::to_string(version) +
                               " != " + std::to_string(kSnapshotVersion));
  }

  SnapshotData snap;
  snap.n = r.get<uint32_t>();
  snap.a = r.get<double>();
  snap.alpha = r.get<double>();
  snap.t = r.get<double>();
  snap.step = r.get<uint64_t>();
  const auto field_count = r.get<uint32_t>();
  if (snap.n < 8 || snap.n % 2 != 0 || field_count > 16) {
    throw ValidationError("snapshot: implausible header in " + path);
  }

  for (uint32_t f = 0; f < field_count; ++f) {
    SnapshotField field;
    char name[16];
    r.read(name, sizeof(name));
    field.name.assign(name, strnlen(name, sizeof(name)));
    field.components = r.get<uint32_t>();
    if (field.components < 1 || field.components > 3) {
      throw ValidationError("snapshot: bad component count for field '" +
                            field.name + "'");
    }
    field.values.resize(static_cast<size_t>(field.components) * snap.n * snap.n);
    r.read(field.values.data(), field.values.size() * sizeof(double));
    snap.fields.push_back(std::move(field));
  }

  const uint64_t expected = r.sum.state;
  uint64_t stored = 0;
  r.in.read(reinterpret_cast<char*>(&stored), sizeof(stored));
  if (static_cast<size_t>(r.in.gcount()) != sizeof(stored)) {
    throw TruncatedPayloadError("snapshot: missing checksum in " + path);
  }
  if (stored != expected) {
    throw ChecksumMismatchError("snapshot: checksum mismatch in " + path);
  }
  return snap;
}

SimState state_from_snapshot(const SnapshotData& snap, int expected_n) {
  if (expected_n != 0 && static_cast<int>(snap.n) != expected_n) {
    throw SizeMismatchError("snapshot grid n=" + std::to_string(snap.n) +
                            " does not match the run's n=" +
                            std::to_string(expected_n) +
                            " (no silent interpolation)");
  }
  auto grid = SpectralGrid::make(static_cast<int>(snap.n));

  SimState state;
  state.t = snap.t;
  state.step_index = static_cast<int64_t>(snap.step);
  bool saw_theta = false, saw_d = false;
  for (const auto& field : snap.fields) {
    if (field.name == "theta" && field.components == 1) {
      state.theta = SpectralField::from_physical(grid, field.values, 1);
      saw_theta = true;
    } else if (field.name == "d" && field.components == 3) {
      state.d = DirectorField(SpectralField::from_physical(grid, field.values, 3));
      saw_d = true;
    }
  }
  if (!saw_theta || !saw_d) {
    throw ValidationError("snapshot: missing theta or d field");
  }
  return state;
}

}  // namespace sqglc
