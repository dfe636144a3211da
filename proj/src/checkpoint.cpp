#include "fracscalar/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "fracscalar/errors.hpp"

namespace fracscalar {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

template <class T>
void put(std::ofstream& os, T v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::ifstream& is, const std::string& path) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) throw Error("truncated checkpoint: " + path);
  return v;
}

}  // namespace

void write_checkpoint(const std::string& path, const State& state, const ModelParams& params) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open " + path + " for writing");
  os.write("FRSC", 4);
  put<std::uint32_t>(os, kCheckpointVersion);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(state.u.n()));
  put<double>(os, state.t);
  for (double v : {params.alpha, params.beta, params.chi, params.r, params.eps_viscosity})
    put<double>(os, v);
  put<std::uint8_t>(os, static_cast<std::uint8_t>(params.drift.kind));
  const std::vector<double> dp = params.drift.parameters();
  put<std::uint32_t>(os, static_cast<std::uint32_t>(dp.size()));
  for (double v : dp) put<double>(os, v);
  const auto vals = state.u.values();
  os.write(reinterpret_cast<const char*>(vals.data()),
           static_cast<std::streamsize>(vals.size() * sizeof(double)));
  if (!os) throw Error("failed writing " + path);
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open " + path);
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, "FRSC", 4) != 0)
    throw Error("not a checkpoint file: " + path);
  const auto version = get<std::uint32_t>(is, path);
  if (version != kCheckpointVersion)
    throw Error("unsupported checkpoint version " + std::to_string(version));
  const auto n = static_cast<int>(get<std::uint32_t>(is, path));
  Checkpoint cp;
  cp.state.t = get<double>(is, path);
  cp.params.alpha = get<double>(is, path);
  cp.params.beta = get<double>(is, path);
  cp.params.chi = get<double>(is, path);
  cp.params.r = get<double>(is, path);
  cp.params.eps_viscosity = get<double>(is, path);
  const auto tag = get<std::uint8_t>(is, path);
  if (tag > static_cast<std::uint8_t>(DriftKind::aggregation))
    throw Error("unknown drift tag in " + path);
  const auto count = get<std::uint32_t>(is, path);
  std::vector<double> dp(count);
  for (double& v : dp) v = get<double>(is, path);
  cp.params.drift = DriftSpec::from_parameters(static_cast<DriftKind>(tag), dp);

  const TorusGrid grid(n);
  std::vector<double> values(grid.size());
  if (!is.read(reinterpret_cast<char*>(values.data()),
               static_cast<std::streamsize>(values.size() * sizeof(double))))
    throw Error("truncated checkpoint: " + path);
  cp.state.u = RealField(grid, std::move(values));
  return cp;
}

}  // namespace fracscalar
