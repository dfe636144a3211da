#include <doctest.h>

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <vector>

#include "fracscalar/checkpoint.hpp"
#include "fracscalar/errors.hpp"
#include "oracles.hpp"

using namespace fracscalar;

namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fracscalar_" + name)).string();
}

std::vector<unsigned char> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <class T>
T read_le(const std::vector<unsigned char>& b, std::size_t& pos) {
  std::uint64_t v = 0;
  for (std::size_t k = 0; k < sizeof(T); ++k) v |= std::uint64_t(b[pos + k]) << (8 * k);
  pos += sizeof(T);
  T out;
  if constexpr (sizeof(T) == 8) {
    std::memcpy(&out, &v, 8);
  } else {
    out = static_cast<T>(v);
  }
  return out;
}

}  // namespace

TEST_CASE("checkpoint round trip is bit-exact") {
  const RealField u = oracle::random_positive(4, 3).sample(TorusGrid(16));
  ModelParams p;
  p.alpha = 1.25;
  p.chi = 0.75;
  p.r = 0.5;
  p.eps_viscosity = 1e-3;
  p.drift = DriftSpec::ks_screened(1.5);
  const std::string path = temp_path("roundtrip.frsc");
  write_checkpoint(path, State{0.375, u}, p);
  const Checkpoint c = read_checkpoint(path);
  CHECK(c.state.t == 0.375);
  CHECK(oracle::max_diff(c.state.u, u) == 0.0);
  CHECK(c.params.alpha == 1.25);
  CHECK(c.params.chi == 0.75);
  CHECK(c.params.r == 0.5);
  CHECK(c.params.eps_viscosity == 1e-3);
  CHECK(c.params.drift.kind == DriftKind::ks_screened);
  CHECK(c.params.drift.beta == 1.5);

  AggregationKernel k;
  k.family = AggregationKernel::Family::bessel;
  k.strength = 2.0;
  k.order = 1.0;
  k.screening = 0.5;
  p.drift = DriftSpec::aggregation(k);
  write_checkpoint(path, State{1.0, u}, p);
  const Checkpoint a = read_checkpoint(path);
  CHECK(a.params.drift.kind == DriftKind::aggregation);
  CHECK(a.params.drift.kernel.family == AggregationKernel::Family::bessel);
  CHECK(a.params.drift.kernel.screening == 0.5);
  std::filesystem::remove(path);
}

TEST_CASE("checkpoint byte layout") {
  const TorusGrid g(8);
  RealField u(g);
  for (std::size_t k = 0; k < u.size(); ++k) u[k] = 0.5 * k;
  ModelParams p;
  p.alpha = 1.5;
  p.beta = 2.0;
  p.chi = 1.0;
  p.r = 0.25;
  p.drift = DriftSpec::ks_poisson();
  const std::string path = temp_path("layout.frsc");
  write_checkpoint(path, State{2.5, u}, p);
  const auto b = slurp(path);
  REQUIRE(b.size() == 4 + 4 + 4 + 8 + 5 * 8 + 1 + 4 + 64 * 8);
  CHECK(std::string(b.begin(), b.begin() + 4) == "FRSC");
  std::size_t pos = 4;
  CHECK(read_le<std::uint32_t>(b, pos) == 1u);
  CHECK(read_le<std::uint32_t>(b, pos) == 8u);
  CHECK(read_le<double>(b, pos) == 2.5);
  CHECK(read_le<double>(b, pos) == 1.5);
  CHECK(read_le<double>(b, pos) == 2.0);
  CHECK(read_le<double>(b, pos) == 1.0);
  CHECK(read_le<double>(b, pos) == 0.25);
  CHECK(read_le<double>(b, pos) == 0.0);
  CHECK(b[pos++] == 1);  // ks_poisson
  CHECK(read_le<std::uint32_t>(b, pos) == 0u);
  for (int k = 0; k < 64; ++k) CHECK(read_le<double>(b, pos) == 0.5 * k);
  std::filesystem::remove(path);
}

TEST_CASE("corrupt checkpoints are rejected") {
  const std::string path = temp_path("bad.frsc");
  {
    std::ofstream out(path, std::ios::binary);
    out << "NOPE0000";
  }
  CHECK_THROWS_AS(read_checkpoint(path), Error);
  write_checkpoint(path, State{0.0, RealField(TorusGrid(8), 1.0)}, ModelParams{});
  auto bytes = slurp(path);
  bytes.resize(bytes.size() - 8);
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  }
  CHECK_THROWS_AS(read_checkpoint(path), Error);
  CHECK_THROWS_AS(read_checkpoint(temp_path("missing.frsc")), Error);
  std::filesystem::remove(path);
}
