#pragma once

#include <string>

#include "fracscalar/model.hpp"

namespace fracscalar {

/// Binary snapshot, all little-endian:
///   "FRSC" | u32 version | u32 n | f64 t | f64 alpha, beta, chi, r, eps
///   | u8 drift tag | u32 count | count x f64 drift parameters
///   | n*n f64 samples, row-major (x1 index major).
/// The forcing is not stored; it reads back as the ModelParams default.
struct Checkpoint {
  State state;
  ModelParams params;
};

inline constexpr unsigned kCheckpointVersion = 1;

void write_checkpoint(const std::string& path, const State& state, const ModelParams& params);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace fracscalar
